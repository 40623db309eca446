#include <doctest.h>

#include "fixtures.hpp"
#include "shmlenf/harness.hpp"
#include "shmlenf/model_check.hpp"
#include "shmlenf/normalizer.hpp"
#include "shmlenf/synthesizer.hpp"

using namespace shmlenf;
using fx::A;
using fx::dom;
using fx::F;
using fx::L;
using fx::T;

namespace {

Subject S(const std::string &name, const std::string &process) {
  return subject_of(name, L(process));
}

Trace tr(std::initializer_list<const char *> as) {
  Trace t;
  for (const char *a : as)
    t.push_back(A(a));
  return t;
}

} // namespace

TEST_CASE("is_sat") {
  CHECK(is_sat(F(fx::phi1), dom()));
  CHECK_FALSE(is_sat(F("ff"), dom()));
  CHECK(is_sat(F("max X.([i?req]ff && [i!ans]X)"), dom()));
  CHECK_FALSE(is_sat(F("max X.ff"), dom()));
  CHECK(is_sat(F("tt"), dom()));
}

TEST_CASE("soundness") {
  Formula phi1 = F(fx::phi1);
  std::vector<Subject> both{S("pg", fx::pg), S("pb", fx::pb)};
  CHECK(check_soundness(phi1, both, dom()).passed());
  CHECK(check_soundness(F("ff"), both, dom()).passed());

  Verdict ei = check_soundness(T(fx::ei), phi1, S("pb", fx::pb), dom());
  CHECK(ei.outcome == Outcome::Fail);
  CHECK(ei.witness == "i?req.i!ans.i?req.i?req");
  CHECK(check_soundness(T(fx::ess), phi1, S("pb", fx::pb), dom()).passed());
}

TEST_CASE("transparency") {
  Formula phi1 = F(fx::phi1);
  CHECK(check_transparency(phi1, {S("pg", fx::pg)}, dom()).passed());
  CHECK(check_transparency(phi1, {S("pb", fx::pb)}, dom()).passed());

  Verdict es = check_transparency(T(fx::es), phi1, S("pg", fx::pg));
  CHECK(es.outcome == Outcome::Fail);
  CHECK_FALSE(es.witness.empty());
  Verdict er = check_transparency(T(fx::er), F("tt"), S("req", "i?req.nil"));
  CHECK(er.outcome == Outcome::Fail);
  CHECK(er.witness.find("j?req") != std::string::npos);
}

TEST_CASE("bounds give inconclusive verdicts") {
  Bounds tight{1, 6};
  Verdict v = check_soundness(T(fx::ess), F(fx::phi1), S("pb", fx::pb), dom(), tight);
  CHECK(v.outcome == Outcome::Inconclusive);
  CHECK_FALSE(v.passed());
  CHECK(std::string(outcome_name(v.outcome)) == "inconclusive");
}

TEST_CASE("violates") {
  LTS pb = L(fx::pb);
  Formula phi1 = F(fx::phi1);
  CHECK(violates(pb, 0, tr({"i?req", "i?req"}), phi1));
  CHECK_FALSE(violates(pb, 0, tr({"i?req", "i!ans"}), phi1));
  CHECK(violates(pb, 0, {}, F("ff")));
  CHECK(violates(L("nil"), 0, {}, F("ff")));
  CHECK_FALSE(violates(pb, 0, {}, phi1));
  // the trace must be a trace of the process
  CHECK_FALSE(violates(L("i?req.nil"), 0, tr({"i?req", "i?req"}), phi1));
  auto w = violating_trace(pb, 0, phi1, 6);
  REQUIRE(w);
  CHECK(*w == tr({"i?req", "i?req"}));
  CHECK_FALSE(violating_trace(L(fx::pg), 0, phi1, 6));
}

TEST_CASE("after") {
  Formula n1 = normalize(F(fx::phi1), dom());
  CHECK(after(F("tt"), Label::of(A("i?req"))) == F("tt"));
  CHECK(after(F("ff"), Label::of(A("i?req"))) == F("ff"));
  CHECK(after(n1, Label::tau()) == n1);
  CHECK(after(n1, Label::of(A("j?req"))) == F("tt"));
  Formula r = after(n1, Label::of(A("i?req")));
  CHECK(free_data_vars(r).empty());
  CHECK(alpha_key(r) ==
        alpha_key(F("[i!ans](" + std::string(fx::phi1) + ") && [i?req]ff")));
}

TEST_CASE("lemmas about after") {
  Formula n1 = normalize(F(fx::phi1), dom());
  for (const char *p : {fx::pg, fx::pb}) {
    CHECK(check_after_lemma(n1, S("p", p)).passed());
    CHECK(check_step_lemma(n1, S("p", p), dom()).passed());
  }
}

TEST_CASE("non-violating trace transparency") {
  Formula phi1 = F(fx::phi1);
  Transducer ess = T(fx::ess);
  CHECK(check_nvtt(ess, phi1, S("pb", fx::pb), Bounds{64, 2}).passed());
  CHECK(check_nvtt(ess, phi1, S("pg", fx::pg), Bounds{64, 4}).passed());
  CHECK(check_nvtt(Transducer::id(), F("tt"), S("pb", fx::pb), Bounds{64, 4}).passed());
  // With a longer horizon, a non-violating trace that runs through a
  // suppressed request is lost.
  Verdict deep = check_nvtt(ess, phi1, S("pb", fx::pb), Bounds{64, 6});
  CHECK(deep.outcome == Outcome::Fail);
  CHECK_FALSE(deep.witness.empty());
}

TEST_CASE("violating-trace semantics") {
  CHECK(check_violation_semantics(F(fx::phi1), S("pb", fx::pb), dom()).passed());
  CHECK(check_violation_semantics(F(fx::phi1), S("pg", fx::pg), dom()).passed());
  CHECK(check_violation_semantics(F("ff"), S("pg", fx::pg), dom()).passed());
}

TEST_CASE("transducer bisimilarity") {
  CHECK(transducer_bisimilar(T(fx::ess), compile(F(fx::phi1), dom()), dom()));
  CHECK(transducer_bisimilar(T("rec x.{i?req}.x"), T("rec x.{i?req}.{i?req}.x"), dom()));
  CHECK_FALSE(transducer_bisimilar(T(fx::ess), T(fx::es), dom()));
  CHECK_FALSE(transducer_bisimilar(T("id"), T("{i?req}.id"), dom()));
}

TEST_CASE("verdict text") {
  Verdict v{"soundness", "phi1/pb", Outcome::Fail, "i?req", "note"};
  CHECK(v.to_string() == "soundness phi1/pb fail i?req (note)");
  Verdict p{"transparency", "phi1/pg", Outcome::Pass, "", ""};
  CHECK(p.to_string() == "transparency phi1/pg pass");
}
