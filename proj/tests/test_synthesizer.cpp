#include <doctest.h>

#include "fixtures.hpp"
#include "shmlenf/error.hpp"
#include "shmlenf/harness.hpp"
#include "shmlenf/normalizer.hpp"
#include "shmlenf/synthesizer.hpp"

using namespace shmlenf;
using fx::dom;
using fx::F;
using fx::T;

namespace {

// Every prefix either suppresses or copies its (underlined) source.
bool suppression_only(const Transducer &e) {
  switch (e.kind()) {
  case Transducer::Kind::Id:
  case Transducer::Kind::Var:
    return true;
  case Transducer::Kind::Rec:
    return suppression_only(e.body());
  case Transducer::Kind::Sum:
    for (const auto &b : e.branches())
      if (!suppression_only(b))
        return false;
    return true;
  case Transducer::Kind::Prefix:
    if (e.source().pattern.insertion)
      return false;
    if (e.target() && *e.target() != underline(e.source().pattern))
      return false;
    return suppression_only(e.body());
  }
  return false;
}

} // namespace

TEST_CASE("synthesize") {
  CHECK(synthesize(F("tt"), dom()) == Transducer::id());
  CHECK(synthesize(F("ff"), dom()) == Transducer::id());
  CHECK(alpha_equal(synthesize(F("[(x)?req when x != j]ff"), dom()),
                    T("rec y.{(x)?req when x != j -> tau}.y")));
  Transducer raw = synthesize(F(fx::phi1), dom());
  CHECK(alpha_equal(raw, T("rec x.rec z.{(x)?req when x != j}.rec y.({x!ans}.x + "
                           "{x?req -> tau}.y)")));
  CHECK(alpha_equal(optimize(raw), T(fx::ess)));
  CHECK_THROWS_AS(synthesize(F("[(x)?req]ff && [i?req]tt"), dom()), FragmentError);
  CHECK_THROWS_AS(synthesize(F(fx::phins), dom()), FragmentError);
}

TEST_CASE("synthesis is deterministic") {
  for (const char *t : {fx::phi0, fx::phi1, "[i?req]ff && [i!ans][j?cls]ff"}) {
    Formula n = normalize(F(t), dom());
    CHECK(synthesize(n, dom()) == synthesize(n, dom()));
    CHECK(compile(F(t), dom()).to_string() == compile(F(t), dom()).to_string());
  }
}

TEST_CASE("synthesized enforcers only suppress") {
  for (const char *t :
       {fx::phi0, fx::phi1, "[i?req]ff && [i!ans][j?cls]ff",
        "max X.([(x)?(y) when x = i]X && [(x)?(y) when y = req]ff)"})
    CHECK(suppression_only(compile(F(t), dom())));
}

TEST_CASE("optimize") {
  CHECK(optimize(Transducer::id()) == Transducer::id());
  Transducer loop = T("rec x.{i?req -> tau}.x");
  CHECK(optimize(loop) == loop);
  CHECK(optimize(T("rec x.rec y.{i?req}.x")) == T("rec x.{i?req}.x"));
  CHECK(optimize(T("rec x.{i?req}.id")) == T("{i?req}.id"));
  Transducer raw = synthesize(F(fx::phi1), dom());
  CHECK(transducer_bisimilar(raw, optimize(raw), dom()));
}

TEST_CASE("compile") {
  CHECK(compile(F("tt"), dom()) == Transducer::id());
  CHECK(alpha_equal(compile(F(fx::phi1), dom()), T(fx::ess)));
  Transducer e0 = compile(F(fx::phi0), dom());
  CHECK(alpha_equal(e0, T("rec x.{i?req}.rec y.({i!ans}.x + {i?req -> tau}.y)")));
  Subject pb = subject_of("pb", fx::L(fx::pb));
  CHECK(check_soundness(e0, F(fx::phi0), pb, dom()).passed());
}
