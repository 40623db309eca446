#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "shmlenf/bisim.hpp"
#include "shmlenf/error.hpp"
#include "shmlenf/runtime.hpp"

using namespace shmlenf;
using fx::A;
using fx::dom;
using fx::L;
using fx::P;
using fx::T;

namespace {

std::size_t state_of(const LTS &l, const std::string &process) {
  std::string want = P(process).to_string();
  for (std::size_t s = 0; s < l.size(); ++s)
    if (l.name(s) == want)
      return s;
  FAIL("no state " << want);
  return 0;
}

std::vector<std::string> labels(const std::vector<SimStep> &run) {
  std::vector<std::string> out;
  for (const auto &s : run)
    out.push_back(s.label.to_string());
  return out;
}

std::vector<Rule> rules(const std::vector<SimStep> &run) {
  std::vector<Rule> out;
  for (const auto &s : run)
    out.push_back(s.rule);
  return out;
}

} // namespace

TEST_CASE("transducer parse errors") {
  CHECK_THROWS_AS(T("{(x)?req -> (y)?req}.id"), Error);
  CHECK_THROWS_AS(T("{i?req"), ParseError);
  CHECK(T(T(fx::ess).to_string()) == T(fx::ess));
}

TEST_CASE("tstep") {
  auto id = tstep(Transducer::id(), dom());
  CHECK(id.size() == dom().actions().size());
  for (const auto &s : id) {
    REQUIRE_FALSE(s.input.is_insertion());
    CHECK(s.output == Label::of(*s.input.action));
    CHECK(s.next == Transducer::id());
  }

  auto sup = tstep(T("{(x)?req when x != j -> tau}.{x!ans}.id"), dom());
  REQUIRE(sup.size() == 1);
  CHECK(sup[0].input == ExtendedAction::of(A("i?req")));
  CHECK(sup[0].output.is_tau());
  CHECK(sup[0].next == T("{i!ans}.id"));

  auto ins = tstep(T(fx::ei), dom());
  REQUIRE(ins.size() == 1);
  CHECK(ins[0].input.is_insertion());
  CHECK(ins[0].output == Label::of(A("i?req")));
  CHECK(ins[0].next == T("{* -> i!ans}.id"));

  auto rep = transforms(T(fx::er), ExtendedAction::of(A("i!ans")));
  REQUIRE(rep.size() == 1);
  CHECK(rep[0].first == Label::of(A("j!ans")));
  CHECK(rep[0].second == T(fx::er));
}

TEST_CASE("istep") {
  LTS pb = L(fx::pb);
  auto es = istep(T(fx::es), pb, pb.initial());
  std::size_t ans = state_of(pb, "i!ans." + std::string(fx::pb));
  std::size_t nil = state_of(pb, "nil");
  auto has = [&](Rule r, const std::string &label, const Transducer &e,
                 std::size_t s) {
    return std::any_of(es.begin(), es.end(), [&](const IStep &st) {
      return st.rule == r && st.label.to_string() == label &&
             st.target.enforcer == e && st.target.system == s;
    });
  };
  CHECK(has(Rule::Trn, "tau", T(fx::es), ans));
  CHECK(has(Rule::Ter, "i?cls", Transducer::id(), nil));

  LTS n = L("nil");
  CHECK(istep(Transducer::id(), n, 0).empty());

  auto ei = istep(T(fx::ei), pb, pb.initial());
  REQUIRE(ei.size() == 1);
  CHECK(ei[0].rule == Rule::Ins);
  CHECK(ei[0].label == Label::of(A("i?req")));
  CHECK(ei[0].target.enforcer == T("{* -> i!ans}.id"));
  CHECK(ei[0].target.system == pb.initial());

  LTS t = L("tau.i?req.nil");
  auto asy = istep(T(fx::ess), t, 0);
  REQUIRE(asy.size() == 1);
  CHECK(asy[0].rule == Rule::Asy);
  CHECK(asy[0].target.enforcer == T(fx::ess));
}

TEST_CASE("rules are ordered by priority") {
  LTS p = L("tau.nil + i?req.nil");
  auto st = istep(T("{* -> j!ans}.id + {i?req}.id"), p, 0);
  REQUIRE(st.size() == 3);
  CHECK(st[0].rule == Rule::Trn);
  CHECK(st[1].rule == Rule::Asy);
  CHECK(st[2].rule == Rule::Ins);
}

TEST_CASE("composite systems") {
  LTS pg = L(fx::pg);
  Composite c = composite_lts(Transducer::id(), pg, pg.initial(), 100);
  CHECK(c.lts.size() == pg.size());
  CHECK(bisim(c.lts, 0, pg, pg.initial()).bisimilar);

  LTS pb = L(fx::pb);
  Composite ess = composite_lts(T(fx::ess), pb, pb.initial(), 100);
  auto after_req = ess.lts.weak_step(0, A("i?req"));
  bool loop = false;
  for (std::size_t s : ess.lts.after_trace(0, {A("i?req"), A("i!ans")}))
    loop = loop || s == 0;
  CHECK(loop);
  CHECK_FALSE(after_req.empty());

  LTS req = L("i?req.nil");
  Composite er = composite_lts(T(fx::er), req, 0, 100);
  CHECK(er.lts.traces(0, 3) == std::set<Trace>{{}, {A("j?req")}});

  // an always-inserting enforcer blocks termination and loops in place
  CHECK(composite_lts(T("rec x.{* -> i?req}.x"), req, 0, 50).lts.size() == 1);
  CHECK_THROWS_AS(composite_lts(T(fx::ess), pb, pb.initial(), 2), BoundExceeded);
}

TEST_CASE("identity is neutral on generated-like processes") {
  for (const char *p : {fx::pg, fx::pb, "rec X.(tau.X + j!cls.i?req.X)",
                        "i?req.(tau.nil + j!ans.nil)"}) {
    LTS l = L(p);
    Composite c = composite_lts(Transducer::id(), l, l.initial(), 256);
    CHECK(oracle::bisimilar(graph_of(c.lts), 0, graph_of(l), l.initial()));
  }
}

TEST_CASE("simulate") {
  LTS pb = L(fx::pb);
  auto ess = simulate(T(fx::ess), pb, pb.initial(), 3, Policy{});
  CHECK(labels(ess) == std::vector<std::string>{"i?req", "tau", "i!ans"});
  CHECK(rules(ess) == std::vector<Rule>{Rule::Trn, Rule::Trn, Rule::Trn});
  CHECK(ess.back().config.system == pb.initial());
  CHECK(alpha_equal(ess.back().config.enforcer, T(fx::ess)));

  LTS nil = L("nil");
  CHECK(simulate(Transducer::id(), nil, 0, 5, Policy{}).empty());

  auto ei = simulate(T(fx::ei), pb, pb.initial(), 2, Policy{});
  CHECK(labels(ei) == std::vector<std::string>{"i?req", "i!ans"});
  CHECK(rules(ei) == std::vector<Rule>{Rule::Ins, Rule::Ins});
  CHECK(ei.back().config.enforcer == Transducer::id());
  CHECK(ei.back().config.system == pb.initial());

  auto es = simulate(T(fx::es), pb, pb.initial(), 4, Policy{});
  CHECK(labels(es) == std::vector<std::string>{"tau", "i!ans", "tau", "i!ans"});

  LTS req = L("i?req.i!ans.i?cls.nil");
  auto er = simulate(T(fx::er), req, 0, 10, Policy{});
  CHECK(labels(er) == std::vector<std::string>{"j?req", "j!ans", "j?cls"});
  CHECK(er.back().config.enforcer == T(fx::er));
  CHECK(er.back().config.system == state_of(req, "nil"));
}

TEST_CASE("policies") {
  CHECK(Policy::parse("first").kind == Policy::Kind::First);
  Policy r = Policy::parse("random:7");
  CHECK(r.kind == Policy::Kind::Random);
  CHECK(r.seed == 7);
  Policy s = Policy::parse("script:i?cls,tau");
  CHECK(s.kind == Policy::Kind::Script);
  CHECK(s.script == std::vector<std::string>{"i?cls", "tau"});
  CHECK_THROWS_AS(Policy::parse("eager"), Error);

  LTS pb = L(fx::pb);
  auto cls = simulate(T(fx::es), pb, pb.initial(), 5, Policy::parse("script:i?cls"));
  REQUIRE(cls.size() == 1);
  CHECK(cls[0].rule == Rule::Ter);
  CHECK(cls[0].config.enforcer == Transducer::id());
  CHECK(config_to_string(cls[0].config, pb) == "<id, nil>");

  auto a = simulate(T(fx::ess), pb, pb.initial(), 20, Policy::parse("random:3"));
  auto b = simulate(T(fx::ess), pb, pb.initial(), 20, Policy::parse("random:3"));
  CHECK(labels(a) == labels(b));
}

TEST_CASE("termination hands over to the identity for good") {
  LTS pb = L(fx::pb);
  Composite c = composite_lts(T(fx::es), pb, pb.initial(), 256);
  for (std::size_t s = 0; s < c.lts.size(); ++s) {
    if (c.configs[s].enforcer != Transducer::id())
      continue;
    for (const auto &e : c.lts.edges(s))
      CHECK(c.configs[e.target].enforcer == Transducer::id());
  }
}

TEST_CASE("insertion leaves the system alone") {
  LTS pb = L(fx::pb);
  for (const auto &st : istep(T(fx::ei), pb, pb.initial()))
    if (st.rule == Rule::Ins)
      CHECK(st.target.system == pb.initial());
}

TEST_CASE("transducer graph") {
  TransducerGraph g = transducer_graph(T(fx::ess), dom(), 64);
  CHECK(g.states.size() == 2);
  TransducerGraph id = transducer_graph(Transducer::id(), dom(), 64);
  CHECK(id.states.size() == 1);
  CHECK(id.edges[0].size() == dom().actions().size());
}
