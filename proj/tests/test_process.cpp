#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "shmlenf/error.hpp"
#include "shmlenf/process.hpp"

using namespace shmlenf;
using fx::A;
using fx::dom;
using fx::L;
using fx::P;

TEST_CASE("step unfolds recursion") {
  auto moves = step(P(fx::pg));
  REQUIRE(moves.size() == 2);
  CHECK(moves[0].first == Label::of(A("i?req")));
  CHECK(moves[0].second == P("i!ans." + std::string(fx::pg)));
  CHECK(moves[1].first == Label::of(A("i?cls")));
  CHECK(moves[1].second == Process::nil());
  CHECK(step(Process::nil()).empty());
}

TEST_CASE("reachable") {
  LTS pg = L(fx::pg);
  CHECK(pg.size() == 3);
  CHECK(pg.transition_count() == 3);
  CHECK(L("rec X.i?req.X").size() == 1);
  CHECK(L("nil").size() == 1);
  CHECK(L(fx::pb).size() == 3);
  CHECK_THROWS_AS(reachable(P(fx::pg), 2), BoundExceeded);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(P("i?req."), ParseError);
  CHECK_THROWS_AS(P("X"), ParseError);
  CHECK_THROWS_AS(P("k?req.nil"), ParseError);
  CHECK(P("(i?req.nil)") == P("i?req.nil"));
  CHECK(P(P(fx::pb).to_string()) == P(fx::pb));
}

TEST_CASE("weak steps skip tau") {
  LTS p = L("tau.i?req.tau.nil + i!ans.nil");
  CHECK(p.tau_closure(0).size() == 2);
  auto w = p.weak_step(0, A("i?req"));
  REQUIRE(w.size() == 2);
  CHECK(p.weak_step(0, A("i!ans")).size() == 1);
  CHECK(p.weak_step(0, A("j!ans")).empty());
  auto moves = p.weak_moves(0);
  CHECK(moves.size() == 3);
}

TEST_CASE("traces") {
  LTS pb = L(fx::pb);
  auto t2 = pb.traces(pb.initial(), 2);
  CHECK(t2.count({A("i?req"), A("i?req")}));
  CHECK(t2.count({A("i?req"), A("i!ans")}));
  CHECK(t2.count({A("i?cls")}));
  CHECK_FALSE(t2.count({A("i!ans")}));
  CHECK(pb.traces(pb.initial(), 0) == std::set<Trace>{{}});
  CHECK(pb.after_trace(0, {A("i?req"), A("i!ans")}) == std::set<std::size_t>{0});
}

TEST_CASE("traces agree with the word-enumeration oracle") {
  for (const char *p : {fx::pg, fx::pb, "tau.i?req.tau.nil + i!ans.nil",
                        "rec X.(tau.X + j?cls.X)", "i?req.(tau.nil + j!ans.nil)"}) {
    LTS l = L(p);
    for (std::size_t s = 0; s < l.size(); ++s)
      CHECK(l.traces(s, 4) == oracle::traces(l, s, 4, dom().actions()));
  }
}

TEST_CASE("LTS text round trip") {
  LTS pg = L(fx::pg);
  LTS back = parse_lts(pg.to_text(), &dom());
  CHECK(back.size() == pg.size());
  CHECK(back.transition_count() == pg.transition_count());
  CHECK(back.traces(back.initial(), 5) == pg.traces(pg.initial(), 5));
  CHECK_THROWS_AS(parse_lts("a -i?req-> b\n", &dom()), ParseError);
}

TEST_CASE("process_actions") {
  CHECK(process_actions(P(fx::pg)) ==
        std::set<Action>{A("i?req"), A("i!ans"), A("i?cls")});
}
