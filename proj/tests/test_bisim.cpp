#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "shmlenf/bisim.hpp"

using namespace shmlenf;
using fx::L;

namespace {

Graph random_graph(std::mt19937 &rng, std::size_t n) {
  Graph g;
  g.edges.resize(n);
  std::uniform_int_distribution<int> coin(0, 3);
  const char *labels[] = {"a", "b"};
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      for (const char *l : labels)
        if (coin(rng) == 0)
          g.edges[s].push_back({l, t});
  return g;
}

} // namespace

TEST_CASE("bisimilar examples") {
  CHECK(bisim(L("i?req.nil + i?req.nil"), 0, L("i?req.nil"), 0).bisimilar);
  CHECK(bisim(L("rec X.i?req.X"), 0, L("rec X.i?req.i?req.X"), 0).bisimilar);
  CHECK(bisim(L(fx::pg), 0, L(fx::pg), 0).bisimilar);
  CHECK(bisim(L("nil"), 0, L("nil"), 0).bisimilar);
}

TEST_CASE("non-bisimilar examples carry a witness") {
  BisimResult r = bisim(L("i?req.(i!ans.nil + i?cls.nil)"), 0,
                        L("i?req.i!ans.nil + i?req.i?cls.nil"), 0);
  CHECK_FALSE(r.bisimilar);
  REQUIRE_FALSE(r.witness.empty());
  CHECK(r.witness.front() == "i?req");
  CHECK_FALSE(r.explanation.empty());

  BisimResult t = bisim(L("tau.i?req.nil"), 0, L("i?req.nil"), 0);
  CHECK_FALSE(t.bisimilar);
  CHECK(t.witness == std::vector<std::string>{"tau"});

  BisimResult n = bisim(L("nil"), 0, L("j!ans.nil"), 0);
  CHECK_FALSE(n.bisimilar);
  CHECK(n.witness == std::vector<std::string>{"j!ans"});
  CHECK(n.explanation.find("right") != std::string::npos);
}

TEST_CASE("classes of one graph") {
  auto cls = bisim_classes(graph_of(L("rec X.(i?req.X + i?req.i?req.X)")));
  CHECK(cls.size() == 2);
  CHECK(cls[0] == cls[1]);
  auto pg = bisim_classes(graph_of(L(fx::pg)));
  CHECK(std::set<std::size_t>(pg.begin(), pg.end()).size() == 3);
}

TEST_CASE("partition refinement agrees with the naive fixpoint") {
  std::mt19937 rng(12345);
  std::size_t agree = 0;
  for (int round = 0; round < 200; ++round) {
    Graph a = random_graph(rng, 1 + round % 4);
    Graph b = random_graph(rng, 1 + round % 5);
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = 0; y < b.size(); ++y) {
        bool fast = bisim(a, x, b, y).bisimilar;
        CHECK(fast == oracle::bisimilar(a, x, b, y));
        agree += fast;
      }
  }
  CHECK(agree > 0);
}
