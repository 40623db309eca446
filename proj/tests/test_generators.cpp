#include <doctest.h>

#include "fixtures.hpp"
#include "shmlenf/generators.hpp"
#include "shmlenf/harness.hpp"
#include "shmlenf/model_check.hpp"

using namespace shmlenf;
using fx::dom;

TEST_CASE("generated formulas are closed guarded sHML within the size cap") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    for (std::size_t size : {1, 2, 5, 8, 14}) {
      Formula f = gen_formula(dom(), size, seed);
      Classification c = classify(f, dom());
      CHECK(c.closed);
      CHECK(c.guarded);
      CHECK(c.shml);
      CHECK(formula_size(f) <= std::max<std::size_t>(size, 2));
    }
  }
}

TEST_CASE("generated processes stay within the state cap") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Process p = gen_process(dom(), 15, seed);
    LTS l = reachable(p, 1024);
    CHECK(l.size() <= 16);
    for (const auto &a : l.alphabet())
      CHECK(dom().contains(a));
  }
}

TEST_CASE("generation is deterministic per seed") {
  CHECK(gen_formula(dom(), 8, 9) == gen_formula(dom(), 8, 9));
  CHECK(gen_process(dom(), 15, 9) == gen_process(dom(), 15, 9));
  auto a = random_corpus(dom(), 20, 42), b = random_corpus(dom(), 20, 42);
  REQUIRE(a.size() == 20);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].formula == b[k].formula);
    CHECK(a[k].process == b[k].process);
    CHECK(a[k].name == "r" + std::to_string(k));
  }
  auto c = random_corpus(dom(), 20, 43);
  bool differs = false;
  for (std::size_t k = 0; k < a.size(); ++k)
    differs = differs || !(a[k].formula == c[k].formula);
  CHECK(differs);
}

TEST_CASE("the generators reach both satisfiable and violated formulas") {
  std::vector<LTS> processes;
  for (std::uint64_t seed = 0; seed < 40; ++seed)
    processes.push_back(reachable(gen_process(dom(), 15, seed), 1024));
  std::size_t sat = 0, violated = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Formula f = gen_formula(dom(), 8, seed);
    sat += is_sat(f, dom());
    for (const auto &l : processes)
      if (!satisfies(l, l.initial(), f)) {
        ++violated;
        break;
      }
  }
  CHECK(sat >= 100);
  CHECK(violated >= 100);
}
