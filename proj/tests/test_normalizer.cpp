#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "shmlenf/error.hpp"
#include "shmlenf/model_check.hpp"
#include "shmlenf/normalizer.hpp"

using namespace shmlenf;
using fx::A;
using fx::dom;
using fx::F;
using fx::L;

namespace {

SymbolicAction sa(const std::string &text) {
  return F("[" + text + "]tt").action();
}

EquationSystem system_of(std::vector<Equation> eqs) {
  EquationSystem s;
  s.equations = std::move(eqs);
  return s;
}

Equation conj(std::string name, std::vector<EquationBranch> bs) {
  return {std::move(name), Equation::Kind::Conj, std::move(bs)};
}

Equation leaf(std::string name, bool truth) {
  return {std::move(name), truth ? Equation::Kind::True : Equation::Kind::False,
          {}};
}

bool equivalent_on(const Formula &a, const Formula &b, const LTS &l) {
  return mc_eval(a, l) == mc_eval(b, l);
}

} // namespace

TEST_CASE("stage 1 unfolds top-level fixpoints once") {
  Formula f = F("max X.([(x)?(y) when x = i]X && [(x)?(y) when y = req]ff)");
  Formula u = stage1_unfold(f);
  CHECK(u == F("[(x)?(y) when x = i](max X.([(x)?(y) when x = i]X && "
               "[(x)?(y) when y = req]ff)) && [(x)?(y) when y = req]ff"));
  CHECK(stage1_unfold(F("tt")) == F("tt"));
  Formula single = F("max X.[(x)?(y)]X");
  CHECK(stage1_unfold(single) == Formula::nec(sa("(x)?(y)"), single));
}

TEST_CASE("stage 2 builds an equation system") {
  Formula f = stage1_unfold(
      F("max X.([(x)?(y) when x = i]X && [(x)?(y) when y = req]ff)"));
  EquationSystem eqs = stage2_equations(f);
  CHECK(eqs.dump() == "X0 = [(x)?(y) when x = i]X0 && [(x)?(y) when y = req]X1\n"
                      "X1 = ff\n");
  CHECK(stage2_equations(F("tt")).dump() == "X0 = tt\n");
  CHECK(stage2_equations(F("[(x)?(y)]tt")).dump() ==
        "X0 = [(x)?(y)]X1\nX1 = tt\n");
}

TEST_CASE("stage 3 aligns like-directed binders") {
  EquationSystem eqs = system_of(
      {conj("X0", {{sa("(x1)?(x2) when x1 = i"), 1},
                   {sa("(x3)?(x4) when x4 = req"), 1},
                   {sa("(x5)!(x6)"), 1}}),
       leaf("X1", false)});
  EquationSystem al = stage3_align(eqs);
  const auto &bs = al.equations[0].branches;
  CHECK(bs[1].action == sa("(x1)?(x2) when x2 = req"));
  CHECK(bs[2].action == sa("(x5)!(x6)"));
  EquationSystem one = system_of({conj("X0", {{sa("(a)?(b)"), 0}})});
  CHECK(stage3_align(one).dump() == one.dump());
}

TEST_CASE("stage 4 splits shared patterns into minterms") {
  EquationSystem eqs =
      system_of({conj("X0", {{sa("(x)?(y) when x = i"), 0},
                             {sa("(x)?(y) when y = req"), 1}}),
                 leaf("X1", false)});
  EquationSystem mt = stage4_minterms(eqs, dom());
  CHECK(mt.equations[0].branches.size() == 4);
  CHECK(mt.dump() == "X0 = [(x)?(y) when x = i && y = req]X0 && "
                     "[(x)?(y) when x = i && y = req]X1 && "
                     "[(x)?(y) when x = i && !(y = req)]X0 && "
                     "[(x)?(y) when !(x = i) && y = req]X1\n"
                     "X1 = ff\n");

  EquationSystem single = system_of({conj("X0", {{sa("(x)?(y)"), 0}})});
  CHECK(stage4_minterms(single, dom()).dump() == single.dump());

  // x != j and x = j never hold together over ports {i, j}
  EquationSystem contra =
      system_of({conj("X0", {{sa("(x)?(y) when x != j"), 0},
                             {sa("(x)?(y) when x = j"), 1}}),
                 leaf("X1", true)});
  EquationSystem split = stage4_minterms(contra, dom());
  REQUIRE(split.equations[0].branches.size() == 2);
  for (const auto &b : split.equations[0].branches)
    CHECK_FALSE(denote(b.action, dom()).empty());
}

TEST_CASE("stage 4 refuses too many conditions") {
  std::vector<EquationBranch> bs;
  const char *vals[] = {"i", "j", "req", "ans", "cls"};
  for (int k = 0; k < 13; ++k)
    bs.push_back({sa(std::string("(x)?(y) when x = ") + vals[k % 2] +
                     " || y = " + vals[2 + k % 3] + (k >= 6 ? " && x != y" : "") +
                     (k >= 12 ? " || x = y" : "") + (k % 4 == 3 ? " || false" : "")),
                  0});
  EquationSystem big = system_of({conj("X0", bs)});
  CHECK_THROWS_AS(stage4_minterms(big, dom()), Error);
}

TEST_CASE("stage 5 merges targets and absorbs ff") {
  EquationSystem mt = stage4_minterms(
      system_of({conj("X0", {{sa("(x)?(y) when x = i"), 0},
                             {sa("(x)?(y) when y = req"), 1}}),
                 leaf("X1", false)}),
      dom());
  EquationSystem un = stage5_powerset(mt, dom());
  CHECK(un.dump() == "X0 = [(x)?(y) when x = i && y = req]X0_1 && "
                     "[(x)?(y) when x = i && !(y = req)]X0 && "
                     "[(x)?(y) when !(x = i) && y = req]X1\n"
                     "X0_1 = ff\n"
                     "X1 = ff\n");

  EquationSystem plain = system_of(
      {conj("X0", {{sa("(x)?(y) when x = i"), 1}}), leaf("X1", true)});
  EquationSystem same = stage5_powerset(plain, dom());
  CHECK(same.equations.size() == 2);
  CHECK(same.equations[0].branches.size() == 1);
}

TEST_CASE("stage 6 places binders at back edges") {
  EquationSystem loop = system_of({conj("X0", {{sa("(x)?(y)"), 0}})});
  CHECK(alpha_key(stage6_rebuild(loop)) == alpha_key(F("max X0.[(x)?(y)]X0")));
  CHECK(stage6_rebuild(system_of({leaf("X0", true)})) == F("tt"));
  EquationSystem chain = system_of(
      {conj("X0", {{sa("(x)?(y)"), 1}}), leaf("X1", false)});
  CHECK(stage6_rebuild(chain) == F("[(x)?(y)]ff"));
}

TEST_CASE("normalize") {
  Formula n1 = normalize(F(fx::phi1), dom());
  CHECK(is_shmlnf(n1, dom()));
  for (const char *p : {fx::pg, fx::pb}) {
    LTS l = L(p);
    CHECK(satisfies(l, 0, n1) == satisfies(l, 0, F(fx::phi1)));
  }
  CHECK(normalize(F("tt"), dom()) == F("tt"));
  CHECK(normalize(F("ff"), dom()) == F("ff"));
  CHECK_THROWS_AS(normalize(F(fx::phins), dom()), FragmentError);
  CHECK_THROWS_AS(normalize(F("max X.X"), dom()), FragmentError);

  Formula overlap = normalize(F("max X.([i?req]X && [i?req]ff)"), dom());
  CHECK(is_shmlnf(overlap, dom()));
  CHECK(free_logic_vars(overlap).empty());
  CHECK(overlap.is(Formula::Kind::Nec));
  CHECK(overlap.body() == F("ff"));
  CHECK(denote(overlap.action(), dom()) == std::set<Action>{A("i?req")});
}

TEST_CASE("normal form is idempotent up to renaming") {
  for (const char *t :
       {fx::phi0, fx::phi1, "max X.([(x)?(y) when x = i]X && [(x)?(y) when y = req]ff)",
        "[(x)?req]ff && [(y)?req when y = i]tt",
        "max X.([(x)!(y)]X && [(x)?req]max Y.([(z)?ans when z = x]Y && [x!cls]ff))"}) {
    Formula n = normalize(F(t), dom());
    CHECK(is_shmlnf(n, dom()));
    CHECK(alpha_key(normalize(n, dom())) == alpha_key(n));
  }
}

TEST_CASE("normalization preserves meaning on every small LTS") {
  // Two ports, one payload keeps the enumeration exhaustive.
  Domain d({"i", "j"}, {"req"});
  std::vector<Formula> fs;
  for (const char *t :
       {"max X.([i?req]X && [i?req]ff)",
        "max X.([(x)?req]X && [(x)?req when x = j]ff)",
        "[(x)?req][x!req]ff && [i?req][j?req]ff",
        "max X.([(x)?req when x != j]([x!req]X && [x?req]ff) && [j!req]X)",
        "max X.([(x)!(y)]X && [(x)?(y)]max Y.([x?y]Y && [(z)!req when z != x]ff))"})
    fs.push_back(parse_formula(t, &d));
  std::vector<Formula> ns;
  for (const auto &f : fs)
    ns.push_back(normalize(f, d));
  std::vector<Label> labels{Label::of(A("i?req")), Label::of(A("j?req")),
                            Label::of(A("i!req"))};
  std::size_t checked = 0, mismatches = 0;
  oracle::for_each_lts(2, labels, [&](const LTS &l) {
    ++checked;
    for (std::size_t k = 0; k < fs.size(); ++k)
      if (mc_eval(fs[k], l) != mc_eval(ns[k], l))
        ++mismatches;
  });
  CHECK(checked == 4096);
  CHECK(mismatches == 0);

  // three states over a single label
  oracle::for_each_lts(3, {Label::of(A("i?req"))}, [&](const LTS &l) {
    for (std::size_t k = 0; k < fs.size(); ++k)
      CHECK(equivalent_on(fs[k], ns[k], l));
  });
}

TEST_CASE("traced normalization reports every stage") {
  NormalizationTrace tr = normalize_traced(
      F("max X.([(x)?(y) when x = i]X && [(x)?(y) when y = req]ff)"), dom());
  CHECK_FALSE(tr.already_normal);
  CHECK(tr.equations.equations.size() == 2);
  CHECK(tr.unified.equations.size() == 3);
  CHECK(is_shmlnf(tr.result, dom()));
  NormalizationTrace nf = normalize_traced(F(fx::phi1), dom());
  CHECK(nf.already_normal);
  CHECK(nf.result == F(fx::phi1));
}
