#include "shmlenf/normalizer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "shmlenf/error.hpp"

namespace shmlenf {

std::string EquationSystem::dump() const {
  std::string out;
  auto line = [&](const Equation &e) {
    out += e.name + " = ";
    switch (e.kind) {
    case Equation::Kind::True:
      out += "tt";
      break;
    case Equation::Kind::False:
      out += "ff";
      break;
    case Equation::Kind::Conj:
      for (std::size_t i = 0; i < e.branches.size(); ++i) {
        if (i)
          out += " && ";
        out += "[" + e.branches[i].action.to_string() + "]" +
               equations[e.branches[i].target].name;
      }
      break;
    }
    out += "\n";
  };
  if (start < equations.size())
    line(equations[start]);
  for (std::size_t i = 0; i < equations.size(); ++i)
    if (i != start)
      line(equations[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Preparation

namespace {

class Preparer {
public:
  Preparer(const Formula &f, const Domain &d) : domain_(d), used_(all_names(f)) {
    for (const auto &v : d.values())
      used_.insert(v);
  }

  Formula run(const Formula &f) {
    switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Var:
      return f;
    case Formula::Kind::And: {
      std::vector<Formula> ops;
      for (const auto &o : f.operands())
        ops.push_back(run(o));
      return Formula::conj(std::move(ops));
    }
    case Formula::Kind::Max:
      return Formula::max(f.name(), run(f.body()));
    case Formula::Kind::Nec:
      return necessity(f);
    default:
      throw FragmentError("not an sHML formula: " + f.to_string());
    }
  }

private:
  std::string fresh() {
    std::string name;
    do
      name = "v" + std::to_string(++counter_);
    while (used_.count(name));
    used_.insert(name);
    return name;
  }

  Formula necessity(const Formula &f) {
    SymbolicAction sa = normalize_pattern(f.action(), [&] { return fresh(); });
    const Formula &body = f.body();
    // Binders the continuation depends on, with the values each may take.
    std::vector<std::string> vars;
    std::vector<const std::vector<std::string> *> ranges;
    for (auto [slot, values] :
         {std::pair{&sa.pattern.port, &domain_.ports()},
          {&sa.pattern.payload, &domain_.payloads()}})
      if (body.free_data().count(slot->name)) {
        vars.push_back(slot->name);
        ranges.push_back(values);
      }
    if (vars.empty())
      return Formula::nec(sa, run(body));
    std::vector<Formula> parts;
    std::vector<std::size_t> index(vars.size(), 0);
    while (true) {
      Substitution s;
      std::vector<Condition> cs{sa.condition};
      for (std::size_t k = 0; k < vars.size(); ++k) {
        const std::string &v = (*ranges[k])[index[k]];
        s[vars[k]] = v;
        cs.push_back(Condition::eq(Term::var(vars[k]), Term::value(v)));
      }
      SymbolicAction part{sa.pattern, Condition::all_of(cs)};
      if (!denote(part, domain_).empty())
        parts.push_back(Formula::nec(part, run(substitute_data(body, s))));
      std::size_t k = 0;
      while (k < vars.size() && ++index[k] == ranges[k]->size())
        index[k++] = 0;
      if (k == vars.size())
        break;
    }
    return Formula::conj(std::move(parts));
  }

  const Domain &domain_;
  std::set<std::string> used_;
  int counter_ = 0;
};

void require_fragment(const Formula &f) {
  if (!is_shml(f))
    throw FragmentError("not an sHML formula: " + f.to_string());
  if (!f.free_logic().empty() || !f.free_data().empty())
    throw FragmentError("formula is not closed: " + f.to_string());
  if (!is_guarded(f))
    throw FragmentError("formula is not guarded: " + f.to_string());
}

} // namespace

Formula prepare(const Formula &f, const Domain &d) {
  require_fragment(f);
  return Preparer(f, d).run(f);
}

// ---------------------------------------------------------------------------
// Stages 1 and 2

Formula stage1_unfold(const Formula &f) {
  switch (f.kind()) {
  case Formula::Kind::Max:
    return substitute_logic(stage1_unfold(f.body()), f.name(), f);
  case Formula::Kind::And: {
    std::vector<Formula> ops;
    for (const auto &o : f.operands())
      ops.push_back(stage1_unfold(o));
    return Formula::conj(std::move(ops));
  }
  default:
    return f;
  }
}

namespace {

void flatten(const Formula &f, std::vector<Formula> &out) {
  if (f.is(Formula::Kind::And))
    for (const auto &o : f.operands())
      flatten(o, out);
  else
    out.push_back(f);
}

class EquationBuilder {
public:
  std::size_t variable(const Formula &f) {
    Formula g = stage1_unfold(f);
    auto [it, fresh] = memo_.emplace(g.key(), sys_.equations.size());
    if (!fresh)
      return it->second;
    std::size_t index = it->second;
    sys_.equations.push_back({"X" + std::to_string(index),
                              Equation::Kind::True, {}});
    std::vector<Formula> parts;
    flatten(g, parts);
    bool falsum = false;
    for (const auto &p : parts) {
      if (p.is(Formula::Kind::False))
        falsum = true;
      else if (!p.is(Formula::Kind::True) && !p.is(Formula::Kind::Nec))
        throw FragmentError("unguarded subformula: " + p.to_string());
    }
    if (falsum) {
      sys_.equations[index].kind = Equation::Kind::False;
      return index;
    }
    std::vector<EquationBranch> branches;
    for (const auto &p : parts)
      if (p.is(Formula::Kind::Nec))
        branches.push_back({p.action(), variable(p.body())});
    if (!branches.empty()) {
      sys_.equations[index].kind = Equation::Kind::Conj;
      sys_.equations[index].branches = std::move(branches);
    }
    return index;
  }

  EquationSystem take() { return std::move(sys_); }

private:
  EquationSystem sys_;
  std::map<std::string, std::size_t> memo_;
};

} // namespace

EquationSystem stage2_equations(const Formula &f) {
  EquationBuilder b;
  b.variable(f);
  EquationSystem sys = b.take();
  sys.start = 0;
  return sys;
}

// ---------------------------------------------------------------------------
// Stages 3 and 4

namespace {

std::vector<EquationBranch> align(const std::vector<EquationBranch> &branches) {
  std::vector<EquationBranch> out;
  std::map<Direction, Pattern> first;
  for (const auto &b : branches) {
    const Pattern &p = b.action.pattern;
    if (p.insertion || !p.normalised()) {
      out.push_back(b);
      continue;
    }
    auto [it, fresh] = first.emplace(p.direction, p);
    if (fresh) {
      out.push_back(b);
      continue;
    }
    Renaming r{{p.port.name, it->second.port.name},
               {p.payload.name, it->second.payload.name}};
    out.push_back({{it->second, b.action.condition.rename(r)}, b.target});
  }
  return out;
}

constexpr std::size_t max_conditions = 12;

// Drops negated conjuncts that do not change the denotation.
Condition simplify(const Pattern &p, std::vector<Condition> conjuncts,
                   const std::set<Action> &meaning, const Domain &d) {
  for (std::size_t i = 0; i < conjuncts.size();) {
    if (conjuncts[i].op() != Condition::Op::Not) {
      ++i;
      continue;
    }
    std::vector<Condition> rest = conjuncts;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (denote({p, Condition::all_of(rest)}, d) == meaning)
      conjuncts = std::move(rest);
    else
      ++i;
  }
  return Condition::all_of(conjuncts);
}

struct Guarded {
  SymbolicAction action;
  std::set<std::size_t> targets;
};

// Splits aligned branches into pairwise disjoint satisfiable minterms per
// pattern; each minterm carries the targets of the conditions it implies.
std::vector<Guarded> minterms(const std::vector<EquationBranch> &branches,
                              const Domain &d) {
  std::vector<Pattern> patterns;
  std::map<Pattern, std::vector<std::pair<Condition, std::set<std::size_t>>>>
      groups;
  for (const auto &b : align(branches)) {
    const Pattern &p = b.action.pattern;
    auto &conds = groups[p];
    if (conds.empty())
      patterns.push_back(p);
    auto it = std::find_if(conds.begin(), conds.end(), [&](const auto &c) {
      return c.first == b.action.condition;
    });
    if (it == conds.end())
      conds.push_back({b.action.condition, {b.target}});
    else
      it->second.insert(b.target);
  }
  std::vector<Guarded> out;
  for (const auto &p : patterns) {
    const auto &conds = groups[p];
    std::size_t n = conds.size();
    if (n > max_conditions)
      throw Error("too many distinct conditions (" + std::to_string(n) +
                  ") on pattern " + p.to_string());
    for (std::size_t mask = (std::size_t{1} << n) - 1; mask > 0; --mask) {
      std::vector<Condition> conjuncts;
      std::set<std::size_t> targets;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> (n - 1 - i) & 1) {
          conjuncts.push_back(conds[i].first);
          targets.insert(conds[i].second.begin(), conds[i].second.end());
        } else {
          conjuncts.push_back(Condition::negate(conds[i].first));
        }
      }
      auto meaning = denote({p, Condition::all_of(conjuncts)}, d);
      if (meaning.empty())
        continue;
      out.push_back({{p, simplify(p, conjuncts, meaning, d)}, targets});
    }
  }
  return out;
}

} // namespace

EquationSystem stage3_align(const EquationSystem &eqs) {
  EquationSystem out = eqs;
  for (auto &e : out.equations)
    e.branches = align(e.branches);
  return out;
}

EquationSystem stage4_minterms(const EquationSystem &eqs, const Domain &d) {
  EquationSystem out = eqs;
  for (auto &e : out.equations) {
    if (e.kind != Equation::Kind::Conj)
      continue;
    std::vector<EquationBranch> branches;
    for (const auto &g : minterms(e.branches, d))
      for (std::size_t t : g.targets)
        branches.push_back({g.action, t});
    e.branches = std::move(branches);
    if (e.branches.empty())
      e.kind = Equation::Kind::True;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stage 5

EquationSystem stage5_powerset(const EquationSystem &eqs, const Domain &d) {
  EquationSystem out;
  std::map<std::set<std::size_t>, std::size_t> ids;
  std::vector<std::set<std::size_t>> members;
  std::deque<std::size_t> work;
  auto state = [&](const std::set<std::size_t> &s) {
    auto [it, fresh] = ids.emplace(s, out.equations.size());
    if (fresh) {
      std::string name = "X";
      bool first = true;
      for (std::size_t i : s) {
        name += (first ? "" : "_") + std::to_string(i);
        first = false;
      }
      out.equations.push_back({name, Equation::Kind::True, {}});
      members.push_back(s);
      work.push_back(it->second);
    }
    return it->second;
  };
  out.start = state({eqs.start});
  while (!work.empty()) {
    std::size_t index = work.front();
    work.pop_front();
    std::set<std::size_t> s = members[index];
    std::vector<EquationBranch> combined;
    bool falsum = false;
    for (std::size_t m : s) {
      const Equation &e = eqs.equations[m];
      if (e.kind == Equation::Kind::False)
        falsum = true;
      combined.insert(combined.end(), e.branches.begin(), e.branches.end());
    }
    if (falsum) {
      out.equations[index].kind = Equation::Kind::False;
      continue;
    }
    std::vector<Guarded> merged;
    if (s.size() == 1) {
      for (const auto &b : combined) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const auto &g) {
          return g.action == b.action;
        });
        if (it == merged.end())
          merged.push_back({b.action, {b.target}});
        else
          it->targets.insert(b.target);
      }
    } else {
      merged = minterms(combined, d);
    }
    std::vector<EquationBranch> branches;
    for (const auto &g : merged)
      branches.push_back({g.action, state(g.targets)});
    if (!branches.empty()) {
      out.equations[index].kind = Equation::Kind::Conj;
      out.equations[index].branches = std::move(branches);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stage 6

namespace {

constexpr std::size_t rebuild_limit = 100000;

struct Rebuilder {
  const EquationSystem &eqs;
  std::vector<std::size_t> stack;
  std::vector<bool> used;
  std::size_t nodes = 0;

  Formula build(std::size_t v) {
    if (++nodes > rebuild_limit)
      throw BoundExceeded("normal form exceeds " +
                          std::to_string(rebuild_limit) + " nodes");
    const Equation &e = eqs.equations[v];
    auto on_stack = std::find(stack.begin(), stack.end(), v);
    if (on_stack != stack.end()) {
      used[static_cast<std::size_t>(on_stack - stack.begin())] = true;
      return Formula::var(e.name);
    }
    if (e.kind == Equation::Kind::True)
      return Formula::tt();
    if (e.kind == Equation::Kind::False)
      return Formula::ff();
    stack.push_back(v);
    used.push_back(false);
    std::vector<Formula> parts;
    for (const auto &b : e.branches)
      parts.push_back(Formula::nec(b.action, build(b.target)));
    bool recursive = used.back();
    stack.pop_back();
    used.pop_back();
    Formula body = Formula::conj(std::move(parts));
    return recursive ? Formula::max(e.name, body) : body;
  }
};

} // namespace

Formula stage6_rebuild(const EquationSystem &eqs) {
  if (eqs.equations.empty())
    return Formula::tt();
  Rebuilder r{eqs, {}, {}};
  return r.build(eqs.start);
}

// ---------------------------------------------------------------------------

NormalizationTrace normalize_traced(const Formula &f, const Domain &d) {
  require_fragment(f);
  NormalizationTrace t{false, f, f, {}, {}, {}, {}, f};
  if (is_shmlnf(f, d)) {
    t.already_normal = true;
    return t;
  }
  t.prepared = prepare(f, d);
  t.unfolded = stage1_unfold(t.prepared);
  t.equations = stage2_equations(t.unfolded);
  t.aligned = stage3_align(t.equations);
  t.minterms = stage4_minterms(t.aligned, d);
  t.unified = stage5_powerset(t.minterms, d);
  t.result = stage6_rebuild(t.unified);
  return t;
}

Formula normalize(const Formula &f, const Domain &d) {
  return normalize_traced(f, d).result;
}

} // namespace shmlenf
