#include "shmlenf/model_check.hpp"

#include <map>
#include <vector>

#include "shmlenf/error.hpp"

namespace shmlenf {

namespace {

class Checker {
public:
  explicit Checker(const LTS &lts) : lts_(lts), weak_(lts.size()) {
    for (std::size_t s = 0; s < lts.size(); ++s)
      weak_[s] = lts.weak_moves(s);
  }

  StateSet eval(const Formula &f, const Valuation &rho) {
    switch (f.kind()) {
    case Formula::Kind::True:
      return all();
    case Formula::Kind::False:
      return {};
    case Formula::Kind::Var: {
      auto it = rho.find(f.name());
      if (it == rho.end())
        throw Error("free logical variable '" + f.name() + "'");
      return it->second;
    }
    case Formula::Kind::And: {
      StateSet acc = all();
      for (const auto &o : f.operands()) {
        StateSet next;
        StateSet s = eval(o, rho);
        for (std::size_t x : acc)
          if (s.count(x))
            next.insert(x);
        acc = std::move(next);
      }
      return acc;
    }
    case Formula::Kind::Or: {
      StateSet acc;
      for (const auto &o : f.operands()) {
        StateSet s = eval(o, rho);
        acc.insert(s.begin(), s.end());
      }
      return acc;
    }
    case Formula::Kind::Nec:
    case Formula::Kind::Pos:
      return modal(f, rho);
    case Formula::Kind::Max:
    case Formula::Kind::Min: {
      bool greatest = f.is(Formula::Kind::Max);
      Valuation inner = rho;
      StateSet current = greatest ? all() : StateSet{};
      while (true) {
        inner[f.name()] = current;
        StateSet next = eval(f.body(), inner);
        if (next == current)
          return current;
        current = std::move(next);
      }
    }
    }
    return {};
  }

private:
  StateSet all() const {
    StateSet s;
    for (std::size_t i = 0; i < lts_.size(); ++i)
      s.insert(s.end(), i);
    return s;
  }

  StateSet modal(const Formula &f, const Valuation &rho) {
    bool necessity = f.is(Formula::Kind::Nec);
    const SymbolicAction &sa = f.action();
    std::map<std::string, StateSet> instances;
    auto holds_at = [&](const Substitution &sigma, std::size_t t) {
      Formula body = substitute_data(f.body(), sigma);
      auto it = instances.find(body.key());
      if (it == instances.end())
        it = instances.emplace(body.key(), eval(body, rho)).first;
      return it->second.count(t) > 0;
    };
    StateSet out;
    for (std::size_t s = 0; s < lts_.size(); ++s) {
      bool result = necessity;
      for (const auto &[a, t] : weak_[s]) {
        auto sigma = accepts(sa, a);
        if (!sigma)
          continue;
        bool inside = holds_at(*sigma, t);
        if (necessity && !inside) {
          result = false;
          break;
        }
        if (!necessity && inside) {
          result = true;
          break;
        }
      }
      if (result)
        out.insert(s);
    }
    return out;
  }

  const LTS &lts_;
  std::vector<std::vector<std::pair<Action, std::size_t>>> weak_;
};

} // namespace

StateSet mc_eval(const Formula &f, const LTS &lts, const Valuation &v) {
  return Checker(lts).eval(f, v);
}

bool satisfies(const LTS &lts, std::size_t state, const Formula &f) {
  return mc_eval(f, lts).count(state) > 0;
}

// ---------------------------------------------------------------------------
// Satisfaction-relation oracle

bool sat_oracle(const LTS &lts, std::size_t state, const Formula &f,
                std::size_t bound) {
  if (!is_shml(f))
    throw FragmentError("satisfaction oracle needs an sHML formula");
  if (!free_logic_vars(f).empty() || !free_data_vars(f).empty())
    throw FragmentError("satisfaction oracle needs a closed formula");

  // Pairs are (state, formula); each pair lists the pairs its membership
  // depends on, all of which must stay in the relation.
  struct Pair {
    std::size_t state;
    Formula formula;
    std::vector<std::size_t> needs;
    bool in = true;
  };
  std::vector<Pair> pairs;
  std::map<std::pair<std::size_t, std::string>, std::size_t> index;
  std::vector<std::size_t> work;
  auto intern = [&](std::size_t s, const Formula &g) {
    auto [it, fresh] = index.emplace(std::make_pair(s, g.key()), pairs.size());
    if (fresh) {
      if (pairs.size() >= bound)
        throw BoundExceeded("satisfaction closure exceeds " +
                            std::to_string(bound) + " pairs");
      pairs.push_back({s, g, {}, true});
      work.push_back(it->second);
    }
    return it->second;
  };
  std::vector<std::vector<std::pair<Action, std::size_t>>> weak(lts.size());
  for (std::size_t s = 0; s < lts.size(); ++s)
    weak[s] = lts.weak_moves(s);

  std::size_t root = intern(state, f);
  while (!work.empty()) {
    std::size_t i = work.back();
    work.pop_back();
    std::size_t s = pairs[i].state;
    Formula g = pairs[i].formula;
    std::vector<std::size_t> needs;
    switch (g.kind()) {
    case Formula::Kind::True:
      break;
    case Formula::Kind::False:
      pairs[i].in = false;
      break;
    case Formula::Kind::And:
      for (const auto &o : g.operands())
        needs.push_back(intern(s, o));
      break;
    case Formula::Kind::Nec:
      for (const auto &[a, t] : weak[s])
        if (auto sigma = accepts(g.action(), a))
          needs.push_back(intern(t, substitute_data(g.body(), *sigma)));
      break;
    case Formula::Kind::Max:
      needs.push_back(intern(s, unfold(g)));
      break;
    default:
      throw FragmentError("unexpected formula in satisfaction closure: " +
                          g.to_string());
    }
    pairs[i].needs = std::move(needs);
  }

  // Remove pairs whose requirements fail until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto &p : pairs) {
      if (!p.in)
        continue;
      for (std::size_t n : p.needs)
        if (!pairs[n].in) {
          p.in = false;
          changed = true;
          break;
        }
    }
  }
  return pairs[root].in;
}

} // namespace shmlenf
