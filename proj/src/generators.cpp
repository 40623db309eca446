#include "shmlenf/generators.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace shmlenf {

namespace {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }
  /// Index drawn with the given weights.
  std::size_t pick(std::initializer_list<unsigned> weights) {
    std::vector<unsigned> w(weights);
    return std::discrete_distribution<std::size_t>(w.begin(), w.end())(engine_);
  }
  template <typename T> const T &element(const std::vector<T> &v) {
    return v[below(v.size())];
  }

private:
  std::mt19937_64 engine_;
};

struct DataVar {
  std::string name;
  bool port;
};

class FormulaGen {
public:
  FormulaGen(const Domain &d, std::uint64_t seed) : d_(d), rng_(seed) {}

  Formula run(std::size_t budget, std::vector<std::string> usable,
              std::vector<std::string> pending, std::vector<DataVar> scope) {
    if (budget <= 1)
      return leaf(usable);
    std::size_t choice = rng_.pick({1, 5, budget >= 3 ? 2u : 0u,
                                    budget >= 3 ? 2u : 0u});
    switch (choice) {
    case 0:
      return leaf(usable);
    case 1: {
      auto [sa, binders] = action(scope);
      usable.insert(usable.end(), pending.begin(), pending.end());
      scope.insert(scope.end(), binders.begin(), binders.end());
      return Formula::nec(sa, run(budget - 1, usable, {}, scope));
    }
    case 2: {
      std::size_t k = 1 + rng_.below(budget - 2);
      return Formula::conj({run(k, usable, pending, scope),
                            run(budget - 1 - k, usable, pending, scope)});
    }
    default: {
      std::string x = "X" + std::to_string(++logic_);
      pending.push_back(x);
      return Formula::max(x, run(budget - 1, usable, pending, scope));
    }
    }
  }

private:
  Formula leaf(const std::vector<std::string> &usable) {
    switch (rng_.pick({2, 2, usable.empty() ? 0u : 3u})) {
    case 0:
      return Formula::tt();
    case 1:
      return Formula::ff();
    default:
      return Formula::var(rng_.element(usable));
    }
  }

  Slot slot(bool port, const std::vector<DataVar> &scope,
            std::vector<DataVar> &binders) {
    std::vector<std::string> visible;
    for (const auto &v : scope)
      if (v.port == port)
        visible.push_back(v.name);
    switch (rng_.pick({4, 2, visible.empty() ? 0u : 2u})) {
    case 0:
      return Slot::value(rng_.element(port ? d_.ports() : d_.payloads()));
    case 1: {
      std::string x = "x" + std::to_string(++data_);
      binders.push_back({x, port});
      return Slot::binder(x);
    }
    default:
      return Slot::free(rng_.element(visible));
    }
  }

  std::pair<SymbolicAction, std::vector<DataVar>>
  action(const std::vector<DataVar> &scope) {
    std::vector<DataVar> binders;
    Slot port = slot(true, scope, binders);
    Direction dir = rng_.below(2) ? Direction::Output : Direction::Input;
    Slot payload = slot(false, scope, binders);
    Condition c = Condition::truth();
    if (!binders.empty() && rng_.below(3) == 0) {
      const DataVar &b = rng_.element(binders);
      Term lhs = Term::var(b.name);
      Term rhs = Term::value(rng_.element(b.port ? d_.ports() : d_.payloads()));
      c = rng_.below(2) ? Condition::neq(lhs, rhs) : Condition::eq(lhs, rhs);
    }
    return {{Pattern::make(port, dir, payload), c}, binders};
  }

  const Domain &d_;
  Rng rng_;
  int logic_ = 0;
  int data_ = 0;
};

class ProcessGen {
public:
  ProcessGen(const Domain &d, std::uint64_t seed) : d_(d), rng_(seed) {}

  Process run(std::size_t budget, std::vector<std::string> usable,
              std::vector<std::string> pending) {
    if (budget == 0) {
      if (!usable.empty() && rng_.below(2))
        return Process::var(rng_.element(usable));
      return Process::nil();
    }
    std::size_t choice = rng_.pick({5, budget >= 2 ? 2u : 0u,
                                    pending.empty() ? 2u : 0u, 1});
    switch (choice) {
    case 0: {
      Label u = rng_.below(8) == 0 ? Label::tau()
                                   : Label::of(rng_.element(d_.actions()));
      usable.insert(usable.end(), pending.begin(), pending.end());
      return Process::prefix(u, run(budget - 1, usable, {}));
    }
    case 1: {
      std::size_t k = 1 + rng_.below(budget - 1);
      return Process::choice(
          {run(k, usable, pending), run(budget - k, usable, pending)});
    }
    case 2: {
      std::string x = "P" + std::to_string(++vars_);
      pending.push_back(x);
      return Process::rec(x, run(budget, usable, pending));
    }
    default:
      return run(0, usable, pending);
    }
  }

private:
  const Domain &d_;
  Rng rng_;
  int vars_ = 0;
};

} // namespace

Formula gen_formula(const Domain &d, std::size_t size, std::uint64_t seed) {
  return FormulaGen(d, seed).run(std::max<std::size_t>(size, 2), {}, {}, {});
}

Process gen_process(const Domain &d, std::size_t size, std::uint64_t seed) {
  return ProcessGen(d, seed).run(size, {}, {});
}

std::vector<CorpusEntry> random_corpus(const Domain &d, std::size_t n,
                                       std::uint64_t seed,
                                       std::size_t formula_size,
                                       std::size_t process_size) {
  std::mt19937_64 seeds(seed);
  std::vector<CorpusEntry> out;
  for (std::size_t k = 0; k < n; ++k) {
    std::uint64_t fs = seeds(), ps = seeds();
    out.push_back({"r" + std::to_string(k), gen_formula(d, formula_size, fs),
                   gen_process(d, process_size, ps)});
  }
  return out;
}

} // namespace shmlenf
