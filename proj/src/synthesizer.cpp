#include "shmlenf/synthesizer.hpp"

#include <cctype>
#include <map>
#include <set>

#include "shmlenf/error.hpp"
#include "shmlenf/normalizer.hpp"

namespace shmlenf {

namespace {

void logic_names(const Formula &f, std::set<std::string> &out) {
  if (f.is(Formula::Kind::Max) || f.is(Formula::Kind::Var))
    out.insert(f.name());
  for (const auto &o : f.operands())
    logic_names(o, out);
}

class Synthesizer {
public:
  explicit Synthesizer(const Formula &f) {
    std::set<std::string> names;
    logic_names(f, names);
    for (const auto &n : names) {
      std::string r = n;
      r[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(r[0])));
      while (used_.count(r))
        r += "_";
      used_.insert(r);
      rec_names_[n] = r;
    }
  }

  Transducer run(const Formula &f) {
    switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return Transducer::id();
    case Formula::Kind::Var:
      return Transducer::var(rec_names_.at(f.name()));
    case Formula::Kind::Max:
      return Transducer::rec(rec_names_.at(f.name()), run(f.body()));
    case Formula::Kind::Nec:
      return conjunction({f});
    case Formula::Kind::And:
      return conjunction(f.operands());
    default:
      throw FragmentError("not a normal-form formula: " + f.to_string());
    }
  }

private:
  std::string fresh() {
    std::string y;
    do
      y = "y" + std::to_string(++counter_);
    while (used_.count(y));
    used_.insert(y);
    return y;
  }

  Transducer conjunction(const std::vector<Formula> &ops) {
    if (ops.empty())
      return Transducer::id();
    std::string y = fresh();
    std::vector<Transducer> branches;
    for (const auto &o : ops) {
      if (!o.is(Formula::Kind::Nec))
        throw FragmentError("not a normal-form formula: " + o.to_string());
      if (o.body().is(Formula::Kind::False))
        branches.push_back(Transducer::suppress(o.action(), Transducer::var(y)));
      else
        branches.push_back(
            Transducer::identity_prefix(o.action(), run(o.body())));
    }
    return Transducer::rec(y, Transducer::sum(std::move(branches)));
  }

  std::map<std::string, std::string> rec_names_;
  std::set<std::string> used_;
  int counter_ = 0;
};

} // namespace

Transducer synthesize(const Formula &f, const Domain &d) {
  if (!is_shmlnf(f, d) || !f.free_logic().empty() || !f.free_data().empty())
    throw FragmentError("not a closed normal-form formula: " + f.to_string());
  return Synthesizer(f).run(f);
}

Transducer optimize(const Transducer &e) {
  switch (e.kind()) {
  case Transducer::Kind::Id:
  case Transducer::Kind::Var:
    return e;
  case Transducer::Kind::Prefix:
    return Transducer::prefix(e.source(), e.target(), optimize(e.body()));
  case Transducer::Kind::Sum: {
    std::vector<Transducer> branches;
    for (const auto &b : e.branches())
      branches.push_back(optimize(b));
    return Transducer::sum(std::move(branches));
  }
  case Transducer::Kind::Rec: {
    Transducer body = optimize(e.body());
    if (!free_rec_vars(body).count(e.name()))
      return body;
    return Transducer::rec(e.name(), body);
  }
  }
  return e;
}

Transducer compile(const Formula &f, const Domain &d) {
  return optimize(synthesize(normalize(f, d), d));
}

} // namespace shmlenf
