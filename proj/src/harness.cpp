#include "shmlenf/harness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "shmlenf/bisim.hpp"
#include "shmlenf/error.hpp"
#include "shmlenf/model_check.hpp"
#include "shmlenf/normalizer.hpp"
#include "shmlenf/runtime.hpp"
#include "shmlenf/synthesizer.hpp"

namespace shmlenf {

const char *outcome_name(Outcome o) {
  switch (o) {
  case Outcome::Pass: return "pass";
  case Outcome::Fail: return "fail";
  case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string Verdict::to_string() const {
  std::string out = criterion + " " + subject + " " + outcome_name(outcome);
  if (!witness.empty())
    out += " " + witness;
  if (!note.empty())
    out += " (" + note + ")";
  return out;
}

Subject subject_of(std::string name, LTS lts) {
  std::size_t s = lts.initial();
  return {std::move(name), std::move(lts), s};
}

// ---------------------------------------------------------------------------
// Satisfiability

bool is_sat(const Formula &f, const Domain &d) {
  Formula n = normalize(f, d);
  while (n.is(Formula::Kind::Max))
    n = n.body();
  bool by_form = !n.is(Formula::Kind::False);
  LTS nil;
  nil.set_initial(nil.add_state("nil"));
  bool by_nil = satisfies(nil, 0, f);
  if (by_form != by_nil)
    throw Error("satisfiability cross-check failed for " + f.to_string());
  return by_form;
}

// ---------------------------------------------------------------------------
// Violating traces

namespace {

class Forcing {
public:
  Forcing(const LTS &lts, const Trace &t) : lts_(lts), trace_(t) {}

  bool run(std::size_t s, std::size_t i, const Formula &f) {
    switch (f.kind()) {
    case Formula::Kind::True:
      return false;
    case Formula::Kind::False:
      return i == trace_.size();
    case Formula::Kind::And:
      for (const auto &o : f.operands())
        if (run(s, i, o))
          return true;
      return false;
    case Formula::Kind::Nec:
    case Formula::Kind::Max:
      break;
    default:
      throw FragmentError("not an sHML formula: " + f.to_string());
    }
    std::string key = std::to_string(s) + "|" + std::to_string(i) + "|" +
                      f.key();
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    // A cycle through the same judgement contributes nothing to the least
    // relation.
    if (!active_.insert(key).second)
      return false;
    bool result = false;
    if (f.is(Formula::Kind::Max)) {
      result = run(s, i, unfold(f));
    } else if (i < trace_.size()) {
      if (auto sigma = accepts(f.action(), trace_[i])) {
        Formula next = substitute_data(f.body(), *sigma);
        for (std::size_t s2 : lts_.weak_step(s, trace_[i]))
          if (run(s2, i + 1, next)) {
            result = true;
            break;
          }
      }
    }
    active_.erase(key);
    memo_[key] = result;
    return result;
  }

private:
  const LTS &lts_;
  const Trace &trace_;
  std::map<std::string, bool> memo_;
  std::set<std::string> active_;
};

std::vector<Trace> by_length(const std::set<Trace> &ts) {
  std::vector<Trace> out(ts.begin(), ts.end());
  std::stable_sort(out.begin(), out.end(), [](const Trace &a, const Trace &b) {
    return a.size() < b.size();
  });
  return out;
}

std::string subject_name(const Formula &f, const Subject &p) {
  return "[" + f.to_string() + "]@" + p.name;
}

} // namespace

bool violates(const LTS &lts, std::size_t s, const Trace &t,
              const Formula &f) {
  return Forcing(lts, t).run(s, 0, f);
}

std::optional<Trace> violating_trace(const LTS &lts, std::size_t s,
                                     const Formula &f, std::size_t depth) {
  for (const auto &t : by_length(lts.traces(s, depth)))
    if (violates(lts, s, t, f))
      return t;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// after

Formula after(const Formula &f, const Label &u) {
  if (u.is_tau())
    return f;
  switch (f.kind()) {
  case Formula::Kind::True:
  case Formula::Kind::False:
    return f;
  case Formula::Kind::Max:
    return after(unfold(f), u);
  case Formula::Kind::Nec:
  case Formula::Kind::And: {
    std::vector<Formula> branches =
        f.is(Formula::Kind::Nec) ? std::vector<Formula>{f} : f.operands();
    for (const auto &b : branches) {
      if (!b.is(Formula::Kind::Nec))
        throw FragmentError("not a normal-form formula: " + f.to_string());
      if (auto sigma = accepts(b.action(), *u.action))
        return substitute_data(b.body(), *sigma);
    }
    return Formula::tt();
  }
  default:
    throw FragmentError("not a normal-form formula: " + f.to_string());
  }
}

// ---------------------------------------------------------------------------
// Enforcement checks

Verdict check_soundness(const Transducer &e, const Formula &f,
                        const Subject &p, const Domain &d, const Bounds &b) {
  Verdict v{"soundness", subject_name(f, p), Outcome::Pass, {}, {}};
  if (!is_sat(f, d)) {
    v.note = "vacuous: unsatisfiable";
    return v;
  }
  Composite c;
  try {
    c = composite_lts(e, p.lts, p.state, b.states);
  } catch (const BoundExceeded &ex) {
    v.outcome = Outcome::Inconclusive;
    v.note = ex.what();
    return v;
  }
  if (satisfies(c.lts, c.lts.initial(), f))
    return v;
  v.outcome = Outcome::Fail;
  if (auto t = violating_trace(c.lts, c.lts.initial(), f, b.depth))
    v.witness = trace_to_string(*t);
  else
    v.witness = config_to_string(c.configs.front(), p.lts);
  return v;
}

Verdict check_transparency(const Transducer &e, const Formula &f,
                           const Subject &p, const Bounds &b) {
  Verdict v{"transparency", subject_name(f, p), Outcome::Pass, {}, {}};
  if (!satisfies(p.lts, p.state, f)) {
    v.note = "vacuous: system violates the formula";
    return v;
  }
  Composite c;
  try {
    c = composite_lts(e, p.lts, p.state, b.states);
  } catch (const BoundExceeded &ex) {
    v.outcome = Outcome::Inconclusive;
    v.note = ex.what();
    return v;
  }
  auto r = bisim(c.lts, c.lts.initial(), p.lts, p.state);
  if (r.bisimilar)
    return v;
  v.outcome = Outcome::Fail;
  for (std::size_t i = 0; i < r.witness.size(); ++i)
    v.witness += (i ? "." : "") + r.witness[i];
  v.note = "enforced system on the left: " + r.explanation;
  return v;
}

namespace {

using States = std::set<std::size_t>;

std::map<Action, std::pair<States, States>>
successors(const LTS &a, const States &as, const LTS &b, const States &bs) {
  std::map<Action, std::pair<States, States>> out;
  for (std::size_t s : as)
    for (const auto &[act, t] : a.weak_moves(s))
      out[act].first.insert(t);
  for (std::size_t s : bs)
    for (const auto &[act, t] : b.weak_moves(s))
      out[act].second.insert(t);
  return out;
}

} // namespace

Verdict check_nvtt(const Transducer &e, const Formula &f, const Subject &p,
                   const Bounds &b) {
  Verdict v{"nvtt", subject_name(f, p), Outcome::Pass, {},
            "depth " + std::to_string(b.depth)};
  Composite c;
  try {
    c = composite_lts(e, p.lts, p.state, b.states);
  } catch (const BoundExceeded &ex) {
    v.outcome = Outcome::Inconclusive;
    v.note = ex.what();
    return v;
  }
  Trace t;
  std::function<bool(const States &, const States &)> walk =
      [&](const States &sys, const States &comp) {
        if (!violates(p.lts, p.state, t, f)) {
          States systems;
          for (std::size_t x : comp)
            systems.insert(c.configs[x].system);
          for (std::size_t s : sys)
            if (!systems.count(s)) {
              v.outcome = Outcome::Fail;
              v.witness = trace_to_string(t);
              v.note = "system reaches " + p.lts.name(s) +
                       " but the enforced system does not";
              return false;
            }
          for (std::size_t x : comp)
            if (!sys.count(c.configs[x].system)) {
              v.outcome = Outcome::Fail;
              v.witness = trace_to_string(t);
              v.note = "enforced system reaches " +
                       config_to_string(c.configs[x], p.lts) +
                       " but the system does not";
              return false;
            }
        }
        if (t.size() >= b.depth)
          return true;
        for (const auto &[a, next] : successors(p.lts, sys, c.lts, comp)) {
          t.push_back(a);
          bool ok = walk(next.first, next.second);
          t.pop_back();
          if (!ok)
            return false;
        }
        return true;
      };
  walk(p.lts.tau_closure(p.state), c.lts.tau_closure(c.lts.initial()));
  return v;
}

namespace {

Verdict over_corpus(const std::string &criterion, const Formula &f,
                    const std::vector<Subject> &ps,
                    const std::function<Verdict(const Subject &)> &check) {
  Verdict total{criterion, "[" + f.to_string() + "]", Outcome::Pass, {}, {}};
  for (const auto &p : ps) {
    Verdict v = check(p);
    if (v.outcome == Outcome::Fail)
      return v;
    if (v.outcome == Outcome::Inconclusive &&
        total.outcome == Outcome::Pass)
      total = v;
  }
  return total;
}

} // namespace

Verdict check_soundness(const Formula &f, const std::vector<Subject> &ps,
                        const Domain &d, const Bounds &b) {
  Transducer e = compile(f, d);
  return over_corpus("soundness", f, ps, [&](const Subject &p) {
    return check_soundness(e, f, p, d, b);
  });
}

Verdict check_transparency(const Formula &f, const std::vector<Subject> &ps,
                           const Domain &d, const Bounds &b) {
  Transducer e = compile(f, d);
  return over_corpus("transparency", f, ps, [&](const Subject &p) {
    return check_transparency(e, f, p, b);
  });
}

Verdict check_nvtt(const Formula &f, const std::vector<Subject> &ps,
                   const Domain &d, const Bounds &b) {
  Transducer e = compile(f, d);
  return over_corpus("nvtt", f, ps, [&](const Subject &p) {
    return check_nvtt(e, f, p, b);
  });
}

Verdict check_violation_semantics(const Formula &f, const Subject &p,
                                  const Domain &d, const Bounds &b) {
  Verdict v{"violation-sem", subject_name(f, p), Outcome::Pass, {},
            "depth " + std::to_string(b.depth)};
  bool sat = satisfies(p.lts, p.state, f);
  std::set<Trace> candidates = p.lts.traces(p.state, b.depth);
  if (b.depth > 0)
    for (const auto &t : p.lts.traces(p.state, b.depth - 1))
      for (const auto &a : d.actions()) {
        Trace t2 = t;
        t2.push_back(a);
        candidates.insert(t2);
      }
  bool found = false;
  for (const auto &t : by_length(candidates)) {
    if (!violates(p.lts, p.state, t, f))
      continue;
    found = true;
    if (sat) {
      v.outcome = Outcome::Fail;
      v.witness = trace_to_string(t);
      v.note = "violating trace of a satisfying system";
      return v;
    }
    if (p.lts.after_trace(p.state, t).empty()) {
      v.outcome = Outcome::Fail;
      v.witness = trace_to_string(t);
      v.note = "violating trace the system cannot perform";
      return v;
    }
  }
  if (!sat && !found) {
    v.outcome = Outcome::Inconclusive;
    v.note = "no violating trace up to depth " + std::to_string(b.depth);
  }
  return v;
}

Verdict check_after_lemma(const Formula &f, const Subject &p,
                          const Bounds &b) {
  Verdict v{"after-lemma", subject_name(f, p), Outcome::Pass, {},
            "depth " + std::to_string(b.depth)};
  for (const auto &t : by_length(p.lts.traces(p.state, b.depth))) {
    if (t.empty() || violates(p.lts, p.state, t, f))
      continue;
    Trace rest(t.begin() + 1, t.end());
    Formula residual = after(f, Label::of(t.front()));
    for (std::size_t s2 : p.lts.after_trace(p.state, {t.front()}))
      if (violates(p.lts, s2, rest, residual)) {
        v.outcome = Outcome::Fail;
        v.witness = trace_to_string(t);
        v.note = "residual " + residual.to_string() + " violated from " +
                 p.lts.name(s2);
        return v;
      }
  }
  return v;
}

bool transducer_bisimilar(const Transducer &a, const Transducer &b,
                          const Domain &d, std::size_t bound) {
  auto ga = transducer_graph(a, d, bound);
  auto gb = transducer_graph(b, d, bound);
  return bisim(Graph{ga.edges}, 0, Graph{gb.edges}, 0).bisimilar;
}

Verdict check_step_lemma(const Formula &f, const Subject &p, const Domain &d,
                         const Bounds &b) {
  Verdict v{"step-lemma", subject_name(f, p), Outcome::Pass, {}, {}};
  Transducer e = optimize(synthesize(f, d));
  for (const auto &st : istep(e, p.lts, p.state)) {
    if (st.label.is_tau())
      continue;
    bool strong = false;
    for (const auto &edge : p.lts.edges(p.state))
      if (edge.label == st.label && edge.target == st.target.system)
        strong = true;
    Transducer expected = optimize(synthesize(after(f, st.label), d));
    if (!strong ||
        !transducer_bisimilar(st.target.enforcer, expected, d, b.states * 64)) {
      v.outcome = Outcome::Fail;
      v.witness = st.label.to_string();
      v.note = strong ? "residual enforcer " + st.target.enforcer.to_string() +
                            " differs from " + expected.to_string()
                      : "system cannot take the step";
      return v;
    }
  }
  return v;
}

} // namespace shmlenf
