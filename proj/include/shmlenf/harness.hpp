#ifndef SHMLENF_HARNESS_HPP
#define SHMLENF_HARNESS_HPP

// Finite checks of the enforcement criteria: satisfiability, sound and
// transparent enforcement, violating traces, `after` and transparency
// along non-violating traces.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "shmlenf/formula.hpp"
#include "shmlenf/lts.hpp"
#include "shmlenf/transducer.hpp"

namespace shmlenf {

enum class Outcome { Pass, Fail, Inconclusive };

const char *outcome_name(Outcome o);

struct Verdict {
  std::string criterion;
  std::string subject;
  Outcome outcome = Outcome::Pass;
  /// Present on failure: a trace, label path or state.
  std::string witness;
  std::string note;

  bool passed() const { return outcome == Outcome::Pass; }
  /// `criterion subject outcome [witness]`.
  std::string to_string() const;
};

/// A named system: an LTS and the state under scrutiny.
struct Subject {
  std::string name;
  LTS lts;
  std::size_t state = 0;
};

Subject subject_of(std::string name, LTS lts);

struct Bounds {
  /// Composite and transducer state caps.
  std::size_t states = 64;
  /// Trace depth for trace-based checks.
  std::size_t depth = 6;
};

/// Decided through the normal form (top-level ff) and cross-checked against
/// nil; throws Error if the two disagree.
bool is_sat(const Formula &f, const Domain &d);

/// Least forcing relation: does `s` violate `f` along `t`?
bool violates(const LTS &lts, std::size_t s, const Trace &t, const Formula &f);

/// Shortest violating trace of length at most `depth`, if any.
std::optional<Trace> violating_trace(const LTS &lts, std::size_t s,
                                     const Formula &f, std::size_t depth);

/// Residual of a normal-form formula after one label.
Formula after(const Formula &f, const Label &u);

Verdict check_soundness(const Transducer &e, const Formula &f,
                        const Subject &p, const Domain &d,
                        const Bounds &b = {});
Verdict check_transparency(const Transducer &e, const Formula &f,
                           const Subject &p, const Bounds &b = {});
Verdict check_nvtt(const Transducer &e, const Formula &f, const Subject &p,
                   const Bounds &b = {});

/// The same checks over a corpus with the compiled enforcer of `f`; the
/// first failing subject decides, inconclusive results are kept unless a
/// failure is found.
Verdict check_soundness(const Formula &f, const std::vector<Subject> &ps,
                        const Domain &d, const Bounds &b = {});
Verdict check_transparency(const Formula &f, const std::vector<Subject> &ps,
                           const Domain &d, const Bounds &b = {});
Verdict check_nvtt(const Formula &f, const std::vector<Subject> &ps,
                   const Domain &d, const Bounds &b = {});

/// Both violating-trace conditions over the traces of `p` up to the depth
/// bound, extended by one arbitrary action.
Verdict check_violation_semantics(const Formula &f, const Subject &p,
                                  const Domain &d, const Bounds &b = {});

/// Not violating along a.t and p =a=> p' implies p' not violating t against
/// after(f, a); `f` in normal form.
Verdict check_after_lemma(const Formula &f, const Subject &p,
                          const Bounds &b = {});
/// Every strong composite step <[f], p> -a-> <e', p'> has e' equivalent to
/// the enforcer of after(f, a); `f` in normal form.
Verdict check_step_lemma(const Formula &f, const Subject &p, const Domain &d,
                         const Bounds &b = {});

/// Strong bisimilarity of transducers over their g>u labelled graphs.
bool transducer_bisimilar(const Transducer &a, const Transducer &b,
                          const Domain &d, std::size_t bound = 4096);

} // namespace shmlenf

#endif
