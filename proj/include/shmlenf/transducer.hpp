#ifndef SHMLENF_TRANSDUCER_HPP
#define SHMLENF_TRANSDUCER_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shmlenf/symbolic.hpp"

namespace shmlenf {

/// Enforcer term: id, {p when c -> p'}.e, sums, rec x.e and x. A missing
/// target pattern stands for tau (suppression).
class Transducer {
public:
  enum class Kind { Id, Prefix, Sum, Rec, Var };

  static Transducer id();
  /// `target` nullopt means tau. Throws FragmentError when the target binds
  /// variables.
  static Transducer prefix(SymbolicAction source, std::optional<Pattern> target,
                           Transducer next);
  /// Prefix whose target is the underlined source pattern.
  static Transducer identity_prefix(SymbolicAction source, Transducer next);
  static Transducer suppress(SymbolicAction source, Transducer next);
  /// n-ary sum; needs at least one branch, one branch is returned as is.
  static Transducer sum(std::vector<Transducer> branches);
  static Transducer rec(std::string var, Transducer body);
  static Transducer var(std::string name);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  const SymbolicAction &source() const;
  const std::optional<Pattern> &target() const;
  /// Prefix continuation or rec body.
  const Transducer &body() const;
  const std::vector<Transducer> &branches() const;
  const std::string &name() const;

  const std::string &key() const;
  std::string to_string() const;

  friend bool operator==(const Transducer &a, const Transducer &b) {
    return a.node_ == b.node_ || a.key() == b.key();
  }
  friend bool operator<(const Transducer &a, const Transducer &b) {
    return a.key() < b.key();
  }

  struct Node; // opaque

private:
  explicit Transducer(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Transducer parse_transducer(std::string_view text,
                            const Domain *domain = nullptr);

std::set<std::string> free_rec_vars(const Transducer &e);
std::set<std::string> free_data_vars(const Transducer &e);

Transducer substitute_data(const Transducer &e, const Substitution &s);
/// e[g/x]; `g` is expected closed.
Transducer substitute_rec(const Transducer &e, const std::string &x,
                          const Transducer &g);

/// All transformations e --g>u--> e' of a closed transducer for one extended
/// action, in source order (rules eId, eSel, eRec, eTrn).
std::vector<std::pair<Label, Transducer>> transforms(const Transducer &e,
                                                     const ExtendedAction &g);

struct TStep {
  ExtendedAction input;
  Label output;
  Transducer next;
};

/// Every transformation over the insertion marker and the actions of `d`.
std::vector<TStep> tstep(const Transducer &e, const Domain &d);

/// Canonical key invariant under renaming of recursion variables and data
/// binders.
std::string alpha_key(const Transducer &e);
inline bool alpha_equal(const Transducer &a, const Transducer &b) {
  return alpha_key(a) == alpha_key(b);
}

/// Ports and payloads the term mentions literally.
void collect_values(const Transducer &e, std::set<std::string> &ports,
                    std::set<std::string> &payloads);

} // namespace shmlenf

#endif
