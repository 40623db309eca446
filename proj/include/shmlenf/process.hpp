#ifndef SHMLENF_PROCESS_HPP
#define SHMLENF_PROCESS_HPP

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shmlenf/lts.hpp"
#include "shmlenf/symbolic.hpp"

namespace shmlenf {

/// Regular CCS term: nil, u.P, P + Q, rec X.P, X.
class Process {
public:
  enum class Kind { Nil, Prefix, Choice, Rec, Var };

  static Process nil();
  static Process prefix(Label u, Process next);
  /// n-ary choice; zero branches give nil, one gives the branch.
  static Process choice(std::vector<Process> branches);
  static Process rec(std::string var, Process body);
  static Process var(std::string name);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  const Label &label() const;
  /// Prefix continuation or rec body.
  const Process &body() const;
  const std::vector<Process> &branches() const;
  const std::string &name() const;

  const std::string &key() const;
  std::string to_string() const;

  friend bool operator==(const Process &a, const Process &b) {
    return a.node_ == b.node_ || a.key() == b.key();
  }
  friend bool operator<(const Process &a, const Process &b) {
    return a.key() < b.key();
  }

private:
  struct Node;
  explicit Process(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Process parse_process(std::string_view text, const Domain *domain = nullptr);

/// P[Q/X]. Q is expected closed, so no capture can occur.
Process substitute(const Process &p, const std::string &x, const Process &q);

/// One-step transitions of a closed term, in source order.
std::vector<std::pair<Label, Process>> step(const Process &p);

/// Reachable LTS from `p`; states are terms up to structural identity.
/// Throws BoundExceeded beyond `bound` states.
LTS reachable(const Process &p, std::size_t bound);

/// Observable actions a term mentions.
std::set<Action> process_actions(const Process &p);

} // namespace shmlenf

#endif
