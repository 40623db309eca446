#ifndef SHMLENF_LTS_HPP
#define SHMLENF_LTS_HPP

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shmlenf/symbolic.hpp"

namespace shmlenf {

using Trace = std::vector<Action>;

std::string trace_to_string(const Trace &t);

/// A finite labelled transition system over Act ∪ {tau}. States are dense
/// indices with display names.
class LTS {
public:
  struct Edge {
    Label label;
    std::size_t target;
  };

  std::size_t add_state(std::string name);
  void add_transition(std::size_t from, Label label, std::size_t to);
  void set_initial(std::size_t s) { initial_ = s; }

  std::size_t size() const { return names_.size(); }
  std::size_t initial() const { return initial_; }
  const std::string &name(std::size_t s) const { return names_[s]; }
  const std::vector<Edge> &edges(std::size_t s) const { return edges_[s]; }
  std::size_t transition_count() const;

  /// States reachable by zero or more tau steps, `s` included.
  std::set<std::size_t> tau_closure(std::size_t s) const;
  /// (tau)* a (tau)* derivatives of `s`.
  std::set<std::size_t> weak_step(std::size_t s, const Action &a) const;
  /// All weak observable moves of `s`, deduplicated and sorted.
  std::vector<std::pair<Action, std::size_t>> weak_moves(std::size_t s) const;
  /// States reachable from `s` along the weak trace `t`.
  std::set<std::size_t> after_trace(std::size_t s, const Trace &t) const;
  /// Observable traces of length at most `k`; always contains the empty trace.
  std::set<Trace> traces(std::size_t s, std::size_t k) const;

  /// Every observable action labelling some transition.
  std::set<Action> alphabet() const;

  /// Line-oriented rendering: `init s` then `s -label-> t` lines.
  std::string to_text() const;

private:
  std::vector<std::string> names_;
  std::vector<std::vector<Edge>> edges_;
  std::size_t initial_ = 0;
};

/// Parses `src -label-> dst` lines plus one `init state` line. Labels are
/// `tau` or actions; `#` starts a comment.
LTS parse_lts(std::string_view text, const Domain *domain = nullptr);

} // namespace shmlenf

#endif
