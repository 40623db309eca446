#ifndef SHMLENF_RUNTIME_HPP
#define SHMLENF_RUNTIME_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "shmlenf/lts.hpp"
#include "shmlenf/transducer.hpp"

namespace shmlenf {

enum class Rule { Trn, Asy, Ins, Ter };

/// "iTrn", "iAsy", "iIns", "iTer".
const char *rule_name(Rule r);

/// A monitored configuration <e, p>; the system is a state of an LTS.
struct Config {
  Transducer enforcer;
  std::size_t system;
};

struct IStep {
  Rule rule;
  Label label;
  Config target;
};

/// Instrumented transitions of <e, s>, ordered iTrn, iAsy, iIns, iTer and by
/// source order inside each rule.
std::vector<IStep> istep(const Transducer &e, const LTS &sys, std::size_t s);

/// Reachable composite system. `configs[i]` is the configuration behind
/// state i of `lts`.
struct Composite {
  LTS lts;
  std::vector<Config> configs;
};

/// Throws BoundExceeded past `bound` configurations (for instance under
/// unbounded insertion).
Composite composite_lts(const Transducer &e, const LTS &sys, std::size_t s,
                        std::size_t bound);

std::string config_to_string(const Config &c, const LTS &sys);

/// Resolution of nondeterminism for `simulate`.
///
/// first: take the highest-priority rule that is enabled; among its
/// candidates prefer, in source order, one leading to a configuration not yet
/// visited in this run, then one that leaves the current configuration, then
/// the first.
/// random:SEED: uniform choice among all candidates.
/// script: follow a list of labels, taking the first candidate with the next
/// label; stops when none matches.
struct Policy {
  enum class Kind { First, Random, Script };
  Kind kind = Kind::First;
  std::uint64_t seed = 0;
  std::vector<std::string> script;

  /// "first", "random:SEED" or "script:l1,l2,...".
  static Policy parse(std::string_view text);
};

struct SimStep {
  Rule rule;
  Label label;
  Config config;
};

/// One run of at most `steps` steps; stops early at deadlock.
std::vector<SimStep> simulate(const Transducer &e, const LTS &sys,
                              std::size_t s, std::size_t steps,
                              const Policy &policy);

/// The transducer's own LTS, labelled "g>u", for bisimilarity of enforcers.
struct TransducerGraph {
  std::vector<Transducer> states;
  std::vector<std::vector<std::pair<std::string, std::size_t>>> edges;
};
TransducerGraph transducer_graph(const Transducer &e, const Domain &d,
                                 std::size_t bound);

} // namespace shmlenf

#endif
