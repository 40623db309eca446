#ifndef SHMLENF_SYMBOLIC_HPP
#define SHMLENF_SYMBOLIC_HPP

// Concrete actions, symbolic patterns and filtering conditions, and the
// finite-domain reasoning built on them (matching, denotation,
// satisfiability, disjointness).

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace shmlenf {

enum class Direction { Input, Output };

inline char direction_symbol(Direction d) {
  return d == Direction::Input ? '?' : '!';
}

/// An observable action `port?payload` or `port!payload`.
struct Action {
  std::string port;
  Direction direction = Direction::Input;
  std::string payload;

  std::string to_string() const;
  friend auto operator<=>(const Action &, const Action &) = default;
};

Action parse_action(std::string_view text);

/// System-side action or the insertion marker.
struct ExtendedAction {
  std::optional<Action> action;

  static ExtendedAction insertion() { return {}; }
  static ExtendedAction of(Action a) { return {std::move(a)}; }
  bool is_insertion() const { return !action.has_value(); }
  std::string to_string() const;
  friend auto operator<=>(const ExtendedAction &,
                          const ExtendedAction &) = default;
};

/// Transition label: an observable action or the silent label tau.
struct Label {
  std::optional<Action> action;

  static Label tau() { return {}; }
  static Label of(Action a) { return {std::move(a)}; }
  bool is_tau() const { return !action.has_value(); }
  std::string to_string() const;
  friend auto operator<=>(const Label &, const Label &) = default;
};

/// The finite value universe that symbolic actions range over.
class Domain {
public:
  Domain() = default;
  Domain(std::vector<std::string> ports, std::vector<std::string> payloads);

  const std::vector<std::string> &ports() const { return ports_; }
  const std::vector<std::string> &payloads() const { return payloads_; }
  /// Ports and payloads merged; conditions compare untyped names.
  const std::vector<std::string> &values() const { return values_; }
  /// All actions, ordered by port, then direction (input first), then payload.
  const std::vector<Action> &actions() const { return actions_; }

  bool empty() const { return ports_.empty(); }
  bool contains(const Action &a) const;
  bool is_value(const std::string &name) const;

  std::string to_string() const;
  friend bool operator==(const Domain &, const Domain &) = default;

private:
  std::vector<std::string> ports_;
  std::vector<std::string> payloads_;
  std::vector<std::string> values_;
  std::vector<Action> actions_;
};

using Substitution = std::map<std::string, std::string>;
using Renaming = std::map<std::string, std::string>;

struct Slot {
  enum class Kind { Value, Free, Binder };
  Kind kind = Kind::Value;
  std::string name;

  static Slot value(std::string v) { return {Kind::Value, std::move(v)}; }
  static Slot free(std::string x) { return {Kind::Free, std::move(x)}; }
  static Slot binder(std::string x) { return {Kind::Binder, std::move(x)}; }

  std::string to_string() const;
  friend auto operator<=>(const Slot &, const Slot &) = default;
};

/// `port-slot ? payload-slot` / `port-slot ! payload-slot`, or the insertion
/// pattern `*`.
struct Pattern {
  bool insertion = false;
  Slot port;
  Direction direction = Direction::Input;
  Slot payload;

  static Pattern insert() { return Pattern{true, {}, Direction::Input, {}}; }
  static Pattern make(Slot port, Direction d, Slot payload) {
    return Pattern{false, std::move(port), d, std::move(payload)};
  }
  static Pattern literal(const Action &a) {
    return make(Slot::value(a.port), a.direction, Slot::value(a.payload));
  }

  std::vector<std::string> binders() const;
  std::vector<std::string> free_vars() const;
  bool closed() const { return free_vars().empty(); }
  /// Every slot is a binder.
  bool normalised() const;

  Pattern substitute(const Substitution &s) const;
  Pattern rename(const Renaming &r) const;
  /// Instantiates a binder-free pattern into an action; nullopt when a free
  /// variable is left uninstantiated or the pattern is `*`.
  std::optional<Action> instantiate(const Substitution &s) const;

  std::string to_string() const;
  friend auto operator<=>(const Pattern &, const Pattern &) = default;
};

struct Term {
  enum class Kind { Variable, Value };
  Kind kind = Kind::Value;
  std::string name;

  static Term var(std::string x) { return {Kind::Variable, std::move(x)}; }
  static Term value(std::string v) { return {Kind::Value, std::move(v)}; }
  bool is_variable() const { return kind == Kind::Variable; }
  friend auto operator<=>(const Term &, const Term &) = default;
};

/// Boolean filtering condition over data variables and literal values.
/// Immutable; copies share structure.
class Condition {
public:
  enum class Op { True, False, Eq, Neq, And, Or, Not };

  Condition();

  static Condition truth();
  static Condition falsity();
  static Condition eq(Term a, Term b);
  static Condition neq(Term a, Term b);
  static Condition conj(Condition a, Condition b);
  static Condition disj(Condition a, Condition b);
  static Condition negate(Condition a);
  /// Conjunction of a list; `true` conjuncts are dropped.
  static Condition all_of(const std::vector<Condition> &cs);

  Op op() const;
  bool is_true() const { return op() == Op::True; }
  bool is_false() const { return op() == Op::False; }
  const Term &lhs() const;
  const Term &rhs() const;
  const Condition &left() const;
  const Condition &right() const;
  const Condition &operand() const;

  std::set<std::string> free_vars() const;
  Condition substitute(const Substitution &s) const;
  Condition rename(const Renaming &r) const;

  std::string to_string() const;
  const std::string &key() const;

  friend bool operator==(const Condition &a, const Condition &b) {
    return a.key() == b.key();
  }
  friend bool operator<(const Condition &a, const Condition &b) {
    return a.key() < b.key();
  }

private:
  struct Node;
  explicit Condition(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// `<pattern, condition>`; denotes a set of actions.
struct SymbolicAction {
  Pattern pattern;
  Condition condition;

  /// Data variables used but not bound by the pattern.
  std::set<std::string> free_vars() const;
  bool closed() const { return free_vars().empty(); }
  SymbolicAction substitute(const Substitution &s) const;
  SymbolicAction rename(const Renaming &r) const;

  std::string to_string() const;
  friend bool operator==(const SymbolicAction &a, const SymbolicAction &b) {
    return a.pattern == b.pattern && a.condition == b.condition;
  }
  friend bool operator<(const SymbolicAction &a, const SymbolicAction &b) {
    if (a.pattern != b.pattern)
      return a.pattern < b.pattern;
    return a.condition < b.condition;
  }
};

/// Matches a closed pattern against an extended action. The insertion
/// pattern only matches the insertion marker, with the empty substitution.
std::optional<Substitution> match(const Pattern &p, const ExtendedAction &g);
std::optional<Substitution> match(const Pattern &p, const Action &a);

/// Throws UnboundVariable when `c` mentions a variable outside `s`.
bool eval(const Condition &c, const Substitution &s);

/// Enumerates the denotation of `sa` over `d`. Variables free in `sa` are
/// read from `env`.
std::set<Action> denote(const SymbolicAction &sa, const Domain &d,
                        const Substitution &env = {});

/// Does `sa` (closed under `env`) accept `a`? Returns the match substitution
/// extended with `env`.
std::optional<Substitution> accepts(const SymbolicAction &sa, const Action &a,
                                    const Substitution &env = {});

bool satisfiable(const Condition &c, const std::set<std::string> &vars,
                 const Domain &d);

/// Calls `f` on every assignment of `vars` to values of `d`; stops early
/// when `f` returns false. Returns false iff stopped early.
bool for_each_assignment(const std::vector<std::string> &vars,
                         const Domain &d,
                         const std::function<bool(const Substitution &)> &f);

/// True iff the denotations never overlap, for every assignment of the data
/// variables the two symbolic actions leave free.
bool disjoint(const SymbolicAction &a, const SymbolicAction &b,
              const Domain &d);

/// Rewrites `sa` so that every pattern slot is a fresh binder; the replaced
/// slot contents become equality constraints in the condition.
SymbolicAction normalize_pattern(const SymbolicAction &sa,
                                 const std::function<std::string()> &fresh);
SymbolicAction normalize_pattern(const SymbolicAction &sa);

/// Converts binders into free occurrences of the same variable.
/// Throws FragmentError on the insertion pattern.
Pattern underline(const Pattern &p);

} // namespace shmlenf

#endif
