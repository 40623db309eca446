#ifndef SHMLENF_FORMULA_HPP
#define SHMLENF_FORMULA_HPP

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "shmlenf/symbolic.hpp"

namespace shmlenf {

/// recHML formula with symbolic actions. Immutable; equality is structural
/// (no alpha-equivalence) through a canonical key.
class Formula {
public:
  enum class Kind { True, False, And, Or, Nec, Pos, Max, Min, Var };

  static Formula tt();
  static Formula ff();
  /// n-ary conjunction; zero operands give tt, one gives the operand itself.
  static Formula conj(std::vector<Formula> operands);
  /// n-ary disjunction; zero operands give ff, one gives the operand itself.
  static Formula disj(std::vector<Formula> operands);
  static Formula nec(SymbolicAction sa, Formula body);
  static Formula pos(SymbolicAction sa, Formula body);
  static Formula max(std::string var, Formula body);
  static Formula min(std::string var, Formula body);
  static Formula var(std::string name);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  const std::vector<Formula> &operands() const;
  const SymbolicAction &action() const;
  const Formula &body() const;
  /// Fixpoint binder or variable name.
  const std::string &name() const;

  const std::set<std::string> &free_logic() const;
  const std::set<std::string> &free_data() const;

  const std::string &key() const;
  std::string to_string() const;

  friend bool operator==(const Formula &a, const Formula &b) {
    return a.node_ == b.node_ || a.key() == b.key();
  }
  friend bool operator<(const Formula &a, const Formula &b) {
    return a.key() < b.key();
  }

  struct Node; // opaque

private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::set<std::string> free_logic_vars(const Formula &f);
std::set<std::string> free_data_vars(const Formula &f);
/// Every name occurring in `f`: logical variables, data variables, values.
std::set<std::string> all_names(const Formula &f);

/// Replaces free data variables by values. Values are never captured.
Formula substitute_data(const Formula &f, const Substitution &s);
/// Renames free data variables to other variables. Binders met on the way
/// that would capture a target name are renamed apart.
Formula rename_data(const Formula &f, const Renaming &r);
/// f[g/X], renaming logical and data binders in `f` apart from the free
/// names of `g` where needed.
Formula substitute_logic(const Formula &f, const std::string &x,
                         const Formula &g);
/// max X.φ (or min X.φ) to φ[max X.φ/X]. Other formulas are returned as is.
Formula unfold(const Formula &f);

/// Key that identifies formulas up to renaming of bound logical and data
/// variables.
std::string alpha_key(const Formula &f);

/// Number of constructors, counting each operand of an n-ary node.
std::size_t formula_size(const Formula &f);

struct Classification {
  bool closed = false;
  bool guarded = false;
  bool shml = false;
  bool shmlnf = false;
};

/// Every logical-variable occurrence sits under a modality inside its binder.
bool is_guarded(const Formula &f);
/// tt, ff, conjunction, necessity, max and variables only; no insertion
/// patterns.
bool is_shml(const Formula &f);
/// sHML normal form: conjunctions of necessities with pairwise disjoint
/// guards (decided over `d`), no vacuous max binders, guarded.
bool is_shmlnf(const Formula &f, const Domain &d);
Classification classify(const Formula &f, const Domain &d);

/// Parses the formula grammar. With a domain, every literal must be one of
/// its values.
Formula parse_formula(std::string_view text, const Domain *domain = nullptr);

/// Collects the ports and payloads a formula mentions literally. Literals
/// compared against a data variable are filed by the slot that binds it.
void collect_values(const Formula &f, std::set<std::string> &ports,
                    std::set<std::string> &payloads);

} // namespace shmlenf

#endif
