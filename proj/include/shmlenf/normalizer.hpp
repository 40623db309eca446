#ifndef SHMLENF_NORMALIZER_HPP
#define SHMLENF_NORMALIZER_HPP

// Conversion of closed guarded sHML formulas into sHML normal form through
// an equation system, minterms over the branch conditions and a powerset
// construction.

#include <cstddef>
#include <string>
#include <vector>

#include "shmlenf/formula.hpp"

namespace shmlenf {

struct EquationBranch {
  SymbolicAction action;
  std::size_t target;
};

struct Equation {
  enum class Kind { True, False, Conj };
  std::string name;
  Kind kind = Kind::True;
  std::vector<EquationBranch> branches;
};

struct EquationSystem {
  std::vector<Equation> equations;
  std::size_t start = 0;

  /// One `X = body` line per equation, start first.
  std::string dump() const;
};

/// Patterns normalised, branches depending on a bound value split per value.
/// Requires a closed guarded sHML formula.
Formula prepare(const Formula &f, const Domain &d);

/// Unfolds every top-level fixpoint once.
Formula stage1_unfold(const Formula &f);
EquationSystem stage2_equations(const Formula &f);
/// Gives like-directed branches of a body the binder names of the first one.
EquationSystem stage3_align(const EquationSystem &eqs);
/// Throws Error when a body has more than 12 distinct conditions for one
/// pattern.
EquationSystem stage4_minterms(const EquationSystem &eqs, const Domain &d);
EquationSystem stage5_powerset(const EquationSystem &eqs, const Domain &d);
Formula stage6_rebuild(const EquationSystem &eqs);

struct NormalizationTrace {
  /// Set when the input was already in normal form and returned unchanged.
  bool already_normal = false;
  Formula prepared;
  Formula unfolded;
  EquationSystem equations;
  EquationSystem aligned;
  EquationSystem minterms;
  EquationSystem unified;
  Formula result;
};

/// Throws FragmentError unless `f` is closed, guarded sHML.
Formula normalize(const Formula &f, const Domain &d);
NormalizationTrace normalize_traced(const Formula &f, const Domain &d);

} // namespace shmlenf

#endif
