#ifndef SHMLENF_SYMBOLIC_PARSE_HPP
#define SHMLENF_SYMBOLIC_PARSE_HPP

#include <string>
#include <vector>

#include "lexer.hpp"
#include "shmlenf/symbolic.hpp"

namespace shmlenf::detail {

/// Data variables in scope, innermost last. An identifier resolves to a
/// variable when bound here and to a literal value otherwise.
class DataScope {
public:
  explicit DataScope(const Domain *domain = nullptr) : domain_(domain) {}

  bool bound(const std::string &name) const;
  void push(const std::vector<std::string> &names);
  void pop(std::size_t count);
  const Domain *domain() const { return domain_; }

private:
  std::vector<std::string> names_;
  const Domain *domain_;
};

/// `(x)`, a bound name, or a literal.
Slot parse_slot(TokenStream &ts, const DataScope &scope, bool allow_binder);

/// `*` (when allowed) or `slot ? slot` / `slot ! slot`. Rejects repeated
/// binders.
Pattern parse_pattern(TokenStream &ts, const DataScope &scope,
                      bool allow_insertion, bool allow_binders = true);

Condition parse_condition(TokenStream &ts, const DataScope &scope);

/// `pattern [when condition]`; the condition sees the pattern's binders.
SymbolicAction parse_symbolic_action(TokenStream &ts, DataScope &scope,
                                     bool allow_insertion);

/// A concrete action `port?payload` / `port!payload`.
Action parse_concrete_action(TokenStream &ts, const Domain *domain);

} // namespace shmlenf::detail

#endif
