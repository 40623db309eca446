#include "symbolic_parse.hpp"

#include <algorithm>

#include "shmlenf/error.hpp"

namespace shmlenf::detail {

bool DataScope::bound(const std::string &name) const {
  return std::find(names_.rbegin(), names_.rend(), name) != names_.rend();
}

void DataScope::push(const std::vector<std::string> &names) {
  names_.insert(names_.end(), names.begin(), names.end());
}

void DataScope::pop(std::size_t count) {
  names_.resize(names_.size() - count);
}

namespace {

std::string resolve_value(const Token &t, const DataScope &scope) {
  if (scope.domain() && !scope.domain()->is_value(t.text))
    throw ParseError("'" + t.text + "' is neither a bound data variable nor "
                     "a domain value",
                     t.pos);
  return t.text;
}

} // namespace

Slot parse_slot(TokenStream &ts, const DataScope &scope, bool allow_binder) {
  if (ts.at(Tok::LParen)) {
    if (!allow_binder)
      ts.fail("binders are not allowed here");
    ts.next();
    std::string name = ts.expect_ident();
    ts.expect(Tok::RParen);
    return Slot::binder(name);
  }
  const Token &t = ts.peek();
  if (t.kind != Tok::Ident)
    ts.fail("expected a pattern slot");
  ts.next();
  if (scope.bound(t.text))
    return Slot::free(t.text);
  return Slot::value(resolve_value(t, scope));
}

Pattern parse_pattern(TokenStream &ts, const DataScope &scope,
                      bool allow_insertion, bool allow_binders) {
  if (ts.at(Tok::Star)) {
    if (!allow_insertion)
      ts.fail("the insertion pattern is not allowed here");
    ts.next();
    return Pattern::insert();
  }
  std::size_t start = ts.peek().pos;
  Slot port = parse_slot(ts, scope, allow_binders);
  Direction d;
  if (ts.accept(Tok::Question))
    d = Direction::Input;
  else if (ts.accept(Tok::Bang))
    d = Direction::Output;
  else
    ts.fail("expected '?' or '!'");
  Slot payload = parse_slot(ts, scope, allow_binders);
  if (port.kind == Slot::Kind::Binder && payload.kind == Slot::Kind::Binder &&
      port.name == payload.name)
    throw ParseError("pattern binds '" + port.name + "' twice", start);
  return Pattern::make(port, d, payload);
}

namespace {

Term parse_term(TokenStream &ts, const DataScope &scope) {
  const Token &t = ts.peek();
  if (t.kind != Tok::Ident)
    ts.fail("expected a data variable or value");
  ts.next();
  if (scope.bound(t.text))
    return Term::var(t.text);
  return Term::value(resolve_value(t, scope));
}

Condition parse_or(TokenStream &ts, const DataScope &scope);

Condition parse_unary(TokenStream &ts, const DataScope &scope) {
  if (ts.accept(Tok::Bang))
    return Condition::negate(parse_unary(ts, scope));
  if (ts.accept(Tok::LParen)) {
    Condition c = parse_or(ts, scope);
    ts.expect(Tok::RParen);
    return c;
  }
  if (ts.accept_ident("true"))
    return Condition::truth();
  if (ts.accept_ident("false"))
    return Condition::falsity();
  Term a = parse_term(ts, scope);
  if (ts.accept(Tok::Equals))
    return Condition::eq(a, parse_term(ts, scope));
  if (ts.accept(Tok::NotEquals))
    return Condition::neq(a, parse_term(ts, scope));
  ts.fail("expected '=' or '!='");
}

Condition parse_and(TokenStream &ts, const DataScope &scope) {
  Condition c = parse_unary(ts, scope);
  while (ts.accept(Tok::AndAnd))
    c = Condition::conj(c, parse_unary(ts, scope));
  return c;
}

Condition parse_or(TokenStream &ts, const DataScope &scope) {
  Condition c = parse_and(ts, scope);
  while (ts.accept(Tok::OrOr))
    c = Condition::disj(c, parse_and(ts, scope));
  return c;
}

} // namespace

Condition parse_condition(TokenStream &ts, const DataScope &scope) {
  return parse_or(ts, scope);
}

SymbolicAction parse_symbolic_action(TokenStream &ts, DataScope &scope,
                                     bool allow_insertion) {
  SymbolicAction sa;
  sa.pattern = parse_pattern(ts, scope, allow_insertion);
  auto binders = sa.pattern.binders();
  scope.push(binders);
  if (ts.accept_ident("when"))
    sa.condition = parse_condition(ts, scope);
  scope.pop(binders.size());
  return sa;
}

Action parse_concrete_action(TokenStream &ts, const Domain *domain) {
  DataScope none(domain);
  std::size_t pos = ts.peek().pos;
  Pattern p = parse_pattern(ts, none, false, false);
  Action a = *p.instantiate({});
  if (domain && !domain->contains(a))
    throw ParseError("action '" + a.to_string() + "' lies outside the domain",
                     pos);
  return a;
}

} // namespace shmlenf::detail
