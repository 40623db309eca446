#include "shmlenf/symbolic.hpp"

#include <algorithm>

#include "shmlenf/error.hpp"

namespace shmlenf {

std::string Action::to_string() const {
  return port + direction_symbol(direction) + payload;
}

Action parse_action(std::string_view text) {
  auto at = text.find_first_of("?!");
  if (at == std::string_view::npos || at == 0 || at + 1 == text.size())
    throw ParseError("malformed action '" + std::string(text) + "'", 0);
  Action a;
  a.port = std::string(text.substr(0, at));
  a.direction = text[at] == '?' ? Direction::Input : Direction::Output;
  a.payload = std::string(text.substr(at + 1));
  return a;
}

std::string ExtendedAction::to_string() const {
  return action ? action->to_string() : "*";
}

std::string Label::to_string() const {
  return action ? action->to_string() : "tau";
}

// ---------------------------------------------------------------------------
// Domain

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v,
                                       const char *what) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw Error(std::string("duplicate name in domain ") + what);
  return v;
}

} // namespace

Domain::Domain(std::vector<std::string> ports, std::vector<std::string> payloads)
    : ports_(sorted_unique(std::move(ports), "ports")),
      payloads_(sorted_unique(std::move(payloads), "payloads")) {
  if (ports_.empty() || payloads_.empty())
    throw Error("domain needs at least one port and one payload");
  values_ = ports_;
  values_.insert(values_.end(), payloads_.begin(), payloads_.end());
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  for (const auto &p : ports_)
    for (Direction d : {Direction::Input, Direction::Output})
      for (const auto &v : payloads_)
        actions_.push_back(Action{p, d, v});
}

bool Domain::contains(const Action &a) const {
  return std::binary_search(ports_.begin(), ports_.end(), a.port) &&
         std::binary_search(payloads_.begin(), payloads_.end(), a.payload);
}

bool Domain::is_value(const std::string &name) const {
  return std::binary_search(values_.begin(), values_.end(), name);
}

std::string Domain::to_string() const {
  auto join = [](const std::vector<std::string> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
      s += (i ? ", " : "") + v[i];
    return s;
  };
  return "ports = {" + join(ports_) + "}\npayloads = {" + join(payloads_) +
         "}\n";
}

// ---------------------------------------------------------------------------
// Patterns

std::string Slot::to_string() const {
  return kind == Kind::Binder ? "(" + name + ")" : name;
}

std::vector<std::string> Pattern::binders() const {
  std::vector<std::string> out;
  if (insertion)
    return out;
  for (const Slot *s : {&port, &payload})
    if (s->kind == Slot::Kind::Binder)
      out.push_back(s->name);
  return out;
}

std::vector<std::string> Pattern::free_vars() const {
  std::vector<std::string> out;
  if (insertion)
    return out;
  for (const Slot *s : {&port, &payload})
    if (s->kind == Slot::Kind::Free)
      out.push_back(s->name);
  return out;
}

bool Pattern::normalised() const {
  return !insertion && port.kind == Slot::Kind::Binder &&
         payload.kind == Slot::Kind::Binder;
}

Pattern Pattern::substitute(const Substitution &s) const {
  if (insertion)
    return *this;
  Pattern out = *this;
  for (Slot *slot : {&out.port, &out.payload}) {
    if (slot->kind != Slot::Kind::Free)
      continue;
    if (auto it = s.find(slot->name); it != s.end())
      *slot = Slot::value(it->second);
  }
  return out;
}

Pattern Pattern::rename(const Renaming &r) const {
  if (insertion)
    return *this;
  Pattern out = *this;
  for (Slot *slot : {&out.port, &out.payload}) {
    if (slot->kind == Slot::Kind::Value)
      continue;
    if (auto it = r.find(slot->name); it != r.end())
      slot->name = it->second;
  }
  return out;
}

std::optional<Action> Pattern::instantiate(const Substitution &s) const {
  if (insertion)
    return std::nullopt;
  Action a;
  a.direction = direction;
  for (auto [slot, dst] : {std::pair{&port, &a.port}, {&payload, &a.payload}}) {
    switch (slot->kind) {
    case Slot::Kind::Value:
      *dst = slot->name;
      break;
    case Slot::Kind::Free:
    case Slot::Kind::Binder: {
      auto it = s.find(slot->name);
      if (it == s.end())
        return std::nullopt;
      *dst = it->second;
      break;
    }
    }
  }
  return a;
}

std::string Pattern::to_string() const {
  if (insertion)
    return "*";
  return port.to_string() + direction_symbol(direction) + payload.to_string();
}

// ---------------------------------------------------------------------------
// Conditions

struct Condition::Node {
  Op op;
  Term a, b;
  Condition l, r;
  std::string key;
};

namespace {

std::string term_key(const Term &t) {
  return t.is_variable() ? "$" + t.name : t.name;
}

} // namespace

Condition::Condition() : Condition(truth()) {}

Condition Condition::truth() {
  static const auto node = std::make_shared<const Node>(
      Node{Op::True, {}, {}, Condition(nullptr), Condition(nullptr), "T"});
  return Condition(node);
}

Condition Condition::falsity() {
  static const auto node = std::make_shared<const Node>(
      Node{Op::False, {}, {}, Condition(nullptr), Condition(nullptr), "F"});
  return Condition(node);
}

Condition Condition::eq(Term a, Term b) {
  std::string key = "(" + term_key(a) + "=" + term_key(b) + ")";
  return Condition(std::make_shared<const Node>(
      Node{Op::Eq, std::move(a), std::move(b), Condition(nullptr),
           Condition(nullptr), std::move(key)}));
}

Condition Condition::neq(Term a, Term b) {
  std::string key = "(" + term_key(a) + "#" + term_key(b) + ")";
  return Condition(std::make_shared<const Node>(
      Node{Op::Neq, std::move(a), std::move(b), Condition(nullptr),
           Condition(nullptr), std::move(key)}));
}

Condition Condition::conj(Condition a, Condition b) {
  std::string key = "(&" + a.key() + b.key() + ")";
  return Condition(std::make_shared<const Node>(
      Node{Op::And, {}, {}, std::move(a), std::move(b), std::move(key)}));
}

Condition Condition::disj(Condition a, Condition b) {
  std::string key = "(|" + a.key() + b.key() + ")";
  return Condition(std::make_shared<const Node>(
      Node{Op::Or, {}, {}, std::move(a), std::move(b), std::move(key)}));
}

Condition Condition::negate(Condition a) {
  std::string key = "(~" + a.key() + ")";
  return Condition(std::make_shared<const Node>(
      Node{Op::Not, {}, {}, std::move(a), Condition(nullptr), std::move(key)}));
}

Condition Condition::all_of(const std::vector<Condition> &cs) {
  std::optional<Condition> acc;
  for (const auto &c : cs) {
    if (c.is_true())
      continue;
    acc = acc ? conj(*acc, c) : c;
  }
  return acc ? *acc : truth();
}

Condition::Op Condition::op() const { return node_->op; }
const Term &Condition::lhs() const { return node_->a; }
const Term &Condition::rhs() const { return node_->b; }
const Condition &Condition::left() const { return node_->l; }
const Condition &Condition::right() const { return node_->r; }
const Condition &Condition::operand() const { return node_->l; }
const std::string &Condition::key() const { return node_->key; }

std::set<std::string> Condition::free_vars() const {
  std::set<std::string> out;
  std::function<void(const Condition &)> walk = [&](const Condition &c) {
    switch (c.op()) {
    case Op::True:
    case Op::False:
      break;
    case Op::Eq:
    case Op::Neq:
      for (const Term *t : {&c.lhs(), &c.rhs()})
        if (t->is_variable())
          out.insert(t->name);
      break;
    case Op::And:
    case Op::Or:
      walk(c.left());
      walk(c.right());
      break;
    case Op::Not:
      walk(c.operand());
      break;
    }
  };
  walk(*this);
  return out;
}

namespace {

Condition map_terms(const Condition &c,
                    const std::function<Term(const Term &)> &f) {
  using Op = Condition::Op;
  switch (c.op()) {
  case Op::True:
  case Op::False:
    return c;
  case Op::Eq:
    return Condition::eq(f(c.lhs()), f(c.rhs()));
  case Op::Neq:
    return Condition::neq(f(c.lhs()), f(c.rhs()));
  case Op::And:
    return Condition::conj(map_terms(c.left(), f), map_terms(c.right(), f));
  case Op::Or:
    return Condition::disj(map_terms(c.left(), f), map_terms(c.right(), f));
  case Op::Not:
    return Condition::negate(map_terms(c.operand(), f));
  }
  return c;
}

} // namespace

Condition Condition::substitute(const Substitution &s) const {
  if (s.empty())
    return *this;
  return map_terms(*this, [&](const Term &t) {
    if (t.is_variable())
      if (auto it = s.find(t.name); it != s.end())
        return Term::value(it->second);
    return t;
  });
}

Condition Condition::rename(const Renaming &r) const {
  if (r.empty())
    return *this;
  return map_terms(*this, [&](const Term &t) {
    if (t.is_variable())
      if (auto it = r.find(t.name); it != r.end())
        return Term::var(it->second);
    return t;
  });
}

namespace {

// 0: or, 1: and, 2: unary/atom
void print_condition(const Condition &c, int ctx, std::string &out) {
  using Op = Condition::Op;
  switch (c.op()) {
  case Op::True:
    out += "true";
    return;
  case Op::False:
    out += "false";
    return;
  case Op::Eq:
  case Op::Neq:
    out += c.lhs().name;
    out += c.op() == Op::Eq ? " = " : " != ";
    out += c.rhs().name;
    return;
  case Op::And:
  case Op::Or: {
    int prec = c.op() == Op::Or ? 0 : 1;
    bool paren = ctx > prec;
    if (paren)
      out += "(";
    print_condition(c.left(), prec, out);
    out += c.op() == Op::Or ? " || " : " && ";
    print_condition(c.right(), prec + 1, out);
    if (paren)
      out += ")";
    return;
  }
  case Op::Not: {
    bool cmp = c.operand().op() == Op::Eq || c.operand().op() == Op::Neq;
    out += cmp ? "!(" : "!";
    print_condition(c.operand(), 2, out);
    if (cmp)
      out += ")";
    return;
  }
  }
}

} // namespace

std::string Condition::to_string() const {
  std::string out;
  print_condition(*this, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Symbolic actions

std::set<std::string> SymbolicAction::free_vars() const {
  std::set<std::string> out = condition.free_vars();
  for (const auto &b : pattern.binders())
    out.erase(b);
  for (const auto &f : pattern.free_vars())
    out.insert(f);
  return out;
}

SymbolicAction SymbolicAction::substitute(const Substitution &s) const {
  Substitution inner = s;
  for (const auto &b : pattern.binders())
    inner.erase(b);
  return {pattern.substitute(s), condition.substitute(inner)};
}

SymbolicAction SymbolicAction::rename(const Renaming &r) const {
  return {pattern.rename(r), condition.rename(r)};
}

std::string SymbolicAction::to_string() const {
  if (condition.is_true())
    return pattern.to_string();
  return pattern.to_string() + " when " + condition.to_string();
}

// ---------------------------------------------------------------------------
// Matching and evaluation

std::optional<Substitution> match(const Pattern &p, const ExtendedAction &g) {
  if (p.insertion || g.is_insertion()) {
    if (p.insertion && g.is_insertion())
      return Substitution{};
    return std::nullopt;
  }
  return match(p, *g.action);
}

std::optional<Substitution> match(const Pattern &p, const Action &a) {
  if (p.insertion || p.direction != a.direction)
    return std::nullopt;
  Substitution s;
  for (auto [slot, value] :
       {std::pair{&p.port, &a.port}, {&p.payload, &a.payload}}) {
    switch (slot->kind) {
    case Slot::Kind::Value:
      if (slot->name != *value)
        return std::nullopt;
      break;
    case Slot::Kind::Binder:
      s[slot->name] = *value;
      break;
    case Slot::Kind::Free:
      throw UnboundVariable(slot->name);
    }
  }
  return s;
}

namespace {

const std::string &term_value(const Term &t, const Substitution &s) {
  if (!t.is_variable())
    return t.name;
  auto it = s.find(t.name);
  if (it == s.end())
    throw UnboundVariable(t.name);
  return it->second;
}

} // namespace

bool eval(const Condition &c, const Substitution &s) {
  using Op = Condition::Op;
  switch (c.op()) {
  case Op::True:
    return true;
  case Op::False:
    return false;
  case Op::Eq:
    return term_value(c.lhs(), s) == term_value(c.rhs(), s);
  case Op::Neq:
    return term_value(c.lhs(), s) != term_value(c.rhs(), s);
  case Op::And:
    return eval(c.left(), s) && eval(c.right(), s);
  case Op::Or:
    return eval(c.left(), s) || eval(c.right(), s);
  case Op::Not:
    return !eval(c.operand(), s);
  }
  return false;
}

std::optional<Substitution> accepts(const SymbolicAction &sa, const Action &a,
                                    const Substitution &env) {
  auto sigma = match(sa.pattern.substitute(env), a);
  if (!sigma)
    return std::nullopt;
  Substitution full = env;
  for (const auto &[k, v] : *sigma)
    full[k] = v;
  if (!eval(sa.condition, full))
    return std::nullopt;
  return full;
}

std::set<Action> denote(const SymbolicAction &sa, const Domain &d,
                        const Substitution &env) {
  std::set<Action> out;
  for (const auto &a : d.actions())
    if (accepts(sa, a, env))
      out.insert(a);
  return out;
}

bool for_each_assignment(const std::vector<std::string> &vars,
                         const Domain &d,
                         const std::function<bool(const Substitution &)> &f) {
  Substitution s;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == vars.size())
      return f(s);
    for (const auto &v : d.values()) {
      s[vars[i]] = v;
      if (!rec(i + 1))
        return false;
    }
    s.erase(vars[i]);
    return true;
  };
  return rec(0);
}

bool satisfiable(const Condition &c, const std::set<std::string> &vars,
                 const Domain &d) {
  std::vector<std::string> vs(vars.begin(), vars.end());
  for (const auto &fv : c.free_vars())
    if (!vars.count(fv))
      throw UnboundVariable(fv);
  bool found = false;
  for_each_assignment(vs, d, [&](const Substitution &s) {
    found = eval(c, s);
    return !found;
  });
  return found;
}

bool disjoint(const SymbolicAction &a, const SymbolicAction &b,
              const Domain &d) {
  if (!a.pattern.insertion && !b.pattern.insertion &&
      a.pattern.direction != b.pattern.direction)
    return true;
  std::set<std::string> frees = a.free_vars();
  for (const auto &v : b.free_vars())
    frees.insert(v);
  std::vector<std::string> vs(frees.begin(), frees.end());
  return for_each_assignment(vs, d, [&](const Substitution &env) {
    for (const auto &act : d.actions())
      if (accepts(a, act, env) && accepts(b, act, env))
        return false;
    return true;
  });
}

SymbolicAction normalize_pattern(const SymbolicAction &sa,
                                 const std::function<std::string()> &fresh) {
  if (sa.pattern.insertion)
    return sa;
  SymbolicAction out = sa;
  std::vector<Condition> constraints{sa.condition};
  for (Slot *slot : {&out.pattern.port, &out.pattern.payload}) {
    if (slot->kind == Slot::Kind::Binder)
      continue;
    std::string x = fresh();
    Term rhs = slot->kind == Slot::Kind::Free ? Term::var(slot->name)
                                              : Term::value(slot->name);
    constraints.push_back(Condition::eq(Term::var(x), rhs));
    *slot = Slot::binder(x);
  }
  out.condition = Condition::all_of(constraints);
  return out;
}

SymbolicAction normalize_pattern(const SymbolicAction &sa) {
  std::set<std::string> used = sa.condition.free_vars();
  for (const auto &b : sa.pattern.binders())
    used.insert(b);
  for (const auto &f : sa.pattern.free_vars())
    used.insert(f);
  int counter = 0;
  return normalize_pattern(sa, [&] {
    std::string name;
    do
      name = "v" + std::to_string(++counter);
    while (used.count(name));
    used.insert(name);
    return name;
  });
}

Pattern underline(const Pattern &p) {
  if (p.insertion)
    throw FragmentError("the insertion pattern has no underlined form");
  Pattern out = p;
  for (Slot *slot : {&out.port, &out.payload})
    if (slot->kind == Slot::Kind::Binder)
      slot->kind = Slot::Kind::Free;
  return out;
}

} // namespace shmlenf
