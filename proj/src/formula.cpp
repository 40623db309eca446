#include "shmlenf/formula.hpp"

#include <algorithm>
#include <map>

#include "shmlenf/error.hpp"

namespace shmlenf {

struct Formula::Node {
  Kind kind;
  std::vector<Formula> operands;
  SymbolicAction action;
  std::string name;
  std::string key;
  std::set<std::string> free_logic;
  std::set<std::string> free_data;
};

namespace {

std::string slot_key(const Slot &s) {
  switch (s.kind) {
  case Slot::Kind::Value:
    return s.name;
  case Slot::Kind::Free:
    return "$" + s.name;
  case Slot::Kind::Binder:
    return "(" + s.name + ")";
  }
  return {};
}

std::string action_key(const SymbolicAction &sa) {
  const Pattern &p = sa.pattern;
  std::string k = p.insertion ? "*"
                              : slot_key(p.port) + direction_symbol(p.direction) +
                                    slot_key(p.payload);
  return k + "/" + sa.condition.key();
}

} // namespace

Formula Formula::tt() {
  static const Formula f(std::make_shared<const Node>(
      Node{Kind::True, {}, {}, {}, "T", {}, {}}));
  return f;
}

Formula Formula::ff() {
  static const Formula f(std::make_shared<const Node>(
      Node{Kind::False, {}, {}, {}, "F", {}, {}}));
  return f;
}

Formula Formula::conj(std::vector<Formula> operands) {
  if (operands.empty())
    return tt();
  if (operands.size() == 1)
    return operands.front();
  Node n{Kind::And, {}, {}, {}, "(&", {}, {}};
  for (const auto &o : operands) {
    n.key += o.key() + ",";
    n.free_logic.insert(o.node_->free_logic.begin(), o.node_->free_logic.end());
    n.free_data.insert(o.node_->free_data.begin(), o.node_->free_data.end());
  }
  n.key += ")";
  n.operands = std::move(operands);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::disj(std::vector<Formula> operands) {
  if (operands.empty())
    return ff();
  if (operands.size() == 1)
    return operands.front();
  Node n{Kind::Or, {}, {}, {}, "(|", {}, {}};
  for (const auto &o : operands) {
    n.key += o.key() + ",";
    n.free_logic.insert(o.node_->free_logic.begin(), o.node_->free_logic.end());
    n.free_data.insert(o.node_->free_data.begin(), o.node_->free_data.end());
  }
  n.key += ")";
  n.operands = std::move(operands);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

namespace {

Formula::Node modal(Formula::Kind k, const SymbolicAction &sa,
                    const Formula &body, std::set<std::string> body_logic,
                    std::set<std::string> body_data) {
  const char *open = k == Formula::Kind::Nec ? "[" : "<";
  const char *close = k == Formula::Kind::Nec ? "]" : ">";
  Formula::Node n{k, {body}, sa, {},
                  open + action_key(sa) + close + body.key(),
                  std::move(body_logic), {}};
  for (const auto &b : sa.pattern.binders())
    body_data.erase(b);
  for (const auto &v : sa.free_vars())
    body_data.insert(v);
  n.free_data = std::move(body_data);
  return n;
}

} // namespace

Formula Formula::nec(SymbolicAction sa, Formula body) {
  return Formula(std::make_shared<const Node>(
      modal(Kind::Nec, sa, body, body.node_->free_logic,
            body.node_->free_data)));
}

Formula Formula::pos(SymbolicAction sa, Formula body) {
  return Formula(std::make_shared<const Node>(
      modal(Kind::Pos, sa, body, body.node_->free_logic,
            body.node_->free_data)));
}

Formula Formula::max(std::string var, Formula body) {
  Node n{Kind::Max, {body}, {}, var,
         "(max " + var + "." + body.key() + ")", body.node_->free_logic,
         body.node_->free_data};
  n.free_logic.erase(var);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::min(std::string var, Formula body) {
  Node n{Kind::Min, {body}, {}, var,
         "(min " + var + "." + body.key() + ")", body.node_->free_logic,
         body.node_->free_data};
  n.free_logic.erase(var);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::var(std::string name) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Var, {}, {}, name, "v:" + name, {name}, {}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::vector<Formula> &Formula::operands() const {
  return node_->operands;
}
const SymbolicAction &Formula::action() const { return node_->action; }
const Formula &Formula::body() const { return node_->operands.front(); }
const std::string &Formula::name() const { return node_->name; }
const std::string &Formula::key() const { return node_->key; }

const std::set<std::string> &Formula::free_logic() const {
  return node_->free_logic;
}
const std::set<std::string> &Formula::free_data() const {
  return node_->free_data;
}

std::set<std::string> free_logic_vars(const Formula &f) {
  return f.free_logic();
}

std::set<std::string> free_data_vars(const Formula &f) {
  return f.free_data();
}

namespace {

void collect_condition_names(const Condition &c, std::set<std::string> &out) {
  using Op = Condition::Op;
  switch (c.op()) {
  case Op::True:
  case Op::False:
    return;
  case Op::Eq:
  case Op::Neq:
    out.insert(c.lhs().name);
    out.insert(c.rhs().name);
    return;
  case Op::And:
  case Op::Or:
    collect_condition_names(c.left(), out);
    collect_condition_names(c.right(), out);
    return;
  case Op::Not:
    collect_condition_names(c.operand(), out);
    return;
  }
}

void collect_names(const Formula &f, std::set<std::string> &out) {
  switch (f.kind()) {
  case Formula::Kind::True:
  case Formula::Kind::False:
    return;
  case Formula::Kind::Var:
    out.insert(f.name());
    return;
  case Formula::Kind::And:
  case Formula::Kind::Or:
    for (const auto &o : f.operands())
      collect_names(o, out);
    return;
  case Formula::Kind::Nec:
  case Formula::Kind::Pos: {
    const Pattern &p = f.action().pattern;
    if (!p.insertion) {
      out.insert(p.port.name);
      out.insert(p.payload.name);
    }
    collect_condition_names(f.action().condition, out);
    collect_names(f.body(), out);
    return;
  }
  case Formula::Kind::Max:
  case Formula::Kind::Min:
    out.insert(f.name());
    collect_names(f.body(), out);
    return;
  }
}

std::string fresh_name(const std::string &base, std::set<std::string> &avoid) {
  for (int n = 1;; ++n) {
    std::string candidate = base + "_" + std::to_string(n);
    if (!avoid.count(candidate)) {
      avoid.insert(candidate);
      return candidate;
    }
  }
}

Formula rebuild(const Formula &f, std::vector<Formula> children) {
  switch (f.kind()) {
  case Formula::Kind::And:
    return Formula::conj(std::move(children));
  case Formula::Kind::Or:
    return Formula::disj(std::move(children));
  case Formula::Kind::Nec:
    return Formula::nec(f.action(), children.front());
  case Formula::Kind::Pos:
    return Formula::pos(f.action(), children.front());
  case Formula::Kind::Max:
    return Formula::max(f.name(), children.front());
  case Formula::Kind::Min:
    return Formula::min(f.name(), children.front());
  default:
    return f;
  }
}

Formula with_action(const Formula &f, SymbolicAction sa, Formula body) {
  return f.is(Formula::Kind::Nec) ? Formula::nec(std::move(sa), std::move(body))
                                  : Formula::pos(std::move(sa), std::move(body));
}

Formula with_binder(const Formula &f, std::string x, Formula body) {
  return f.is(Formula::Kind::Max) ? Formula::max(std::move(x), std::move(body))
                                  : Formula::min(std::move(x), std::move(body));
}

Formula rename_data_impl(const Formula &f, const Renaming &r,
                         std::set<std::string> &avoid) {
  if (r.empty() || f.free_data().empty())
    return f;
  switch (f.kind()) {
  case Formula::Kind::True:
  case Formula::Kind::False:
  case Formula::Kind::Var:
    return f;
  case Formula::Kind::And:
  case Formula::Kind::Or:
  case Formula::Kind::Max:
  case Formula::Kind::Min: {
    std::vector<Formula> kids;
    for (const auto &o : f.operands())
      kids.push_back(rename_data_impl(o, r, avoid));
    return rebuild(f, std::move(kids));
  }
  case Formula::Kind::Nec:
  case Formula::Kind::Pos: {
    const SymbolicAction &sa = f.action();
    auto binders = sa.pattern.binders();
    Renaming inner = r;
    for (const auto &b : binders)
      inner.erase(b);
    std::set<std::string> targets;
    for (const auto &[k, v] : inner)
      targets.insert(v);
    Renaming capture;
    for (const auto &b : binders)
      if (targets.count(b))
        capture[b] = fresh_name(b, avoid);
    // Outer free slots follow `r`; binders follow `capture`.
    Pattern p = sa.pattern;
    for (Slot *slot : {&p.port, &p.payload}) {
      if (slot->kind == Slot::Kind::Free) {
        if (auto it = r.find(slot->name); it != r.end())
          slot->name = it->second;
      } else if (slot->kind == Slot::Kind::Binder) {
        if (auto it = capture.find(slot->name); it != capture.end())
          slot->name = it->second;
      }
    }
    Renaming both = inner;
    for (const auto &[k, v] : capture)
      both[k] = v;
    Condition c = sa.condition.rename(both);
    Formula body = rename_data_impl(f.body(), both, avoid);
    return with_action(f, SymbolicAction{p, c}, body);
  }
  }
  return f;
}

Formula subst_logic_impl(const Formula &f, const std::string &x,
                         const Formula &g, const std::set<std::string> &g_logic,
                         const std::set<std::string> &g_data,
                         std::set<std::string> &avoid) {
  if (!f.free_logic().count(x))
    return f;
  switch (f.kind()) {
  case Formula::Kind::Var:
    return f.name() == x ? g : f;
  case Formula::Kind::True:
  case Formula::Kind::False:
    return f;
  case Formula::Kind::And:
  case Formula::Kind::Or: {
    std::vector<Formula> kids;
    for (const auto &o : f.operands())
      kids.push_back(subst_logic_impl(o, x, g, g_logic, g_data, avoid));
    return rebuild(f, std::move(kids));
  }
  case Formula::Kind::Max:
  case Formula::Kind::Min: {
    if (f.name() == x)
      return f;
    std::string y = f.name();
    Formula body = f.body();
    if (g_logic.count(y)) {
      std::string y2 = fresh_name(y, avoid);
      body = subst_logic_impl(body, y, Formula::var(y2), {y2}, {}, avoid);
      y = y2;
    }
    return with_binder(f, y,
                       subst_logic_impl(body, x, g, g_logic, g_data, avoid));
  }
  case Formula::Kind::Nec:
  case Formula::Kind::Pos: {
    SymbolicAction sa = f.action();
    Formula body = f.body();
    Renaming capture;
    for (const auto &b : sa.pattern.binders())
      if (g_data.count(b))
        capture[b] = fresh_name(b, avoid);
    if (!capture.empty()) {
      Pattern p = sa.pattern;
      for (Slot *slot : {&p.port, &p.payload})
        if (slot->kind == Slot::Kind::Binder && capture.count(slot->name))
          slot->name = capture[slot->name];
      sa = SymbolicAction{p, sa.condition.rename(capture)};
      body = rename_data_impl(body, capture, avoid);
    }
    return with_action(f, sa,
                       subst_logic_impl(body, x, g, g_logic, g_data, avoid));
  }
  }
  return f;
}

} // namespace

std::set<std::string> all_names(const Formula &f) {
  std::set<std::string> out;
  collect_names(f, out);
  return out;
}

Formula substitute_data(const Formula &f, const Substitution &s) {
  if (s.empty() || f.free_data().empty())
    return f;
  switch (f.kind()) {
  case Formula::Kind::True:
  case Formula::Kind::False:
  case Formula::Kind::Var:
    return f;
  case Formula::Kind::And:
  case Formula::Kind::Or:
  case Formula::Kind::Max:
  case Formula::Kind::Min: {
    std::vector<Formula> kids;
    for (const auto &o : f.operands())
      kids.push_back(substitute_data(o, s));
    return rebuild(f, std::move(kids));
  }
  case Formula::Kind::Nec:
  case Formula::Kind::Pos: {
    Substitution inner = s;
    for (const auto &b : f.action().pattern.binders())
      inner.erase(b);
    return with_action(f, f.action().substitute(s),
                       substitute_data(f.body(), inner));
  }
  }
  return f;
}

Formula rename_data(const Formula &f, const Renaming &r) {
  std::set<std::string> avoid = all_names(f);
  for (const auto &[k, v] : r) {
    avoid.insert(k);
    avoid.insert(v);
  }
  return rename_data_impl(f, r, avoid);
}

Formula substitute_logic(const Formula &f, const std::string &x,
                         const Formula &g) {
  std::set<std::string> avoid = all_names(f);
  for (const auto &n : all_names(g))
    avoid.insert(n);
  return subst_logic_impl(f, x, g, free_logic_vars(g), free_data_vars(g),
                          avoid);
}

Formula unfold(const Formula &f) {
  if (!f.is(Formula::Kind::Max) && !f.is(Formula::Kind::Min))
    return f;
  return substitute_logic(f.body(), f.name(), f);
}

std::size_t formula_size(const Formula &f) {
  std::size_t n = 1;
  for (const auto &o : f.operands())
    n += formula_size(o);
  return n;
}

// ---------------------------------------------------------------------------
// Classification

namespace {

bool guarded_impl(const Formula &f, std::set<std::string> &exposed) {
  switch (f.kind()) {
  case Formula::Kind::True:
  case Formula::Kind::False:
    return true;
  case Formula::Kind::Var:
    return !exposed.count(f.name());
  case Formula::Kind::And:
  case Formula::Kind::Or:
    for (const auto &o : f.operands())
      if (!guarded_impl(o, exposed))
        return false;
    return true;
  case Formula::Kind::Nec:
  case Formula::Kind::Pos: {
    std::set<std::string> none;
    return guarded_impl(f.body(), none);
  }
  case Formula::Kind::Max:
  case Formula::Kind::Min: {
    bool had = exposed.count(f.name());
    exposed.insert(f.name());
    bool ok = guarded_impl(f.body(), exposed);
    if (!had)
      exposed.erase(f.name());
    return ok;
  }
  }
  return false;
}

bool nf_impl(const Formula &f, const Domain &d) {
  switch (f.kind()) {
  case Formula::Kind::True:
  case Formula::Kind::False:
  case Formula::Kind::Var:
    return true;
  case Formula::Kind::Max:
    return free_logic_vars(f.body()).count(f.name()) && nf_impl(f.body(), d);
  case Formula::Kind::Nec:
    return nf_impl(f.body(), d);
  case Formula::Kind::And: {
    const auto &ops = f.operands();
    for (const auto &o : ops)
      if (!o.is(Formula::Kind::Nec) || !nf_impl(o.body(), d))
        return false;
    for (std::size_t a = 0; a < ops.size(); ++a)
      for (std::size_t b = a + 1; b < ops.size(); ++b)
        if (!disjoint(ops[a].action(), ops[b].action(), d))
          return false;
    return true;
  }
  default:
    return false;
  }
}

} // namespace

bool is_guarded(const Formula &f) {
  std::set<std::string> exposed;
  return guarded_impl(f, exposed);
}

bool is_shml(const Formula &f) {
  switch (f.kind()) {
  case Formula::Kind::True:
  case Formula::Kind::False:
  case Formula::Kind::Var:
    return true;
  case Formula::Kind::And:
    return std::all_of(f.operands().begin(), f.operands().end(), is_shml);
  case Formula::Kind::Nec:
    return !f.action().pattern.insertion && is_shml(f.body());
  case Formula::Kind::Max:
    return is_shml(f.body());
  default:
    return false;
  }
}

bool is_shmlnf(const Formula &f, const Domain &d) {
  return is_shml(f) && is_guarded(f) && nf_impl(f, d);
}

Classification classify(const Formula &f, const Domain &d) {
  Classification c;
  c.closed = free_logic_vars(f).empty() && free_data_vars(f).empty();
  c.guarded = is_guarded(f);
  c.shml = is_shml(f);
  c.shmlnf = c.shml && c.guarded && nf_impl(f, d);
  return c;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const Formula &f) {
  switch (f.kind()) {
  case Formula::Kind::Or:
  case Formula::Kind::Max:
  case Formula::Kind::Min:
    return 0;
  case Formula::Kind::And:
    return 1;
  default:
    return 2;
  }
}

void print(const Formula &f, std::string &out);

void print_wrapped(const Formula &f, bool paren, std::string &out) {
  if (paren)
    out += "(";
  print(f, out);
  if (paren)
    out += ")";
}

void print(const Formula &f, std::string &out) {
  switch (f.kind()) {
  case Formula::Kind::True:
    out += "tt";
    return;
  case Formula::Kind::False:
    out += "ff";
    return;
  case Formula::Kind::Var:
    out += f.name();
    return;
  case Formula::Kind::And:
  case Formula::Kind::Or: {
    int prec = precedence(f);
    const char *sep = f.is(Formula::Kind::And) ? " && " : " || ";
    bool first = true;
    for (const auto &o : f.operands()) {
      if (!first)
        out += sep;
      first = false;
      print_wrapped(o, precedence(o) <= prec, out);
    }
    return;
  }
  case Formula::Kind::Nec:
  case Formula::Kind::Pos:
    out += f.is(Formula::Kind::Nec) ? "[" : "<";
    out += f.action().to_string();
    out += f.is(Formula::Kind::Nec) ? "]" : ">";
    print_wrapped(f.body(), precedence(f.body()) < 2, out);
    return;
  case Formula::Kind::Max:
  case Formula::Kind::Min:
    out += f.is(Formula::Kind::Max) ? "max " : "min ";
    out += f.name();
    out += ".";
    print(f.body(), out);
    return;
  }
}

} // namespace

std::string Formula::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

// ---------------------------------------------------------------------------
// Value collection

namespace {

void collect_condition_values(const Condition &c,
                              const std::map<std::string, bool> &is_port,
                              std::set<std::string> &ports,
                              std::set<std::string> &payloads) {
  using Op = Condition::Op;
  switch (c.op()) {
  case Op::True:
  case Op::False:
    return;
  case Op::Eq:
  case Op::Neq: {
    const Term &a = c.lhs();
    const Term &b = c.rhs();
    auto file = [&](const Term &var, const Term &val) {
      if (!var.is_variable() || val.is_variable())
        return;
      auto it = is_port.find(var.name);
      if (it == is_port.end())
        return;
      (it->second ? ports : payloads).insert(val.name);
    };
    file(a, b);
    file(b, a);
    return;
  }
  case Op::And:
  case Op::Or:
    collect_condition_values(c.left(), is_port, ports, payloads);
    collect_condition_values(c.right(), is_port, ports, payloads);
    return;
  case Op::Not:
    collect_condition_values(c.operand(), is_port, ports, payloads);
    return;
  }
}

void collect_values_impl(const Formula &f, std::map<std::string, bool> is_port,
                         std::set<std::string> &ports,
                         std::set<std::string> &payloads) {
  if (f.is(Formula::Kind::Nec) || f.is(Formula::Kind::Pos)) {
    const Pattern &p = f.action().pattern;
    if (!p.insertion) {
      for (auto [slot, port] : {std::pair{&p.port, true}, {&p.payload, false}}) {
        if (slot->kind == Slot::Kind::Value)
          (port ? ports : payloads).insert(slot->name);
        else if (slot->kind == Slot::Kind::Binder)
          is_port[slot->name] = port;
      }
    }
    collect_condition_values(f.action().condition, is_port, ports, payloads);
  }
  for (const auto &o : f.operands())
    collect_values_impl(o, is_port, ports, payloads);
}

} // namespace

void collect_values(const Formula &f, std::set<std::string> &ports,
                    std::set<std::string> &payloads) {
  collect_values_impl(f, {}, ports, payloads);
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace {

struct AlphaEnv {
  std::map<std::string, std::string> logic;
  Renaming data;
};

Formula canonical(const Formula &f, AlphaEnv env, int &counter) {
  switch (f.kind()) {
  case Formula::Kind::Var: {
    auto it = env.logic.find(f.name());
    return Formula::var(it == env.logic.end() ? f.name() : it->second);
  }
  case Formula::Kind::Max:
  case Formula::Kind::Min: {
    std::string x = "#r" + std::to_string(counter++);
    env.logic[f.name()] = x;
    return with_binder(f, x, canonical(f.body(), env, counter));
  }
  case Formula::Kind::Nec:
  case Formula::Kind::Pos: {
    const SymbolicAction &sa = f.action();
    Pattern p = sa.pattern;
    AlphaEnv inner = env;
    for (Slot *slot : {&p.port, &p.payload}) {
      if (p.insertion || slot->kind == Slot::Kind::Value)
        continue;
      if (slot->kind == Slot::Kind::Free) {
        if (auto it = env.data.find(slot->name); it != env.data.end())
          slot->name = it->second;
      } else {
        std::string d = "#d" + std::to_string(counter++);
        inner.data[slot->name] = d;
        slot->name = d;
      }
    }
    SymbolicAction out{p, sa.condition.rename(inner.data)};
    return with_action(f, out, canonical(f.body(), inner, counter));
  }
  default: {
    std::vector<Formula> children;
    for (const auto &o : f.operands())
      children.push_back(canonical(o, env, counter));
    return rebuild(f, std::move(children));
  }
  }
}

} // namespace

std::string alpha_key(const Formula &f) {
  int counter = 0;
  return canonical(f, {}, counter).key();
}

} // namespace shmlenf
