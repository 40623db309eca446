#include "shmlenf/transducer.hpp"

#include <algorithm>
#include <map>

#include "lexer.hpp"
#include "shmlenf/error.hpp"
#include "symbolic_parse.hpp"

namespace shmlenf {

struct Transducer::Node {
  Kind kind;
  SymbolicAction source;
  std::optional<Pattern> target;
  std::vector<Transducer> kids;
  std::string name;
  std::string key;
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

std::string pattern_key(const Pattern &p) {
  if (p.insertion)
    return "*";
  return slot_key(p.port) + direction_symbol(p.direction) + slot_key(p.payload);
}

} // namespace

Transducer Transducer::id() {
  static const Transducer e(
      std::make_shared<const Node>(Node{Kind::Id, {}, {}, {}, {}, "id"}));
  return e;
}

Transducer Transducer::prefix(SymbolicAction source,
                              std::optional<Pattern> target, Transducer next) {
  if (target && (target->insertion || !target->binders().empty()))
    throw FragmentError("target pattern must be a binder-free action pattern");
  std::string key = "{" + pattern_key(source.pattern) + "/" +
                    source.condition.key() + "->" +
                    (target ? pattern_key(*target) : std::string("tau")) +
                    "}." + next.key();
  return Transducer(std::make_shared<const Node>(
      Node{Kind::Prefix, std::move(source), std::move(target),
           {std::move(next)}, {}, std::move(key)}));
}

Transducer Transducer::identity_prefix(SymbolicAction source,
                                       Transducer next) {
  Pattern target = underline(source.pattern);
  return prefix(std::move(source), std::move(target), std::move(next));
}

Transducer Transducer::suppress(SymbolicAction source, Transducer next) {
  return prefix(std::move(source), std::nullopt, std::move(next));
}

Transducer Transducer::sum(std::vector<Transducer> branches) {
  if (branches.empty())
    throw Error("a sum needs at least one branch");
  if (branches.size() == 1)
    return branches.front();
  std::string key = "(+";
  for (const auto &b : branches)
    key += b.key() + ",";
  key += ")";
  return Transducer(std::make_shared<const Node>(
      Node{Kind::Sum, {}, {}, std::move(branches), {}, std::move(key)}));
}

Transducer Transducer::rec(std::string var, Transducer body) {
  std::string key = "(rec " + var + "." + body.key() + ")";
  return Transducer(std::make_shared<const Node>(
      Node{Kind::Rec, {}, {}, {std::move(body)}, std::move(var),
           std::move(key)}));
}

Transducer Transducer::var(std::string name) {
  std::string key = "v:" + name;
  return Transducer(std::make_shared<const Node>(
      Node{Kind::Var, {}, {}, {}, std::move(name), std::move(key)}));
}

Transducer::Kind Transducer::kind() const { return node_->kind; }
const SymbolicAction &Transducer::source() const { return node_->source; }
const std::optional<Pattern> &Transducer::target() const {
  return node_->target;
}
const Transducer &Transducer::body() const { return node_->kids.front(); }
const std::vector<Transducer> &Transducer::branches() const {
  return node_->kids;
}
const std::string &Transducer::name() const { return node_->name; }
const std::string &Transducer::key() const { return node_->key; }

// ---------------------------------------------------------------------------
// Printing

namespace {

void print(const Transducer &e, int ctx, std::string &out) {
  switch (e.kind()) {
  case Transducer::Kind::Id:
    out += "id";
    return;
  case Transducer::Kind::Var:
    out += e.name();
    return;
  case Transducer::Kind::Prefix: {
    const SymbolicAction &sa = e.source();
    out += "{" + sa.pattern.to_string();
    if (!sa.condition.is_true())
      out += " when " + sa.condition.to_string();
    if (!e.target())
      out += " -> tau";
    else if (sa.pattern.insertion || *e.target() != underline(sa.pattern))
      out += " -> " + e.target()->to_string();
    out += "}.";
    print(e.body(), 1, out);
    return;
  }
  case Transducer::Kind::Sum: {
    if (ctx > 0)
      out += "(";
    bool first = true;
    for (const auto &b : e.branches()) {
      if (!first)
        out += " + ";
      first = false;
      print(b, b.is(Transducer::Kind::Prefix) ? 0 : 1, out);
    }
    if (ctx > 0)
      out += ")";
    return;
  }
  case Transducer::Kind::Rec:
    if (ctx > 0)
      out += "(";
    out += "rec " + e.name() + ".";
    print(e.body(), 1, out);
    if (ctx > 0)
      out += ")";
    return;
  }
}

} // namespace

std::string Transducer::to_string() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using detail::DataScope;
using detail::Tok;
using detail::TokenStream;

class TransducerParser {
public:
  TransducerParser(std::string_view text, const Domain *domain)
      : ts_(text), data_(domain) {}

  Transducer parse() {
    Transducer e = parse_sum();
    if (!ts_.at(Tok::End))
      ts_.fail("unexpected trailing input");
    return e;
  }

private:
  Transducer parse_sum() {
    std::vector<Transducer> bs{parse_prefix()};
    while (ts_.accept(Tok::Plus))
      bs.push_back(parse_prefix());
    return Transducer::sum(std::move(bs));
  }

  Transducer parse_prefix() {
    if (ts_.accept(Tok::LParen)) {
      Transducer e = parse_sum();
      ts_.expect(Tok::RParen);
      return e;
    }
    if (ts_.accept_ident("id"))
      return Transducer::id();
    if (ts_.accept_ident("rec")) {
      std::string x = ts_.expect_ident();
      ts_.expect(Tok::Dot);
      vars_.push_back(x);
      Transducer body = parse_sum();
      vars_.pop_back();
      return Transducer::rec(x, body);
    }
    if (ts_.at(Tok::LBrace)) {
      std::size_t pos = ts_.next().pos;
      SymbolicAction sa = detail::parse_symbolic_action(ts_, data_, true);
      auto binders = sa.pattern.binders();
      data_.push(binders);
      std::optional<Pattern> target;
      bool suppress = false;
      if (ts_.accept(Tok::Arrow)) {
        if (ts_.accept_ident("tau"))
          suppress = true;
        else
          target = detail::parse_pattern(ts_, data_, false, false);
      } else if (sa.pattern.insertion) {
        throw ParseError("an insertion prefix needs an explicit target", pos);
      } else {
        target = underline(sa.pattern);
      }
      ts_.expect(Tok::RBrace);
      ts_.expect(Tok::Dot);
      Transducer next = parse_prefix();
      data_.pop(binders.size());
      return suppress ? Transducer::suppress(sa, next)
                      : Transducer::prefix(sa, target, next);
    }
    if (ts_.at(Tok::Ident)) {
      const auto &tok = ts_.next();
      if (std::find(vars_.begin(), vars_.end(), tok.text) == vars_.end())
        throw ParseError("unbound recursion variable '" + tok.text + "'",
                         tok.pos);
      return Transducer::var(tok.text);
    }
    ts_.fail("expected a transducer");
  }

  TokenStream ts_;
  DataScope data_;
  std::vector<std::string> vars_;
};

} // namespace

Transducer parse_transducer(std::string_view text, const Domain *domain) {
  return TransducerParser(text, domain).parse();
}

// ---------------------------------------------------------------------------
// Variables and substitution

std::set<std::string> free_rec_vars(const Transducer &e) {
  std::set<std::string> out;
  switch (e.kind()) {
  case Transducer::Kind::Id:
    break;
  case Transducer::Kind::Var:
    out.insert(e.name());
    break;
  case Transducer::Kind::Prefix:
  case Transducer::Kind::Sum:
    for (const auto &k : e.branches())
      for (const auto &v : free_rec_vars(k))
        out.insert(v);
    break;
  case Transducer::Kind::Rec:
    out = free_rec_vars(e.body());
    out.erase(e.name());
    break;
  }
  return out;
}

std::set<std::string> free_data_vars(const Transducer &e) {
  std::set<std::string> out;
  switch (e.kind()) {
  case Transducer::Kind::Id:
  case Transducer::Kind::Var:
    break;
  case Transducer::Kind::Sum:
  case Transducer::Kind::Rec:
    for (const auto &k : e.branches())
      for (const auto &v : free_data_vars(k))
        out.insert(v);
    break;
  case Transducer::Kind::Prefix: {
    out = free_data_vars(e.body());
    if (e.target())
      for (const auto &v : e.target()->free_vars())
        out.insert(v);
    for (const auto &b : e.source().pattern.binders())
      out.erase(b);
    for (const auto &v : e.source().free_vars())
      out.insert(v);
    break;
  }
  }
  return out;
}

Transducer substitute_data(const Transducer &e, const Substitution &s) {
  if (s.empty())
    return e;
  switch (e.kind()) {
  case Transducer::Kind::Id:
  case Transducer::Kind::Var:
    return e;
  case Transducer::Kind::Sum: {
    std::vector<Transducer> bs;
    for (const auto &b : e.branches())
      bs.push_back(substitute_data(b, s));
    return Transducer::sum(std::move(bs));
  }
  case Transducer::Kind::Rec:
    return Transducer::rec(e.name(), substitute_data(e.body(), s));
  case Transducer::Kind::Prefix: {
    Substitution inner = s;
    for (const auto &b : e.source().pattern.binders())
      inner.erase(b);
    std::optional<Pattern> target;
    if (e.target())
      target = e.target()->substitute(inner);
    return Transducer::prefix(e.source().substitute(s), target,
                              substitute_data(e.body(), inner));
  }
  }
  return e;
}

Transducer substitute_rec(const Transducer &e, const std::string &x,
                          const Transducer &g) {
  switch (e.kind()) {
  case Transducer::Kind::Id:
    return e;
  case Transducer::Kind::Var:
    return e.name() == x ? g : e;
  case Transducer::Kind::Sum: {
    std::vector<Transducer> bs;
    for (const auto &b : e.branches())
      bs.push_back(substitute_rec(b, x, g));
    return Transducer::sum(std::move(bs));
  }
  case Transducer::Kind::Rec:
    if (e.name() == x)
      return e;
    return Transducer::rec(e.name(), substitute_rec(e.body(), x, g));
  case Transducer::Kind::Prefix:
    return Transducer::prefix(e.source(), e.target(),
                              substitute_rec(e.body(), x, g));
  }
  return e;
}

// ---------------------------------------------------------------------------
// Dynamics

namespace {

void transforms_into(const Transducer &e, const ExtendedAction &g,
                     std::vector<std::pair<Label, Transducer>> &out,
                     int depth) {
  if (depth > 256)
    throw Error("unguarded recursion in transducer " + e.to_string());
  switch (e.kind()) {
  case Transducer::Kind::Id:
    if (!g.is_insertion())
      out.emplace_back(Label::of(*g.action), e);
    return;
  case Transducer::Kind::Var:
    return;
  case Transducer::Kind::Sum:
    for (const auto &b : e.branches())
      transforms_into(b, g, out, depth);
    return;
  case Transducer::Kind::Rec:
    transforms_into(substitute_rec(e.body(), e.name(), e), g, out, depth + 1);
    return;
  case Transducer::Kind::Prefix: {
    auto sigma = match(e.source().pattern, g);
    if (!sigma || !eval(e.source().condition, *sigma))
      return;
    Label u;
    if (e.target()) {
      auto a = e.target()->instantiate(*sigma);
      if (!a)
        throw UnboundVariable(e.target()->free_vars().empty()
                                  ? e.target()->to_string()
                                  : e.target()->free_vars().front());
      u = Label::of(*a);
    }
    out.emplace_back(u, substitute_data(e.body(), *sigma));
    return;
  }
  }
}

} // namespace

std::vector<std::pair<Label, Transducer>> transforms(const Transducer &e,
                                                     const ExtendedAction &g) {
  std::vector<std::pair<Label, Transducer>> out;
  transforms_into(e, g, out, 0);
  return out;
}

std::vector<TStep> tstep(const Transducer &e, const Domain &d) {
  std::vector<TStep> out;
  auto add = [&](const ExtendedAction &g) {
    for (auto &[u, next] : transforms(e, g))
      out.push_back({g, u, next});
  };
  add(ExtendedAction::insertion());
  for (const auto &a : d.actions())
    add(ExtendedAction::of(a));
  return out;
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace {

struct AlphaEnv {
  std::map<std::string, std::string> rec;
  std::map<std::string, std::string> data;
  int rec_depth = 0;
  int data_depth = 0;
};

// Free slots resolve in `outer`, binders in `inner`.
std::string alpha_slot(const Slot &s, const AlphaEnv &outer,
                       const AlphaEnv &inner) {
  switch (s.kind) {
  case Slot::Kind::Value:
    return s.name;
  case Slot::Kind::Free: {
    auto it = outer.data.find(s.name);
    return "$" + (it == outer.data.end() ? "free:" + s.name : it->second);
  }
  case Slot::Kind::Binder:
    return "(" + inner.data.at(s.name) + ")";
  }
  return {};
}

std::string alpha_pattern(const Pattern &p, const AlphaEnv &outer,
                          const AlphaEnv &inner) {
  if (p.insertion)
    return "*";
  return alpha_slot(p.port, outer, inner) + direction_symbol(p.direction) +
         alpha_slot(p.payload, outer, inner);
}

void alpha_walk(const Transducer &e, AlphaEnv env, std::string &out) {
  switch (e.kind()) {
  case Transducer::Kind::Id:
    out += "id";
    return;
  case Transducer::Kind::Var: {
    auto it = env.rec.find(e.name());
    out += it == env.rec.end() ? "free:" + e.name() : it->second;
    return;
  }
  case Transducer::Kind::Sum:
    out += "(+";
    for (const auto &b : e.branches()) {
      alpha_walk(b, env, out);
      out += ",";
    }
    out += ")";
    return;
  case Transducer::Kind::Rec: {
    std::string r = "r" + std::to_string(env.rec_depth++);
    env.rec[e.name()] = r;
    out += "(rec " + r + ".";
    alpha_walk(e.body(), env, out);
    out += ")";
    return;
  }
  case Transducer::Kind::Prefix: {
    const SymbolicAction &sa = e.source();
    AlphaEnv outer = env;
    for (const auto &b : sa.pattern.binders())
      env.data[b] = "d" + std::to_string(env.data_depth++);
    out += "{" + alpha_pattern(sa.pattern, outer, env);
    out += "/" + sa.condition.rename(env.data).key() + "->";
    out += e.target() ? alpha_pattern(*e.target(), env, env) : "tau";
    out += "}.";
    alpha_walk(e.body(), env, out);
    return;
  }
  }
}

} // namespace

std::string alpha_key(const Transducer &e) {
  std::string out;
  alpha_walk(e, AlphaEnv{}, out);
  return out;
}

void collect_values(const Transducer &e, std::set<std::string> &ports,
                    std::set<std::string> &payloads) {
  if (e.is(Transducer::Kind::Prefix)) {
    for (const Pattern *p :
         {&e.source().pattern, e.target() ? &*e.target() : nullptr}) {
      if (!p || p->insertion)
        continue;
      if (p->port.kind == Slot::Kind::Value)
        ports.insert(p->port.name);
      if (p->payload.kind == Slot::Kind::Value)
        payloads.insert(p->payload.name);
    }
  }
  for (const auto &k : e.branches())
    collect_values(k, ports, payloads);
}

} // namespace shmlenf
