#include "shmlenf/process.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "lexer.hpp"
#include "shmlenf/error.hpp"
#include "symbolic_parse.hpp"

namespace shmlenf {

struct Process::Node {
  Kind kind;
  Label label;
  std::vector<Process> kids;
  std::string name;
  std::string key;
};

Process Process::nil() {
  static const Process p(
      std::make_shared<const Node>(Node{Kind::Nil, {}, {}, {}, "0"}));
  return p;
}

Process Process::prefix(Label u, Process next) {
  std::string key = u.to_string() + "." + next.key();
  return Process(std::make_shared<const Node>(
      Node{Kind::Prefix, std::move(u), {std::move(next)}, {}, std::move(key)}));
}

Process Process::choice(std::vector<Process> branches) {
  if (branches.empty())
    return nil();
  if (branches.size() == 1)
    return branches.front();
  std::string key = "(+";
  for (const auto &b : branches)
    key += b.key() + ",";
  key += ")";
  return Process(std::make_shared<const Node>(
      Node{Kind::Choice, {}, std::move(branches), {}, std::move(key)}));
}

Process Process::rec(std::string var, Process body) {
  std::string key = "(rec " + var + "." + body.key() + ")";
  return Process(std::make_shared<const Node>(
      Node{Kind::Rec, {}, {std::move(body)}, std::move(var), std::move(key)}));
}

Process Process::var(std::string name) {
  std::string key = "v:" + name;
  return Process(std::make_shared<const Node>(
      Node{Kind::Var, {}, {}, std::move(name), std::move(key)}));
}

Process::Kind Process::kind() const { return node_->kind; }
const Label &Process::label() const { return node_->label; }
const Process &Process::body() const { return node_->kids.front(); }
const std::vector<Process> &Process::branches() const { return node_->kids; }
const std::string &Process::name() const { return node_->name; }
const std::string &Process::key() const { return node_->key; }

namespace {

// 0: choice level, 1: prefix level.
void print(const Process &p, int ctx, std::string &out) {
  switch (p.kind()) {
  case Process::Kind::Nil:
    out += "nil";
    return;
  case Process::Kind::Var:
    out += p.name();
    return;
  case Process::Kind::Prefix:
    out += p.label().to_string();
    out += ".";
    print(p.body(), 1, out);
    return;
  case Process::Kind::Choice: {
    if (ctx > 0)
      out += "(";
    bool first = true;
    for (const auto &b : p.branches()) {
      if (!first)
        out += " + ";
      first = false;
      print(b, b.is(Process::Kind::Prefix) ? 0 : 1, out);
    }
    if (ctx > 0)
      out += ")";
    return;
  }
  case Process::Kind::Rec:
    if (ctx > 0)
      out += "(";
    out += "rec " + p.name() + ".";
    print(p.body(), 1, out);
    if (ctx > 0)
      out += ")";
    return;
  }
}

} // namespace

std::string Process::to_string() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using detail::Tok;
using detail::TokenStream;

class ProcessParser {
public:
  ProcessParser(std::string_view text, const Domain *domain)
      : ts_(text), domain_(domain) {}

  Process parse() {
    Process p = parse_choice();
    if (!ts_.at(Tok::End))
      ts_.fail("unexpected trailing input");
    return p;
  }

private:
  Process parse_choice() {
    std::vector<Process> bs{parse_prefix()};
    while (ts_.accept(Tok::Plus))
      bs.push_back(parse_prefix());
    return Process::choice(std::move(bs));
  }

  Process parse_prefix() {
    if (ts_.accept(Tok::LParen)) {
      Process p = parse_choice();
      ts_.expect(Tok::RParen);
      return p;
    }
    if (ts_.accept_ident("nil"))
      return Process::nil();
    if (ts_.accept_ident("rec")) {
      std::string x = ts_.expect_ident();
      ts_.expect(Tok::Dot);
      vars_.push_back(x);
      Process body = parse_choice();
      vars_.pop_back();
      return Process::rec(x, body);
    }
    if (ts_.accept_ident("tau")) {
      ts_.expect(Tok::Dot);
      return Process::prefix(Label::tau(), parse_prefix());
    }
    if (!ts_.at(Tok::Ident))
      ts_.fail("expected a process");
    auto next = ts_.peek(1).kind;
    if (next == Tok::Question || next == Tok::Bang) {
      Action a = detail::parse_concrete_action(ts_, domain_);
      ts_.expect(Tok::Dot);
      return Process::prefix(Label::of(a), parse_prefix());
    }
    const auto &tok = ts_.next();
    if (std::find(vars_.begin(), vars_.end(), tok.text) == vars_.end())
      throw ParseError("unbound process variable '" + tok.text + "'", tok.pos);
    return Process::var(tok.text);
  }

  TokenStream ts_;
  const Domain *domain_;
  std::vector<std::string> vars_;
};

} // namespace

Process parse_process(std::string_view text, const Domain *domain) {
  return ProcessParser(text, domain).parse();
}

// ---------------------------------------------------------------------------
// Semantics

Process substitute(const Process &p, const std::string &x, const Process &q) {
  switch (p.kind()) {
  case Process::Kind::Nil:
    return p;
  case Process::Kind::Var:
    return p.name() == x ? q : p;
  case Process::Kind::Prefix:
    return Process::prefix(p.label(), substitute(p.body(), x, q));
  case Process::Kind::Choice: {
    std::vector<Process> bs;
    for (const auto &b : p.branches())
      bs.push_back(substitute(b, x, q));
    return Process::choice(std::move(bs));
  }
  case Process::Kind::Rec:
    if (p.name() == x)
      return p;
    return Process::rec(p.name(), substitute(p.body(), x, q));
  }
  return p;
}

namespace {

void step_into(const Process &p, std::vector<std::pair<Label, Process>> &out,
               int depth) {
  if (depth > 256)
    throw Error("unguarded recursion in process " + p.to_string());
  switch (p.kind()) {
  case Process::Kind::Nil:
  case Process::Kind::Var:
    return;
  case Process::Kind::Prefix:
    out.emplace_back(p.label(), p.body());
    return;
  case Process::Kind::Choice:
    for (const auto &b : p.branches())
      step_into(b, out, depth);
    return;
  case Process::Kind::Rec:
    step_into(substitute(p.body(), p.name(), p), out, depth + 1);
    return;
  }
}

} // namespace

std::vector<std::pair<Label, Process>> step(const Process &p) {
  std::vector<std::pair<Label, Process>> out;
  step_into(p, out, 0);
  return out;
}

LTS reachable(const Process &p, std::size_t bound) {
  LTS lts;
  std::map<std::string, std::size_t> ids;
  std::deque<Process> work;
  auto intern = [&](const Process &q) {
    auto [it, fresh] = ids.emplace(q.key(), 0);
    if (fresh) {
      if (lts.size() >= bound)
        throw BoundExceeded("process exceeds " + std::to_string(bound) +
                            " states");
      it->second = lts.add_state(q.to_string());
      work.push_back(q);
    }
    return it->second;
  };
  lts.set_initial(intern(p));
  while (!work.empty()) {
    Process q = work.front();
    work.pop_front();
    std::size_t from = ids.at(q.key());
    for (const auto &[label, next] : step(q))
      lts.add_transition(from, label, intern(next));
  }
  return lts;
}

std::set<Action> process_actions(const Process &p) {
  std::set<Action> out;
  if (p.is(Process::Kind::Prefix) && !p.label().is_tau())
    out.insert(*p.label().action);
  for (const auto &k : p.branches())
    for (const auto &a : process_actions(k))
      out.insert(a);
  return out;
}

} // namespace shmlenf
