#include "shmlenf/lts.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "shmlenf/error.hpp"

namespace shmlenf {

std::string trace_to_string(const Trace &t) {
  if (t.empty())
    return "eps";
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i)
    out += (i ? "." : "") + t[i].to_string();
  return out;
}

std::size_t LTS::add_state(std::string name) {
  names_.push_back(std::move(name));
  edges_.emplace_back();
  return names_.size() - 1;
}

void LTS::add_transition(std::size_t from, Label label, std::size_t to) {
  edges_.at(from).push_back({std::move(label), to});
}

std::size_t LTS::transition_count() const {
  std::size_t n = 0;
  for (const auto &e : edges_)
    n += e.size();
  return n;
}

std::set<std::size_t> LTS::tau_closure(std::size_t s) const {
  std::set<std::size_t> seen{s};
  std::vector<std::size_t> work{s};
  while (!work.empty()) {
    std::size_t u = work.back();
    work.pop_back();
    for (const auto &e : edges_[u])
      if (e.label.is_tau() && seen.insert(e.target).second)
        work.push_back(e.target);
  }
  return seen;
}

std::set<std::size_t> LTS::weak_step(std::size_t s, const Action &a) const {
  std::set<std::size_t> out;
  for (std::size_t u : tau_closure(s))
    for (const auto &e : edges_[u])
      if (!e.label.is_tau() && *e.label.action == a)
        for (std::size_t v : tau_closure(e.target))
          out.insert(v);
  return out;
}

std::vector<std::pair<Action, std::size_t>>
LTS::weak_moves(std::size_t s) const {
  std::set<std::pair<Action, std::size_t>> out;
  for (std::size_t u : tau_closure(s))
    for (const auto &e : edges_[u])
      if (!e.label.is_tau())
        for (std::size_t v : tau_closure(e.target))
          out.insert({*e.label.action, v});
  return {out.begin(), out.end()};
}

std::set<std::size_t> LTS::after_trace(std::size_t s, const Trace &t) const {
  std::set<std::size_t> current = tau_closure(s);
  for (const auto &a : t) {
    std::set<std::size_t> next;
    for (std::size_t u : current)
      for (std::size_t v : weak_step(u, a))
        next.insert(v);
    current = std::move(next);
    if (current.empty())
      break;
  }
  return current;
}

std::set<Trace> LTS::traces(std::size_t s, std::size_t k) const {
  std::set<Trace> out{Trace{}};
  // Frontier: trace -> set of states reached.
  std::map<Trace, std::set<std::size_t>> frontier{{Trace{}, tau_closure(s)}};
  for (std::size_t depth = 0; depth < k && !frontier.empty(); ++depth) {
    std::map<Trace, std::set<std::size_t>> next;
    for (const auto &[t, states] : frontier)
      for (std::size_t u : states)
        for (const auto &[a, v] : weak_moves(u)) {
          Trace t2 = t;
          t2.push_back(a);
          next[t2].insert(v);
        }
    for (const auto &[t, states] : next)
      out.insert(t);
    frontier = std::move(next);
  }
  return out;
}

std::set<Action> LTS::alphabet() const {
  std::set<Action> out;
  for (const auto &es : edges_)
    for (const auto &e : es)
      if (!e.label.is_tau())
        out.insert(*e.label.action);
  return out;
}

std::string LTS::to_text() const {
  // Display names that are not single distinct words fall back to s<index>.
  std::set<std::string> seen;
  bool plain = true;
  for (const auto &n : names_)
    if (n.empty() || n == "init" ||
        n.find_first_of(" \t\n#") != std::string::npos ||
        !seen.insert(n).second)
      plain = false;
  auto id = [&](std::size_t s) {
    return plain ? names_[s] : "s" + std::to_string(s);
  };
  std::ostringstream os;
  if (!names_.empty())
    os << "init " << id(initial_) << "\n";
  for (std::size_t s = 0; s < size(); ++s)
    for (const auto &e : edges_[s])
      os << id(s) << " -" << e.label.to_string() << "-> " << id(e.target)
         << "\n";
  return os.str();
}

LTS parse_lts(std::string_view text, const Domain *domain) {
  LTS lts;
  std::map<std::string, std::size_t> ids;
  auto state = [&](const std::string &name) {
    auto [it, fresh] = ids.emplace(name, 0);
    if (fresh)
      it->second = lts.add_state(name);
    return it->second;
  };
  std::optional<std::string> init;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t eol = text.find('\n', offset);
    if (eol == std::string_view::npos)
      eol = text.size();
    std::string line(text.substr(offset, eol - offset));
    std::size_t line_start = offset;
    offset = eol + 1;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream is(line);
    std::vector<std::string> words;
    for (std::string w; is >> w;)
      words.push_back(w);
    if (words.empty())
      continue;
    if (words[0] == "init") {
      if (words.size() != 2)
        throw ParseError("expected 'init STATE'", line_start);
      if (init)
        throw ParseError("duplicate 'init' line", line_start);
      init = words[1];
      state(words[1]);
      continue;
    }
    const std::string &arrow = words.size() == 3 ? words[1] : std::string();
    if (arrow.size() < 4 || arrow.front() != '-' ||
        arrow.compare(arrow.size() - 2, 2, "->") != 0)
      throw ParseError("expected 'SRC -label-> DST'", line_start);
    std::string label = arrow.substr(1, arrow.size() - 3);
    Label l;
    if (label != "tau") {
      Action a;
      try {
        a = parse_action(label);
      } catch (const ParseError &) {
        throw ParseError("malformed label '" + label + "'",
                         line_start + line.find(arrow));
      }
      if (domain && !domain->contains(a))
        throw ParseError("action '" + label + "' lies outside the domain",
                         line_start + line.find(arrow));
      l = Label::of(a);
    }
    std::size_t from = state(words[0]);
    std::size_t to = state(words[2]);
    lts.add_transition(from, l, to);
  }
  if (!init)
    throw ParseError("missing 'init' line", text.size());
  lts.set_initial(ids.at(*init));
  return lts;
}

} // namespace shmlenf
