#include "shmlenf/runtime.hpp"

#include <deque>
#include <map>
#include <random>
#include <set>

#include "shmlenf/error.hpp"

namespace shmlenf {

const char *rule_name(Rule r) {
  switch (r) {
  case Rule::Trn: return "iTrn";
  case Rule::Asy: return "iAsy";
  case Rule::Ins: return "iIns";
  case Rule::Ter: return "iTer";
  }
  return "?";
}

std::vector<IStep> istep(const Transducer &e, const LTS &sys, std::size_t s) {
  std::vector<IStep> trn, asy, ter;
  auto insertions = transforms(e, ExtendedAction::insertion());
  for (const auto &edge : sys.edges(s)) {
    if (edge.label.is_tau()) {
      asy.push_back({Rule::Asy, Label::tau(), {e, edge.target}});
      continue;
    }
    auto moves = transforms(e, ExtendedAction::of(*edge.label.action));
    for (auto &[u, next] : moves)
      trn.push_back({Rule::Trn, u, {next, edge.target}});
    if (moves.empty() && insertions.empty())
      ter.push_back({Rule::Ter, edge.label, {Transducer::id(), edge.target}});
  }
  std::vector<IStep> out = std::move(trn);
  out.insert(out.end(), asy.begin(), asy.end());
  for (auto &[u, next] : insertions)
    out.push_back({Rule::Ins, u, {next, s}});
  out.insert(out.end(), ter.begin(), ter.end());
  return out;
}

std::string config_to_string(const Config &c, const LTS &sys) {
  return "<" + c.enforcer.to_string() + ", " + sys.name(c.system) + ">";
}

namespace {

std::string config_key(const Config &c) {
  return c.enforcer.key() + "|" + std::to_string(c.system);
}

} // namespace

Composite composite_lts(const Transducer &e, const LTS &sys, std::size_t s,
                        std::size_t bound) {
  Composite out;
  std::map<std::string, std::size_t> ids;
  std::deque<std::size_t> work;
  auto intern = [&](const Config &c) {
    auto [it, fresh] = ids.emplace(config_key(c), 0);
    if (fresh) {
      if (out.lts.size() >= bound)
        throw BoundExceeded("composite system exceeds " +
                            std::to_string(bound) + " states");
      it->second = out.lts.add_state(config_to_string(c, sys));
      out.configs.push_back(c);
      work.push_back(it->second);
    }
    return it->second;
  };
  out.lts.set_initial(intern({e, s}));
  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    Config c = out.configs[i];
    for (const auto &st : istep(c.enforcer, sys, c.system))
      out.lts.add_transition(i, st.label, intern(st.target));
  }
  return out;
}

Policy Policy::parse(std::string_view text) {
  Policy p;
  if (text == "first")
    return p;
  if (text.substr(0, 7) == "random:") {
    p.kind = Kind::Random;
    std::string digits(text.substr(7));
    if (digits.empty() ||
        digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error("malformed random seed in policy '" + std::string(text) +
                  "'");
    p.seed = std::stoull(digits);
    return p;
  }
  if (text.substr(0, 7) == "script:") {
    p.kind = Kind::Script;
    std::string rest(text.substr(7));
    std::size_t start = 0;
    while (start <= rest.size()) {
      std::size_t comma = rest.find(',', start);
      if (comma == std::string::npos)
        comma = rest.size();
      std::string label = rest.substr(start, comma - start);
      if (!label.empty())
        p.script.push_back(label);
      start = comma + 1;
    }
    return p;
  }
  throw Error("unknown policy '" + std::string(text) + "'");
}

std::vector<SimStep> simulate(const Transducer &e, const LTS &sys,
                              std::size_t s, std::size_t steps,
                              const Policy &policy) {
  std::vector<SimStep> run;
  std::mt19937_64 rng(policy.seed);
  Config current{e, s};
  std::set<std::string> visited{config_key(current)};
  for (std::size_t n = 0; n < steps; ++n) {
    auto candidates = istep(current.enforcer, sys, current.system);
    if (candidates.empty())
      break;
    const IStep *pick = nullptr;
    switch (policy.kind) {
    case Policy::Kind::First: {
      Rule top = candidates.front().rule;
      std::vector<const IStep *> group;
      for (const auto &c : candidates)
        if (c.rule == top)
          group.push_back(&c);
      std::string here = config_key(current);
      for (const IStep *c : group)
        if (!visited.count(config_key(c->target))) {
          pick = c;
          break;
        }
      if (!pick)
        for (const IStep *c : group)
          if (config_key(c->target) != here) {
            pick = c;
            break;
          }
      if (!pick)
        pick = group.front();
      break;
    }
    case Policy::Kind::Random: {
      std::uniform_int_distribution<std::size_t> dist(0, candidates.size() - 1);
      pick = &candidates[dist(rng)];
      break;
    }
    case Policy::Kind::Script: {
      if (n >= policy.script.size())
        break;
      for (const auto &c : candidates)
        if (c.label.to_string() == policy.script[n]) {
          pick = &c;
          break;
        }
      break;
    }
    }
    if (!pick)
      break;
    run.push_back({pick->rule, pick->label, pick->target});
    current = pick->target;
    visited.insert(config_key(current));
  }
  return run;
}

TransducerGraph transducer_graph(const Transducer &e, const Domain &d,
                                 std::size_t bound) {
  TransducerGraph g;
  std::map<std::string, std::size_t> ids;
  std::deque<std::size_t> work;
  auto intern = [&](const Transducer &t) {
    auto [it, fresh] = ids.emplace(t.key(), 0);
    if (fresh) {
      if (g.states.size() >= bound)
        throw BoundExceeded("transducer exceeds " + std::to_string(bound) +
                            " states");
      it->second = g.states.size();
      g.states.push_back(t);
      g.edges.emplace_back();
      work.push_back(it->second);
    }
    return it->second;
  };
  intern(e);
  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    Transducer t = g.states[i];
    for (const auto &st : tstep(t, d)) {
      std::size_t j = intern(st.next);
      g.edges[i].push_back(
          {st.input.to_string() + ">" + st.output.to_string(), j});
    }
  }
  return g;
}

} // namespace shmlenf
