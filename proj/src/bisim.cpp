#include "shmlenf/bisim.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace shmlenf {

Graph graph_of(const LTS &lts) {
  Graph g;
  g.edges.resize(lts.size());
  for (std::size_t s = 0; s < lts.size(); ++s)
    for (const auto &e : lts.edges(s))
      g.edges[s].push_back({e.label.to_string(), e.target});
  return g;
}

namespace {

using Blocks = std::vector<std::size_t>;

struct Interned {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> edges;
  std::vector<std::string> labels;
};

Interned intern(const Graph &g) {
  Interned out;
  std::map<std::string, std::size_t> ids;
  out.edges.resize(g.size());
  for (std::size_t s = 0; s < g.size(); ++s)
    for (const auto &[label, t] : g.edges[s]) {
      auto [it, fresh] = ids.emplace(label, out.labels.size());
      if (fresh)
        out.labels.push_back(label);
      out.edges[s].push_back({it->second, t});
    }
  return out;
}

// Block assignment after every refinement round; round 0 is the trivial
// partition.
std::vector<Blocks> refine(const Interned &g) {
  std::size_t n = g.edges.size();
  std::vector<Blocks> history{Blocks(n, 0)};
  std::size_t count = n ? 1 : 0;
  while (true) {
    const Blocks &cur = history.back();
    std::map<std::pair<std::size_t,
                       std::set<std::pair<std::size_t, std::size_t>>>,
             std::size_t>
        ids;
    Blocks next(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::set<std::pair<std::size_t, std::size_t>> sig;
      for (const auto &[l, t] : g.edges[s])
        sig.insert({l, cur[t]});
      auto [it, fresh] = ids.emplace(std::make_pair(cur[s], std::move(sig)),
                                     ids.size());
      next[s] = it->second;
    }
    std::size_t next_count = ids.size();
    if (next_count == count)
      return history;
    history.push_back(std::move(next));
    count = next_count;
  }
}

struct Union {
  Interned graph;
  std::size_t offset;
};

Union disjoint_union(const Graph &a, const Graph &b) {
  Graph u = a;
  for (const auto &es : b.edges) {
    u.edges.emplace_back();
    for (const auto &[l, t] : es)
      u.edges.back().push_back({l, t + a.size()});
  }
  return {intern(u), a.size()};
}

std::size_t separation(const std::vector<Blocks> &h, std::size_t s,
                       std::size_t t) {
  for (std::size_t r = 0; r < h.size(); ++r)
    if (h[r][s] != h[r][t])
      return r;
  return h.size();
}

} // namespace

std::vector<std::size_t> bisim_classes(const Graph &g) {
  return refine(intern(g)).back();
}

BisimResult bisim(const Graph &left, std::size_t l, const Graph &right,
                  std::size_t r) {
  Union u = disjoint_union(left, right);
  const auto &edges = u.graph.edges;
  auto history = refine(u.graph);
  std::size_t s = l, t = r + u.offset;
  BisimResult res;
  if (separation(history, s, t) == history.size()) {
    res.bisimilar = true;
    return res;
  }
  bool swapped = false; // true when `s` is a right-hand state
  while (true) {
    std::size_t round = separation(history, s, t);
    const Blocks &prev = history[round - 1];
    // Find a move of one side the other cannot match within `prev`.
    auto unmatched = [&](std::size_t a, std::size_t b)
        -> std::optional<std::pair<std::size_t, std::size_t>> {
      for (const auto &[lab, a2] : edges[a]) {
        bool matched = false;
        for (const auto &[lab2, b2] : edges[b])
          if (lab2 == lab && prev[b2] == prev[a2]) {
            matched = true;
            break;
          }
        if (!matched)
          return std::make_pair(lab, a2);
      }
      return std::nullopt;
    };
    auto move = unmatched(s, t);
    if (!move) {
      move = unmatched(t, s);
      std::swap(s, t);
      swapped = !swapped;
    }
    auto [lab, s2] = *move;
    res.witness.push_back(u.graph.labels[lab]);
    std::vector<std::size_t> answers;
    for (const auto &[lab2, t2] : edges[t])
      if (lab2 == lab)
        answers.push_back(t2);
    if (answers.empty()) {
      res.explanation = std::string(swapped ? "right" : "left") + " can do " +
                        u.graph.labels[lab] + ", " +
                        (swapped ? "left" : "right") + " cannot";
      return res;
    }
    std::size_t best = answers.front();
    for (std::size_t t2 : answers)
      if (separation(history, s2, t2) > separation(history, s2, best))
        best = t2;
    s = s2;
    t = best;
  }
}

BisimResult bisim(const LTS &left, std::size_t l, const LTS &right,
                  std::size_t r) {
  return bisim(graph_of(left), l, graph_of(right), r);
}

} // namespace shmlenf
