#ifndef SHMLENF_BISIM_HPP
#define SHMLENF_BISIM_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "shmlenf/lts.hpp"

namespace shmlenf {

/// Finite graph with string labels; tau is an ordinary label here.
struct Graph {
  std::vector<std::vector<std::pair<std::string, std::size_t>>> edges;

  std::size_t size() const { return edges.size(); }
};

Graph graph_of(const LTS &lts);

struct BisimResult {
  bool bisimilar = false;
  /// On failure: labels along which the transfer property breaks. The last
  /// label is one the left (or right) side can take but the other cannot
  /// match into an equivalent state.
  std::vector<std::string> witness;
  std::string explanation;
};

/// Strong bisimilarity by partition refinement over the disjoint union.
BisimResult bisim(const Graph &left, std::size_t l, const Graph &right,
                  std::size_t r);
BisimResult bisim(const LTS &left, std::size_t l, const LTS &right,
                  std::size_t r);

/// Coarsest stable partition of one graph: block index per state.
std::vector<std::size_t> bisim_classes(const Graph &g);

} // namespace shmlenf

#endif
