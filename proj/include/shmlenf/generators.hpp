#ifndef SHMLENF_GENERATORS_HPP
#define SHMLENF_GENERATORS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "shmlenf/formula.hpp"
#include "shmlenf/process.hpp"

namespace shmlenf {

/// Closed guarded sHML formula with at most max(size, 2) constructors.
/// Deterministic per seed.
Formula gen_formula(const Domain &d, std::size_t size, std::uint64_t seed);

/// Closed regular process with at most `size` prefixes, hence at most
/// size + 1 reachable states. Deterministic per seed.
Process gen_process(const Domain &d, std::size_t size, std::uint64_t seed);

struct CorpusEntry {
  std::string name;
  Formula formula;
  Process process;
};

/// `n` (formula, process) pairs drawn from one seed.
std::vector<CorpusEntry> random_corpus(const Domain &d, std::size_t n,
                                       std::uint64_t seed,
                                       std::size_t formula_size = 8,
                                       std::size_t process_size = 15);

} // namespace shmlenf

#endif
