#ifndef SHMLENF_MODEL_CHECK_HPP
#define SHMLENF_MODEL_CHECK_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>

#include "shmlenf/formula.hpp"
#include "shmlenf/lts.hpp"

namespace shmlenf {

using StateSet = std::set<std::size_t>;
using Valuation = std::map<std::string, StateSet>;

/// Denotation of `f` over `lts`: modalities quantify over weak derivatives,
/// fixpoints are computed by iteration from the full / empty set.
/// Throws UnboundVariable on free data variables and Error on free logical
/// variables outside `v`.
StateSet mc_eval(const Formula &f, const LTS &lts, const Valuation &v = {});

bool satisfies(const LTS &lts, std::size_t state, const Formula &f);

/// Largest relation over (state, closure formula) pairs closed under the
/// sHML satisfaction implications; an independent check of `satisfies`.
/// Throws BoundExceeded past `bound` pairs and FragmentError outside sHML.
bool sat_oracle(const LTS &lts, std::size_t state, const Formula &f,
                std::size_t bound = 200000);

} // namespace shmlenf

#endif
