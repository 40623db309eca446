#ifndef SHMLENF_SYNTHESIZER_HPP
#define SHMLENF_SYNTHESIZER_HPP

#include "shmlenf/formula.hpp"
#include "shmlenf/transducer.hpp"

namespace shmlenf {

/// Suppression enforcer of a normal-form formula. Logical variable X becomes
/// recursion variable x; every conjunction becomes rec yN over a sum whose
/// ff branches suppress. Throws FragmentError outside normal form.
Transducer synthesize(const Formula &f, const Domain &d);

/// Drops every rec x.e whose body does not mention x.
Transducer optimize(const Transducer &e);

/// optimize(synthesize(normalize(f))).
Transducer compile(const Formula &f, const Domain &d);

} // namespace shmlenf

#endif
