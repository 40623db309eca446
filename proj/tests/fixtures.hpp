#ifndef SHMLENF_TEST_FIXTURES_HPP
#define SHMLENF_TEST_FIXTURES_HPP

#include <string>

#include "shmlenf/formula.hpp"
#include "shmlenf/lts.hpp"
#include "shmlenf/process.hpp"
#include "shmlenf/transducer.hpp"

namespace fx {

inline const shmlenf::Domain &dom() {
  static const shmlenf::Domain d({"i", "j"}, {"req", "ans", "cls"});
  return d;
}

inline const char *pg = "rec X.(i?req.i!ans.X + i?cls.nil)";
inline const char *pb = "rec X.(i?req.X + i?req.i!ans.X + i?cls.nil)";
inline const char *phi0 = "max X.[i?req]([i!ans]X && [i?req]ff)";
inline const char *phi1 = "max X.[(x)?req when x != j]([x!ans]X && [x?req]ff)";
inline const char *phins = "[i?req]ff || [i!ans]ff";
inline const char *ei = "{* -> i?req}.{* -> i!ans}.id";
inline const char *er = "rec x.({(x)?req -> j?req}.x + {(x)!ans -> j!ans}.x + "
                        "{(x)?cls -> j?cls}.x)";
inline const char *es =
    "rec y.({(x)?req when x != j -> tau}.y + {(x)!ans when x != j}.y)";
inline const char *ess = "rec x.{(x)?req when x != j}.rec y.({x!ans}.x + "
                         "{x?req -> tau}.y)";

inline shmlenf::Formula F(const std::string &s) {
  return shmlenf::parse_formula(s, &dom());
}
inline shmlenf::Process P(const std::string &s) {
  return shmlenf::parse_process(s, &dom());
}
inline shmlenf::Transducer T(const std::string &s) {
  return shmlenf::parse_transducer(s, &dom());
}
inline shmlenf::LTS L(const std::string &process) {
  return shmlenf::reachable(P(process), 256);
}
inline shmlenf::Action A(const std::string &s) {
  return shmlenf::parse_action(s);
}

} // namespace fx

#endif
