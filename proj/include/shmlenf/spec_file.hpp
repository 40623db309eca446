#ifndef SHMLENF_SPEC_FILE_HPP
#define SHMLENF_SPEC_FILE_HPP

// One-file corpus: a domain plus named processes, formulas and enforcers.
//
//   ports = {i, j};
//   payloads = {req, ans, cls};
//   process pg = rec X.(i?req.i!ans.X + i?cls.nil);
//   formula phi1 = max X.[(x)?req when x != j]([x!ans]X && [x?req]ff);
//   enforcer ess = rec x.{(x)?req when x != j}.rec y.({x!ans}.x + {x?req -> tau}.y);
//
// Statements end with ';'. '#' and '//' start comments.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "shmlenf/formula.hpp"
#include "shmlenf/process.hpp"
#include "shmlenf/transducer.hpp"

namespace shmlenf {

struct SpecFile {
  Domain domain;
  std::map<std::string, Process> processes;
  std::map<std::string, Formula> formulas;
  std::map<std::string, Transducer> enforcers;
  /// Definition order, as (kind, name) with kind process/formula/enforcer.
  std::vector<std::pair<std::string, std::string>> order;

  /// Throw Error naming the missing definition.
  const Process &process(const std::string &name) const;
  const Formula &formula(const std::string &name) const;
  const Transducer &enforcer(const std::string &name) const;
};

/// Throws ParseError with offsets into `text`.
SpecFile parse_spec(std::string_view text);
SpecFile load_spec(const std::string &path);

/// 1-based "line:column" of a byte offset.
std::string line_column(std::string_view text, std::size_t offset);

/// Whole file contents; throws Error when unreadable.
std::string read_file(const std::string &path);

} // namespace shmlenf

#endif
