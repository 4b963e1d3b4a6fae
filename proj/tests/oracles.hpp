#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sfc/ast.hpp"

namespace sfc::testing {

// A second, structurally independent implementation of the footprint
// analysis, used to cross-check the production fixpoint. The production
// code runs chaotic (in-place) iteration in declaration order; the oracle
// runs Jacobi rounds (a whole new table per round, reading only the
// previous one) in reverse declaration order. The least solution is
// unique, so any disagreement is a bug in one of the two.

struct Triple {
  VarSet vars;
  VarSet mod;
  ResSet req;

  friend bool operator==(const Triple&, const Triple&) = default;
};

using SummaryTable = std::map<Ident, Triple>;

SummaryTable oracle_summaries(const Program& p);

/// Reference parallelism map: collect the symmetric pairs contributed by
/// every parallel composition, then saturate caller-to-callee inheritance
/// edge by edge in reverse collection order until nothing changes.
std::map<Ident, std::set<Ident>> oracle_par_map(const Program& p);

/// For one procedure, a human-readable witness for every resource in its
/// req set, collected by a walk that mirrors the req equations node by
/// node. The key set must equal req(f) exactly: every required resource
/// has a concrete justification and nothing is required without one.
std::map<Ident, std::vector<std::string>> oracle_req_witnesses(
    const ProcDecl& f, const SummaryTable& table, const Program& p);

/// One corpus program plus the expectation encoded in its first line
/// (`// expect: clean` or `// expect: CODE [CODE ...]`, a multiset).
struct CorpusFile {
  std::string name;
  std::string path;
  std::string source;
  std::multiset<std::string> expected_codes;

  bool expects_clean() const { return expected_codes.empty(); }

  /// 0 when clean or warning-only, 2 when any syntax/legality/IO code is
  /// expected, 1 otherwise (condition errors).
  int expected_exit() const;
};

/// Every .sf file in the corpus directory, sorted by file name. Throws when
/// the directory is missing or empty or an expectation line is malformed.
std::vector<CorpusFile> load_corpus();

}  // namespace sfc::testing
