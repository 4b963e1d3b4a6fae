#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "sfc/ast.hpp"

namespace sfc {

/// Per-procedure footprint summaries: variables accessed, variables
/// modified, and resources that must be held. Least solution of the
/// recursive summary equations, computed by fixpoint iteration.
struct Summaries {
  std::map<Ident, VarSet> vars;
  std::map<Ident, VarSet> mod;
  std::map<Ident, ResSet> req;
  std::size_t iterations = 0;  // rounds executed, final confirming round included
};

/// For each procedure, the set of procedures that may run in parallel
/// with it (least solution of the two closure rules).
using ParMap = std::map<Ident, std::set<Ident>>;

/// Union of the protection lists of the named resources.
VarSet owned(const ResSet& rs, const Program& p);

/// owned(rs) plus the free variables of the named resources' invariants.
VarSet vars_of_resources(const ResSet& rs, const Program& p);

/// Resources that must be acquired before modifying the variables in M and
/// accessing the variables in A: every resource whose protection list meets
/// A, or whose protection list or invariant footprint meets M.
ResSet er(const VarSet& M, const VarSet& A, const Program& p);

/// Command-level footprint equations. `s` supplies summaries at Call nodes
/// and may be an intermediate table, as long as it has an entry for every
/// called procedure.
VarSet vars_cmd(const CommandPtr& c, const Summaries& s, const Program& p);
VarSet mod_cmd(const CommandPtr& c, const Summaries& s, const Program& p);
ResSet req_cmd(const CommandPtr& c, const Summaries& s, const Program& p);

/// Least summaries for all declared procedures: chaotic iteration from
/// all-empty maps, declaration order within a round, until a round changes
/// nothing.
Summaries proc_summaries(const Program& p);

/// Least map closed under: (1) each parallel composition f(..)||f'(..) puts
/// each callee in the other's set; (2) every procedure called inside the
/// body of f inherits par(f).
ParMap par_map(const Program& p);

}  // namespace sfc
