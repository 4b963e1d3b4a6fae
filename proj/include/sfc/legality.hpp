#pragma once

#include <vector>

#include "sfc/ast.hpp"
#include "sfc/diagnostics.hpp"

namespace sfc {

/// Checks every well-formedness constraint on a parsed program and reports
/// all violations together:
///   - procedure and resource names are unique;
///   - every called procedure is declared, with matching argument counts;
///   - every resource named by `with` is declared;
///   - per-procedure formal parameters are pairwise distinct;
///   - protection lists of distinct resources are disjoint;
///   - a resource invariant never mentions a variable protected by
///     another resource.
/// Empty result iff the program is legal. Later stages require legality.
std::vector<Diagnostic> check_legal(const Program& p);

}  // namespace sfc
