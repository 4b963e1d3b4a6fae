#pragma once

#include "sfc/ast.hpp"

namespace sfc {

/// Returns an alpha-variant of a legal program in which all binders — formal
/// parameters and `local`-bound variables — are pairwise distinct and distinct
/// from every variable that occurs free at program level (protection lists,
/// invariant and initializer free variables, and anything free in a procedure
/// outside its formals). As a consequence no procedure's postcondition can
/// mention a variable bound by `local` in its body: offending binders are the
/// ones renamed, never the postcondition.
///
/// Renamed binders receive primed fresh names (`t` becomes `t'1`). The pass is
/// idempotent and preserves the program's global free variables.
Program rename_apart(const Program& p);

}  // namespace sfc
