#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sfc/analysis.hpp"
#include "sfc/ast.hpp"
#include "sfc/diagnostics.hpp"

namespace sfc {

/// Advisory variable classification. Every variable occurring in the program
/// lands in exactly one class; the report never affects exit codes.
enum class VarClass { Local, ProcessLocal, GlobalConstant, Protected, ProcessProtected };

std::string_view class_name(VarClass c);

struct ClassifiedVar {
  VarClass cls;
  std::string justification;
};

struct ClassificationReport {
  std::map<Ident, ClassifiedVar> classes;
};

/// Call-site aliasing checks, applied to every call in every procedure body
/// (parallel compositions included): reference arguments must be pairwise
/// distinct, and no reference argument may collide with a variable the
/// callee accesses by name.
std::vector<Diagnostic> check_aliasing(const Program& p, const Summaries& s);

/// Concurrency side conditions: main must need no resources (req(main) = ∅),
/// and for every parallel composition the two sides must not interfere —
/// neither side's modified variables may meet the other side's accessed
/// variables or declared spec footprint. One diagnostic per direction per
/// offending variable. Warns (without error) when no main is declared.
std::vector<Diagnostic> check_concurrency(const Program& p, const Summaries& s);

/// Resource-initializer constraints: each initializer must be independent of
/// all earlier ones (no read/write or write/read overlap, in declaration
/// order), and neither the init procedure nor any initializer block may
/// contain calls, parallel compositions, or region commands.
std::vector<Diagnostic> check_resource_init(const Program& p, const Summaries& s);

/// Sorts every occurring variable into one of the five classes with a short
/// justification. Purely informational.
ClassificationReport classify_vars(const Program& p, const Summaries& s);

}  // namespace sfc
