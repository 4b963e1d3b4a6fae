#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sfc/ast.hpp"

namespace sfc {

// Canonical pretty-printer. Output uses the surface grammar, so printing a
// parsed node and re-parsing yields a structurally equal node.

std::string to_string(const ExprPtr& e);
std::string to_string(const BoolExpr& b);
std::string to_string(const PureFormula& p);  // "true" when empty
std::string to_string(const SpatialAtom& a);
std::string to_string(const SymbolicHeap& h);
std::string to_string(const Stmt& s);  // statement syntax, trailing ';'
std::string to_string(const CallCmd& c);  // call syntax, no trailing ';'

/// "{a,b,c}" in canonical (lexicographic) order.
std::string to_string(const VarSet& s);
/// "a,b,c" without braces.
std::string comma_join(const VarSet& s);

void print_command(std::ostream& os, const CommandPtr& c, int indent);
void print_program(std::ostream& os, const Program& p);
std::string to_string(const Program& p);

/// One instruction per line; conditionals indent their branches.
std::vector<std::string> instr_lines(const SymbolicInstrPtr& si);

}  // namespace sfc
