#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sfc/ast.hpp"

namespace sfc {

/// Stable diagnostic tags. Messages are for humans; codes (and severities)
/// are the machine-facing contract and decide exit codes.
enum class DiagCode {
  // I/O, internal faults, and syntax
  IO_ERROR,
  INTERNAL,
  SYNTAX,
  SYNTAX_UNTERMINATED_COMMENT,
  SYNTAX_PRIME_IN_IDENT,
  SYNTAX_INT_OVERFLOW,
  // legality of declarations
  LEGAL_UNDECLARED_PROC,
  LEGAL_UNDECLARED_RESOURCE,
  LEGAL_ARITY_MISMATCH,
  LEGAL_DUP_FORMALS,
  LEGAL_DUP_PROC,
  LEGAL_DUP_RESOURCE,
  LEGAL_OVERLAP_OWNED,
  LEGAL_INV_MENTIONS_FOREIGN_OWNED,
  // variable aliasing at call sites
  ALIAS_DUP_REF,
  ALIAS_GLOBAL_CONFLICT,
  // concurrency
  CONC_REQ_MAIN,
  CONC_INTERFERENCE,
  NOTE_NO_MAIN,
  // resource initialization
  INIT_ORDER_DEP,
  INIT_FORBIDDEN_CONSTRUCT,
};

enum class Severity { Error, Warning };

std::string_view code_name(DiagCode code);
std::string_view severity_name(Severity s);

struct Diagnostic {
  DiagCode code;
  Severity severity = Severity::Error;
  SourceSpan where;
  std::string message;
  std::vector<SourceSpan> related;
};

Diagnostic make_error(DiagCode code, SourceSpan where, std::string message);
Diagnostic make_warning(DiagCode code, SourceSpan where, std::string message);

/// `<file>:<line>:<col>: <severity> [<code>] <message>`
std::string render(const Diagnostic& d, std::string_view file);

/// Fixed code-then-location order, so merged lists from independent checks
/// are reproducible.
void sort_diagnostics(std::vector<Diagnostic>& diags);

bool has_errors(const std::vector<Diagnostic>& diags);

}  // namespace sfc
