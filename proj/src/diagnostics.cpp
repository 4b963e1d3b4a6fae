#include "sfc/diagnostics.hpp"

#include <algorithm>
#include <tuple>

namespace sfc {

std::string_view code_name(DiagCode code) {
  switch (code) {
    case DiagCode::IO_ERROR: return "IO_ERROR";
    case DiagCode::INTERNAL: return "INTERNAL";
    case DiagCode::SYNTAX: return "SYNTAX";
    case DiagCode::SYNTAX_UNTERMINATED_COMMENT: return "SYNTAX_UNTERMINATED_COMMENT";
    case DiagCode::SYNTAX_PRIME_IN_IDENT: return "SYNTAX_PRIME_IN_IDENT";
    case DiagCode::SYNTAX_INT_OVERFLOW: return "SYNTAX_INT_OVERFLOW";
    case DiagCode::LEGAL_UNDECLARED_PROC: return "LEGAL_UNDECLARED_PROC";
    case DiagCode::LEGAL_UNDECLARED_RESOURCE: return "LEGAL_UNDECLARED_RESOURCE";
    case DiagCode::LEGAL_ARITY_MISMATCH: return "LEGAL_ARITY_MISMATCH";
    case DiagCode::LEGAL_DUP_FORMALS: return "LEGAL_DUP_FORMALS";
    case DiagCode::LEGAL_DUP_PROC: return "LEGAL_DUP_PROC";
    case DiagCode::LEGAL_DUP_RESOURCE: return "LEGAL_DUP_RESOURCE";
    case DiagCode::LEGAL_OVERLAP_OWNED: return "LEGAL_OVERLAP_OWNED";
    case DiagCode::LEGAL_INV_MENTIONS_FOREIGN_OWNED:
      return "LEGAL_INV_MENTIONS_FOREIGN_OWNED";
    case DiagCode::ALIAS_DUP_REF: return "ALIAS_DUP_REF";
    case DiagCode::ALIAS_GLOBAL_CONFLICT: return "ALIAS_GLOBAL_CONFLICT";
    case DiagCode::CONC_REQ_MAIN: return "CONC_REQ_MAIN";
    case DiagCode::CONC_INTERFERENCE: return "CONC_INTERFERENCE";
    case DiagCode::NOTE_NO_MAIN: return "NOTE_NO_MAIN";
    case DiagCode::INIT_ORDER_DEP: return "INIT_ORDER_DEP";
    case DiagCode::INIT_FORBIDDEN_CONSTRUCT: return "INIT_FORBIDDEN_CONSTRUCT";
  }
  return "UNKNOWN";
}

std::string_view severity_name(Severity s) {
  return s == Severity::Error ? "error" : "warning";
}

Diagnostic make_error(DiagCode code, SourceSpan where, std::string message) {
  return Diagnostic{code, Severity::Error, where, std::move(message), {}};
}

Diagnostic make_warning(DiagCode code, SourceSpan where, std::string message) {
  return Diagnostic{code, Severity::Warning, where, std::move(message), {}};
}

std::string render(const Diagnostic& d, std::string_view file) {
  std::string out(file);
  out += ":" + std::to_string(d.where.line) + ":" + std::to_string(d.where.column);
  out += ": ";
  out += severity_name(d.severity);
  out += " [";
  out += code_name(d.code);
  out += "] ";
  out += d.message;
  return out;
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::tuple(static_cast<int>(a.code), a.where.begin,
                                       a.message) <
                            std::tuple(static_cast<int>(b.code), b.where.begin,
                                       b.message);
                   });
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Severity::Error;
  });
}

}  // namespace sfc
