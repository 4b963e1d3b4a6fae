#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "sfc/ast.hpp"
#include "sfc/diagnostics.hpp"

namespace sfc {

struct ParseResult {
  std::optional<Program> program;  // present iff diagnostics is empty
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return program.has_value(); }
};

ParseResult parse(std::string_view source);

}  // namespace sfc
