#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sfc/ast.hpp"
#include "sfc/diagnostics.hpp"

namespace sfc {

enum class Tok {
  Ident,
  Int,
  KwResource,
  KwNew,
  KwDispose,
  KwIf,
  KwElse,
  KwWhile,
  KwWith,
  KwWhen,
  KwLocal,
  KwNil,
  KwTrue,
  KwEmp,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Semi,
  Comma,
  Colon,
  Star,
  Caret,
  Assign,   // =
  EqEq,     // ==
  Neq,      // !=
  AndAnd,   // &&
  OrOr,     // ||
  Arrow,    // ->
  MapsTo,   // |->
  Eof,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  SourceSpan span;
  std::int64_t int_value = 0;
};

std::string_view token_name(Tok kind);

struct LexResult {
  std::vector<Token> tokens;  // always ends with Eof
  std::vector<Diagnostic> diagnostics;
};

LexResult lex(std::string_view source);

}  // namespace sfc
