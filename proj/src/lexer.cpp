#include "lexer.hpp"

#include <cctype>
#include <map>

namespace sfc {

std::string_view token_name(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::KwResource: return "'resource'";
    case Tok::KwNew: return "'new'";
    case Tok::KwDispose: return "'dispose'";
    case Tok::KwIf: return "'if'";
    case Tok::KwElse: return "'else'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwWith: return "'with'";
    case Tok::KwWhen: return "'when'";
    case Tok::KwLocal: return "'local'";
    case Tok::KwNil: return "'nil'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwEmp: return "'emp'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Star: return "'*'";
    case Tok::Caret: return "'^'";
    case Tok::Assign: return "'='";
    case Tok::EqEq: return "'=='";
    case Tok::Neq: return "'!='";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Arrow: return "'->'";
    case Tok::MapsTo: return "'|->'";
    case Tok::Eof: return "end of input";
  }
  return "?";
}

namespace {

const std::map<std::string_view, Tok>& keywords() {
  static const std::map<std::string_view, Tok> table = {
      {"resource", Tok::KwResource}, {"new", Tok::KwNew},
      {"dispose", Tok::KwDispose},   {"if", Tok::KwIf},
      {"else", Tok::KwElse},         {"while", Tok::KwWhile},
      {"with", Tok::KwWith},         {"when", Tok::KwWhen},
      {"local", Tok::KwLocal},       {"nil", Tok::KwNil},
      {"true", Tok::KwTrue},         {"emp", Tok::KwEmp},
  };
  return table;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  LexResult run() {
    while (!at_end()) {
      start_ = pos_;
      start_line_ = line_;
      start_col_ = col_;
      char c = advance();
      scan(c);
    }
    start_ = pos_;
    start_line_ = line_;
    start_col_ = col_;
    push(Tok::Eof);
    return {std::move(tokens_), std::move(diags_)};
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t start_ = 0;
  int line_ = 1, col_ = 1;
  int start_line_ = 1, start_col_ = 1;
  std::vector<Token> tokens_;
  std::vector<Diagnostic> diags_;

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }
  char peek2() const { return pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0'; }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  bool match(char expected) {
    if (peek() != expected) return false;
    advance();
    return true;
  }

  SourceSpan span() const { return {start_, pos_, start_line_, start_col_}; }

  void push(Tok kind) {
    tokens_.push_back(
        {kind, std::string(src_.substr(start_, pos_ - start_)), span(), 0});
  }

  void error(DiagCode code, std::string msg) {
    diags_.push_back(make_error(code, span(), std::move(msg)));
  }

  void scan(char c) {
    switch (c) {
      case ' ':
      case '\t':
      case '\r':
      case '\n':
        return;
      case '(': push(Tok::LParen); return;
      case ')': push(Tok::RParen); return;
      case '{': push(Tok::LBrace); return;
      case '}': push(Tok::RBrace); return;
      case '[': push(Tok::LBracket); return;
      case ']': push(Tok::RBracket); return;
      case ';': push(Tok::Semi); return;
      case ',': push(Tok::Comma); return;
      case ':': push(Tok::Colon); return;
      case '*': push(Tok::Star); return;
      case '^': push(Tok::Caret); return;
      case '=':
        push(match('=') ? Tok::EqEq : Tok::Assign);
        return;
      case '!':
        if (match('=')) {
          push(Tok::Neq);
        } else {
          error(DiagCode::SYNTAX, "expected '=' after '!'");
        }
        return;
      case '&':
        if (match('&')) {
          push(Tok::AndAnd);
        } else {
          error(DiagCode::SYNTAX, "expected '&' after '&'");
        }
        return;
      case '-':
        if (match('>')) {
          push(Tok::Arrow);
        } else {
          error(DiagCode::SYNTAX, "expected '>' after '-'");
        }
        return;
      case '|':
        if (match('|')) {
          push(Tok::OrOr);
        } else if (peek() == '-' && peek2() == '>') {
          advance();
          advance();
          push(Tok::MapsTo);
        } else {
          error(DiagCode::SYNTAX, "expected '|', or '->' after '|'");
        }
        return;
      case '/':
        if (match('/')) {
          while (!at_end() && peek() != '\n') advance();
        } else if (match('*')) {
          block_comment();
        } else {
          error(DiagCode::SYNTAX, "unexpected '/'");
        }
        return;
      case '\'':
        error(DiagCode::SYNTAX_PRIME_IN_IDENT,
              "the prime character is reserved for generated names");
        return;
      default:
        if (std::isdigit(static_cast<unsigned char>(c))) {
          number();
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
          identifier();
        } else {
          error(DiagCode::SYNTAX,
                std::string("unexpected character '") + c + "'");
        }
        return;
    }
  }

  void block_comment() {
    // non-nesting
    while (!at_end()) {
      char c = advance();
      if (c == '*' && match('/')) return;
    }
    error(DiagCode::SYNTAX_UNTERMINATED_COMMENT, "unterminated /* comment");
  }

  void number() {
    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    std::string_view text = src_.substr(start_, pos_ - start_);
    constexpr std::uint64_t limit = 9223372036854775807ull;  // INT64_MAX
    std::uint64_t value = 0;
    bool overflow = false;
    for (char d : text) {
      value = value * 10 + static_cast<std::uint64_t>(d - '0');
      if (value > limit) {
        overflow = true;
        break;
      }
    }
    if (overflow) {
      error(DiagCode::SYNTAX_INT_OVERFLOW,
            "integer literal exceeds the signed 64-bit range");
      return;
    }
    push(Tok::Int);
    tokens_.back().int_value = static_cast<std::int64_t>(value);
  }

  void identifier() {
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
      advance();
    if (peek() == '\'') {
      while (std::isalnum(static_cast<unsigned char>(peek())) ||
             peek() == '_' || peek() == '\'')
        advance();
      error(DiagCode::SYNTAX_PRIME_IN_IDENT,
            "identifier contains a prime (reserved for generated names)");
      return;
    }
    std::string_view text = src_.substr(start_, pos_ - start_);
    auto it = keywords().find(text);
    push(it == keywords().end() ? Tok::Ident : it->second);
  }
};

}  // namespace

LexResult lex(std::string_view source) { return Lexer(source).run(); }

}  // namespace sfc
