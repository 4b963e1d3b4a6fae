#include "sfc/parser.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "lexer.hpp"

namespace sfc {

namespace {

// Thrown on a malformed construct; caught at statement level (resync to the
// next ';' or the end of the block) or at declaration level (abort).
struct ParseError {};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ParseResult run() {
    Program program;
    try {
      while (!at(Tok::Eof)) {
        if (at(Tok::KwResource)) {
          program.resources.push_back(parse_resource());
        } else if (at(Tok::Ident)) {
          program.procedures.push_back(parse_proc());
        } else {
          fail("expected a resource or procedure declaration");
        }
      }
    } catch (const ParseError&) {
      // Declaration-level error: diagnostics already recorded, stop here.
    }
    ParseResult result;
    result.diagnostics = std::move(diags_);
    if (result.diagnostics.empty()) result.program = std::move(program);
    return result;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic> diags_;

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  const Token& advance() {
    const Token& t = toks_[pos_];
    if (!at(Tok::Eof)) ++pos_;
    return t;
  }
  bool match(Tok kind) {
    if (!at(kind)) return false;
    advance();
    return true;
  }

  std::size_t prev_end() const {
    return pos_ == 0 ? 0 : toks_[pos_ - 1].span.end;
  }
  SourceSpan since(const Token& start) const {
    return {start.span.begin, prev_end(), start.span.line, start.span.column};
  }

  [[noreturn]] void fail(std::string msg) {
    diags_.push_back(make_error(DiagCode::SYNTAX, peek().span,
                                msg + ", found " +
                                    std::string(token_name(peek().kind))));
    throw ParseError{};
  }

  const Token& expect(Tok kind, const char* what) {
    if (!at(kind)) fail(std::string("expected ") + what);
    return advance();
  }

  Ident expect_ident(const char* what) {
    return Ident(expect(Tok::Ident, what).text);
  }

  // Skip to just after the next ';', or stop before '}' / end of input.
  void resync() {
    while (!at(Tok::Eof) && !at(Tok::RBrace)) {
      if (advance().kind == Tok::Semi) return;
    }
  }

  // ---- identifier lists -----------------------------------------------

  std::vector<Ident> parse_identlist(const char* what) {
    std::vector<Ident> out;
    out.push_back(expect_ident(what));
    while (match(Tok::Comma)) out.push_back(expect_ident(what));
    return out;
  }

  // Reports and drops duplicates so the duplicate-free list invariants hold
  // even while diagnostics are being accumulated.
  std::vector<Ident> dedupe(std::vector<Ident> xs, SourceSpan where,
                            const char* what) {
    std::vector<Ident> out;
    std::set<Ident> seen;
    for (auto& x : xs) {
      if (!seen.insert(x).second) {
        diags_.push_back(make_error(
            DiagCode::SYNTAX, where,
            std::string("duplicate ") + what + " '" + x.text + "'"));
        continue;
      }
      out.push_back(std::move(x));
    }
    return out;
  }

  // ---- expressions ------------------------------------------------------

  ExprPtr parse_atom_expr() {
    const Token& t = peek();
    if (match(Tok::Ident)) return mk_var(Ident(t.text), t.span);
    if (match(Tok::KwNil)) return mk_nil(t.span);
    if (match(Tok::Int)) return mk_int(t.int_value, t.span);
    fail("expected an expression");
  }

  ExprPtr parse_expr() {
    const Token& start = peek();
    ExprPtr e = parse_atom_expr();
    while (match(Tok::Caret)) {
      ExprPtr rhs = parse_atom_expr();
      e = mk_xor(std::move(e), std::move(rhs), since(start));
    }
    return e;
  }

  BoolExpr finish_bool(ExprPtr lhs, const Token& start) {
    BoolExpr b;
    b.lhs = std::move(lhs);
    if (match(Tok::EqEq)) {
      b.op = BoolExpr::Op::Eq;
    } else if (match(Tok::Neq)) {
      b.op = BoolExpr::Op::Neq;
    } else {
      fail("expected '==' or '!='");
    }
    b.rhs = parse_expr();
    b.span = since(start);
    return b;
  }

  BoolExpr parse_bexpr() {
    const Token& start = peek();
    return finish_bool(parse_expr(), start);
  }

  // ---- assertions ---------------------------------------------------------

  std::vector<ExprPtr> parse_exprlist_until(Tok stop) {
    std::vector<ExprPtr> out;
    if (at(stop)) return out;
    out.push_back(parse_expr());
    while (match(Tok::Comma)) out.push_back(parse_expr());
    return out;
  }

  SpatialAtom parse_pointsto_tail(ExprPtr address, SourceSpan where) {
    PointsToAtom pt;
    pt.address = std::move(address);
    expect(Tok::LBracket, "'['");
    std::set<Ident> seen;
    do {
      Ident field = expect_ident("a field name");
      expect(Tok::Colon, "':'");
      ExprPtr value = parse_expr();
      if (!seen.insert(field).second) {
        diags_.push_back(make_error(DiagCode::SYNTAX, where,
                                    "duplicate field name '" + field.text + "'"));
        continue;
      }
      pt.fields.emplace_back(std::move(field), std::move(value));
    } while (match(Tok::Comma));
    expect(Tok::RBracket, "']'");
    return pt;
  }

  SpatialAtom parse_satom() {
    const Token& start = peek();
    if (at(Tok::Ident) && peek(1).kind == Tok::LParen) {
      PredAtom pred;
      pred.name = expect_ident("a predicate name");
      expect(Tok::LParen, "'('");
      pred.args = parse_exprlist_until(Tok::RParen);
      expect(Tok::RParen, "')'");
      return pred;
    }
    ExprPtr address = parse_expr();
    expect(Tok::MapsTo, "'|->'");
    return parse_pointsto_tail(std::move(address), start.span);
  }

  std::vector<SpatialAtom> parse_spatial() {
    if (match(Tok::KwEmp)) return {};
    std::vector<SpatialAtom> atoms;
    atoms.push_back(parse_satom());
    while (match(Tok::Star)) atoms.push_back(parse_satom());
    return atoms;
  }

  std::vector<SpatialAtom> parse_spatial_after(SpatialAtom first) {
    std::vector<SpatialAtom> atoms;
    atoms.push_back(std::move(first));
    while (match(Tok::Star)) atoms.push_back(parse_satom());
    return atoms;
  }

  // assertion ::= pure ";" spatial | spatial. Both pure atoms and spatial
  // atoms can start with an expression, so commit only after seeing the
  // operator that follows it.
  SymbolicHeap parse_assertion() {
    SymbolicHeap h;
    if (match(Tok::KwTrue)) {
      expect(Tok::Semi, "';'");
      h.spatial = parse_spatial();
      return h;
    }
    if (at(Tok::KwEmp) || (at(Tok::Ident) && peek(1).kind == Tok::LParen)) {
      h.spatial = parse_spatial();
      return h;
    }
    const Token& start = peek();
    ExprPtr first = parse_expr();
    if (at(Tok::MapsTo)) {
      advance();
      h.spatial = parse_spatial_after(
          parse_pointsto_tail(std::move(first), start.span));
      return h;
    }
    h.pure.push_back(finish_bool(std::move(first), start));
    while (match(Tok::AndAnd)) h.pure.push_back(parse_bexpr());
    expect(Tok::Semi, "';'");
    h.spatial = parse_spatial();
    return h;
  }

  SymbolicHeap parse_bracketed_assertion() {
    expect(Tok::LBracket, "'['");
    SymbolicHeap h = parse_assertion();
    expect(Tok::RBracket, "']'");
    return h;
  }

  // ---- commands -------------------------------------------------------

  // "(" identlist? ";" exprlist? ")", with the ";" omissible when the whole
  // argument list is empty: f() is accepted for f(;).
  std::pair<std::vector<Ident>, std::vector<ExprPtr>> parse_call_args() {
    expect(Tok::LParen, "'('");
    std::vector<Ident> refs;
    std::vector<ExprPtr> vals;
    if (match(Tok::RParen)) return {refs, vals};
    if (!at(Tok::Semi)) refs = parse_identlist("a reference argument");
    expect(Tok::Semi, "';'");
    vals = parse_exprlist_until(Tok::RParen);
    expect(Tok::RParen, "')'");
    return {refs, vals};
  }

  CommandPtr parse_call_cmd() {
    const Token& start = peek();
    Ident callee = expect_ident("a procedure name");
    auto [refs, vals] = parse_call_args();
    return mk_call(std::move(callee), std::move(refs), std::move(vals),
                   since(start));
  }

  CommandPtr parse_cmd() {
    const Token& start = peek();
    switch (peek().kind) {
      case Tok::KwDispose: {
        advance();
        expect(Tok::LParen, "'('");
        ExprPtr e = parse_expr();
        expect(Tok::RParen, "')'");
        expect(Tok::Semi, "';'");
        return mk_prim(DisposeStmt{std::move(e)}, since(start));
      }
      case Tok::KwIf: {
        advance();
        expect(Tok::LParen, "'('");
        BoolExpr cond = parse_bexpr();
        expect(Tok::RParen, "')'");
        CommandPtr then_branch = parse_block();
        expect(Tok::KwElse, "'else'");
        CommandPtr else_branch = parse_block();
        return mk_if(std::move(cond), std::move(then_branch),
                     std::move(else_branch), since(start));
      }
      case Tok::KwWhile: {
        advance();
        expect(Tok::LParen, "'('");
        BoolExpr cond = parse_bexpr();
        expect(Tok::RParen, "')'");
        SymbolicHeap inv = parse_bracketed_assertion();
        CommandPtr body = parse_block();
        return mk_while(std::move(inv), std::move(cond), std::move(body),
                        since(start));
      }
      case Tok::KwWith: {
        advance();
        Ident resource = expect_ident("a resource name");
        expect(Tok::KwWhen, "'when'");
        expect(Tok::LParen, "'('");
        BoolExpr guard = parse_bexpr();
        expect(Tok::RParen, "')'");
        CommandPtr body = parse_block();
        return mk_with(std::move(resource), std::move(guard), std::move(body),
                       since(start));
      }
      case Tok::Ident:
        if (peek(1).kind == Tok::Assign) return parse_assignment();
        if (peek(1).kind == Tok::LParen) {
          CommandPtr call = parse_call_cmd();
          if (match(Tok::OrOr)) {
            CommandPtr other = parse_call_cmd();
            expect(Tok::Semi, "';'");
            return mk_par(std::move(call), std::move(other), since(start));
          }
          expect(Tok::Semi, "';'");
          return call;
        }
        return parse_mutate();
      case Tok::KwNil:
      case Tok::Int:
        return parse_mutate();
      default:
        fail("expected a statement");
    }
  }

  CommandPtr parse_assignment() {
    const Token& start = peek();
    Ident target = expect_ident("a variable");
    expect(Tok::Assign, "'='");
    if (match(Tok::KwNew)) {
      expect(Tok::LParen, "'('");
      expect(Tok::RParen, "')'");
      expect(Tok::Semi, "';'");
      return mk_prim(NewStmt{std::move(target)}, since(start));
    }
    ExprPtr value = parse_expr();
    if (match(Tok::Arrow)) {
      Ident field = expect_ident("a field name");
      expect(Tok::Semi, "';'");
      return mk_prim(
          LookupStmt{std::move(target), std::move(value), std::move(field)},
          since(start));
    }
    expect(Tok::Semi, "';'");
    return mk_prim(AssignStmt{std::move(target), std::move(value)}, since(start));
  }

  CommandPtr parse_mutate() {
    const Token& start = peek();
    ExprPtr address = parse_expr();
    expect(Tok::Arrow, "'->'");
    Ident field = expect_ident("a field name");
    expect(Tok::Assign, "'='");
    ExprPtr value = parse_expr();
    expect(Tok::Semi, "';'");
    return mk_prim(
        MutateStmt{std::move(address), std::move(field), std::move(value)},
        since(start));
  }

  CommandPtr parse_block() {
    expect(Tok::LBrace, "'{'");
    CommandPtr body = parse_items();
    expect(Tok::RBrace, "'}'");
    return body;
  }

  CommandPtr parse_items() {
    if (at(Tok::RBrace) || at(Tok::Eof)) return mk_skip(peek().span);
    const Token& start = peek();
    if (match(Tok::KwLocal)) {
      std::vector<Ident> vars = parse_identlist("a local variable");
      expect(Tok::Semi, "';'");
      vars = dedupe(std::move(vars), since(start), "local variable");
      CommandPtr rest = parse_items();
      return mk_local(std::move(vars), std::move(rest), since(start));
    }
    CommandPtr c;
    try {
      c = parse_cmd();
    } catch (const ParseError&) {
      resync();
      return parse_items();
    }
    if (at(Tok::RBrace) || at(Tok::Eof)) return c;
    CommandPtr rest = parse_items();
    return mk_seq(std::move(c), std::move(rest), since(start));
  }

  // ---- declarations ----------------------------------------------------

  ResourceDecl parse_resource() {
    const Token& start = peek();
    expect(Tok::KwResource, "'resource'");
    ResourceDecl decl;
    decl.name = expect_ident("a resource name");
    expect(Tok::LParen, "'('");
    if (!at(Tok::RParen)) decl.owned = parse_identlist("a protected variable");
    expect(Tok::RParen, "')'");
    decl.owned = dedupe(std::move(decl.owned), since(start), "protected variable");
    decl.invariant = parse_bracketed_assertion();
    if (at(Tok::LBrace)) decl.initializer = parse_block();
    decl.span = since(start);
    return decl;
  }

  ProcDecl parse_proc() {
    const Token& start = peek();
    ProcDecl decl;
    decl.name = expect_ident("a procedure name");
    expect(Tok::LParen, "'('");
    if (!match(Tok::RParen)) {
      if (!at(Tok::Semi)) decl.ref_params = parse_identlist("a parameter");
      expect(Tok::Semi, "';'");
      if (!at(Tok::RParen)) decl.val_params = parse_identlist("a parameter");
      expect(Tok::RParen, "')'");
    }
    decl.spec.pre = parse_bracketed_assertion();
    decl.body = parse_block();
    decl.spec.post = parse_bracketed_assertion();
    decl.span = since(start);
    return decl;
  }
};

}  // namespace

ParseResult parse(std::string_view source) {
  LexResult lexed = lex(source);
  if (!lexed.diagnostics.empty()) {
    ParseResult result;
    result.diagnostics = std::move(lexed.diagnostics);
    return result;
  }
  return Parser(std::move(lexed.tokens)).run();
}

}  // namespace sfc
