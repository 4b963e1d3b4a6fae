#include <doctest.h>

#include <string>

#include "sfc/ast.hpp"
#include "sfc/parser.hpp"
#include "sfc/printer.hpp"

using namespace sfc;

namespace {

Ident id(const char* s) { return Ident(std::string(s)); }

Program parsed(const std::string& src) {
  ParseResult r = parse(src);
  REQUIRE(r.ok());
  return *r.program;
}

bool has_code(const ParseResult& r, DiagCode c) {
  for (const auto& d : r.diagnostics)
    if (d.code == c) return true;
  return false;
}

}  // namespace

TEST_CASE("a procedure with every primitive statement") {
  Program p = parsed(
      "main() [emp] {\n"
      "  local x, y, t;\n"
      "  x = new();\n"
      "  t = 3;\n"
      "  x -> val = t;\n"
      "  y = x -> val;\n"
      "  dispose(x);\n"
      "} [emp]\n");
  REQUIRE(p.procedures.size() == 1);
  const ProcDecl& f = p.procedures.at(0);
  CHECK(f.name == id("main"));
  CHECK(f.ref_params.empty());
  CHECK(f.val_params.empty());

  const auto& loc = std::get<LocalCmd>(f.body->node);
  CHECK(loc.vars == std::vector<Ident>{id("x"), id("y"), id("t")});
  const auto& s1 = std::get<SeqCmd>(loc.body->node);
  CHECK(std::holds_alternative<NewStmt>(
      std::get<PrimCmd>(s1.first->node).stmt));
  const auto& s2 = std::get<SeqCmd>(s1.second->node);
  CHECK(std::holds_alternative<AssignStmt>(
      std::get<PrimCmd>(s2.first->node).stmt));
  const auto& s3 = std::get<SeqCmd>(s2.second->node);
  const auto& mut = std::get<MutateStmt>(std::get<PrimCmd>(s3.first->node).stmt);
  CHECK(mut.field == id("val"));
  const auto& s4 = std::get<SeqCmd>(s3.second->node);
  const auto& look = std::get<LookupStmt>(std::get<PrimCmd>(s4.first->node).stmt);
  CHECK(look.target == id("y"));
  CHECK(look.field == id("val"));
  CHECK(std::holds_alternative<DisposeStmt>(
      std::get<PrimCmd>(s4.second->node).stmt));
}

TEST_CASE("empty blocks parse to the empty command") {
  Program p = parsed("main() [emp] { } [emp]");
  CHECK(std::holds_alternative<SkipCmd>(p.procedures.at(0).body->node));

  Program q = parsed(
      "main() [emp] { if (x == 0) { } else { x = 1; } } [emp]");
  const auto& branch = std::get<IfCmd>(q.procedures.at(0).body->node);
  CHECK(std::holds_alternative<SkipCmd>(branch.then_branch->node));
  CHECK(std::holds_alternative<PrimCmd>(branch.else_branch->node));
}

TEST_CASE("empty call argument lists may omit the semicolon") {
  Program a = parsed("f() [emp] { } [emp]  main() [emp] { f(); } [emp]");
  Program b = parsed("f(;) [emp] { } [emp]  main() [emp] { f(;); } [emp]");
  CHECK(struct_eq(a, b));
}

TEST_CASE("calls carry reference and value arguments in order") {
  Program p = parsed(
      "f(p, q; a, b) [emp] { } [emp]\n"
      "main() [emp] { f(x, y; 1, z ^ 2); } [emp]");
  const auto& call = std::get<CallCmd>(p.procedures.at(1).body->node);
  CHECK(call.callee == id("f"));
  CHECK(call.ref_args == std::vector<Ident>{id("x"), id("y")});
  REQUIRE(call.val_args.size() == 2);
  CHECK(struct_eq(call.val_args.at(0), mk_int(1)));
  CHECK(struct_eq(call.val_args.at(1), mk_xor(mk_var(id("z")), mk_int(2))));
}

TEST_CASE("parallel composition of two calls") {
  Program p = parsed(
      "a() [emp] { } [emp]  b() [emp] { } [emp]\n"
      "main() [emp] { a() || b(); } [emp]");
  const auto& par = std::get<ParCmd>(p.procedures.at(2).body->node);
  CHECK(as_call(par.left)->callee == id("a"));
  CHECK(as_call(par.right)->callee == id("b"));
}

TEST_CASE("while takes condition then bracketed invariant") {
  Program p = parsed(
      "main() [emp] { while (n != 0) [n == n ; emp] { n = n ^ 1; } } [emp]");
  const auto& w = std::get<WhileCmd>(p.procedures.at(0).body->node);
  CHECK(w.cond.op == BoolExpr::Op::Neq);
  REQUIRE(w.invariant.pure.size() == 1);
  CHECK(w.invariant.spatial.empty());
}

TEST_CASE("region command names resource, guard, and body") {
  Program p = parsed(
      "resource lock(held) [held == 0 ; emp]\n"
      "main() [emp] { with lock when (held == 0) { held = 1; } } [emp]");
  REQUIRE(p.resources.size() == 1);
  CHECK(p.resources.at(0).name == id("lock"));
  CHECK(p.resources.at(0).owned == std::vector<Ident>{id("held")});
  CHECK(p.resources.at(0).initializer == nullptr);
  const auto& w = std::get<WithCmd>(p.procedures.at(0).body->node);
  CHECK(w.resource == id("lock"));
  CHECK(fv(w.guard) == VarSet{id("held")});
}

TEST_CASE("resource declarations may carry an initializer block") {
  Program p = parsed(
      "resource lock(held) [held == 0 ; emp] { held = 0; }\n"
      "main() [emp] { } [emp]");
  REQUIRE(p.resources.at(0).initializer != nullptr);
  CHECK(std::holds_alternative<PrimCmd>(p.resources.at(0).initializer->node));
}

TEST_CASE("assertions: pure conjunction, points-to fields, predicates") {
  Program p = parsed(
      "main() [x == 0 && y != z ; ls(x, nil) * y |-> [next: z, val: 1]] { } "
      "[true ; emp]");
  const SymbolicHeap& pre = p.procedures.at(0).spec.pre;
  REQUIRE(pre.pure.size() == 2);
  CHECK(pre.pure.at(0).op == BoolExpr::Op::Eq);
  CHECK(pre.pure.at(1).op == BoolExpr::Op::Neq);
  REQUIRE(pre.spatial.size() == 2);
  const auto& pred = std::get<PredAtom>(pre.spatial.at(0));
  CHECK(pred.name == id("ls"));
  REQUIRE(pred.args.size() == 2);
  const auto& pt = std::get<PointsToAtom>(pre.spatial.at(1));
  REQUIRE(pt.fields.size() == 2);
  CHECK(pt.fields.at(0).first == id("next"));
  CHECK(pt.fields.at(1).first == id("val"));

  // [true ; emp] and [emp] denote the same normalized heap
  const SymbolicHeap& post = p.procedures.at(0).spec.post;
  CHECK(post.pure.empty());
  CHECK(post.spatial.empty());
  CHECK(struct_eq(post, parsed("main() [emp] { } [emp]").procedures.at(0).spec.pre));
}

TEST_CASE("xor is left-associative") {
  Program p = parsed("main() [emp] { x = a ^ b ^ c; } [emp]");
  const auto& assign =
      std::get<AssignStmt>(std::get<PrimCmd>(p.procedures.at(0).body->node).stmt);
  const auto& outer = std::get<XorExpr>(assign.value->node);
  CHECK(std::holds_alternative<XorExpr>(outer.lhs->node));
  CHECK(struct_eq(outer.rhs, mk_var(id("c"))));
}

TEST_CASE("printing and reparsing yields a structurally equal program") {
  const char* src =
      "resource lock(held) [held == 0 ; emp] { held = 0; }\n"
      "f(p; v) [ls(p, nil)] { if (v == 0) { } else { p = new(); } } "
      "[ls(p, nil)]\n"
      "main() [emp] { local a; f(a; 3); with lock when (held == 0) "
      "{ held = 1; } } [emp]\n";
  Program once = parsed(src);
  Program twice = parsed(to_string(once));
  CHECK(struct_eq(once, twice));
}

TEST_CASE("syntax errors carry position and an expectation message") {
  ParseResult r = parse("main() [emp] {\n  x = ;\n} [emp]");
  CHECK_FALSE(r.ok());
  REQUIRE_FALSE(r.diagnostics.empty());
  CHECK(r.diagnostics.at(0).code == DiagCode::SYNTAX);
  CHECK(r.diagnostics.at(0).message.find("expected") != std::string::npos);
  CHECK(r.diagnostics.at(0).where.line == 2);
  CHECK(r.diagnostics.at(0).where.column > 0);
}

TEST_CASE("the parser recovers and reports several statement errors") {
  ParseResult r = parse(
      "main() [emp] {\n"
      "  x = ;\n"
      "  y = ;\n"
      "} [emp]");
  CHECK_FALSE(r.ok());
  CHECK(r.diagnostics.size() == 2);
}

TEST_CASE("lexical error codes") {
  CHECK(has_code(parse("main() [emp] { x' = 1; } [emp]"),
                 DiagCode::SYNTAX_PRIME_IN_IDENT));
  CHECK(has_code(parse("main() [emp] { } [emp] /* open"),
                 DiagCode::SYNTAX_UNTERMINATED_COMMENT));
  CHECK(has_code(parse("main() [emp] { x = 99999999999999999999; } [emp]"),
                 DiagCode::SYNTAX_INT_OVERFLOW));
}

TEST_CASE("duplicate names that would break list invariants are syntax errors") {
  ParseResult locals = parse("main() [emp] { local a, a; a = 1; } [emp]");
  CHECK_FALSE(locals.ok());
  CHECK(locals.diagnostics.at(0).message.find("duplicate") != std::string::npos);

  ParseResult fields =
      parse("main() [x |-> [f: 1, f: 2]] { } [emp]");
  CHECK_FALSE(fields.ok());
  CHECK(has_code(fields, DiagCode::SYNTAX));

  ParseResult owned = parse(
      "resource r(x, x) [emp]\nmain() [emp] { } [emp]");
  CHECK_FALSE(owned.ok());
}

TEST_CASE("if requires an else branch") {
  ParseResult r = parse("main() [emp] { if (x == 0) { x = 1; } } [emp]");
  CHECK_FALSE(r.ok());
  CHECK(has_code(r, DiagCode::SYNTAX));
}

TEST_CASE("declaration spans point at their first token") {
  Program p = parsed("\n\nmain() [emp] { } [emp]");
  CHECK(p.procedures.at(0).span.line == 3);
  CHECK(p.procedures.at(0).span.column == 1);
}
