#include <doctest.h>

#include <set>
#include <string>
#include <utility>

#include "oracles.hpp"
#include "sfc/analysis.hpp"
#include "sfc/conditions.hpp"
#include "sfc/legality.hpp"
#include "sfc/parser.hpp"
#include "sfc/printer.hpp"
#include "sfc/rename.hpp"

using namespace sfc;

namespace {

Ident id(const char* s) { return Ident(std::string(s)); }

struct Checked {
  Program p;
  Summaries s;
  std::vector<Diagnostic> aliasing;
  std::vector<Diagnostic> concurrency;
  std::vector<Diagnostic> init;
};

Checked analyze(const std::string& src) {
  ParseResult r = parse(src);
  REQUIRE(r.ok());
  Checked c;
  c.p = *r.program;
  c.s = proc_summaries(c.p);
  c.aliasing = check_aliasing(c.p, c.s);
  c.concurrency = check_concurrency(c.p, c.s);
  c.init = check_resource_init(c.p, c.s);
  return c;
}

std::multiset<DiagCode> codes(const std::vector<Diagnostic>& ds) {
  std::multiset<DiagCode> out;
  for (const auto& d : ds) out.insert(d.code);
  return out;
}

std::multiset<DiagCode> all_codes(const Checked& c) {
  std::multiset<DiagCode> out = codes(c.aliasing);
  for (auto x : codes(c.concurrency)) out.insert(x);
  for (auto x : codes(c.init)) out.insert(x);
  return out;
}

ClassificationReport classified(const std::string& src) {
  ParseResult r = parse(src);
  REQUIRE(r.ok());
  Program p = *r.program;
  return classify_vars(p, proc_summaries(p));
}

// Walks the renamed program from main, threading the set of held regions
// through procedure calls, and checks that every syntactic touch of a
// protected variable happens while the owning region is held. Guards count
// as inside the region they open.
struct RegionScan {
  const Program& p;
  std::map<Ident, Ident> owner;  // variable -> owning resource
  std::set<std::pair<std::string, std::string>> visited;
  bool ok = true;

  explicit RegionScan(const Program& prog) : p(prog) {
    for (const auto& r : p.resources)
      for (const auto& x : r.owned) owner[x] = r.name;
  }

  void touch(const VarSet& vs, const ResSet& held) {
    for (const auto& x : vs) {
      auto it = owner.find(x);
      if (it != owner.end() && !held.count(it->second)) ok = false;
    }
  }

  void walk(const CommandPtr& c, const ResSet& held) {
    std::visit(
        overloaded{
            [&](const PrimCmd& n) { touch(fv(n.stmt), held); },
            [&](const SeqCmd& n) {
              walk(n.first, held);
              walk(n.second, held);
            },
            [&](const IfCmd& n) {
              touch(fv(n.cond), held);
              walk(n.then_branch, held);
              walk(n.else_branch, held);
            },
            [&](const WhileCmd& n) {
              touch(fv(n.invariant) | fv(n.cond), held);
              walk(n.body, held);
            },
            [&](const CallCmd& n) { enter_call(n, held); },
            [&](const ParCmd& n) {
              enter_call(*as_call(n.left), held);
              enter_call(*as_call(n.right), held);
            },
            [&](const WithCmd& n) {
              ResSet inner = held;
              inner.insert(n.resource);
              touch(fv(n.guard), inner);
              walk(n.body, inner);
            },
            [&](const LocalCmd& n) { walk(n.body, held); },
            [&](const SkipCmd&) {},
        },
        c->node);
  }

  void enter_call(const CallCmd& call, const ResSet& held) {
    VarSet args(call.ref_args.begin(), call.ref_args.end());
    for (const auto& e : call.val_args) args |= fv(e);
    touch(args, held);
    std::string key;
    for (const auto& r : held) key += r.text + ",";
    if (!visited.insert({call.callee.text, key}).second) return;
    if (const ProcDecl* f = find_proc(p, call.callee)) walk(f->body, held);
  }
};

}  // namespace

TEST_CASE("reference arguments must be pairwise distinct") {
  Checked c = analyze("f(p, q;) [emp] { p = 1; } [emp]\n"
                      "main() [emp] { local a; f(a, a;); } [emp]");
  CHECK(codes(c.aliasing) == std::multiset<DiagCode>{DiagCode::ALIAS_DUP_REF});
  CHECK(c.aliasing.at(0).message.find("a") != std::string::npos);
}

TEST_CASE("reference arguments must avoid variables the callee touches") {
  Checked c = analyze("f(p;) [emp] { p = g; } [emp]\n"
                      "main() [emp] { f(g;); } [emp]");
  CHECK(codes(c.aliasing) ==
        std::multiset<DiagCode>{DiagCode::ALIAS_GLOBAL_CONFLICT});

  // spec footprints count as touching
  Checked d = analyze("f(p;) [g == 0 ; emp] { p = 1; } [emp]\n"
                      "main() [emp] { f(g;); } [emp]");
  CHECK(codes(d.aliasing) ==
        std::multiset<DiagCode>{DiagCode::ALIAS_GLOBAL_CONFLICT});
}

TEST_CASE("clean call sites produce no aliasing diagnostics") {
  Checked c = analyze("f(p, q;) [emp] { p = q; } [emp]\n"
                      "g(; v) [emp] { w = v; } [emp]\n"
                      "main() [emp] { local a, b; f(a, b;); g(; w); } [emp]");
  // passing w by value to a callee that touches w is not an aliasing issue
  CHECK(c.aliasing.empty());
}

TEST_CASE("main must not require any resource") {
  Checked c = analyze("resource r(x) [emp] { x = 0; }\n"
                      "main() [emp] { x = 1; } [emp]");
  CHECK(codes(c.concurrency) ==
        std::multiset<DiagCode>{DiagCode::CONC_REQ_MAIN});
  CHECK(c.concurrency.at(0).message.find("r") != std::string::npos);

  // requirements picked up from a spec count too
  Checked d = analyze("resource lock(held) [emp]\n"
                      "main() [held == 0 ; emp] { } [emp]");
  CHECK(codes(d.concurrency) ==
        std::multiset<DiagCode>{DiagCode::CONC_REQ_MAIN});

  // holding the region discharges the requirement
  Checked e = analyze("resource r(x) [x == 0 ; emp] { x = 0; }\n"
                      "main() [emp] { with r when (x == 0) { x = 0; } } [emp]");
  CHECK(e.concurrency.empty());
}

TEST_CASE("one-sided interference yields one diagnostic") {
  Checked c = analyze("a() [emp] { z = 1; } [emp]\n"
                      "b() [emp] { local t; t = z; } [emp]\n"
                      "main() [emp] { a() || b(); } [emp]");
  REQUIRE(codes(c.concurrency) ==
          std::multiset<DiagCode>{DiagCode::CONC_INTERFERENCE});
  const std::string& msg = c.concurrency.at(0).message;
  CHECK(msg.find("'z'") != std::string::npos);
  CHECK(msg.find("'a'") != std::string::npos);
  CHECK(msg.find("'b'") != std::string::npos);
}

TEST_CASE("mutual interference yields one diagnostic per direction") {
  Checked c = analyze("a() [emp] { z = z ^ 1; } [emp]\n"
                      "b() [emp] { z = z ^ 1; } [emp]\n"
                      "main() [emp] { a() || b(); } [emp]");
  CHECK(codes(c.concurrency) ==
        std::multiset<DiagCode>{DiagCode::CONC_INTERFERENCE,
                                DiagCode::CONC_INTERFERENCE});
}

TEST_CASE("a spec dependency is enough for interference") {
  Checked c = analyze("a() [z == 0 ; emp] { } [emp]\n"
                      "b() [emp] { z = 1; } [emp]\n"
                      "main() [emp] { a() || b(); } [emp]");
  CHECK(codes(c.concurrency) ==
        std::multiset<DiagCode>{DiagCode::CONC_INTERFERENCE});
}

TEST_CASE("disjoint parallel branches are silent") {
  Checked c = analyze("a() [emp] { z = 1; } [emp]\n"
                      "b() [emp] { w = 1; } [emp]\n"
                      "main() [emp] { a() || b(); } [emp]");
  CHECK(c.concurrency.empty());
}

TEST_CASE("reference arguments at the composition count as written") {
  Checked c = analyze("a(p;) [emp] { p = 1; } [emp]\n"
                      "b() [emp] { local t; t = z; } [emp]\n"
                      "main() [emp] { a(z;) || b(); } [emp]");
  CHECK(codes(c.concurrency) ==
        std::multiset<DiagCode>{DiagCode::CONC_INTERFERENCE});
}

TEST_CASE("a missing main is a warning, not an error") {
  Checked c = analyze("f() [emp] { } [emp]");
  REQUIRE(codes(c.concurrency) == std::multiset<DiagCode>{DiagCode::NOTE_NO_MAIN});
  CHECK(c.concurrency.at(0).severity == Severity::Warning);
  CHECK_FALSE(has_errors(c.concurrency));

  Checked d = analyze("main() [emp] { } [emp]");
  CHECK(d.concurrency.empty());
}

TEST_CASE("initializers must be independent of earlier ones") {
  Checked read_after_write = analyze("resource r(x) [emp] { k = 1; }\n"
                                     "resource s(y) [emp] { y = k; }\n"
                                     "main() [emp] { } [emp]");
  CHECK(codes(read_after_write.init) ==
        std::multiset<DiagCode>{DiagCode::INIT_ORDER_DEP});

  Checked write_after_read = analyze("resource r(x) [emp] { x = k; }\n"
                                     "resource s(y) [emp] { k = 1; }\n"
                                     "main() [emp] { } [emp]");
  CHECK(codes(write_after_read.init) ==
        std::multiset<DiagCode>{DiagCode::INIT_ORDER_DEP});

  Checked independent = analyze("resource r(x) [emp] { x = 0; }\n"
                                "resource s(y) [emp] { y = 0; }\n"
                                "main() [emp] { } [emp]");
  CHECK(independent.init.empty());
}

TEST_CASE("initialization code is sequential and region-free") {
  Checked call = analyze("helper() [emp] { } [emp]\n"
                         "resource r(x) [emp] { helper(); }\n"
                         "main() [emp] { } [emp]");
  CHECK(codes(call.init) ==
        std::multiset<DiagCode>{DiagCode::INIT_FORBIDDEN_CONSTRUCT});
  CHECK(call.init.at(0).message.find("procedure call") != std::string::npos);

  Checked par = analyze("a() [emp] { } [emp]\nb() [emp] { } [emp]\n"
                        "resource r(x) [emp] { a() || b(); }\n"
                        "main() [emp] { } [emp]");
  CHECK(codes(par.init).count(DiagCode::INIT_FORBIDDEN_CONSTRUCT) >= 1);
  bool mentions_par = false;
  for (const auto& d : par.init)
    if (d.message.find("parallel composition") != std::string::npos)
      mentions_par = true;
  CHECK(mentions_par);

  Checked region = analyze(
      "resource r(x) [x == 0 ; emp]\n"
      "init() [emp] { with r when (x == 0) { x = 0; } } [x == 0 ; emp]\n"
      "main() [emp] { } [emp]");
  CHECK(codes(region.init) ==
        std::multiset<DiagCode>{DiagCode::INIT_FORBIDDEN_CONSTRUCT});
  CHECK(region.init.at(0).message.find("region") != std::string::npos);

  Checked plain = analyze("resource r(x) [emp] { x = 0; }\n"
                          "init() [emp] { y = 1; } [emp]\n"
                          "main() [emp] { } [emp]");
  CHECK(plain.init.empty());
}

TEST_CASE("variable classification covers the five classes") {
  ClassificationReport rep = classified(
      "resource buf(c) [full == 0 ; emp] { full = 0; c = 0; }\n"
      "put(; x) [emp] { with buf when (full == 0) { c = x; full = 1; } } "
      "[emp]\n"
      "get(y;) [emp] { with buf when (full == 1) { y = c; full = 0; } } "
      "[emp]\n"
      "main() [emp] { local a; k = lim; put(; k) || get(a;); } [emp]");

  auto cls = [&](const char* x) { return rep.classes.at(id(x)).cls; };
  CHECK(cls("c") == VarClass::Protected);
  CHECK(cls("full") == VarClass::ProcessProtected);
  CHECK(cls("lim") == VarClass::GlobalConstant);
  CHECK(cls("a") == VarClass::Local);
  CHECK(cls("x") == VarClass::Local);
  CHECK(cls("y") == VarClass::ProcessLocal);
  CHECK(cls("k") == VarClass::ProcessLocal);
  for (const auto& [name, c] : rep.classes) CHECK_FALSE(c.justification.empty());
}

TEST_CASE("classification: invariant variables never written are constants") {
  ClassificationReport rep =
      classified("resource r(x) [d == 0 ; emp]\nmain() [emp] { } [emp]");
  CHECK(rep.classes.at(id("d")).cls == VarClass::GlobalConstant);
  CHECK(rep.classes.at(id("x")).cls == VarClass::Protected);
}

TEST_CASE("classification: spec-only globals are constants") {
  ClassificationReport rep = classified(
      "write(c; v) [c |-> [val: w]] { c -> val = v; } [c |-> [val: v]]\n"
      "main() [p |-> [val: 0]] { write(p; 5); } [p |-> [val: 5]]");
  CHECK(rep.classes.at(id("w")).cls == VarClass::GlobalConstant);
  CHECK(rep.classes.at(id("v")).cls == VarClass::Local);
}

TEST_CASE("classification partitions exactly the occurring variables") {
  for (const auto& cf : testing::load_corpus()) {
    if (!cf.expects_clean()) continue;
    ParseResult r = parse(cf.source);
    REQUIRE(r.ok());
    Program p = *r.program;
    ClassificationReport rep = classify_vars(p, proc_summaries(p));
    VarSet keys;
    for (const auto& [name, c] : rep.classes) keys.insert(name);
    CHECK(keys == all_vars(p));
  }
}

TEST_CASE("condition codes are stable under renaming apart") {
  for (const char* src :
       {"a() [emp] { z = 1; } [emp]\n"
        "b() [emp] { local z; z = w; } [emp]\n"
        "main() [emp] { a() || b(); } [emp]",
        "a() [emp] { z = z ^ 1; } [emp]\n"
        "b() [emp] { z = z ^ 1; } [emp]\n"
        "main() [emp] { local t; a() || b(); } [emp]",
        "resource r(x) [emp] { x = 0; }\n"
        "main() [emp] { local x1; x = 1; } [emp]"}) {
    ParseResult r = parse(src);
    REQUIRE(r.ok());
    REQUIRE(check_legal(*r.program).empty());
    Program plain = *r.program;
    Program renamed = rename_apart(plain);

    auto run = [](const Program& p) {
      Checked c;
      c.p = p;
      c.s = proc_summaries(p);
      c.aliasing = check_aliasing(p, c.s);
      c.concurrency = check_concurrency(p, c.s);
      c.init = check_resource_init(p, c.s);
      return all_codes(c);
    };
    CHECK(run(plain) == run(renamed));
  }
}

TEST_CASE("clean programs touch protected variables only inside regions") {
  int scanned = 0;
  for (const auto& cf : testing::load_corpus()) {
    if (!cf.expects_clean()) continue;
    ParseResult r = parse(cf.source);
    REQUIRE(r.ok());
    REQUIRE(check_legal(*r.program).empty());
    Program p = rename_apart(*r.program);
    if (p.resources.empty()) continue;
    const ProcDecl* main = find_proc(p, id("main"));
    if (!main) continue;

    RegionScan scan(p);
    scan.walk(main->body, {});
    INFO(cf.name);
    CHECK(scan.ok);
    ++scanned;
  }
  CHECK(scanned >= 5);
}
