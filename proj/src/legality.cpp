#include "sfc/legality.hpp"

#include <map>
#include <set>
#include <string>

namespace sfc {

namespace {

std::string join_names(const VarSet& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ", ";
    out += x.text;
  }
  return out;
}

// Arities of a declared procedure, for validating calls against it.
struct ProcSig {
  std::size_t refs = 0;
  std::size_t vals = 0;
  SourceSpan span;
};

class Checker {
 public:
  explicit Checker(const Program& p) : prog_(p) {}

  std::vector<Diagnostic> run() {
    collect_decls();
    check_formals();
    check_owned_disjoint();
    check_invariants();
    for (const auto& r : prog_.resources) {
      if (r.initializer) walk(r.initializer);
    }
    for (const auto& f : prog_.procedures) walk(f.body);
    return std::move(diags_);
  }

 private:
  const Program& prog_;
  std::vector<Diagnostic> diags_;
  std::map<Ident, ProcSig> procs_;
  std::map<Ident, SourceSpan> resources_;

  void report(DiagCode code, SourceSpan where, std::string msg,
              std::vector<SourceSpan> related = {}) {
    Diagnostic d = make_error(code, where, std::move(msg));
    d.related = std::move(related);
    diags_.push_back(std::move(d));
  }

  void collect_decls() {
    for (const auto& r : prog_.resources) {
      auto [it, inserted] = resources_.emplace(r.name, r.span);
      if (!inserted) {
        report(DiagCode::LEGAL_DUP_RESOURCE, r.span,
               "resource '" + r.name.text + "' is declared more than once",
               {it->second});
      }
    }
    for (const auto& f : prog_.procedures) {
      ProcSig sig{f.ref_params.size(), f.val_params.size(), f.span};
      auto [it, inserted] = procs_.emplace(f.name, sig);
      if (!inserted) {
        report(DiagCode::LEGAL_DUP_PROC, f.span,
               "procedure '" + f.name.text + "' is declared more than once",
               {it->second.span});
      }
    }
  }

  void check_formals() {
    for (const auto& f : prog_.procedures) {
      std::set<Ident> seen;
      VarSet dups;
      for (const auto& lst : {f.ref_params, f.val_params}) {
        for (const auto& x : lst) {
          if (!seen.insert(x).second) dups.insert(x);
        }
      }
      for (const auto& x : dups) {
        report(DiagCode::LEGAL_DUP_FORMALS, f.span,
               "procedure '" + f.name.text + "' repeats formal parameter '" +
                   x.text + "'");
      }
    }
  }

  void check_owned_disjoint() {
    const auto& rs = prog_.resources;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      for (std::size_t j = i + 1; j < rs.size(); ++j) {
        VarSet a(rs[i].owned.begin(), rs[i].owned.end());
        VarSet b(rs[j].owned.begin(), rs[j].owned.end());
        VarSet both = a & b;
        if (!both.empty()) {
          report(DiagCode::LEGAL_OVERLAP_OWNED, rs[j].span,
                 "resources '" + rs[i].name.text + "' and '" +
                     rs[j].name.text + "' both protect: " + join_names(both),
                 {rs[i].span});
        }
      }
    }
  }

  void check_invariants() {
    const auto& rs = prog_.resources;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      VarSet inv_fv = fv(rs[i].invariant);
      for (std::size_t j = 0; j < rs.size(); ++j) {
        if (i == j) continue;
        VarSet owned_j(rs[j].owned.begin(), rs[j].owned.end());
        VarSet bad = inv_fv & owned_j;
        if (!bad.empty()) {
          report(DiagCode::LEGAL_INV_MENTIONS_FOREIGN_OWNED, rs[i].span,
                 "invariant of resource '" + rs[i].name.text +
                     "' mentions variables protected by '" + rs[j].name.text +
                     "': " + join_names(bad),
                 {rs[j].span});
        }
      }
    }
  }

  void check_call(const CallCmd& call, SourceSpan where) {
    auto it = procs_.find(call.callee);
    if (it == procs_.end()) {
      report(DiagCode::LEGAL_UNDECLARED_PROC, where,
             "call to undeclared procedure '" + call.callee.text + "'");
      return;
    }
    const ProcSig& sig = it->second;
    if (call.ref_args.size() != sig.refs || call.val_args.size() != sig.vals) {
      report(DiagCode::LEGAL_ARITY_MISMATCH, where,
             "call to '" + call.callee.text + "' passes " +
                 std::to_string(call.ref_args.size()) + " reference and " +
                 std::to_string(call.val_args.size()) +
                 " value arguments, but the declaration takes " +
                 std::to_string(sig.refs) + " and " + std::to_string(sig.vals),
             {sig.span});
    }
  }

  void walk(const CommandPtr& c) {
    std::visit(
        overloaded{
            [&](const PrimCmd&) {},
            [&](const SkipCmd&) {},
            [&](const SeqCmd& s) {
              walk(s.first);
              walk(s.second);
            },
            [&](const IfCmd& s) {
              walk(s.then_branch);
              walk(s.else_branch);
            },
            [&](const WhileCmd& s) { walk(s.body); },
            [&](const CallCmd& s) { check_call(s, c->span); },
            [&](const ParCmd& s) {
              walk(s.left);
              walk(s.right);
            },
            [&](const WithCmd& s) {
              if (!resources_.count(s.resource)) {
                report(DiagCode::LEGAL_UNDECLARED_RESOURCE, c->span,
                       "region names undeclared resource '" + s.resource.text +
                           "'");
              }
              walk(s.body);
            },
            [&](const LocalCmd& s) { walk(s.body); },
        },
        c->node);
  }
};

}  // namespace

std::vector<Diagnostic> check_legal(const Program& p) {
  return Checker(p).run();
}

}  // namespace sfc
