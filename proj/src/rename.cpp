#include "sfc/rename.hpp"

#include <map>
#include <utility>

#include "sfc/fresh.hpp"

namespace sfc {

namespace {

using Env = std::map<Ident, Ident>;

Ident rn(const Env& env, const Ident& x) {
  auto it = env.find(x);
  return it == env.end() ? x : it->second;
}

ExprPtr rn(const Env& env, const ExprPtr& e) {
  return std::visit(
      overloaded{
          [&](const VarExpr& v) -> ExprPtr {
            return mk_var(rn(env, v.name), e->span);
          },
          [&](const NilExpr&) { return e; },
          [&](const IntExpr&) { return e; },
          [&](const XorExpr& x) -> ExprPtr {
            return mk_xor(rn(env, x.lhs), rn(env, x.rhs), e->span);
          },
      },
      e->node);
}

BoolExpr rn(const Env& env, const BoolExpr& b) {
  return {b.op, rn(env, b.lhs), rn(env, b.rhs), b.span};
}

SymbolicHeap rn(const Env& env, const SymbolicHeap& h) {
  SymbolicHeap out;
  for (const auto& atom : h.pure) out.pure.push_back(rn(env, atom));
  for (const auto& atom : h.spatial) {
    out.spatial.push_back(std::visit(
        overloaded{
            [&](const EmpAtom& a) -> SpatialAtom { return a; },
            [&](const PointsToAtom& a) -> SpatialAtom {
              PointsToAtom pt;
              pt.address = rn(env, a.address);
              for (const auto& [field, value] : a.fields) {
                pt.fields.emplace_back(field, rn(env, value));
              }
              return pt;
            },
            [&](const PredAtom& a) -> SpatialAtom {
              PredAtom pred;
              pred.name = a.name;
              for (const auto& arg : a.args) {
                pred.args.push_back(rn(env, arg));
              }
              return pred;
            },
        },
        atom));
  }
  return out;
}

class Renamer {
 public:
  explicit Renamer(const Program& p) : supply_(FreshSupply::for_program(p)) {
    // Everything free at program level is off-limits for binder names.
    for (const auto& r : p.resources) {
      taken_.insert(r.owned.begin(), r.owned.end());
      taken_ |= fv(r.invariant);
      if (r.initializer) taken_ |= fv(r.initializer);
    }
    for (const auto& f : p.procedures) {
      VarSet formals(f.ref_params.begin(), f.ref_params.end());
      formals.insert(f.val_params.begin(), f.val_params.end());
      taken_ |= (fv(f.body) | fv(f.spec.pre) | fv(f.spec.post)) - formals;
    }
  }

  Program run(const Program& p) {
    Program out;
    for (const auto& r : p.resources) {
      ResourceDecl decl = r;
      if (r.initializer) decl.initializer = rewrite(r.initializer, Env{});
      out.resources.push_back(std::move(decl));
    }
    for (const auto& f : p.procedures) {
      ProcDecl decl;
      decl.name = f.name;
      decl.span = f.span;
      Env env;
      for (const auto& x : f.ref_params) decl.ref_params.push_back(bind(x, env));
      for (const auto& x : f.val_params) decl.val_params.push_back(bind(x, env));
      decl.spec.pre = rn(env, f.spec.pre);
      decl.spec.post = rn(env, f.spec.post);
      decl.body = rewrite(f.body, env);
      out.procedures.push_back(std::move(decl));
    }
    return out;
  }

 private:
  FreshSupply supply_;
  VarSet taken_;

  // Chooses the final name for binder x, records it as used, and maps the
  // old name inside the binder's scope.
  Ident bind(const Ident& x, Env& env) {
    Ident chosen = x;
    while (taken_.count(chosen)) chosen = supply_.fresh(x);
    taken_.insert(chosen);
    env[x] = chosen;
    return chosen;
  }

  Stmt rewrite(const Stmt& s, const Env& env) {
    return std::visit(
        overloaded{
            [&](const AssignStmt& st) -> Stmt {
              return AssignStmt{rn(env, st.target), rn(env, st.value)};
            },
            [&](const LookupStmt& st) -> Stmt {
              return LookupStmt{rn(env, st.target), rn(env, st.address),
                                st.field};
            },
            [&](const MutateStmt& st) -> Stmt {
              return MutateStmt{rn(env, st.address), st.field,
                                rn(env, st.value)};
            },
            [&](const NewStmt& st) -> Stmt {
              return NewStmt{rn(env, st.target)};
            },
            [&](const DisposeStmt& st) -> Stmt {
              return DisposeStmt{rn(env, st.address)};
            },
        },
        s);
  }

  CommandPtr rewrite(const CommandPtr& c, const Env& env) {
    return std::visit(
        overloaded{
            [&](const PrimCmd& s) {
              return mk_prim(rewrite(s.stmt, env), c->span);
            },
            [&](const SkipCmd&) { return mk_skip(c->span); },
            [&](const SeqCmd& s) {
              return mk_seq(rewrite(s.first, env), rewrite(s.second, env),
                            c->span);
            },
            [&](const IfCmd& s) {
              return mk_if(rn(env, s.cond), rewrite(s.then_branch, env),
                           rewrite(s.else_branch, env), c->span);
            },
            [&](const WhileCmd& s) {
              return mk_while(rn(env, s.invariant), rn(env, s.cond),
                              rewrite(s.body, env), c->span);
            },
            [&](const CallCmd& s) {
              std::vector<Ident> refs;
              for (const auto& x : s.ref_args) refs.push_back(rn(env, x));
              std::vector<ExprPtr> vals;
              for (const auto& e : s.val_args) vals.push_back(rn(env, e));
              return mk_call(s.callee, std::move(refs), std::move(vals),
                             c->span);
            },
            [&](const ParCmd& s) {
              return mk_par(rewrite(s.left, env), rewrite(s.right, env),
                            c->span);
            },
            [&](const WithCmd& s) {
              return mk_with(s.resource, rn(env, s.guard),
                             rewrite(s.body, env), c->span);
            },
            [&](const LocalCmd& s) {
              Env inner = env;
              std::vector<Ident> vars;
              for (const auto& x : s.vars) vars.push_back(bind(x, inner));
              return mk_local(std::move(vars), rewrite(s.body, inner), c->span);
            },
        },
        c->node);
  }
};

}  // namespace

Program rename_apart(const Program& p) { return Renamer(p).run(p); }

}  // namespace sfc
