#include "sfc/ast.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace sfc {

VarSet operator|(const VarSet& a, const VarSet& b) {
  VarSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

VarSet operator-(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.end()));
  return out;
}

VarSet operator&(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
  return out;
}

VarSet& operator|=(VarSet& a, const VarSet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

VarSet& operator-=(VarSet& a, const VarSet& b) {
  for (const auto& x : b) a.erase(x);
  return a;
}

bool disjoint(const VarSet& a, const VarSet& b) {
  auto it = a.begin();
  auto jt = b.begin();
  while (it != a.end() && jt != b.end()) {
    if (*it < *jt)
      ++it;
    else if (*jt < *it)
      ++jt;
    else
      return false;
  }
  return true;
}

// --------------------------------- factories --------------------------------

ExprPtr mk_var(Ident name, SourceSpan span) {
  return std::make_shared<Expr>(Expr{VarExpr{std::move(name)}, span});
}
ExprPtr mk_nil(SourceSpan span) {
  return std::make_shared<Expr>(Expr{NilExpr{}, span});
}
ExprPtr mk_int(std::int64_t value, SourceSpan span) {
  return std::make_shared<Expr>(Expr{IntExpr{value}, span});
}
ExprPtr mk_xor(ExprPtr lhs, ExprPtr rhs, SourceSpan span) {
  return std::make_shared<Expr>(Expr{XorExpr{std::move(lhs), std::move(rhs)}, span});
}

BoolExpr negate(const BoolExpr& b) {
  BoolExpr out = b;
  out.op = b.op == BoolExpr::Op::Eq ? BoolExpr::Op::Neq : BoolExpr::Op::Eq;
  return out;
}

SymbolicHeap normalize(SymbolicHeap h) {
  std::erase_if(h.spatial, [](const SpatialAtom& a) {
    return std::holds_alternative<EmpAtom>(a);
  });
  return h;
}

SymbolicHeap star(const SymbolicHeap& p, const SymbolicHeap& q) {
  SymbolicHeap out;
  out.pure = p.pure;
  out.pure.insert(out.pure.end(), q.pure.begin(), q.pure.end());
  out.spatial = p.spatial;
  out.spatial.insert(out.spatial.end(), q.spatial.begin(), q.spatial.end());
  return normalize(std::move(out));
}

CommandPtr mk_prim(Stmt stmt, SourceSpan span) {
  return std::make_shared<Command>(Command{PrimCmd{std::move(stmt)}, span});
}
CommandPtr mk_seq(CommandPtr first, CommandPtr second, SourceSpan span) {
  return std::make_shared<Command>(
      Command{SeqCmd{std::move(first), std::move(second)}, span});
}
CommandPtr mk_if(BoolExpr cond, CommandPtr t, CommandPtr e, SourceSpan span) {
  return std::make_shared<Command>(
      Command{IfCmd{std::move(cond), std::move(t), std::move(e)}, span});
}
CommandPtr mk_while(SymbolicHeap inv, BoolExpr cond, CommandPtr body,
                    SourceSpan span) {
  return std::make_shared<Command>(
      Command{WhileCmd{std::move(inv), std::move(cond), std::move(body)}, span});
}
CommandPtr mk_call(Ident callee, std::vector<Ident> refs,
                   std::vector<ExprPtr> vals, SourceSpan span) {
  return std::make_shared<Command>(
      Command{CallCmd{std::move(callee), std::move(refs), std::move(vals)}, span});
}
CommandPtr mk_par(CommandPtr left_call, CommandPtr right_call, SourceSpan span) {
  if (!as_call(left_call) || !as_call(right_call))
    throw std::logic_error("parallel composition of non-call commands");
  return std::make_shared<Command>(
      Command{ParCmd{std::move(left_call), std::move(right_call)}, span});
}
CommandPtr mk_with(Ident resource, BoolExpr guard, CommandPtr body,
                   SourceSpan span) {
  return std::make_shared<Command>(
      Command{WithCmd{std::move(resource), std::move(guard), std::move(body)}, span});
}
CommandPtr mk_local(std::vector<Ident> vars, CommandPtr body, SourceSpan span) {
  return std::make_shared<Command>(
      Command{LocalCmd{std::move(vars), std::move(body)}, span});
}
CommandPtr mk_skip(SourceSpan span) {
  return std::make_shared<Command>(Command{SkipCmd{}, span});
}

const CallCmd* as_call(const CommandPtr& c) {
  if (!c) return nullptr;
  return std::get_if<CallCmd>(&c->node);
}

const ResourceDecl* find_resource(const Program& p, const Ident& name) {
  for (const auto& r : p.resources)
    if (r.name == name) return &r;
  return nullptr;
}

const ProcDecl* find_proc(const Program& p, const Ident& name) {
  for (const auto& f : p.procedures)
    if (f.name == name) return &f;
  return nullptr;
}

SymbolicInstrPtr mk_assume(PureFormula formula) {
  return std::make_shared<SymbolicInstr>(SymbolicInstr{AssumeInstr{std::move(formula)}});
}
SymbolicInstrPtr mk_prim_instr(Stmt stmt) {
  return std::make_shared<SymbolicInstr>(SymbolicInstr{PrimInstr{std::move(stmt)}});
}
SymbolicInstrPtr mk_jsr(VarSet mods, SymbolicHeap pre, SymbolicHeap post) {
  return std::make_shared<SymbolicInstr>(
      SymbolicInstr{JsrInstr{std::move(mods), std::move(pre), std::move(post)}});
}
SymbolicInstrPtr mk_if_instr(BoolExpr cond, SymbolicInstrPtr t, SymbolicInstrPtr e) {
  return std::make_shared<SymbolicInstr>(
      SymbolicInstr{IfInstr{std::move(cond), std::move(t), std::move(e)}});
}
SymbolicInstrPtr mk_seq_instr(SymbolicInstrPtr first, SymbolicInstrPtr second) {
  return std::make_shared<SymbolicInstr>(
      SymbolicInstr{SeqInstr{std::move(first), std::move(second)}});
}

// ------------------------------ free variables ------------------------------

VarSet fv(const ExprPtr& e) {
  VarSet out;
  if (!e) return out;
  std::visit(overloaded{
                 [&](const VarExpr& v) { out.insert(v.name); },
                 [&](const NilExpr&) {},
                 [&](const IntExpr&) {},
                 [&](const XorExpr& x) { out = fv(x.lhs) | fv(x.rhs); },
             },
             e->node);
  return out;
}

VarSet fv(const BoolExpr& b) { return fv(b.lhs) | fv(b.rhs); }

VarSet fv(const PureFormula& p) {
  VarSet out;
  for (const auto& atom : p) out = out | fv(atom);
  return out;
}

VarSet fv(const SpatialAtom& a) {
  return std::visit(overloaded{
                        [](const EmpAtom&) { return VarSet{}; },
                        [](const PointsToAtom& pt) {
                          VarSet out = fv(pt.address);
                          for (const auto& [name, value] : pt.fields)
                            out = out | fv(value);
                          return out;
                        },
                        [](const PredAtom& pr) {
                          VarSet out;
                          for (const auto& arg : pr.args) out = out | fv(arg);
                          return out;
                        },
                    },
                    a);
}

VarSet fv(const SymbolicHeap& h) {
  VarSet out = fv(h.pure);
  for (const auto& atom : h.spatial) out = out | fv(atom);
  return out;
}

VarSet fv(const Stmt& s) {
  return std::visit(
      overloaded{
          [](const AssignStmt& a) { return VarSet{a.target} | fv(a.value); },
          [](const LookupStmt& l) { return VarSet{l.target} | fv(l.address); },
          [](const MutateStmt& m) { return fv(m.address) | fv(m.value); },
          [](const NewStmt& n) { return VarSet{n.target}; },
          [](const DisposeStmt& d) { return fv(d.address); },
      },
      s);
}

VarSet fv(const CommandPtr& c) {
  if (!c) return {};
  return std::visit(
      overloaded{
          [](const PrimCmd& p) { return fv(p.stmt); },
          [](const SeqCmd& s) { return fv(s.first) | fv(s.second); },
          [](const IfCmd& i) {
            return fv(i.cond) | fv(i.then_branch) | fv(i.else_branch);
          },
          [](const WhileCmd& w) {
            return fv(w.invariant) | fv(w.cond) | fv(w.body);
          },
          [](const CallCmd& call) {
            VarSet out(call.ref_args.begin(), call.ref_args.end());
            for (const auto& e : call.val_args) out = out | fv(e);
            return out;
          },
          [](const ParCmd& p) { return fv(p.left) | fv(p.right); },
          [](const WithCmd& w) { return fv(w.guard) | fv(w.body); },
          [](const LocalCmd& l) {
            return fv(l.body) - VarSet(l.vars.begin(), l.vars.end());
          },
          [](const SkipCmd&) { return VarSet{}; },
      },
      c->node);
}

VarSet fv(const Spec& s) { return fv(s.pre) | fv(s.post); }

namespace {

void collect_vars(const CommandPtr& c, VarSet& out) {
  if (!c) return;
  std::visit(overloaded{
                 [&](const PrimCmd& p) { out = out | fv(p.stmt); },
                 [&](const SeqCmd& s) {
                   collect_vars(s.first, out);
                   collect_vars(s.second, out);
                 },
                 [&](const IfCmd& i) {
                   out = out | fv(i.cond);
                   collect_vars(i.then_branch, out);
                   collect_vars(i.else_branch, out);
                 },
                 [&](const WhileCmd& w) {
                   out = out | fv(w.invariant) | fv(w.cond);
                   collect_vars(w.body, out);
                 },
                 [&](const CallCmd& call) {
                   out.insert(call.ref_args.begin(), call.ref_args.end());
                   for (const auto& e : call.val_args) out = out | fv(e);
                 },
                 [&](const ParCmd& p) {
                   collect_vars(p.left, out);
                   collect_vars(p.right, out);
                 },
                 [&](const WithCmd& w) {
                   out = out | fv(w.guard);
                   collect_vars(w.body, out);
                 },
                 [&](const LocalCmd& l) {
                   out.insert(l.vars.begin(), l.vars.end());
                   collect_vars(l.body, out);
                 },
                 [&](const SkipCmd&) {},
             },
             c->node);
}

}  // namespace

VarSet all_vars(const Program& p) {
  VarSet out;
  for (const auto& r : p.resources) {
    out.insert(r.owned.begin(), r.owned.end());
    out = out | fv(r.invariant);
    collect_vars(r.initializer, out);
  }
  for (const auto& f : p.procedures) {
    out.insert(f.ref_params.begin(), f.ref_params.end());
    out.insert(f.val_params.begin(), f.val_params.end());
    out = out | fv(f.spec);
    collect_vars(f.body, out);
  }
  return out;
}

// ------------------------------- substitution -------------------------------

ExprPtr subst(const ExprPtr& e, const Substitution& sigma) {
  if (!e || sigma.empty()) return e;
  return std::visit(overloaded{
                        [&](const VarExpr& v) -> ExprPtr {
                          auto it = sigma.find(v.name);
                          return it == sigma.end() ? e : it->second;
                        },
                        [&](const NilExpr&) { return e; },
                        [&](const IntExpr&) { return e; },
                        [&](const XorExpr& x) -> ExprPtr {
                          ExprPtr l = subst(x.lhs, sigma);
                          ExprPtr r = subst(x.rhs, sigma);
                          if (l == x.lhs && r == x.rhs) return e;
                          return mk_xor(std::move(l), std::move(r), e->span);
                        },
                    },
                    e->node);
}

BoolExpr subst(const BoolExpr& b, const Substitution& sigma) {
  BoolExpr out = b;
  out.lhs = subst(b.lhs, sigma);
  out.rhs = subst(b.rhs, sigma);
  return out;
}

SymbolicHeap subst(const SymbolicHeap& h, const Substitution& sigma) {
  SymbolicHeap out;
  out.pure.reserve(h.pure.size());
  for (const auto& atom : h.pure) out.pure.push_back(subst(atom, sigma));
  out.spatial.reserve(h.spatial.size());
  for (const auto& atom : h.spatial) {
    out.spatial.push_back(std::visit(
        overloaded{
            [](const EmpAtom& a) { return SpatialAtom{a}; },
            [&](const PointsToAtom& pt) {
              PointsToAtom np;
              np.address = subst(pt.address, sigma);
              np.fields.reserve(pt.fields.size());
              for (const auto& [name, value] : pt.fields)
                np.fields.emplace_back(name, subst(value, sigma));
              return SpatialAtom{std::move(np)};
            },
            [&](const PredAtom& pr) {
              PredAtom np;
              np.name = pr.name;
              np.args.reserve(pr.args.size());
              for (const auto& arg : pr.args) np.args.push_back(subst(arg, sigma));
              return SpatialAtom{std::move(np)};
            },
        },
        atom));
  }
  return out;
}

VarSet subst_varset(const VarSet& s, const std::map<Ident, Ident>& sigma) {
  VarSet out;
  for (const auto& x : s) {
    auto it = sigma.find(x);
    out.insert(it == sigma.end() ? x : it->second);
  }
  return out;
}

// --------------------------- structural equality ----------------------------

bool struct_eq(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const VarExpr& v) { return v.name == std::get<VarExpr>(b->node).name; },
          [&](const NilExpr&) { return true; },
          [&](const IntExpr& i) {
            return i.value == std::get<IntExpr>(b->node).value;
          },
          [&](const XorExpr& x) {
            const auto& y = std::get<XorExpr>(b->node);
            return struct_eq(x.lhs, y.lhs) && struct_eq(x.rhs, y.rhs);
          },
      },
      a->node);
}

bool struct_eq(const BoolExpr& a, const BoolExpr& b) {
  return a.op == b.op && struct_eq(a.lhs, b.lhs) && struct_eq(a.rhs, b.rhs);
}

bool struct_eq(const PureFormula& a, const PureFormula& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!struct_eq(a[i], b[i])) return false;
  return true;
}

bool struct_eq(const SpatialAtom& a, const SpatialAtom& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      overloaded{
          [&](const EmpAtom&) { return true; },
          [&](const PointsToAtom& x) {
            const auto& y = std::get<PointsToAtom>(b);
            if (!struct_eq(x.address, y.address)) return false;
            if (x.fields.size() != y.fields.size()) return false;
            for (std::size_t i = 0; i < x.fields.size(); ++i) {
              if (x.fields[i].first != y.fields[i].first) return false;
              if (!struct_eq(x.fields[i].second, y.fields[i].second)) return false;
            }
            return true;
          },
          [&](const PredAtom& x) {
            const auto& y = std::get<PredAtom>(b);
            if (x.name != y.name || x.args.size() != y.args.size()) return false;
            for (std::size_t i = 0; i < x.args.size(); ++i)
              if (!struct_eq(x.args[i], y.args[i])) return false;
            return true;
          },
      },
      a);
}

bool struct_eq(const SymbolicHeap& a, const SymbolicHeap& b) {
  // emp atoms are the unit of *, so they are ignored when comparing.
  SymbolicHeap na = normalize(a);
  SymbolicHeap nb = normalize(b);
  if (!struct_eq(na.pure, nb.pure)) return false;
  if (na.spatial.size() != nb.spatial.size()) return false;
  for (std::size_t i = 0; i < na.spatial.size(); ++i)
    if (!struct_eq(na.spatial[i], nb.spatial[i])) return false;
  return true;
}

bool struct_eq(const Stmt& a, const Stmt& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      overloaded{
          [&](const AssignStmt& x) {
            const auto& y = std::get<AssignStmt>(b);
            return x.target == y.target && struct_eq(x.value, y.value);
          },
          [&](const LookupStmt& x) {
            const auto& y = std::get<LookupStmt>(b);
            return x.target == y.target && x.field == y.field &&
                   struct_eq(x.address, y.address);
          },
          [&](const MutateStmt& x) {
            const auto& y = std::get<MutateStmt>(b);
            return x.field == y.field && struct_eq(x.address, y.address) &&
                   struct_eq(x.value, y.value);
          },
          [&](const NewStmt& x) { return x.target == std::get<NewStmt>(b).target; },
          [&](const DisposeStmt& x) {
            return struct_eq(x.address, std::get<DisposeStmt>(b).address);
          },
      },
      a);
}

bool struct_eq(const CommandPtr& a, const CommandPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const PrimCmd& x) {
            return struct_eq(x.stmt, std::get<PrimCmd>(b->node).stmt);
          },
          [&](const SeqCmd& x) {
            const auto& y = std::get<SeqCmd>(b->node);
            return struct_eq(x.first, y.first) && struct_eq(x.second, y.second);
          },
          [&](const IfCmd& x) {
            const auto& y = std::get<IfCmd>(b->node);
            return struct_eq(x.cond, y.cond) &&
                   struct_eq(x.then_branch, y.then_branch) &&
                   struct_eq(x.else_branch, y.else_branch);
          },
          [&](const WhileCmd& x) {
            const auto& y = std::get<WhileCmd>(b->node);
            return struct_eq(x.invariant, y.invariant) &&
                   struct_eq(x.cond, y.cond) && struct_eq(x.body, y.body);
          },
          [&](const CallCmd& x) {
            const auto& y = std::get<CallCmd>(b->node);
            if (x.callee != y.callee || x.ref_args != y.ref_args ||
                x.val_args.size() != y.val_args.size())
              return false;
            for (std::size_t i = 0; i < x.val_args.size(); ++i)
              if (!struct_eq(x.val_args[i], y.val_args[i])) return false;
            return true;
          },
          [&](const ParCmd& x) {
            const auto& y = std::get<ParCmd>(b->node);
            return struct_eq(x.left, y.left) && struct_eq(x.right, y.right);
          },
          [&](const WithCmd& x) {
            const auto& y = std::get<WithCmd>(b->node);
            return x.resource == y.resource && struct_eq(x.guard, y.guard) &&
                   struct_eq(x.body, y.body);
          },
          [&](const LocalCmd& x) {
            const auto& y = std::get<LocalCmd>(b->node);
            return x.vars == y.vars && struct_eq(x.body, y.body);
          },
          [&](const SkipCmd&) { return true; },
      },
      a->node);
}

bool struct_eq(const Spec& a, const Spec& b) {
  return struct_eq(a.pre, b.pre) && struct_eq(a.post, b.post);
}

bool struct_eq(const ResourceDecl& a, const ResourceDecl& b) {
  return a.name == b.name && a.owned == b.owned &&
         struct_eq(a.invariant, b.invariant) &&
         struct_eq(a.initializer, b.initializer);
}

bool struct_eq(const ProcDecl& a, const ProcDecl& b) {
  return a.name == b.name && a.ref_params == b.ref_params &&
         a.val_params == b.val_params && struct_eq(a.spec, b.spec) &&
         struct_eq(a.body, b.body);
}

bool struct_eq(const Program& a, const Program& b) {
  if (a.resources.size() != b.resources.size()) return false;
  if (a.procedures.size() != b.procedures.size()) return false;
  for (std::size_t i = 0; i < a.resources.size(); ++i)
    if (!struct_eq(a.resources[i], b.resources[i])) return false;
  for (std::size_t i = 0; i < a.procedures.size(); ++i)
    if (!struct_eq(a.procedures[i], b.procedures[i])) return false;
  return true;
}

bool struct_eq(const SymbolicInstrPtr& a, const SymbolicInstrPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const AssumeInstr& x) {
            return struct_eq(x.formula, std::get<AssumeInstr>(b->node).formula);
          },
          [&](const PrimInstr& x) {
            return struct_eq(x.stmt, std::get<PrimInstr>(b->node).stmt);
          },
          [&](const JsrInstr& x) {
            const auto& y = std::get<JsrInstr>(b->node);
            return x.mods == y.mods && struct_eq(x.pre, y.pre) &&
                   struct_eq(x.post, y.post);
          },
          [&](const IfInstr& x) {
            const auto& y = std::get<IfInstr>(b->node);
            return struct_eq(x.cond, y.cond) &&
                   struct_eq(x.then_branch, y.then_branch) &&
                   struct_eq(x.else_branch, y.else_branch);
          },
          [&](const SeqInstr& x) {
            const auto& y = std::get<SeqInstr>(b->node);
            return struct_eq(x.first, y.first) && struct_eq(x.second, y.second);
          },
      },
      a->node);
}

}  // namespace sfc
