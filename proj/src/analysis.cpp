#include "sfc/analysis.hpp"

#include <stdexcept>
#include <utility>

namespace sfc {

namespace {

const ResourceDecl& resource_decl(const Program& p, const Ident& name) {
  const ResourceDecl* r = find_resource(p, name);
  if (!r) throw std::logic_error("analysis: unknown resource " + name.text);
  return *r;
}

template <typename T>
const T& summary_entry(const std::map<Ident, T>& m, const Ident& f) {
  auto it = m.find(f);
  if (it == m.end()) throw std::logic_error("analysis: no summary for " + f.text);
  return it->second;
}

VarSet fv_all(const std::vector<ExprPtr>& es) {
  VarSet out;
  for (const auto& e : es) out |= fv(e);
  return out;
}

VarSet stmt_vars(const Stmt& s) {
  return std::visit(
      overloaded{
          [](const AssignStmt& st) { return VarSet{st.target} | fv(st.value); },
          [](const LookupStmt& st) { return VarSet{st.target} | fv(st.address); },
          [](const MutateStmt& st) { return fv(st.address) | fv(st.value); },
          [](const NewStmt& st) { return VarSet{st.target}; },
          [](const DisposeStmt& st) { return fv(st.address); },
      },
      s);
}

VarSet stmt_mod(const Stmt& s) {
  return std::visit(
      overloaded{
          [](const AssignStmt& st) { return VarSet{st.target}; },
          [](const LookupStmt& st) { return VarSet{st.target}; },
          [](const MutateStmt&) { return VarSet{}; },
          [](const NewStmt& st) { return VarSet{st.target}; },
          [](const DisposeStmt&) { return VarSet{}; },
      },
      s);
}

VarSet call_vars(const CallCmd& call, const Summaries& s) {
  VarSet out = summary_entry(s.vars, call.callee);
  out.insert(call.ref_args.begin(), call.ref_args.end());
  return out | fv_all(call.val_args);
}

VarSet call_mod(const CallCmd& call, const Summaries& s) {
  VarSet out = summary_entry(s.mod, call.callee);
  out.insert(call.ref_args.begin(), call.ref_args.end());
  return out;
}

VarSet to_set(const std::vector<Ident>& xs) {
  return VarSet(xs.begin(), xs.end());
}

}  // namespace

VarSet owned(const ResSet& rs, const Program& p) {
  VarSet out;
  for (const auto& r : rs) {
    const auto& decl = resource_decl(p, r);
    out.insert(decl.owned.begin(), decl.owned.end());
  }
  return out;
}

VarSet vars_of_resources(const ResSet& rs, const Program& p) {
  VarSet out = owned(rs, p);
  for (const auto& r : rs) out |= fv(resource_decl(p, r).invariant);
  return out;
}

ResSet er(const VarSet& M, const VarSet& A, const Program& p) {
  ResSet out;
  for (const auto& r : p.resources) {
    VarSet protected_vars = to_set(r.owned);
    if (!disjoint(A, protected_vars) ||
        !disjoint(M, protected_vars | fv(r.invariant))) {
      out.insert(r.name);
    }
  }
  return out;
}

VarSet vars_cmd(const CommandPtr& c, const Summaries& s, const Program& p) {
  return std::visit(
      overloaded{
          [&](const PrimCmd& n) { return stmt_vars(n.stmt); },
          [&](const SkipCmd&) { return VarSet{}; },
          [&](const SeqCmd& n) {
            return vars_cmd(n.first, s, p) | vars_cmd(n.second, s, p);
          },
          [&](const IfCmd& n) {
            return fv(n.cond) | vars_cmd(n.then_branch, s, p) |
                   vars_cmd(n.else_branch, s, p);
          },
          [&](const WhileCmd& n) {
            return fv(n.invariant) | fv(n.cond) | vars_cmd(n.body, s, p);
          },
          [&](const CallCmd& n) { return call_vars(n, s); },
          [&](const ParCmd& n) {
            return call_vars(*as_call(n.left), s) |
                   call_vars(*as_call(n.right), s);
          },
          [&](const WithCmd& n) {
            const auto& r = resource_decl(p, n.resource);
            return ((fv(n.guard) | vars_cmd(n.body, s, p)) - fv(r.invariant)) |
                   (mod_cmd(n.body, s, p) - to_set(r.owned));
          },
          [&](const LocalCmd& n) {
            return vars_cmd(n.body, s, p) - to_set(n.vars);
          },
      },
      c->node);
}

VarSet mod_cmd(const CommandPtr& c, const Summaries& s, const Program& p) {
  return std::visit(
      overloaded{
          [&](const PrimCmd& n) { return stmt_mod(n.stmt); },
          [&](const SkipCmd&) { return VarSet{}; },
          [&](const SeqCmd& n) {
            return mod_cmd(n.first, s, p) | mod_cmd(n.second, s, p);
          },
          [&](const IfCmd& n) {
            return mod_cmd(n.then_branch, s, p) | mod_cmd(n.else_branch, s, p);
          },
          [&](const WhileCmd& n) { return mod_cmd(n.body, s, p); },
          [&](const CallCmd& n) { return call_mod(n, s); },
          [&](const ParCmd& n) {
            return call_mod(*as_call(n.left), s) | call_mod(*as_call(n.right), s);
          },
          [&](const WithCmd& n) {
            return mod_cmd(n.body, s, p) -
                   to_set(resource_decl(p, n.resource).owned);
          },
          [&](const LocalCmd& n) {
            return mod_cmd(n.body, s, p) - to_set(n.vars);
          },
      },
      c->node);
}

ResSet req_cmd(const CommandPtr& c, const Summaries& s, const Program& p) {
  return std::visit(
      overloaded{
          [&](const PrimCmd& n) {
            return er(stmt_mod(n.stmt), stmt_vars(n.stmt), p);
          },
          [&](const SkipCmd&) { return ResSet{}; },
          [&](const SeqCmd& n) {
            return req_cmd(n.first, s, p) | req_cmd(n.second, s, p);
          },
          [&](const IfCmd& n) {
            return req_cmd(n.then_branch, s, p) | req_cmd(n.else_branch, s, p) |
                   er({}, fv(n.cond), p);
          },
          [&](const WhileCmd& n) {
            return req_cmd(n.body, s, p) |
                   er({}, fv(n.invariant) | fv(n.cond), p);
          },
          [&](const CallCmd& n) {
            return summary_entry(s.req, n.callee) |
                   er(to_set(n.ref_args), fv_all(n.val_args), p);
          },
          [&](const ParCmd& n) {
            return req_cmd(n.left, s, p) | req_cmd(n.right, s, p);
          },
          [&](const WithCmd& n) {
            ResSet inner = req_cmd(n.body, s, p) | er({}, fv(n.guard), p);
            inner.erase(n.resource);
            return inner;
          },
          [&](const LocalCmd& n) { return req_cmd(n.body, s, p); },
      },
      c->node);
}

Summaries proc_summaries(const Program& p) {
  Summaries s;
  for (const auto& f : p.procedures) {
    s.vars[f.name];
    s.mod[f.name];
    s.req[f.name];
  }
  while (true) {
    ++s.iterations;
    bool changed = false;
    for (const auto& f : p.procedures) {
      VarSet formals = to_set(f.ref_params) | to_set(f.val_params);
      VarSet spec_fv = fv(f.spec.pre) | fv(f.spec.post);
      VarSet nv = (vars_cmd(f.body, s, p) | spec_fv) - formals;
      VarSet nm = mod_cmd(f.body, s, p) - formals;
      ResSet nr = req_cmd(f.body, s, p) | er({}, spec_fv - formals, p);
      if (nv != s.vars[f.name] || nm != s.mod[f.name] || nr != s.req[f.name]) {
        s.vars[f.name] = std::move(nv);
        s.mod[f.name] = std::move(nm);
        s.req[f.name] = std::move(nr);
        changed = true;
      }
    }
    if (!changed) break;
  }
  return s;
}

namespace {

void collect_par_edges(const CommandPtr& c, ParMap& pm) {
  std::visit(overloaded{
                 [&](const ParCmd& n) {
                   const Ident& f = as_call(n.left)->callee;
                   const Ident& g = as_call(n.right)->callee;
                   pm[f].insert(g);
                   pm[g].insert(f);
                 },
                 [&](const SeqCmd& n) {
                   collect_par_edges(n.first, pm);
                   collect_par_edges(n.second, pm);
                 },
                 [&](const IfCmd& n) {
                   collect_par_edges(n.then_branch, pm);
                   collect_par_edges(n.else_branch, pm);
                 },
                 [&](const WhileCmd& n) { collect_par_edges(n.body, pm); },
                 [&](const WithCmd& n) { collect_par_edges(n.body, pm); },
                 [&](const LocalCmd& n) { collect_par_edges(n.body, pm); },
                 [&](const auto&) {},
             },
             c->node);
}

void collect_callees(const CommandPtr& c, std::set<Ident>& out) {
  std::visit(overloaded{
                 [&](const CallCmd& n) { out.insert(n.callee); },
                 [&](const SeqCmd& n) {
                   collect_callees(n.first, out);
                   collect_callees(n.second, out);
                 },
                 [&](const IfCmd& n) {
                   collect_callees(n.then_branch, out);
                   collect_callees(n.else_branch, out);
                 },
                 [&](const WhileCmd& n) { collect_callees(n.body, out); },
                 [&](const ParCmd& n) {
                   collect_callees(n.left, out);
                   collect_callees(n.right, out);
                 },
                 [&](const WithCmd& n) { collect_callees(n.body, out); },
                 [&](const LocalCmd& n) { collect_callees(n.body, out); },
                 [&](const auto&) {},
             },
             c->node);
}

}  // namespace

ParMap par_map(const Program& p) {
  ParMap pm;
  for (const auto& f : p.procedures) pm[f.name];
  // Rule 1: both orders, wherever a parallel composition occurs.
  for (const auto& r : p.resources) {
    if (r.initializer) collect_par_edges(r.initializer, pm);
  }
  for (const auto& f : p.procedures) collect_par_edges(f.body, pm);
  // Rule 2: callees inherit the caller's set; iterate to the least fixpoint.
  std::vector<std::pair<Ident, std::set<Ident>>> call_edges;
  for (const auto& f : p.procedures) {
    std::set<Ident> callees;
    collect_callees(f.body, callees);
    call_edges.emplace_back(f.name, std::move(callees));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [caller, callees] : call_edges) {
      const std::set<Ident>& from = pm[caller];
      for (const auto& callee : callees) {
        auto& to = pm[callee];
        std::size_t before = to.size();
        to.insert(from.begin(), from.end());
        if (to.size() != before) changed = true;
      }
    }
  }
  return pm;
}

}  // namespace sfc
