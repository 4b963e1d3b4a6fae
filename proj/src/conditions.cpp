#include "sfc/conditions.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <utility>

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

std::string join_res(const ResSet& rs) { return join_names(rs); }

void walk_commands(const CommandPtr& c,
                   const std::function<void(const CommandPtr&)>& visit) {
  visit(c);
  std::visit(overloaded{
                 [&](const SeqCmd& n) {
                   walk_commands(n.first, visit);
                   walk_commands(n.second, visit);
                 },
                 [&](const IfCmd& n) {
                   walk_commands(n.then_branch, visit);
                   walk_commands(n.else_branch, visit);
                 },
                 [&](const WhileCmd& n) { walk_commands(n.body, visit); },
                 [&](const ParCmd& n) {
                   walk_commands(n.left, visit);
                   walk_commands(n.right, visit);
                 },
                 [&](const WithCmd& n) { walk_commands(n.body, visit); },
                 [&](const LocalCmd& n) { walk_commands(n.body, visit); },
                 [&](const auto&) {},
             },
             c->node);
}

VarSet to_set(const std::vector<Ident>& xs) {
  return VarSet(xs.begin(), xs.end());
}

VarSet fv_all(const std::vector<ExprPtr>& es) {
  VarSet out;
  for (const auto& e : es) out |= fv(e);
  return out;
}

// Footprint of one call site per the call clauses of the command equations.
VarSet site_mod(const CallCmd& call, const Summaries& s) {
  return s.mod.at(call.callee) | to_set(call.ref_args);
}
VarSet site_vars(const CallCmd& call, const Summaries& s) {
  return s.vars.at(call.callee) | to_set(call.ref_args) | fv_all(call.val_args);
}

}  // namespace

std::vector<Diagnostic> check_aliasing(const Program& p, const Summaries& s) {
  std::vector<Diagnostic> diags;
  auto at_call = [&](const CallCmd& call, SourceSpan where) {
    std::set<Ident> seen;
    VarSet dups;
    for (const auto& x : call.ref_args) {
      if (!seen.insert(x).second) dups.insert(x);
    }
    if (!dups.empty()) {
      diags.push_back(make_error(
          DiagCode::ALIAS_DUP_REF, where,
          "call to '" + call.callee.text +
              "' repeats reference arguments: " + join_names(dups)));
    }
    VarSet conflicts = to_set(call.ref_args) & s.vars.at(call.callee);
    for (const auto& z : conflicts) {
      diags.push_back(make_error(
          DiagCode::ALIAS_GLOBAL_CONFLICT, where,
          "reference argument '" + z.text + "' is also accessed by '" +
              call.callee.text + "' directly"));
    }
  };
  for (const auto& f : p.procedures) {
    walk_commands(f.body, [&](const CommandPtr& c) {
      if (const auto* call = std::get_if<CallCmd>(&c->node)) {
        at_call(*call, c->span);
      }
    });
  }
  return diags;
}

std::vector<Diagnostic> check_concurrency(const Program& p, const Summaries& s) {
  std::vector<Diagnostic> diags;
  const ProcDecl* main_proc = find_proc(p, Ident("main"));
  if (!main_proc) {
    diags.push_back(make_warning(
        DiagCode::NOTE_NO_MAIN, SourceSpan{0, 0, 1, 1},
        "no 'main' procedure: the whole-program resource check was skipped"));
  } else {
    const ResSet& need = s.req.at(main_proc->name);
    if (!need.empty()) {
      diags.push_back(make_error(
          DiagCode::CONC_REQ_MAIN, main_proc->span,
          "main requires resources it can only use inside regions: " +
              join_res(need)));
    }
  }

  auto check_par = [&](const ParCmd& par, SourceSpan where) {
    const CallCmd& left = *as_call(par.left);
    const CallCmd& right = *as_call(par.right);
    const ProcDecl* lf = find_proc(p, left.callee);
    const ProcDecl* rf = find_proc(p, right.callee);
    VarSet spec_left = fv(lf->spec.pre) | fv(lf->spec.post);
    VarSet spec_right = fv(rf->spec.pre) | fv(rf->spec.post);
    auto one_direction = [&](const CallCmd& writer, const VarSet& reader_footprint,
                             const CallCmd& reader) {
      VarSet bad = site_mod(writer, s) & reader_footprint;
      for (const auto& z : bad) {
        diags.push_back(make_error(
            DiagCode::CONC_INTERFERENCE, where,
            "'" + z.text + "' is modified by '" + writer.callee.text +
                "' while '" + reader.callee.text +
                "' runs in parallel and depends on it"));
      }
    };
    one_direction(left, spec_right | site_vars(right, s), right);
    one_direction(right, spec_left | site_vars(left, s), left);
  };
  for (const auto& f : p.procedures) {
    walk_commands(f.body, [&](const CommandPtr& c) {
      if (const auto* par = std::get_if<ParCmd>(&c->node)) {
        check_par(*par, c->span);
      }
    });
  }
  return diags;
}

std::vector<Diagnostic> check_resource_init(const Program& p,
                                            const Summaries& s) {
  std::vector<Diagnostic> diags;

  auto scan_forbidden = [&](const CommandPtr& root, const std::string& what) {
    walk_commands(root, [&](const CommandPtr& c) {
      const char* kind = nullptr;
      if (std::holds_alternative<CallCmd>(c->node)) kind = "a procedure call";
      if (std::holds_alternative<ParCmd>(c->node)) kind = "a parallel composition";
      if (std::holds_alternative<WithCmd>(c->node)) kind = "a region command";
      if (kind) {
        diags.push_back(make_error(DiagCode::INIT_FORBIDDEN_CONSTRUCT, c->span,
                                   what + " contains " + kind));
      }
    });
  };
  if (const ProcDecl* init = find_proc(p, Ident("init"))) {
    scan_forbidden(init->body, "the init procedure");
  }
  for (const auto& r : p.resources) {
    if (r.initializer) {
      scan_forbidden(r.initializer,
                     "the initializer of resource '" + r.name.text + "'");
    }
  }

  VarSet earlier_vars;
  VarSet earlier_mod;
  for (const auto& r : p.resources) {
    if (!r.initializer) continue;
    VarSet v = vars_cmd(r.initializer, s, p);
    VarSet m = mod_cmd(r.initializer, s, p);
    VarSet bad = (m & earlier_vars) | (v & earlier_mod);
    if (!bad.empty()) {
      diags.push_back(make_error(
          DiagCode::INIT_ORDER_DEP, r.initializer->span,
          "initializer of resource '" + r.name.text +
              "' overlaps earlier initializers on: " + join_names(bad)));
    }
    earlier_vars |= v;
    earlier_mod |= m;
  }
  return diags;
}

std::string_view class_name(VarClass c) {
  switch (c) {
    case VarClass::Local: return "Local";
    case VarClass::ProcessLocal: return "ProcessLocal";
    case VarClass::GlobalConstant: return "GlobalConstant";
    case VarClass::Protected: return "Protected";
    case VarClass::ProcessProtected: return "ProcessProtected";
  }
  return "?";
}

namespace {

// Occurrence footprint of a procedure: its spec, its body, and its formals.
VarSet proc_occurrences(const ProcDecl& f) {
  return fv(f.spec.pre) | fv(f.spec.post) | fv(f.body) | to_set(f.ref_params) |
         to_set(f.val_params);
}

void collect_callees(const CommandPtr& c, std::set<Ident>& out) {
  walk_commands(c, [&](const CommandPtr& n) {
    if (const auto* call = std::get_if<CallCmd>(&n->node)) {
      out.insert(call->callee);
    }
  });
}

}  // namespace

ClassificationReport classify_vars(const Program& p, const Summaries& s) {
  ClassificationReport report;

  // Binder-introduced names with their defining site.
  std::map<Ident, std::string> local_why;
  for (const auto& f : p.procedures) {
    for (const auto& v : f.val_params) {
      local_why.emplace(v, "value parameter of '" + f.name.text + "'");
    }
    walk_commands(f.body, [&](const CommandPtr& c) {
      if (const auto* loc = std::get_if<LocalCmd>(&c->node)) {
        for (const auto& x : loc->vars) {
          local_why.emplace(x, "bound by local in '" + f.name.text + "'");
        }
      }
    });
  }
  for (const auto& r : p.resources) {
    if (!r.initializer) continue;
    walk_commands(r.initializer, [&](const CommandPtr& c) {
      if (const auto* loc = std::get_if<LocalCmd>(&c->node)) {
        for (const auto& x : loc->vars) {
          local_why.emplace(x, "bound by local in the initializer of '" +
                                   r.name.text + "'");
        }
      }
    });
  }

  std::map<Ident, Ident> owner;        // protected variable -> resource
  std::map<Ident, Ident> invariant_of; // invariant variable -> resource
  for (const auto& r : p.resources) {
    for (const auto& x : r.owned) owner.emplace(x, r.name);
    for (const auto& x : fv(r.invariant)) invariant_of.emplace(x, r.name);
  }

  // Everything any code may write, with region and local subtractions
  // deliberately not applied at procedure boundaries: command-level mod of
  // whole bodies and initializers.
  VarSet written;
  for (const auto& f : p.procedures) written |= mod_cmd(f.body, s, p);
  for (const auto& r : p.resources) {
    if (r.initializer) written |= mod_cmd(r.initializer, s, p);
  }

  // Globals: names free at program level.
  VarSet globals;
  for (const auto& r : p.resources) {
    globals |= to_set(r.owned) | fv(r.invariant);
    if (r.initializer) globals |= fv(r.initializer);
  }
  for (const auto& f : p.procedures) {
    VarSet formals = to_set(f.ref_params) | to_set(f.val_params);
    globals |= (fv(f.body) | fv(f.spec.pre) | fv(f.spec.post)) - formals;
  }

  // Confinement: which top-level parallel branches (call closures) a
  // variable's procedures belong to.
  std::map<Ident, std::set<Ident>> callees;
  for (const auto& f : p.procedures) {
    collect_callees(f.body, callees[f.name]);
  }
  std::set<Ident> roots;
  for (const auto& f : p.procedures) {
    walk_commands(f.body, [&](const CommandPtr& c) {
      if (const auto* par = std::get_if<ParCmd>(&c->node)) {
        roots.insert(as_call(par->left)->callee);
        roots.insert(as_call(par->right)->callee);
      }
    });
  }
  std::map<Ident, std::set<Ident>> closure_roots;  // proc -> roots reaching it
  for (const auto& root : roots) {
    std::set<Ident> seen;
    std::vector<Ident> todo{root};
    while (!todo.empty()) {
      Ident g = todo.back();
      todo.pop_back();
      if (!seen.insert(g).second) continue;
      closure_roots[g].insert(root);
      auto it = callees.find(g);
      if (it == callees.end()) continue;
      todo.insert(todo.end(), it->second.begin(), it->second.end());
    }
  }
  // contexts(x): branch roots whose closure uses x, plus a sentinel for use
  // outside every branch. Initializer occurrences run before any
  // parallelism and are ignored.
  const Ident outside("");
  std::map<Ident, std::set<Ident>> contexts;
  for (const auto& f : p.procedures) {
    std::set<Ident> of_proc;
    auto it = closure_roots.find(f.name);
    if (it != closure_roots.end()) {
      of_proc = it->second;
    } else {
      of_proc.insert(outside);
    }
    for (const auto& x : proc_occurrences(f)) {
      contexts[x].insert(of_proc.begin(), of_proc.end());
    }
  }

  for (const auto& x : all_vars(p)) {
    auto classify = [&]() -> ClassifiedVar {
      if (auto it = local_why.find(x); it != local_why.end()) {
        return {VarClass::Local, it->second};
      }
      if (auto it = owner.find(x); it != owner.end()) {
        return {VarClass::Protected,
                "in the protection list of resource '" + it->second.text + "'"};
      }
      if (auto it = invariant_of.find(x); it != invariant_of.end()) {
        if (written.count(x)) {
          return {VarClass::ProcessProtected,
                  "appears in the invariant of resource '" +
                      it->second.text + "' and is written"};
        }
        return {VarClass::GlobalConstant,
                "appears in the invariant of resource '" + it->second.text +
                    "' and is never written"};
      }
      if (globals.count(x) && !written.count(x)) {
        return {VarClass::GlobalConstant, "global and never written"};
      }
      auto it = contexts.find(x);
      if (it == contexts.end() || it->second.empty()) {
        return {VarClass::ProcessLocal, "used only within initializers"};
      }
      if (it->second.size() == 1) {
        const Ident& where = *it->second.begin();
        if (where == outside) {
          return {VarClass::ProcessLocal, "used only outside parallel branches"};
        }
        return {VarClass::ProcessLocal,
                "confined to the parallel branch rooted at '" + where.text + "'"};
      }
      return {VarClass::ProcessLocal,
              "not confined to one parallel branch; kept process-local as the "
              "closest fit"};
    };
    report.classes.emplace(x, classify());
  }
  return report;
}

}  // namespace sfc
