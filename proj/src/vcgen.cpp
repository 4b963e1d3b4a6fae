#include "sfc/vcgen.hpp"

#include <stdexcept>
#include <utility>

namespace sfc {

namespace {

SymbolicHeap true_emp() { return SymbolicHeap::emp(); }

SymbolicHeap prepend_pure(const BoolExpr& b, SymbolicHeap h) {
  h.pure.insert(h.pure.begin(), b);
  return h;
}

SymbolicHeap append_pure(SymbolicHeap h, const BoolExpr& b) {
  h.pure.push_back(b);
  return h;
}

const JsrInstr& as_jsr(const SymbolicInstrPtr& si) {
  const auto* seq = std::get_if<JsrInstr>(&si->node);
  if (!seq) throw std::logic_error("vcgen: expected a jsr instruction");
  return *seq;
}

// The two-jsr sequence every Call chops to; Par destructures both sides.
std::pair<const JsrInstr&, const JsrInstr&> as_call_shape(
    const SymbolicInstrPtr& si) {
  const auto* seq = std::get_if<SeqInstr>(&si->node);
  if (!seq) throw std::logic_error("vcgen: expected a two-jsr call shape");
  return {as_jsr(seq->first), as_jsr(seq->second)};
}

VarSet par_interference(const Ident& g, const ParMap& pm, const Summaries& s) {
  VarSet out;
  auto it = pm.find(g);
  if (it == pm.end()) return out;  // synthetic contexts run nothing in parallel
  for (const auto& f : it->second) out |= s.mod.at(f);
  return out;
}

class Chopper {
 public:
  Chopper(const Ident& g, const Program& p, const Summaries& s,
          const ParMap& pm, FreshSupply& fs)
      : g_(g), p_(p), s_(s), pm_(pm), fs_(fs) {}

  ChopResult chop(const CommandPtr& c) {
    return std::visit(
        overloaded{
            [&](const PrimCmd& n) {
              return ChopResult{mk_prim_instr(n.stmt), {}};
            },
            [&](const SkipCmd&) {
              return ChopResult{mk_assume(PureFormula{}), {}};
            },
            [&](const SeqCmd& n) {
              ChopResult left = chop(n.first);
              ChopResult right = chop(n.second);
              ChopResult out{mk_seq_instr(left.instr, right.instr),
                             std::move(left.vcs)};
              out.vcs.insert(out.vcs.end(),
                             std::make_move_iterator(right.vcs.begin()),
                             std::make_move_iterator(right.vcs.end()));
              return out;
            },
            [&](const IfCmd& n) {
              ChopResult t = chop(n.then_branch);
              ChopResult e = chop(n.else_branch);
              ChopResult out{mk_if_instr(n.cond, t.instr, e.instr),
                             std::move(t.vcs)};
              out.vcs.insert(out.vcs.end(),
                             std::make_move_iterator(e.vcs.begin()),
                             std::make_move_iterator(e.vcs.end()));
              return out;
            },
            [&](const WhileCmd& n) { return chop_while(n, c->span); },
            [&](const CallCmd& n) { return chop_call(n, c->span); },
            [&](const ParCmd& n) { return chop_par(n); },
            [&](const WithCmd& n) { return chop_with(n); },
            [&](const LocalCmd& n) { return chop(n.body); },
        },
        c->node);
  }

 private:
  const Ident& g_;
  const Program& p_;
  const Summaries& s_;
  const ParMap& pm_;
  FreshSupply& fs_;

  ChopResult chop_while(const WhileCmd& n, SourceSpan span) {
    ChopResult inner = chop(n.body);
    std::vector<VC> vcs;
    vcs.push_back(VC{/*id=*/"", prepend_pure(n.cond, n.invariant), inner.instr,
                     n.invariant, span});
    vcs.insert(vcs.end(), std::make_move_iterator(inner.vcs.begin()),
               std::make_move_iterator(inner.vcs.end()));
    SymbolicInstrPtr jsr =
        mk_jsr(mod_cmd(n.body, s_, p_), n.invariant,
               prepend_pure(negate(n.cond), n.invariant));
    return ChopResult{std::move(jsr), std::move(vcs)};
  }

  ChopResult chop_call(const CallCmd& n, SourceSpan span) {
    const ProcDecl* f = find_proc(p_, n.callee);
    if (!f) throw std::logic_error("vcgen: call to unknown procedure");
    if (f->ref_params.size() != n.ref_args.size() ||
        f->val_params.size() != n.val_args.size()) {
      throw std::logic_error("vcgen: call arity mismatch");
    }
    // Snapshot the value arguments into fresh primed names.
    PureFormula snapshot;
    Substitution sigma;
    std::map<Ident, Ident> sigma_vars;
    for (std::size_t i = 0; i < f->val_params.size(); ++i) {
      Ident v = fs_.fresh(f->val_params[i]);
      snapshot.push_back(BoolExpr{BoolExpr::Op::Eq, mk_var(v, span),
                                  n.val_args[i], span});
      sigma[f->val_params[i]] = mk_var(v, span);
      sigma_vars[f->val_params[i]] = v;
    }
    for (std::size_t i = 0; i < f->ref_params.size(); ++i) {
      sigma[f->ref_params[i]] = mk_var(n.ref_args[i], span);
      sigma_vars[f->ref_params[i]] = n.ref_args[i];
    }
    SymbolicInstrPtr snap =
        mk_jsr({}, true_emp(), SymbolicHeap{std::move(snapshot), {}});
    SymbolicInstrPtr body =
        mk_jsr(subst_varset(mod_cmd(f->body, s_, p_), sigma_vars),
               subst(f->spec.pre, sigma), subst(f->spec.post, sigma));
    return ChopResult{mk_seq_instr(std::move(snap), std::move(body)), {}};
  }

  ChopResult chop_par(const ParCmd& n) {
    ChopResult left = chop(n.left);
    ChopResult right = chop(n.right);
    auto [snap_l, body_l] = as_call_shape(left.instr);
    auto [snap_r, body_r] = as_call_shape(right.instr);
    PureFormula snapshot = snap_l.post.pure;
    snapshot.insert(snapshot.end(), snap_r.post.pure.begin(),
                    snap_r.post.pure.end());
    SymbolicInstrPtr snap =
        mk_jsr({}, true_emp(), SymbolicHeap{std::move(snapshot), {}});
    SymbolicInstrPtr body =
        mk_jsr(body_l.mods | body_r.mods, star(body_l.pre, body_r.pre),
               star(body_l.post, body_r.post));
    return ChopResult{mk_seq_instr(std::move(snap), std::move(body)), {}};
  }

  ChopResult chop_with(const WithCmd& n) {
    const ResourceDecl* r = find_resource(p_, n.resource);
    if (!r) throw std::logic_error("vcgen: unknown resource");
    ChopResult inner = chop(n.body);
    SymbolicInstrPtr entry =
        mk_jsr({}, true_emp(), append_pure(r->invariant, n.guard));
    VarSet protected_vars(r->owned.begin(), r->owned.end());
    VarSet interference = fv(r->invariant) & par_interference(g_, pm_, s_);
    SymbolicInstrPtr exit =
        mk_jsr(protected_vars | interference, r->invariant, true_emp());
    return ChopResult{
        mk_seq_instr(entry, mk_seq_instr(inner.instr, std::move(exit))),
        std::move(inner.vcs)};
  }
};

}  // namespace

ChopResult chop(const Ident& g, const CommandPtr& c, const Program& p,
                const Summaries& s, const ParMap& pm, FreshSupply& fs) {
  return Chopper(g, p, s, pm, fs).chop(c);
}

std::vector<VC> vcg(const Ident& g, const Spec& spec, const CommandPtr& c,
                    const Program& p, const Summaries& s, const ParMap& pm,
                    FreshSupply& fs, SourceSpan origin) {
  ChopResult body = chop(g, c, p, s, pm, fs);
  std::vector<VC> out;
  out.push_back(VC{/*id=*/"", spec.pre, body.instr, spec.post, origin});
  out.insert(out.end(), std::make_move_iterator(body.vcs.begin()),
             std::make_move_iterator(body.vcs.end()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].id = g.text + "." + std::to_string(i);
  }
  return out;
}

VcOutput program_vcs(const Program& p, const Summaries& s, const ParMap& pm) {
  VcOutput out;
  FreshSupply fs = FreshSupply::for_program(p);
  const ProcDecl* init = find_proc(p, Ident("init"));
  const ProcDecl* main_proc = find_proc(p, Ident("main"));

  SymbolicHeap all_invariants;  // R_1 * ... * R_n in declaration order
  for (const auto& r : p.resources) {
    all_invariants = star(all_invariants, r.invariant);
  }

  // Initialization VC, under a synthetic context that runs nothing in
  // parallel.
  const Ident init_ctx("<init>");
  if (init) {
    Spec init_spec{init->spec.pre, star(init->spec.post, all_invariants)};
    out.vcs = vcg(init_ctx, init_spec, init->body, p, s, pm, fs, init->span);
  } else {
    CommandPtr body;
    for (auto it = p.resources.rbegin(); it != p.resources.rend(); ++it) {
      if (!it->initializer) continue;
      body = body ? mk_seq(it->initializer, std::move(body), it->span)
                  : it->initializer;
    }
    SourceSpan origin = body ? body->span : SourceSpan{0, 0, 1, 1};
    if (!body) body = mk_skip(origin);
    Spec init_spec{SymbolicHeap::emp(), all_invariants};
    out.vcs = vcg(init_ctx, init_spec, body, p, s, pm, fs, origin);
  }

  for (const auto& f : p.procedures) {
    if (init && f.name == init->name) continue;
    Spec spec = f.spec;
    if (init && main_proc && f.name == main_proc->name) {
      spec.pre = init->spec.post;
      out.main_pre_replaced = true;
    }
    std::vector<VC> vcs = vcg(f.name, spec, f.body, p, s, pm, fs, f.span);
    out.vcs.insert(out.vcs.end(), std::make_move_iterator(vcs.begin()),
                   std::make_move_iterator(vcs.end()));
  }

  if (init && main_proc) {
    out.obligations.push_back(
        Obligation{"init-main", init->spec.post,
                   star(all_invariants, main_proc->spec.pre), main_proc->span});
  }
  out.fresh_counter_final = fs.counter();
  return out;
}

}  // namespace sfc
