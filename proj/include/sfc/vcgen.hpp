#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sfc/analysis.hpp"
#include "sfc/ast.hpp"
#include "sfc/fresh.hpp"

namespace sfc {

/// A verification condition {pre} body {post} over a loop-free symbolic
/// instruction. Ids are `<origin procedure>.<ordinal>` and unique per run.
struct VC {
  std::string id;
  SymbolicHeap pre;
  SymbolicInstrPtr body;
  SymbolicHeap post;
  SourceSpan origin;
};

/// An entailment lhs |- rhs left for an external prover.
struct Obligation {
  std::string id;
  SymbolicHeap lhs;
  SymbolicHeap rhs;
  SourceSpan origin;
};

struct VcOutput {
  std::vector<VC> vcs;  // generation order
  std::vector<Obligation> obligations;
  std::int64_t fresh_counter_final = 0;
  bool main_pre_replaced = false;
};

struct ChopResult {
  SymbolicInstrPtr instr;
  std::vector<VC> vcs;  // ids unassigned; filled in by vcg
};

/// Translates command C, appearing in procedure g, into a loop-free symbolic
/// instruction plus the extra VCs contributed by loops. Calls become two
/// generic (jsr) instructions (value-argument snapshot, then the callee's
/// substituted spec); parallel compositions merge the two call translations;
/// region entry assumes the invariant plus guard and region exit re-asserts
/// the invariant while quantifying interference from procedures that may run
/// in parallel with g.
ChopResult chop(const Ident& g, const CommandPtr& c, const Program& p,
                const Summaries& s, const ParMap& pm, FreshSupply& fs);

/// Wraps chop's instruction in the procedure's own triple: the result is
/// {spec.pre} SI {spec.post} followed by the loop VCs, with ids assigned
/// as g.0, g.1, ...
std::vector<VC> vcg(const Ident& g, const Spec& spec, const CommandPtr& c,
                    const Program& p, const Summaries& s, const ParMap& pm,
                    FreshSupply& fs, SourceSpan origin);

/// Whole-program VC set: the initialization VC first (from the init
/// procedure when declared, otherwise the resource initializers run in
/// declaration order, with every resource invariant starred onto the post),
/// then one VC per remaining procedure in declaration order, each followed
/// by its loop VCs. When init is declared, main's precondition is replaced
/// by init's postcondition, and with both init and main declared the
/// entailment `init post |- R_1 * ... * R_n * main pre` is emitted.
VcOutput program_vcs(const Program& p, const Summaries& s, const ParMap& pm);

}  // namespace sfc
