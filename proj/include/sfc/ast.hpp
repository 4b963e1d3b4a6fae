#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sfc {

/// Byte range in the input plus the 1-based line/column of its start.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  int line = 0;
  int column = 0;

  std::size_t length() const { return end >= begin ? end - begin : 0; }
};

/// Name of a variable, procedure, resource, field, or predicate.
///
/// Parser-produced names never contain a prime; primes are reserved for
/// the fresh-name supply (base + ' + counter), which keeps generated
/// names disjoint from anything written in a source file.
struct Ident {
  std::string text;

  Ident() = default;
  explicit Ident(std::string t) : text(std::move(t)) {}
  friend auto operator<=>(const Ident&, const Ident&) = default;
};

/// Canonically ordered variable set; iteration is lexicographic, so every
/// consumer (fixpoints, printing, diagnostics) is deterministic.
using VarSet = std::set<Ident>;
using ResSet = std::set<Ident>;

VarSet operator|(const VarSet& a, const VarSet& b);
VarSet operator-(const VarSet& a, const VarSet& b);
VarSet operator&(const VarSet& a, const VarSet& b);
VarSet& operator|=(VarSet& a, const VarSet& b);
VarSet& operator-=(VarSet& a, const VarSet& b);
bool disjoint(const VarSet& a, const VarSet& b);

// ---------------------------------------------------------------------------
// Expressions and boolean expressions
// ---------------------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct VarExpr {
  Ident name;
};
struct NilExpr {};
struct IntExpr {
  std::int64_t value = 0;
};
struct XorExpr {
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Expr {
  std::variant<VarExpr, NilExpr, IntExpr, XorExpr> node;
  SourceSpan span;
};

ExprPtr mk_var(Ident name, SourceSpan span = {});
ExprPtr mk_nil(SourceSpan span = {});
ExprPtr mk_int(std::int64_t value, SourceSpan span = {});
ExprPtr mk_xor(ExprPtr lhs, ExprPtr rhs, SourceSpan span = {});

/// Equality or disequality of two expressions. Shared between command
/// guards and the pure parts of assertions, which use the same grammar.
struct BoolExpr {
  enum class Op { Eq, Neq };
  Op op = Op::Eq;
  ExprPtr lhs;
  ExprPtr rhs;
  SourceSpan span;
};

using PureAtom = BoolExpr;

/// Conjunction of pure atoms; the empty list is `true`.
using PureFormula = std::vector<PureAtom>;

/// Flips Eq and Neq; the (dis)equality grammar is closed under negation.
BoolExpr negate(const BoolExpr& b);

// ---------------------------------------------------------------------------
// Assertions: symbolic heaps
// ---------------------------------------------------------------------------

struct EmpAtom {};

struct PointsToAtom {
  ExprPtr address;
  std::vector<std::pair<Ident, ExprPtr>> fields;  // field names duplicate-free
};

/// Uninterpreted predicate (e.g. a list segment); only its variables matter
/// here, so no interpretation is attached.
struct PredAtom {
  Ident name;
  std::vector<ExprPtr> args;
};

using SpatialAtom = std::variant<EmpAtom, PointsToAtom, PredAtom>;

/// Assertion of shape (/\ pure) /\ (* spatial). The empty spatial list is
/// `emp`; emp atoms are the unit of * and get dropped when heaps are built
/// through normalize().
struct SymbolicHeap {
  PureFormula pure;
  std::vector<SpatialAtom> spatial;

  static SymbolicHeap emp() { return {}; }
};

/// Drops emp atoms from the spatial part (star unit).
SymbolicHeap normalize(SymbolicHeap h);

/// P * Q: pure parts conjoined, spatial parts starred, in argument order.
SymbolicHeap star(const SymbolicHeap& p, const SymbolicHeap& q);

// ---------------------------------------------------------------------------
// Statements and commands
// ---------------------------------------------------------------------------

struct AssignStmt {
  Ident target;
  ExprPtr value;
};  // x = E
struct LookupStmt {
  Ident target;
  ExprPtr address;
  Ident field;
};  // x = E -> t
struct MutateStmt {
  ExprPtr address;
  Ident field;
  ExprPtr value;
};  // E -> t = F
struct NewStmt {
  Ident target;
};  // x = new()
struct DisposeStmt {
  ExprPtr address;
};  // dispose(E)

using Stmt = std::variant<AssignStmt, LookupStmt, MutateStmt, NewStmt, DisposeStmt>;

struct Command;
using CommandPtr = std::shared_ptr<const Command>;

struct PrimCmd {
  Stmt stmt;
};
struct SeqCmd {
  CommandPtr first;
  CommandPtr second;
};
struct IfCmd {
  BoolExpr cond;
  CommandPtr then_branch;
  CommandPtr else_branch;
};
struct WhileCmd {
  SymbolicHeap invariant;
  BoolExpr cond;
  CommandPtr body;
};
struct CallCmd {
  Ident callee;
  std::vector<Ident> ref_args;
  std::vector<ExprPtr> val_args;
};
/// Parallel composition; the grammar restricts both children to calls,
/// which the parser enforces at construction.
struct ParCmd {
  CommandPtr left;
  CommandPtr right;
};
struct WithCmd {
  Ident resource;
  BoolExpr guard;
  CommandPtr body;
};
/// `local xs;` scoping to the end of its block.
struct LocalCmd {
  std::vector<Ident> vars;  // nonempty, duplicate-free
  CommandPtr body;
};
/// Empty block. Not writable in the surface syntax other than as `{ }`;
/// chops to assume(true).
struct SkipCmd {};

struct Command {
  std::variant<PrimCmd, SeqCmd, IfCmd, WhileCmd, CallCmd, ParCmd, WithCmd,
               LocalCmd, SkipCmd>
      node;
  SourceSpan span;
};

CommandPtr mk_prim(Stmt stmt, SourceSpan span = {});
CommandPtr mk_seq(CommandPtr first, CommandPtr second, SourceSpan span = {});
CommandPtr mk_if(BoolExpr cond, CommandPtr t, CommandPtr e, SourceSpan span = {});
CommandPtr mk_while(SymbolicHeap inv, BoolExpr cond, CommandPtr body,
                    SourceSpan span = {});
CommandPtr mk_call(Ident callee, std::vector<Ident> refs,
                   std::vector<ExprPtr> vals, SourceSpan span = {});
CommandPtr mk_par(CommandPtr left_call, CommandPtr right_call,
                  SourceSpan span = {});
CommandPtr mk_with(Ident resource, BoolExpr guard, CommandPtr body,
                   SourceSpan span = {});
CommandPtr mk_local(std::vector<Ident> vars, CommandPtr body,
                    SourceSpan span = {});
CommandPtr mk_skip(SourceSpan span = {});

/// True iff the command is a call node; used where the grammar promises one
/// (children of ||).
const CallCmd* as_call(const CommandPtr& c);

// ---------------------------------------------------------------------------
// Declarations
// ---------------------------------------------------------------------------

struct Spec {
  SymbolicHeap pre;
  SymbolicHeap post;
};

struct ResourceDecl {
  Ident name;
  std::vector<Ident> owned;  // protection list, duplicate-free
  SymbolicHeap invariant;
  CommandPtr initializer;  // null when the declaration carries no block
  SourceSpan span;
};

struct ProcDecl {
  Ident name;
  std::vector<Ident> ref_params;
  std::vector<Ident> val_params;
  Spec spec;
  CommandPtr body;
  SourceSpan span;
};

/// A whole annotated program: the resource environment and the procedure
/// environment, each in declaration order.
struct Program {
  std::vector<ResourceDecl> resources;
  std::vector<ProcDecl> procedures;
};

const ResourceDecl* find_resource(const Program& p, const Ident& name);
const ProcDecl* find_proc(const Program& p, const Ident& name);

// ---------------------------------------------------------------------------
// Symbolic instructions
// ---------------------------------------------------------------------------

struct SymbolicInstr;
using SymbolicInstrPtr = std::shared_ptr<const SymbolicInstr>;

/// assume(q) for a pure formula q; the only pure-only instruction needed
/// (parameter-initialization facts and empty blocks).
struct AssumeInstr {
  PureFormula formula;
};
struct PrimInstr {
  Stmt stmt;
};
/// Generic command jsr[mods]{pre}{post}: the greatest relation satisfying
/// the given pre/post while modifying only `mods`.
struct JsrInstr {
  VarSet mods;
  SymbolicHeap pre;
  SymbolicHeap post;
};
struct IfInstr {
  BoolExpr cond;
  SymbolicInstrPtr then_branch;
  SymbolicInstrPtr else_branch;
};
struct SeqInstr {
  SymbolicInstrPtr first;
  SymbolicInstrPtr second;
};

/// Loop-free by construction: there is no loop alternative.
struct SymbolicInstr {
  std::variant<AssumeInstr, PrimInstr, JsrInstr, IfInstr, SeqInstr> node;
};

SymbolicInstrPtr mk_assume(PureFormula formula);
SymbolicInstrPtr mk_prim_instr(Stmt stmt);
SymbolicInstrPtr mk_jsr(VarSet mods, SymbolicHeap pre, SymbolicHeap post);
SymbolicInstrPtr mk_if_instr(BoolExpr cond, SymbolicInstrPtr t, SymbolicInstrPtr e);
SymbolicInstrPtr mk_seq_instr(SymbolicInstrPtr first, SymbolicInstrPtr second);

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

VarSet fv(const ExprPtr& e);
VarSet fv(const BoolExpr& b);
VarSet fv(const PureFormula& p);
VarSet fv(const SpatialAtom& a);
VarSet fv(const SymbolicHeap& h);
VarSet fv(const Stmt& s);
/// Free variables of a command by syntactic occurrence. `local` binds its
/// variables; procedure formals are not bound here.
VarSet fv(const CommandPtr& c);
VarSet fv(const Spec& s);

/// All identifiers occurring in variable position anywhere in the program,
/// bound or free (binders, protection lists, every expression leaf).
VarSet all_vars(const Program& p);

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

/// Finite map from variables to expressions; identity off-domain.
using Substitution = std::map<Ident, ExprPtr>;

/// Simultaneous substitution. Assertions and expressions are binder-free,
/// so no capture can occur; field and predicate names are never touched.
ExprPtr subst(const ExprPtr& e, const Substitution& sigma);
BoolExpr subst(const BoolExpr& b, const Substitution& sigma);
SymbolicHeap subst(const SymbolicHeap& h, const Substitution& sigma);

/// Image of a variable set under a renaming (identity off-domain),
/// re-canonicalized as a set.
VarSet subst_varset(const VarSet& s, const std::map<Ident, Ident>& sigma);

// ---------------------------------------------------------------------------
// Structural equality (spans ignored)
// ---------------------------------------------------------------------------

bool struct_eq(const ExprPtr& a, const ExprPtr& b);
bool struct_eq(const BoolExpr& a, const BoolExpr& b);
bool struct_eq(const PureFormula& a, const PureFormula& b);
bool struct_eq(const SpatialAtom& a, const SpatialAtom& b);
bool struct_eq(const SymbolicHeap& a, const SymbolicHeap& b);
bool struct_eq(const Stmt& a, const Stmt& b);
bool struct_eq(const CommandPtr& a, const CommandPtr& b);
bool struct_eq(const Spec& a, const Spec& b);
bool struct_eq(const ResourceDecl& a, const ResourceDecl& b);
bool struct_eq(const ProcDecl& a, const ProcDecl& b);
bool struct_eq(const Program& a, const Program& b);
bool struct_eq(const SymbolicInstrPtr& a, const SymbolicInstrPtr& b);

/// Visitor helper for std::variant.
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace sfc
