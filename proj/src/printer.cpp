#include "sfc/printer.hpp"

#include <ostream>
#include <sstream>

namespace sfc {

namespace {

std::string indent_of(int n) { return std::string(static_cast<std::size_t>(n), ' '); }

void print_block(std::ostream& os, const CommandPtr& c, int indent) {
  os << "{\n";
  print_command(os, c, indent + 2);
  os << indent_of(indent) << "}";
}

}  // namespace

std::string to_string(const ExprPtr& e) {
  if (!e) return "<null>";
  return std::visit(overloaded{
                        [](const VarExpr& v) { return v.name.text; },
                        [](const NilExpr&) { return std::string("nil"); },
                        [](const IntExpr& i) { return std::to_string(i.value); },
                        [](const XorExpr& x) {
                          return to_string(x.lhs) + " ^ " + to_string(x.rhs);
                        },
                    },
                    e->node);
}

std::string to_string(const BoolExpr& b) {
  const char* op = b.op == BoolExpr::Op::Eq ? " == " : " != ";
  return to_string(b.lhs) + op + to_string(b.rhs);
}

std::string to_string(const PureFormula& p) {
  if (p.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += " && ";
    out += to_string(p[i]);
  }
  return out;
}

std::string to_string(const SpatialAtom& a) {
  return std::visit(overloaded{
                        [](const EmpAtom&) { return std::string("emp"); },
                        [](const PointsToAtom& pt) {
                          std::string out = to_string(pt.address) + " |-> [";
                          for (std::size_t i = 0; i < pt.fields.size(); ++i) {
                            if (i) out += ", ";
                            out += pt.fields[i].first.text + ": " +
                                   to_string(pt.fields[i].second);
                          }
                          return out + "]";
                        },
                        [](const PredAtom& pr) {
                          std::string out = pr.name.text + "(";
                          for (std::size_t i = 0; i < pr.args.size(); ++i) {
                            if (i) out += ", ";
                            out += to_string(pr.args[i]);
                          }
                          return out + ")";
                        },
                    },
                    a);
}

std::string to_string(const SymbolicHeap& h) {
  SymbolicHeap n = normalize(h);
  std::string spatial;
  if (n.spatial.empty()) {
    spatial = "emp";
  } else {
    for (std::size_t i = 0; i < n.spatial.size(); ++i) {
      if (i) spatial += " * ";
      spatial += to_string(n.spatial[i]);
    }
  }
  if (n.pure.empty()) return spatial;
  return to_string(n.pure) + " ; " + spatial;
}

std::string to_string(const Stmt& s) {
  return std::visit(
      overloaded{
          [](const AssignStmt& a) {
            return a.target.text + " = " + to_string(a.value) + ";";
          },
          [](const LookupStmt& l) {
            return l.target.text + " = " + to_string(l.address) + " -> " +
                   l.field.text + ";";
          },
          [](const MutateStmt& m) {
            return to_string(m.address) + " -> " + m.field.text + " = " +
                   to_string(m.value) + ";";
          },
          [](const NewStmt& n) { return n.target.text + " = new();"; },
          [](const DisposeStmt& d) {
            return "dispose(" + to_string(d.address) + ");";
          },
      },
      s);
}

std::string to_string(const CallCmd& c) {
  std::string out = c.callee.text + "(";
  if (c.ref_args.empty() && c.val_args.empty()) return out + ")";
  for (std::size_t i = 0; i < c.ref_args.size(); ++i) {
    if (i) out += ", ";
    out += c.ref_args[i].text;
  }
  out += ";";
  for (std::size_t i = 0; i < c.val_args.size(); ++i) {
    out += i ? ", " : " ";
    out += to_string(c.val_args[i]);
  }
  return out + ")";
}

std::string to_string(const VarSet& s) { return "{" + comma_join(s) + "}"; }

std::string comma_join(const VarSet& s) {
  std::string out;
  for (const auto& x : s) {
    if (!out.empty()) out += ",";
    out += x.text;
  }
  return out;
}

void print_command(std::ostream& os, const CommandPtr& c, int indent) {
  if (!c) return;
  const std::string pad = indent_of(indent);
  std::visit(
      overloaded{
          [&](const PrimCmd& p) { os << pad << to_string(p.stmt) << "\n"; },
          [&](const SeqCmd& s) {
            print_command(os, s.first, indent);
            print_command(os, s.second, indent);
          },
          [&](const IfCmd& i) {
            os << pad << "if (" << to_string(i.cond) << ") ";
            print_block(os, i.then_branch, indent);
            os << " else ";
            print_block(os, i.else_branch, indent);
            os << "\n";
          },
          [&](const WhileCmd& w) {
            os << pad << "while (" << to_string(w.cond) << ") ["
               << to_string(w.invariant) << "] ";
            print_block(os, w.body, indent);
            os << "\n";
          },
          [&](const CallCmd& call) { os << pad << to_string(call) << ";\n"; },
          [&](const ParCmd& p) {
            os << pad << to_string(*as_call(p.left)) << " || "
               << to_string(*as_call(p.right)) << ";\n";
          },
          [&](const WithCmd& w) {
            os << pad << "with " << w.resource.text << " when ("
               << to_string(w.guard) << ") ";
            print_block(os, w.body, indent);
            os << "\n";
          },
          [&](const LocalCmd& l) {
            os << pad << "local ";
            for (std::size_t i = 0; i < l.vars.size(); ++i) {
              if (i) os << ", ";
              os << l.vars[i].text;
            }
            os << ";\n";
            print_command(os, l.body, indent);
          },
          [&](const SkipCmd&) {},
      },
      c->node);
}

namespace {

void print_params(std::ostream& os, const std::vector<Ident>& refs,
                  const std::vector<Ident>& vals) {
  os << "(";
  if (refs.empty() && vals.empty()) {
    os << ")";
    return;
  }
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (i) os << ", ";
    os << refs[i].text;
  }
  os << ";";
  for (std::size_t i = 0; i < vals.size(); ++i) {
    os << (i ? ", " : " ");
    os << vals[i].text;
  }
  os << ")";
}

}  // namespace

void print_program(std::ostream& os, const Program& p) {
  bool first = true;
  for (const auto& r : p.resources) {
    if (!first) os << "\n";
    first = false;
    os << "resource " << r.name.text << "(";
    for (std::size_t i = 0; i < r.owned.size(); ++i) {
      if (i) os << ", ";
      os << r.owned[i].text;
    }
    os << ") [" << to_string(r.invariant) << "]";
    if (r.initializer) {
      os << " ";
      print_block(os, r.initializer, 0);
    }
    os << "\n";
  }
  for (const auto& f : p.procedures) {
    if (!first) os << "\n";
    first = false;
    os << f.name.text;
    print_params(os, f.ref_params, f.val_params);
    os << " [" << to_string(f.spec.pre) << "] ";
    print_block(os, f.body, 0);
    os << " [" << to_string(f.spec.post) << "]\n";
  }
}

std::string to_string(const Program& p) {
  std::ostringstream os;
  print_program(os, p);
  return os.str();
}

namespace {

void instr_lines_rec(const SymbolicInstrPtr& si, int indent,
                     std::vector<std::string>& out) {
  if (!si) return;
  const std::string pad = indent_of(indent);
  std::visit(overloaded{
                 [&](const AssumeInstr& a) {
                   out.push_back(pad + "assume(" + to_string(a.formula) + ")");
                 },
                 [&](const PrimInstr& p) { out.push_back(pad + to_string(p.stmt)); },
                 [&](const JsrInstr& j) {
                   out.push_back(pad + "jsr[" + comma_join(j.mods) + "] {" +
                                 to_string(j.pre) + "} {" + to_string(j.post) +
                                 "}");
                 },
                 [&](const IfInstr& i) {
                   out.push_back(pad + "if (" + to_string(i.cond) + ") {");
                   instr_lines_rec(i.then_branch, indent + 2, out);
                   out.push_back(pad + "} else {");
                   instr_lines_rec(i.else_branch, indent + 2, out);
                   out.push_back(pad + "}");
                 },
                 [&](const SeqInstr& s) {
                   instr_lines_rec(s.first, indent, out);
                   instr_lines_rec(s.second, indent, out);
                 },
             },
             si->node);
}

}  // namespace

std::vector<std::string> instr_lines(const SymbolicInstrPtr& si) {
  std::vector<std::string> out;
  instr_lines_rec(si, 0, out);
  return out;
}

}  // namespace sfc
