#include "sfc/driver.hpp"

#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "sfc/analysis.hpp"
#include "sfc/conditions.hpp"
#include "sfc/diagnostics.hpp"
#include "sfc/legality.hpp"
#include "sfc/parser.hpp"
#include "sfc/printer.hpp"
#include "sfc/rename.hpp"
#include "sfc/vcgen.hpp"

namespace sfc {

namespace {

using nlohmann::json;

json to_json(const Diagnostic& d, std::string_view file) {
  return json{{"kind", "diagnostic"},
              {"file", std::string(file)},
              {"line", d.where.line},
              {"col", d.where.column},
              {"severity", std::string(severity_name(d.severity))},
              {"code", std::string(code_name(d.code))},
              {"message", d.message}};
}

void emit_diagnostics(std::vector<Diagnostic> diags, std::string_view file,
                      Format format, std::ostream& err) {
  sort_diagnostics(diags);
  for (const auto& d : diags) {
    if (format == Format::Structured) {
      err << to_json(d, file).dump() << "\n";
    } else {
      err << render(d, file) << "\n";
    }
  }
}

json names_json(const std::set<Ident>& xs) {
  json arr = json::array();
  for (const auto& x : xs) arr.push_back(x.text);
  return arr;
}

void emit_analysis(const Program& p, const Summaries& s, const ParMap& pm,
                   Format format, std::ostream& out) {
  for (const auto& f : p.procedures) {
    if (format == Format::Structured) {
      out << json{{"kind", "proc"},
                  {"name", f.name.text},
                  {"vars", names_json(s.vars.at(f.name))},
                  {"mod", names_json(s.mod.at(f.name))},
                  {"req", names_json(s.req.at(f.name))},
                  {"par", names_json(pm.at(f.name))}}
                 .dump()
          << "\n";
    } else {
      out << "proc " << f.name.text << ": vars=" << to_string(s.vars.at(f.name))
          << " mod=" << to_string(s.mod.at(f.name))
          << " req=" << to_string(s.req.at(f.name))
          << " par=" << to_string(pm.at(f.name)) << "\n";
    }
  }
}

void emit_classification(const ClassificationReport& report, Format format,
                         std::ostream& out) {
  for (const auto& [x, c] : report.classes) {
    if (format == Format::Structured) {
      out << json{{"kind", "class"},
                  {"var", x.text},
                  {"class", std::string(class_name(c.cls))},
                  {"why", c.justification}}
                 .dump()
          << "\n";
    } else {
      out << "var " << x.text << ": " << class_name(c.cls) << " ("
          << c.justification << ")\n";
    }
  }
}

void emit_vcs(const VcOutput& vco, std::string_view file, Format format,
              std::ostream& out) {
  if (format == Format::Structured) {
    out << json{{"kind", "header"},
                {"file", std::string(file)},
                {"vcs", vco.vcs.size()},
                {"obligations", vco.obligations.size()},
                {"main_pre_replaced", vco.main_pre_replaced},
                {"fresh_counter", vco.fresh_counter_final}}
               .dump()
        << "\n";
    for (const auto& vc : vco.vcs) {
      out << json{{"kind", "vc"},
                  {"id", vc.id},
                  {"file", std::string(file)},
                  {"line", vc.origin.line},
                  {"pre", to_string(vc.pre)},
                  {"body", instr_lines(vc.body)},
                  {"post", to_string(vc.post)}}
                 .dump()
          << "\n";
    }
    for (const auto& ob : vco.obligations) {
      out << json{{"kind", "entail"},
                  {"id", ob.id},
                  {"file", std::string(file)},
                  {"line", ob.origin.line},
                  {"lhs", to_string(ob.lhs)},
                  {"rhs", to_string(ob.rhs)}}
                 .dump()
          << "\n";
    }
    return;
  }
  out << "// " << file << ": " << vco.vcs.size() << " vcs, "
      << vco.obligations.size() << " obligations\n";
  if (vco.main_pre_replaced) {
    out << "// main precondition replaced by init postcondition\n";
  }
  for (const auto& vc : vco.vcs) {
    out << "\nvc " << vc.id << " @ " << file << ":" << vc.origin.line << "\n";
    out << "  pre:  " << to_string(vc.pre) << "\n";
    out << "  body:\n";
    for (const auto& line : instr_lines(vc.body)) {
      out << "    " << line << "\n";
    }
    out << "  post: " << to_string(vc.post) << "\n";
  }
  for (const auto& ob : vco.obligations) {
    out << "\nentail " << ob.id << ": " << to_string(ob.lhs) << " |- "
        << to_string(ob.rhs) << "\n";
  }
}

int pipeline(std::string_view source, std::string_view file,
             const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunConfig cfg = config;
  if (!cfg.check && !cfg.emit_vcs && !cfg.dump_analysis && !cfg.classify) {
    cfg.check = true;
    cfg.emit_vcs = true;
  }

  ParseResult parsed = parse(source);
  if (!parsed.ok()) {
    emit_diagnostics(std::move(parsed.diagnostics), file, cfg.format, err);
    return ExitFrontend;
  }
  std::vector<Diagnostic> legal = check_legal(*parsed.program);
  if (!legal.empty()) {
    emit_diagnostics(std::move(legal), file, cfg.format, err);
    return ExitFrontend;
  }

  Program renamed = rename_apart(*parsed.program);
  Summaries summaries = proc_summaries(renamed);
  ParMap pm = par_map(renamed);

  std::vector<Diagnostic> diags = check_aliasing(renamed, summaries);
  {
    auto more = check_concurrency(renamed, summaries);
    diags.insert(diags.end(), more.begin(), more.end());
    more = check_resource_init(renamed, summaries);
    diags.insert(diags.end(), more.begin(), more.end());
  }
  bool blocked = has_errors(diags);
  emit_diagnostics(std::move(diags), file, cfg.format, err);

  if (cfg.dump_analysis) emit_analysis(renamed, summaries, pm, cfg.format, out);
  if (cfg.classify) {
    emit_classification(classify_vars(renamed, summaries), cfg.format, out);
  }
  if (cfg.emit_vcs && !blocked) {
    emit_vcs(program_vcs(renamed, summaries, pm), file, cfg.format, out);
  }
  return blocked ? ExitConditions : ExitClean;
}

}  // namespace

int run_on_source(std::string_view source, std::string_view file_name,
                  const RunConfig& config, std::ostream& out,
                  std::ostream& err) {
  try {
    return pipeline(source, file_name, config, out, err);
  } catch (const std::exception& e) {
    Diagnostic d = make_error(DiagCode::INTERNAL, SourceSpan{0, 0, 1, 1},
                              std::string("internal error: ") + e.what());
    err << render(d, file_name) << "\n";
    return ExitInternal;
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ifstream in(config.input_path, std::ios::binary);
  if (!in) {
    Diagnostic d = make_error(DiagCode::IO_ERROR, SourceSpan{0, 0, 1, 1},
                              "cannot open input file");
    err << render(d, config.input_path) << "\n";
    return ExitFrontend;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return run_on_source(buf.str(), config.input_path, config, out, err);
}

}  // namespace sfc
