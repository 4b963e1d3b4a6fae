#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

namespace sfc {

enum class Format { Text, Structured };

struct RunConfig {
  std::string input_path;
  // Output selectors. When none is set, run() applies the default of
  // check + emit_vcs. Condition checks always execute and always gate VC
  // emission; `check` without the others just suppresses the reports.
  bool check = false;
  bool emit_vcs = false;
  bool dump_analysis = false;
  bool classify = false;
  Format format = Format::Text;
};

enum ExitCode : int {
  ExitClean = 0,
  ExitConditions = 1,  // condition errors (aliasing/concurrency/init)
  ExitFrontend = 2,    // I/O, syntax, or legality errors
  ExitInternal = 3,
};

/// Reads config.input_path and runs the pipeline. Diagnostics go to `err`,
/// reports and VCs to `out`. Returns the exit code per ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Same pipeline on in-memory source, labeled `file_name` in all output.
int run_on_source(std::string_view source, std::string_view file_name,
                  const RunConfig& config, std::ostream& out,
                  std::ostream& err);

}  // namespace sfc
