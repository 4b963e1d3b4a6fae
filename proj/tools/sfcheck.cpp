#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sfc/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "sfcheck: static checker and verification-condition generator for "
      "annotated concurrent heap programs"};

  sfc::RunConfig config;
  std::string format = "text";
  std::string output_path;

  app.add_option("file", config.input_path, "annotated program to process")
      ->required();
  app.add_flag("--check", config.check,
               "run the variable/concurrency/initializer checks");
  app.add_flag("--emit-vcs", config.emit_vcs,
               "emit verification conditions and entailment obligations");
  app.add_flag("--dump-analysis", config.dump_analysis,
               "print per-procedure vars/mod/req/par sets");
  app.add_flag("--classify", config.classify,
               "print the five-class variable report");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  app.add_option("-o,--output", output_path,
                 "write reports/VCs to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : sfc::ExitFrontend;
  }

  config.format =
      format == "structured" ? sfc::Format::Structured : sfc::Format::Text;

  if (!output_path.empty()) {
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
      std::cerr << output_path << ":1:1: error [IO_ERROR] cannot open output file\n";
      return sfc::ExitFrontend;
    }
    return sfc::run(config, out, std::cerr);
  }
  return sfc::run(config, std::cout, std::cerr);
}
