#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "bvforge/report.hpp"

using namespace bvforge;

int main(int argc, char** argv) {
  CLI::App app{"bvforge: Koszul-Tate resolutions and BV master actions for polynomial Lagrangians"};
  std::string command, file, format = "json", out;
  std::optional<int> jet_order, degree_bound, max_kt_level, max_master_order;
  bool stable = false;
  app.add_option("command", command, "el | noether | kt | master | verify")
      ->required()
      ->check(CLI::IsMember({"el", "noether", "kt", "master", "verify"}));
  app.add_option("problem", file, "problem file")->required();
  app.add_option("--jet-order", jet_order, "maximal jet order")->check(CLI::PositiveNumber);
  app.add_option("--degree-bound", degree_bound, "homology and ansatz degree bound")->check(CLI::PositiveNumber);
  app.add_option("--max-kt-level", max_kt_level, "highest antighost level")->check(CLI::PositiveNumber);
  app.add_option("--max-master-order", max_master_order, "highest master equation order")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "json | text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out, "write the report here instead of stdout");
  app.add_flag("--stable", stable, "omit timings");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    ProblemSpec spec = parse_problem(file);
    if (jet_order) spec.bounds.max_jet_order = *jet_order;
    if (degree_bound) spec.bounds.degree_bound = *degree_bound;
    if (max_kt_level) spec.bounds.max_kt_level = *max_kt_level;
    if (max_master_order) spec.bounds.max_master_order = *max_master_order;
    if (!spec.finite_mode()) spec.ring.max_jet_order = spec.bounds.max_jet_order;

    Report report = run(spec, *parse_stage(command));
    std::string text = emit_report(report, format == "json" ? ReportFormat::Json : ReportFormat::Text, !stable);
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) {
        std::cerr << "bvforge: cannot write " << out << '\n';
        return 1;
      }
      f << text;
    }
    if (report.status == RunStatus::Inconclusive) std::cerr << "bvforge: inconclusive: " << report.message << '\n';
    return exit_code(report);
  } catch (const ProblemError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const StageError& e) {
    std::cerr << "bvforge: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "bvforge: internal error: " << e.what() << '\n';
    return 3;
  }
}
