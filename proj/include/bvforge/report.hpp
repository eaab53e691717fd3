#pragma once

#include <json.hpp>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "bvforge/bv_algebra.hpp"
#include "bvforge/problem.hpp"

namespace bvforge {

enum class Stage { El, Noether, KT, Master, Verify };

const char* stage_name(Stage s);
std::optional<Stage> parse_stage(const std::string& name);

enum class RunStatus { Ok, Inconclusive };

class StageError : public std::runtime_error {
 public:
  StageError(Stage stage, const std::string& msg)
      : std::runtime_error(std::string(stage_name(stage)) + ": " + msg), stage(stage) {}
  Stage stage;
};

struct Report {
  ProblemSpec problem;
  nlohmann::ordered_json stages;  // el, noether, kt, master, verify; null until run
  nlohmann::ordered_json certificates = nlohmann::ordered_json::array();
  std::vector<std::pair<std::string, double>> timings;  // milliseconds
  RunStatus status = RunStatus::Ok;
  std::string message;

  std::shared_ptr<const LocalAction> action;
  std::shared_ptr<const KTData> kt;
  std::shared_ptr<const BVUniverse> bv;
  std::shared_ptr<const MasterAction> master;

  bool has(Stage s) const { return !stages[stage_name(s)].is_null(); }
};

/// A report with every stage null.
Report empty_report(const ProblemSpec& spec);

/// Runs one stage on top of the earlier ones already in the report.
/// Throws StageError("stage dependency unmet") if the previous stage is missing.
void run_stage(Report& r, Stage s);

/// Runs every stage up to and including `last`. Stages that exhaust their
/// bounds mark the report inconclusive and end the pipeline.
Report run(const ProblemSpec& spec, Stage last);

enum class ReportFormat { Json, Text };

std::string emit_report(const Report& r, ReportFormat format, bool include_timings = true);

int exit_code(const Report& r);

}  // namespace bvforge
