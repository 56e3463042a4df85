#pragma once

#include <string>
#include <vector>

namespace alns {

/// One continuation stage (the Stokes guess is recorded with re = 0).
struct StageReport {
  double re = 0.0;
  double gamma = 0.0;
  int newton_steps = 0;
  std::vector<int> outer_per_step;        // Krylov iterations per Newton step
  std::vector<double> newton_residuals;   // ||F|| after each step (front: initial)
  bool converged = false;
  double wall_seconds = 0.0;              // reported separately, never in report.csv

  int total_outer() const;
  double avg_outer() const;  // total outer / Newton steps
};

struct MmsRow {
  double h = 0.0;
  double error_v = 0.0;
  double error_p = 0.0;
  double gamma = 0.0;
  double re = 0.0;
};

struct SolveReport {
  std::string benchmark;
  std::string element;
  int refinements = 0;
  int threads = 1;
  std::vector<StageReport> stages;
  std::vector<MmsRow> mms_rows;
  bool complete = true;  // false if a stage failed

  std::string to_csv() const;  // deterministic; excludes wall-clock columns
  static SolveReport from_csv(const std::string& text);
  std::string timings_csv() const;
};

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

std::string mms_csv(const std::vector<MmsRow>& rows);

}  // namespace alns
