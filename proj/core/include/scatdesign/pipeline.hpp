#pragma once

// End-to-end construction: target f -> truncation f_L -> h on the ball ->
// regularized potential q_delta -> forward solve with q_delta -> residual
// ||A_{q_delta} - f|| checked against epsilon.

#include <filesystem>
#include <optional>
#include <string>

#include "scatdesign/config.hpp"
#include "scatdesign/forward.hpp"
#include "scatdesign/reconstruction.hpp"
#include "scatdesign/sht.hpp"

namespace scatdesign {

enum class ExitCode : int { pass = 0, residual_fail = 2, config_error = 3, solver_failure = 4 };

struct DeltaSweepRow {
  double delta = 0.0;
  double fraction = 0.0;
  double h_change = 0.0;  // ||h_delta - h||_{L^2(D)}
  double residual = 0.0;  // ||A_{q_delta} - f||
  int iterations = 0;
  bool converged = false;
};

struct ReconstructionReport {
  // Truncation.
  int L = 0;
  double target_norm = 0.0;
  double tail_norm = 0.0;
  bool tail_ok = false;  // tail < epsilon / 2
  std::optional<double> tail_norm_verified;
  // Synthesis.
  double synthesis_residual = 0.0;  // ||A_h - f_L||
  double h_norm = 0.0;
  double h_max = 0.0;
  // Regularization.
  double delta = 0.0;
  bool delta_auto = false;
  double zero_set_fraction = 0.0;
  std::size_t excised_nodes = 0;
  double min_abs_u = 0.0;
  double min_abs_u_delta = 0.0;
  double tube_integral = 0.0;
  double u_delta_lower_bound = 0.0;
  std::size_t reclassified = 0;
  double h_change = 0.0;
  double max_im_q = 0.0;
  bool im_q_nonpositive = true;
  double closure_residual = 0.0;  // discrete LS residual of (q_delta, u_delta) on kept nodes
  // Forward verification.
  SolveStats solver;
  double final_residual = 0.0;
  double epsilon = 0.0;
  bool pass = false;
  std::string failed_stage;
  std::string message;
  std::vector<DeltaSweepRow> sweep;

  [[nodiscard]] ExitCode exit_code() const;
};

/// Fields and samples kept alongside the report for export.
struct PipelineArtifacts {
  std::shared_ptr<const BallGrid> grid;
  std::optional<sht::AngularCoefficients> target_coefficients;
  std::optional<SphereSamples> target;
  std::optional<SphereSamples> amplitude;
  std::optional<BallField> h;
  std::optional<BallField> u;
  std::optional<BallField> q;
  std::optional<BallField> u_solver;
  std::optional<reconstruction::ZeroSetReport> zero_set;
};

struct PipelineResult {
  ReconstructionReport report;
  PipelineArtifacts artifacts;
  ScatteringConfig config;
};

/// Target samples on the rule plus exact coefficients when the target is band-limited.
struct TargetFunction {
  SphereSamples samples;
  std::optional<sht::AngularCoefficients> coefficients;
};
TargetFunction make_target(const ScatteringConfig& cfg, std::shared_ptr<const SphereRule> rule);

PipelineResult run_pipeline(const ScatteringConfig& cfg);

/// Writes summary.txt, amplitude.txt, target_coefficients.txt, zero_set.txt,
/// delta_sweep.txt (when swept) and h/u/q field tables (when export_fields).
void export_report(const PipelineResult& result, const std::filesystem::path& dir);

/// Structured "key = value" summary.
void write_summary(std::ostream& out, const PipelineResult& result);

}  // namespace scatdesign
