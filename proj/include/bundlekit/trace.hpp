#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bundlekit/types.hpp"

namespace bundlekit {

enum class StepKind { serious, null };

struct IterationRecord {
  int j = 0;
  /// Serious iterations so far, j = 0 excluded, this one included.
  int k = 0;
  StepKind kind = StepKind::null;
  /// Empty unless the run records points.
  Vector x;
  Vector x_tilde;
  double t = 0.0;
  double m = 0.0;
  double phi_x = 0.0;
  double phi_x_tilde = 0.0;
  double phi_zhat = 0.0;
  /// f_j(x_j) and f(x_j).
  double model_value = 0.0;
  double f_x = 0.0;
  std::size_t bundle_size = 0;
  double subproblem_gap = 0.0;
  int subproblem_iterations = 0;
  /// Iteration index whose point is the prox center used here.
  int center_index = 0;
  /// ||x_j - x_{j-1}|| and ||x_j - x^c_{j-1}||.
  double step_norm = 0.0;
  double center_distance = 0.0;
  std::int64_t f_calls = 0;
  std::int64_t g_calls = 0;
};

/// Quantities at a serious index j_k; entry 0 describes j = 0 (z = z~ = z^ = x0).
struct SeriousRecord {
  int j = 0;
  Vector z;
  Vector z_tilde;
  Vector z_hat;
  double phi_z_tilde = 0.0;
  double phi_z_hat = 0.0;
  double m = 0.0;
  double t = 0.0;
  /// phi(z~_k) - m_{j_k}.
  double delta = 0.0;
};

struct OracleCounters {
  std::int64_t f_calls = 0;
  std::int64_t h_calls = 0;
  std::int64_t g_calls = 0;
  std::int64_t solves = 0;
};

enum class RunStatus { converged, max_iterations };

struct RunTrace {
  std::string method;
  std::vector<IterationRecord> records;
  std::vector<SeriousRecord> serious;
  OracleCounters counters;
  RunStatus status = RunStatus::max_iterations;
  double lambda = 0.0;
  double delta = 0.0;
  double mu = 0.0;
  Vector x0;
  Vector z_hat;
  double phi_z_hat = 0.0;
  std::optional<double> phi_star;
  /// First iteration whose reported point is within eps of phi*, when tracked.
  std::optional<int> first_hit;
  std::optional<double> hit_eps;

  int iterations() const { return records.empty() ? 0 : records.back().j; }
  std::size_t serious_count() const;
  std::size_t null_count() const;
  /// Serious indices including 0.
  std::vector<int> serious_indices() const;
};

}  // namespace bundlekit
