#pragma once

#include <optional>

#include "bundlekit/bundle.hpp"
#include "bundlekit/certificates.hpp"
#include "bundlekit/problem.hpp"
#include "bundlekit/subproblem.hpp"
#include "bundlekit/trace.hpp"

namespace bundlekit {

enum class TerminationKind { eps_solution, triple, pair, max_iterations };

struct Termination {
  TerminationKind kind = TerminationKind::max_iterations;
  /// eps_solution and pair.
  double eps_bar = 0.0;
  /// triple.
  double rho_hat = 0.0;
  double eps_hat = 0.0;
  /// pair.
  std::optional<BoundingSet> set;

  static Termination eps_solution(double eps_bar);
  static Termination triple(double rho_hat, double eps_hat);
  static Termination pair(double eps_bar, BoundingSet set);
  static Termination iterations();
};

struct SeriousRule {
  enum class Kind { rpb_tj, descent };
  Kind kind = Kind::rpb_tj;
  double gamma = 0.5;
  double alpha = 0.0;

  static SeriousRule rpb() { return {}; }
  static SeriousRule descent(double gamma, double alpha) { return {Kind::descent, gamma, alpha}; }
};

struct RpbConfig {
  double lambda = 1.0;
  double delta = 0.05;
  BundlePolicy policy = BundlePolicy::lean();
  Termination termination;
  SeriousRule serious_rule;
  int max_iterations = 100000;
  Tolerances tol;
  /// Keep x_j and x~_j in every record; serious history always keeps points.
  bool record_points = true;
  /// Record the first iteration with phi(z^) - phi* <= this (needs a known optimum).
  std::optional<double> track_eps;
};

struct SeriousTestInput {
  double t = 0.0;
  double delta = 0.0;
  double lambda = 1.0;
  double phi_center = 0.0;
  double phi_x = 0.0;
  double f_x = 0.0;
  /// f_j(x_j).
  double model_x = 0.0;
  double center_distance_sq = 0.0;
};

bool serious_test(const SeriousRule& rule, const SeriousTestInput& in);

/// Throws std::invalid_argument on bad configuration; SubproblemError propagates.
RunTrace rpb_run(const ProblemInstance& instance, const RpbConfig& config);

struct CscsConfig {
  double lambda = 0.1;
  Termination termination;
  int max_iterations = 100000;
  bool record_points = true;
  std::optional<double> track_eps;
};

RunTrace cscs_run(const ProblemInstance& instance, const CscsConfig& config);

/// lambda <= delta / (2 M M_f) with M = M_f + M_h; false (with a warning) when M is infinite.
bool reduction_check(const ProblemInstance& instance, double lambda, double delta);

}  // namespace bundlekit
