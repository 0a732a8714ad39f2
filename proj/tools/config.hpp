#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bundlekit/bounds.hpp"
#include "bundlekit/solvers.hpp"
#include "bundlekit/worst_case.hpp"
#include "json.hpp"

namespace bundlekit::cli {

/// Configuration problem; `what()` starts with "file:line:" when the location is known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SolverKind { rpb, cscs, rpb_descent };

std::string to_string(SolverKind kind);

struct InstanceConfig {
  std::string family;
  std::optional<WorstCaseParams> worst_case;
  /// Built instance; points are drawn from `seed` for the random family.
  ProblemInstance instance;
};

struct BenchConfig {
  std::vector<double> lambdas;
  std::optional<RangeKind> range;
  int points = 5;
  double C = 1.0;
  double C_prime = 1.0;
  double eps_bar = 0.0;
  std::vector<SolverKind> solvers;
};

struct LowerBoundConfig {
  WorstCaseParams params;
  std::vector<double> lambdas;
};

struct BoundsConfig {
  double lambda = 1.0;
  double M_f = 1.0;
  double M_h = 0.0;
  double mu = 0.0;
  double d0 = 1.0;
  double eps_bar = 0.1;
  std::optional<double> R0;
  std::optional<double> rho_hat;
  std::optional<double> eps_hat;
  std::optional<double> D_S;
  double C = 1.0;
  double C_prime = 1.0;
};

struct RunConfig {
  std::string source;
  std::optional<InstanceConfig> instance;
  SolverKind solver = SolverKind::rpb;
  double lambda = 1.0;
  double delta = 0.05;
  BundlePolicy policy = BundlePolicy::lean();
  SeriousRule descent = SeriousRule::descent(0.5, 0.0);
  Termination termination;
  int max_iterations = 10000;
  std::uint64_t seed = 0;
  bool plot = false;
  std::optional<std::string> out;
  std::optional<BenchConfig> bench;
  std::optional<LowerBoundConfig> lowerbound;
  std::optional<BoundsConfig> bounds;
  /// The document as read, echoed into summaries.
  nlohmann::json raw;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iterations;
};

/// Parses and validates; unknown keys are rejected. Throws ConfigError.
RunConfig parse_config(const std::string& text, const std::string& source, const Overrides& overrides);
RunConfig load_config(const std::string& path, const Overrides& overrides);

RpbConfig make_rpb_config(const RunConfig& cfg, double lambda);
CscsConfig make_cscs_config(const RunConfig& cfg, double lambda);

}  // namespace bundlekit::cli
