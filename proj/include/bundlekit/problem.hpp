#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bundlekit/composite.hpp"
#include "bundlekit/types.hpp"

namespace bundlekit {

/// Value/subgradient oracle for the nonsmooth part f.
///
/// Implementations must be deterministic: the same x always yields the same
/// subgradient selection.
class SubgradientOracle {
 public:
  virtual ~SubgradientOracle() = default;
  virtual Index dimension() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector subgradient(const Vector& x) const = 0;
  /// M_f, a bound on ||f'(x)|| over dom h.
  virtual double lipschitz_bound() const = 0;
};

using OraclePtr = std::shared_ptr<const SubgradientOracle>;

struct KnownOptimum {
  Vector x;
  double phi_star = 0.0;
};

struct Tolerances {
  double subproblem_gap = 1e-10;
  double active_set_rel = 1e-9;
  double certificate_slack = 1e-9;

  void validate() const;
};

struct ProblemInstance {
  OraclePtr f;
  CompositePtr h;
  Vector x0;
  std::optional<KnownOptimum> optimum;
  /// Known upper bound R0 on the distance from x0 to the solution set.
  std::optional<double> d0_bound;
  std::string name;

  Index dimension() const { return x0.size(); }
  double M_f() const { return f->lipschitz_bound(); }
  double M_h() const { return h->lipschitz(); }
  double mu() const { return h->modulus(); }
  /// ||x0 - x*|| when the optimum is known, otherwise the stored bound.
  std::optional<double> d0() const;
};

/// Checks dimensions, x0 in dom h and, when given, phi(x*) = phi* to 1e-10 relative.
/// Throws std::invalid_argument.
ProblemInstance make_instance(OraclePtr f, CompositePtr h, Vector x0,
                              std::optional<KnownOptimum> optimum = std::nullopt,
                              std::optional<double> d0_bound = std::nullopt,
                              std::string name = {});

/// f(x) + h(x), +inf outside dom h. Throws on dimension mismatch or non-finite x.
double evaluate_phi(const ProblemInstance& instance, const Vector& x);

/// Relative tolerance scale 1 + |phi(x0)|.
double problem_scale(const ProblemInstance& instance);

struct ValidationReport {
  bool passed = true;
  std::size_t checks = 0;
  std::optional<std::string> first_violation;
};

ValidationReport validate_instance(const ProblemInstance& instance, std::size_t samples,
                                   std::uint64_t seed);

/// Random points of dom h obtained by pushing Gaussian points around x0 through prox.
std::vector<Vector> sample_domain_points(const ProblemInstance& instance, std::size_t count,
                                         std::mt19937_64& rng, double spread);

}  // namespace bundlekit
