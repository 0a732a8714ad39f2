#pragma once

#include <optional>
#include <stdexcept>

#include "bundlekit/bundle.hpp"
#include "bundlekit/composite.hpp"
#include "bundlekit/problem.hpp"

namespace bundlekit {

/// Solution of min_u f_j(u) + h(u) + ||u - x_c||^2 / (2 lambda).
struct SubproblemSolution {
  Vector x;
  /// Primal value at x.
  double m = 0.0;
  /// Simplex weights, aligned with bundle.cuts().
  Vector weights;
  /// Primal minus dual value; certified <= tol (1 + |m|).
  double gap = 0.0;
  double dual = 0.0;
  /// f_j(x).
  double model_value = 0.0;
  int iterations = 0;
};

class SubproblemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SubproblemOptions {
  int max_iterations = 100000;
};

/// Dual ascent over the simplex with u(theta) = prox_{lambda h}(x_c - lambda G theta).
///
/// `warm_start` (aligned with the bundle) seeds theta; otherwise the vertex of the
/// cut that is largest at prox(x_c) is used. Throws SubproblemError when the
/// gap test is not met within the iteration cap.
SubproblemSolution solve_prox_subproblem(const Bundle& bundle, const CompositeTerm& h,
                                         const Vector& center, double lambda,
                                         const Tolerances& tol,
                                         const std::optional<Vector>& warm_start = std::nullopt,
                                         const SubproblemOptions& options = {});

/// max of the complementarity violation sum_i theta_i (f_j(x) - l_i(x)) and
/// dist((x_c - x)/lambda - G theta, dh(x)).
double verify_kkt(const SubproblemSolution& solution, const Bundle& bundle, const CompositeTerm& h,
                  const Vector& center, double lambda);

}  // namespace bundlekit
