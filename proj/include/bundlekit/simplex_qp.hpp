#pragma once

#include "bundlekit/types.hpp"

namespace bundlekit {

struct SimplexQpResult {
  Vector theta;
  int iterations = 0;
  bool converged = false;
};

/// Primal active-set method for max c^T t - 0.5 t^T H t over the unit simplex.
///
/// H must be symmetric positive semidefinite, possibly singular. Starts from the
/// feasible point theta0 and stops when no inactive coordinate has a gradient
/// exceeding the equality multiplier by more than tol.
SimplexQpResult maximize_on_simplex(const Matrix& H, const Vector& c, const Vector& theta0,
                                    double tol, int max_iterations);

}  // namespace bundlekit
