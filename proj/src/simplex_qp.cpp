#include "bundlekit/simplex_qp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/LU>
#include <Eigen/QR>

namespace bundlekit {

namespace {

struct StepDirection {
  Vector p;       // on the working set
  double nu = 0;  // multiplier of the sum constraint
  bool unbounded = false;
};

// Newton step of the equality-constrained problem on the working set W, or an
// ascent ray in ker(H_WW) ∩ {1^T p = 0} when the KKT system is inconsistent.
StepDirection working_set_step(const Matrix& H, const Vector& g, const std::vector<Index>& W) {
  const Index k = static_cast<Index>(W.size());
  Matrix K = Matrix::Zero(k + 1, k + 1);
  Vector rhs = Vector::Zero(k + 1);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) K(a, b) = H(W[a], W[b]);
    K(a, k) = 1.0;
    K(k, a) = 1.0;
    rhs(a) = g(W[a]);
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(K);
  cod.setThreshold(1e-13);
  const Vector sol = cod.solve(rhs);
  const double scale = 1.0 + rhs.lpNorm<Eigen::Infinity>() +
                       K.lpNorm<Eigen::Infinity>() * sol.lpNorm<Eigen::Infinity>();
  const double residual = (K * sol - rhs).lpNorm<Eigen::Infinity>();

  StepDirection out;
  out.p = sol.head(k);
  out.nu = sol(k);
  if (residual <= 1e-10 * scale) return out;

  Matrix A(k + 1, k);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) A(a, b) = H(W[a], W[b]);
  }
  A.row(k).setOnes();
  Eigen::FullPivLU<Matrix> lu(A);
  lu.setThreshold(1e-11);
  const Matrix N = lu.kernel();
  if (N.cols() == 0 || N.norm() == 0.0) return out;
  Eigen::HouseholderQR<Matrix> qr(N);
  const Matrix Q = qr.householderQ() * Matrix::Identity(k, N.cols());
  Vector gW(k);
  for (Index a = 0; a < k; ++a) gW(a) = g(W[a]);
  const Vector d = Q * (Q.transpose() * gW);
  if (gW.dot(d) <= 1e-14 * (1.0 + gW.squaredNorm())) return out;
  out.p = d;
  out.unbounded = true;
  return out;
}

}  // namespace

SimplexQpResult maximize_on_simplex(const Matrix& H, const Vector& c, const Vector& theta0,
                                    double tol, int max_iterations) {
  const Index m = c.size();
  SimplexQpResult result;
  result.theta = theta0.cwiseMax(0.0);
  const double total = result.theta.sum();
  if (!(total > 0.0)) {
    result.theta.setZero();
    Index best = 0;
    c.maxCoeff(&best);
    result.theta(best) = 1.0;
  } else {
    result.theta /= total;
  }
  Vector& theta = result.theta;

  std::vector<Index> W;
  for (Index i = 0; i < m; ++i) {
    if (theta(i) > 0.0) W.push_back(i);
  }

  bool stationary = false;
  for (int it = 0; it < max_iterations; ++it) {
    result.iterations = it + 1;
    const Vector g = c - H * theta;
    const StepDirection step = working_set_step(H, g, W);

    const bool negligible = !step.unbounded &&
                            step.p.lpNorm<Eigen::Infinity>() <= 1e-13;
    if (stationary || negligible) {
      double nu = step.nu;
      if (step.unbounded) {
        nu = 0.0;
        for (Index i : W) nu += g(i);
        nu /= static_cast<double>(W.size());
      }
      Index entering = -1;
      double best = nu + tol;
      for (Index i = 0; i < m; ++i) {
        if (theta(i) > 0.0 || std::find(W.begin(), W.end(), i) != W.end()) continue;
        if (g(i) > best) {
          best = g(i);
          entering = i;
        }
      }
      if (entering < 0) {
        result.converged = true;
        return result;
      }
      W.push_back(entering);
      std::sort(W.begin(), W.end());
      stationary = false;
      continue;
    }

    // Ratio test against theta >= 0 on the working set.
    double alpha = step.unbounded ? kInfinity : 1.0;
    Index blocking = -1;
    for (std::size_t a = 0; a < W.size(); ++a) {
      const double pa = step.p(static_cast<Index>(a));
      if (pa < 0.0) {
        const double limit = theta(W[a]) / -pa;
        if (limit < alpha) {
          alpha = limit;
          blocking = static_cast<Index>(a);
        }
      }
    }
    if (!std::isfinite(alpha)) {
      // A ray with no decreasing coordinate cannot satisfy 1^T p = 0; treat as converged.
      result.converged = true;
      return result;
    }
    for (std::size_t a = 0; a < W.size(); ++a) theta(W[a]) += alpha * step.p(static_cast<Index>(a));
    if (blocking >= 0) {
      theta(W[blocking]) = 0.0;
      W.erase(W.begin() + blocking);
      stationary = false;
    } else {
      stationary = true;
    }
    for (std::size_t a = 0; a < W.size();) {
      if (theta(W[a]) <= 0.0) {
        theta(W[a]) = 0.0;
        W.erase(W.begin() + static_cast<std::ptrdiff_t>(a));
      } else {
        ++a;
      }
    }
    theta /= theta.sum();
  }
  return result;
}

}  // namespace bundlekit
