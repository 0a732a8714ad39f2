#pragma once

#include <memory>

#include "bundlekit/problem.hpp"

namespace bundlekit {

/// f(x) = max_i <a_i, x> + b_i with slopes a_i stored as rows.
struct MaxAffineSpec {
  Matrix slopes;
  Vector intercepts;
};

class MaxAffineOracle final : public SubgradientOracle {
 public:
  explicit MaxAffineOracle(MaxAffineSpec spec);

  Index dimension() const override { return spec_.slopes.cols(); }
  double value(const Vector& x) const override;
  /// Slope of the smallest maximizing index.
  Vector subgradient(const Vector& x) const override;
  double lipschitz_bound() const override { return lipschitz_; }

  const MaxAffineSpec& spec() const { return spec_; }
  Index argmax(const Vector& x) const;

 private:
  MaxAffineSpec spec_;
  double lipschitz_;
};

/// Throws std::invalid_argument on an empty or inconsistent spec.
std::shared_ptr<const MaxAffineOracle> make_max_affine(MaxAffineSpec spec);

/// Huberized norm: 0.5 ||x||^2 inside the radius-R ball, R (||x|| - R/2) outside.
double p_R_eval(double R, const Vector& x);
Vector p_R_grad(double R, const Vector& x);

/// gamma * max_{i < k0} x_i + tau * p_R(x).
class WorstCaseOracle final : public SubgradientOracle {
 public:
  WorstCaseOracle(Index n, Index k0, double gamma, double tau, double R);

  Index dimension() const override { return n_; }
  double value(const Vector& x) const override;
  Vector subgradient(const Vector& x) const override;
  /// gamma + tau R.
  double lipschitz_bound() const override { return gamma_ + tau_ * R_; }

 private:
  Index n_;
  Index k0_;
  double gamma_;
  double tau_;
  double R_;
};

}  // namespace bundlekit
