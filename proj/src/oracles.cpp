#include "bundlekit/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace bundlekit {

MaxAffineOracle::MaxAffineOracle(MaxAffineSpec spec) : spec_(std::move(spec)) {
  lipschitz_ = spec_.slopes.rowwise().norm().maxCoeff();
}

Index MaxAffineOracle::argmax(const Vector& x) const {
  if (x.size() != dimension()) throw std::invalid_argument("max-affine: dimension mismatch");
  const Vector values = spec_.slopes * x + spec_.intercepts;
  Index best = 0;
  for (Index i = 1; i < values.size(); ++i) {
    if (values(i) > values(best)) best = i;
  }
  return best;
}

double MaxAffineOracle::value(const Vector& x) const {
  if (x.size() != dimension()) throw std::invalid_argument("max-affine: dimension mismatch");
  return (spec_.slopes * x + spec_.intercepts).maxCoeff();
}

Vector MaxAffineOracle::subgradient(const Vector& x) const {
  return spec_.slopes.row(argmax(x)).transpose();
}

std::shared_ptr<const MaxAffineOracle> make_max_affine(MaxAffineSpec spec) {
  if (spec.slopes.rows() < 1 || spec.slopes.cols() < 1) {
    throw std::invalid_argument("max-affine: empty spec");
  }
  if (spec.intercepts.size() != spec.slopes.rows()) {
    throw std::invalid_argument("max-affine: intercept count does not match slope rows");
  }
  if (!spec.slopes.allFinite() || !spec.intercepts.allFinite()) {
    throw std::invalid_argument("max-affine: non-finite data");
  }
  return std::make_shared<MaxAffineOracle>(std::move(spec));
}

double p_R_eval(double R, const Vector& x) {
  const double r = x.norm();
  if (r <= R) return 0.5 * r * r;
  return R * (r - 0.5 * R);
}

Vector p_R_grad(double R, const Vector& x) {
  const double r = x.norm();
  if (r <= R) return x;
  return (R / r) * x;
}

WorstCaseOracle::WorstCaseOracle(Index n, Index k0, double gamma, double tau, double R)
    : n_(n), k0_(k0), gamma_(gamma), tau_(tau), R_(R) {
  if (n < 1 || k0 < 1 || k0 > n) throw std::invalid_argument("worst-case oracle: need 1 <= k0 <= n");
  if (gamma < 0.0 || tau < 0.0 || !(R > 0.0)) {
    throw std::invalid_argument("worst-case oracle: need gamma, tau >= 0 and R > 0");
  }
}

double WorstCaseOracle::value(const Vector& x) const {
  if (x.size() != n_) throw std::invalid_argument("worst-case oracle: dimension mismatch");
  double out = 0.0;
  if (gamma_ != 0.0) out += gamma_ * x.head(k0_).maxCoeff();
  if (tau_ != 0.0) out += tau_ * p_R_eval(R_, x);
  return out;
}

Vector WorstCaseOracle::subgradient(const Vector& x) const {
  if (x.size() != n_) throw std::invalid_argument("worst-case oracle: dimension mismatch");
  Vector g = Vector::Zero(n_);
  if (tau_ != 0.0) g = tau_ * p_R_grad(R_, x);
  if (gamma_ != 0.0) {
    Index best = 0;
    for (Index i = 1; i < k0_; ++i) {
      if (x(i) > x(best)) best = i;
    }
    g(best) += gamma_;
  }
  return g;
}

}  // namespace bundlekit
