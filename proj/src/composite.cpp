#include "bundlekit/composite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bundlekit {

std::string_view to_string(CompositeKind kind) {
  switch (kind) {
    case CompositeKind::zero: return "zero";
    case CompositeKind::quadratic: return "quadratic";
    case CompositeKind::box: return "box";
    case CompositeKind::ball: return "ball";
    case CompositeKind::scaled_l1: return "l1";
  }
  return "unknown";
}

CompositeKind composite_kind_from_string(std::string_view name) {
  if (name == "zero") return CompositeKind::zero;
  if (name == "quadratic") return CompositeKind::quadratic;
  if (name == "box") return CompositeKind::box;
  if (name == "ball") return CompositeKind::ball;
  if (name == "l1" || name == "scaled_l1") return CompositeKind::scaled_l1;
  throw std::invalid_argument("unknown composite kind '" + std::string(name) + "'");
}

bool ProxJacobian::is_scalar() const {
  if (rank_one_weight != 0.0 || diagonal.size() == 0) return false;
  return (diagonal.array() == diagonal(0)).all();
}

Vector ProxJacobian::apply(const Vector& v) const {
  Vector out = diagonal.cwiseProduct(v);
  if (rank_one_weight != 0.0) out -= rank_one_weight * rank_one.dot(v) * rank_one;
  return out;
}

Matrix ProxJacobian::congruence(const Matrix& G) const {
  Matrix JG = diagonal.asDiagonal() * G;
  Matrix out = G.transpose() * JG;
  if (rank_one_weight != 0.0) {
    const Vector Gv = G.transpose() * rank_one;
    out.noalias() -= rank_one_weight * Gv * Gv.transpose();
  }
  return out;
}

namespace {

void check_dimension(const Vector& x, Index n) {
  if (x.size() != n) {
    throw std::invalid_argument("composite term: dimension mismatch (expected " +
                                std::to_string(n) + ", got " + std::to_string(x.size()) + ")");
  }
}

ProxJacobian scalar_jacobian(Index n, double s) {
  return ProxJacobian{Vector::Constant(n, s), Vector(), 0.0};
}

class ZeroTerm final : public CompositeTerm {
 public:
  explicit ZeroTerm(Index n) : n_(n) {}
  CompositeKind kind() const override { return CompositeKind::zero; }
  Index dimension() const override { return n_; }
  double value(const Vector& x) const override {
    check_dimension(x, n_);
    return 0.0;
  }
  bool in_domain(const Vector&) const override { return true; }
  Vector prox(double, const Vector& z) const override { return z; }
  ProxJacobian prox_jacobian(double, const Vector&) const override {
    return scalar_jacobian(n_, 1.0);
  }
  double distance_to_subdifferential(const Vector&, const Vector& s) const override {
    return s.norm();
  }
  double modulus() const override { return 0.0; }
  double lipschitz() const override { return 0.0; }

 private:
  Index n_;
};

class QuadraticTerm final : public CompositeTerm {
 public:
  QuadraticTerm(double mu, Vector center) : mu_(mu), center_(std::move(center)) {}
  CompositeKind kind() const override { return CompositeKind::quadratic; }
  Index dimension() const override { return center_.size(); }
  double value(const Vector& x) const override {
    check_dimension(x, center_.size());
    return 0.5 * mu_ * (x - center_).squaredNorm();
  }
  bool in_domain(const Vector&) const override { return true; }
  Vector prox(double alpha, const Vector& z) const override {
    return (z + alpha * mu_ * center_) / (1.0 + alpha * mu_);
  }
  ProxJacobian prox_jacobian(double alpha, const Vector&) const override {
    return scalar_jacobian(center_.size(), 1.0 / (1.0 + alpha * mu_));
  }
  double distance_to_subdifferential(const Vector& x, const Vector& s) const override {
    return (s - mu_ * (x - center_)).norm();
  }
  double modulus() const override { return mu_; }
  // A zero-curvature quadratic is the zero function.
  double lipschitz() const override { return mu_ == 0.0 ? 0.0 : kInfinity; }

 private:
  double mu_;
  Vector center_;
};

class BoxIndicator final : public CompositeTerm {
 public:
  BoxIndicator(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {}
  CompositeKind kind() const override { return CompositeKind::box; }
  Index dimension() const override { return lower_.size(); }
  double value(const Vector& x) const override { return in_domain(x) ? 0.0 : kInfinity; }
  bool in_domain(const Vector& x) const override {
    check_dimension(x, lower_.size());
    return (x.array() >= lower_.array()).all() && (x.array() <= upper_.array()).all();
  }
  Vector prox(double, const Vector& z) const override {
    check_dimension(z, lower_.size());
    return z.cwiseMax(lower_).cwiseMin(upper_);
  }
  ProxJacobian prox_jacobian(double, const Vector& z) const override {
    Vector d(z.size());
    for (Index i = 0; i < z.size(); ++i) d(i) = (z(i) > lower_(i) && z(i) < upper_(i)) ? 1.0 : 0.0;
    return ProxJacobian{std::move(d), Vector(), 0.0};
  }
  double distance_to_subdifferential(const Vector& x, const Vector& s) const override {
    if (!in_domain(x)) return kInfinity;
    double sq = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
      const bool at_lower = x(i) == lower_(i);
      const bool at_upper = x(i) == upper_(i);
      double r = 0.0;
      if (at_lower && at_upper) {
        r = 0.0;
      } else if (at_lower) {
        r = std::max(s(i), 0.0);
      } else if (at_upper) {
        r = std::max(-s(i), 0.0);
      } else {
        r = s(i);
      }
      sq += r * r;
    }
    return std::sqrt(sq);
  }
  double modulus() const override { return 0.0; }
  double lipschitz() const override { return 0.0; }

 private:
  Vector lower_;
  Vector upper_;
};

class BallIndicator final : public CompositeTerm {
 public:
  BallIndicator(Vector center, double radius) : center_(std::move(center)), radius_(radius) {}
  CompositeKind kind() const override { return CompositeKind::ball; }
  Index dimension() const override { return center_.size(); }
  double value(const Vector& x) const override { return in_domain(x) ? 0.0 : kInfinity; }
  bool in_domain(const Vector& x) const override {
    check_dimension(x, center_.size());
    // Projections land on the sphere only up to rounding.
    return (x - center_).norm() <= radius_ * (1.0 + 1e-12);
  }
  Vector prox(double, const Vector& z) const override {
    check_dimension(z, center_.size());
    const double rho = (z - center_).norm();
    if (rho <= radius_) return z;
    return center_ + (radius_ / rho) * (z - center_);
  }
  ProxJacobian prox_jacobian(double, const Vector& z) const override {
    const Vector d = z - center_;
    const double rho = d.norm();
    if (rho <= radius_) return scalar_jacobian(z.size(), 1.0);
    const double s = radius_ / rho;
    return ProxJacobian{Vector::Constant(z.size(), s), d / rho, s};
  }
  double distance_to_subdifferential(const Vector& x, const Vector& s) const override {
    if (!in_domain(x)) return kInfinity;
    const Vector d = x - center_;
    const double rho = d.norm();
    if (rho < radius_ * (1.0 - 1e-12)) return s.norm();
    const Vector normal = d / rho;
    const double t = std::max(0.0, s.dot(normal));
    return (s - t * normal).norm();
  }
  double modulus() const override { return 0.0; }
  double lipschitz() const override { return 0.0; }

 private:
  Vector center_;
  double radius_;
};

class ScaledL1 final : public CompositeTerm {
 public:
  ScaledL1(double omega, Index n) : omega_(omega), n_(n) {}
  CompositeKind kind() const override { return CompositeKind::scaled_l1; }
  Index dimension() const override { return n_; }
  double value(const Vector& x) const override {
    check_dimension(x, n_);
    return omega_ * x.lpNorm<1>();
  }
  bool in_domain(const Vector&) const override { return true; }
  Vector prox(double alpha, const Vector& z) const override {
    const double t = alpha * omega_;
    Vector out(z.size());
    for (Index i = 0; i < z.size(); ++i) {
      const double a = std::abs(z(i)) - t;
      out(i) = a > 0.0 ? std::copysign(a, z(i)) : 0.0;
    }
    return out;
  }
  ProxJacobian prox_jacobian(double alpha, const Vector& z) const override {
    const double t = alpha * omega_;
    Vector d(z.size());
    for (Index i = 0; i < z.size(); ++i) d(i) = std::abs(z(i)) > t ? 1.0 : 0.0;
    return ProxJacobian{std::move(d), Vector(), 0.0};
  }
  double distance_to_subdifferential(const Vector& x, const Vector& s) const override {
    double sq = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
      const double r = x(i) != 0.0 ? s(i) - std::copysign(omega_, x(i))
                                   : std::max(std::abs(s(i)) - omega_, 0.0);
      sq += r * r;
    }
    return std::sqrt(sq);
  }
  double modulus() const override { return 0.0; }
  double lipschitz() const override { return omega_ * std::sqrt(static_cast<double>(n_)); }

 private:
  double omega_;
  Index n_;
};

}  // namespace

CompositePtr make_zero_term(Index n) {
  if (n < 1) throw std::invalid_argument("zero term: dimension must be >= 1");
  return std::make_shared<ZeroTerm>(n);
}

CompositePtr make_quadratic_term(double mu, Vector center) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::invalid_argument("quadratic term: mu must be >= 0");
  if (center.size() < 1) throw std::invalid_argument("quadratic term: empty center");
  return std::make_shared<QuadraticTerm>(mu, std::move(center));
}

CompositePtr make_box_indicator(Vector lower, Vector upper) {
  if (lower.size() < 1 || lower.size() != upper.size()) {
    throw std::invalid_argument("box indicator: bounds must be nonempty and of equal size");
  }
  if (!(lower.array() <= upper.array()).all()) {
    throw std::invalid_argument("box indicator: lower bound exceeds upper bound");
  }
  return std::make_shared<BoxIndicator>(std::move(lower), std::move(upper));
}

CompositePtr make_ball_indicator(Vector center, double radius) {
  if (center.size() < 1) throw std::invalid_argument("ball indicator: empty center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("ball indicator: radius must be > 0");
  }
  return std::make_shared<BallIndicator>(std::move(center), radius);
}

CompositePtr make_scaled_l1(double omega, Index n) {
  if (!(omega >= 0.0) || !std::isfinite(omega)) throw std::invalid_argument("scaled l1: omega must be >= 0");
  if (n < 1) throw std::invalid_argument("scaled l1: dimension must be >= 1");
  return std::make_shared<ScaledL1>(omega, n);
}

CompositePtr make_composite(const CompositeParams& p) {
  switch (p.kind) {
    case CompositeKind::zero: return make_zero_term(p.dimension);
    case CompositeKind::quadratic:
      return make_quadratic_term(p.mu, p.center.size() ? p.center : Vector::Zero(p.dimension));
    case CompositeKind::box: return make_box_indicator(p.lower, p.upper);
    case CompositeKind::ball:
      return make_ball_indicator(p.center.size() ? p.center : Vector::Zero(p.dimension), p.radius);
    case CompositeKind::scaled_l1: return make_scaled_l1(p.omega, p.dimension);
  }
  throw std::invalid_argument("unknown composite kind");
}

}  // namespace bundlekit
