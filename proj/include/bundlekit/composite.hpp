#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "bundlekit/types.hpp"

namespace bundlekit {

enum class CompositeKind { zero, quadratic, box, ball, scaled_l1 };

std::string_view to_string(CompositeKind kind);
CompositeKind composite_kind_from_string(std::string_view name);

/// Local linearization of a prox map, J = diag(diagonal) - rank_one_weight * v v^T.
///
/// Every kind shipped here has a prox that is piecewise smooth with a
/// symmetric positive semidefinite Jacobian of this shape (the ball
/// projection is the only one needing the rank-one correction).
struct ProxJacobian {
  Vector diagonal;
  Vector rank_one;
  double rank_one_weight = 0.0;

  bool is_scalar() const;
  Vector apply(const Vector& v) const;
  /// G^T J G for a column-per-cut matrix G.
  Matrix congruence(const Matrix& G) const;
};

/// Prox-friendly convex term h with an explicit domain predicate.
class CompositeTerm {
 public:
  virtual ~CompositeTerm() = default;

  virtual CompositeKind kind() const = 0;
  virtual Index dimension() const = 0;

  /// h(x), +inf outside dom h.
  virtual double value(const Vector& x) const = 0;
  virtual bool in_domain(const Vector& x) const = 0;

  /// argmin_u { h(u) + ||u - z||^2 / (2 alpha) }.
  virtual Vector prox(double alpha, const Vector& z) const = 0;
  virtual ProxJacobian prox_jacobian(double alpha, const Vector& z) const = 0;

  /// dist(s, dh(x)); +inf when x is outside dom h.
  virtual double distance_to_subdifferential(const Vector& x, const Vector& s) const = 0;

  /// Strong convexity modulus mu.
  virtual double modulus() const = 0;
  /// Lipschitz constant M_h on dom h, possibly +inf.
  virtual double lipschitz() const = 0;
};

using CompositePtr = std::shared_ptr<const CompositeTerm>;

/// Parameters for the factory; only the fields relevant to `kind` are read.
struct CompositeParams {
  CompositeKind kind = CompositeKind::zero;
  Index dimension = 0;
  double mu = 0.0;
  Vector center;
  Vector lower;
  Vector upper;
  double radius = 0.0;
  double omega = 0.0;
};

CompositePtr make_zero_term(Index n);
/// (mu/2) ||x - center||^2
CompositePtr make_quadratic_term(double mu, Vector center);
CompositePtr make_box_indicator(Vector lower, Vector upper);
CompositePtr make_ball_indicator(Vector center, double radius);
/// omega ||x||_1 on R^n
CompositePtr make_scaled_l1(double omega, Index n);

/// Throws std::invalid_argument on inconsistent parameters (l > u, r <= 0, ...).
CompositePtr make_composite(const CompositeParams& params);

}  // namespace bundlekit
