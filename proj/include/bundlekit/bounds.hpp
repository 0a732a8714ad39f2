#pragma once

#include <optional>
#include <string>

#include "bundlekit/types.hpp"

namespace bundlekit {

/// 16^{4/3}
inline const double kNullConstant = std::pow(2.0, 16.0 / 3.0);

/// lambda / (1 + lambda mu)
double lambda_tilde(double lambda, double mu);

/// min{alpha0/delta, theta/(theta-1) log(alpha0 (theta-1)/delta + 1)}; theta = 1 gives alpha0/delta.
double easyrecur_threshold(double theta, double delta, double alpha0);

/// Serious iterations until an eps_bar-solution (delta = eps_bar/2).
double bound_serious(double d0, double lambda, double mu, double eps_bar);

/// Length l1 - l0 of a null cycle with delta = eps_bar/2. Finite branch only when
/// M_h = inf; throws std::domain_error when both branches are infinite.
double bound_null(double lambda, double M_f, double M_h, double mu, double d0, double eps_bar);

/// Same cycle bound for a general delta and center distance d_l0:
/// min{16^{4/3} lambda M M_f, 16^{4/3} lambda~ M_f^2 + 20 M_f d_l0} / delta + 1.
double bound_null_delta(double lambda, double M_f, double M_h, double mu, double d_l0,
                        double delta);

/// 16^{4/3} lambda (M_f + M_h) M_f; bounds t_j (j - l0) inside a null cycle.
double null_rate_constant(double lambda, double M_f, double M_h);

/// Total iterations until an eps_bar-solution (delta = eps_bar/2).
double bound_total(double lambda, double M_f, double M_h, double mu, double d0, double eps_bar);

/// floor(min{d0^2/(lambda eps), (1 + lambda mu)/(lambda mu) log(mu d0^2/eps + 1)}) + 1.
/// Throws std::domain_error unless lambda <= eps_bar/(4 M_f^2).
double bound_cscs(double d0, double lambda, double mu, double M_f, double eps_bar);

enum class RangeKind { strong, convex, pair };

struct RangeInputs {
  double M_f = 1.0;
  double M_h = 0.0;
  double mu = 0.0;
  /// d0 (or its bound R0); unused for pair.
  double d0 = 1.0;
  /// Diameter of the bounding set; pair only.
  double D_S = 0.0;
  double eps_bar = 0.1;
  double C = 1.0;
  double C_prime = 1.0;
};

struct LambdaRange {
  double lower = 0.0;
  double upper = 0.0;
  bool empty = false;
  std::string reason;

  /// Geometric mean of the endpoints.
  double midpoint() const { return std::sqrt(lower * upper); }
};

LambdaRange lambda_range(RangeKind kind, const RangeInputs& in);

/// floor(min{M_f^2 R0^2 / (128 eps^2), M_f^2 / (8 mu eps)}) + 1.
long lower_bound(double M_f, double mu, double R0, double eps_bar);

/// M_f^2 (d0 + lambda M_f)^4 / (lambda eps^3).
double comparator_convex(double M_f, double d0, double lambda, double eps_bar);

/// [M_f^2/(lambda mu^2 eps) + d0^2/(lambda eps)] log1+(1/(lambda mu)) log1+(gap0/(lambda mu eps)).
/// Empty unless mu > 0 and 2 c lambda mu <= 1.
std::optional<double> comparator_strong(double M_f, double mu, double d0, double lambda,
                                        double eps_bar, double gap0, double c);

/// max{M M_f/rho^2, M M_f d0^2/eps^2} + max{eps/(lambda rho^2), d0^2/(lambda eps)} + lambda M M_f/eps.
/// Throws std::domain_error for mu > 0 or M_h = inf.
double bound_triple(double lambda, double M_f, double M_h, double d0, double rho_hat,
                    double eps_hat, double mu = 0.0);

/// Bound values for one parameter set; missing entries could not be formed.
struct BoundReport {
  double lambda = 0.0;
  double M_f = 0.0;
  double M_h = 0.0;
  double mu = 0.0;
  double d0 = 0.0;
  double eps_bar = 0.0;
  std::optional<double> serious;
  std::optional<double> null_cycle;
  std::optional<double> total;
  std::optional<double> cscs;
  std::optional<long> lower;
  std::optional<double> comparator;
  bool reduction_regime = false;
};

BoundReport make_bound_report(double lambda, double M_f, double M_h, double mu, double d0,
                              double eps_bar, std::optional<double> R0 = std::nullopt);

}  // namespace bundlekit
