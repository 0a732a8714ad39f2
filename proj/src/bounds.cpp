#include "bundlekit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bundlekit {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be > 0");
}

double log1plus(double x) { return std::max(std::log(x), 1.0); }

// min over the two serious-count branches; the log branch is absent for mu = 0.
double serious_min(double d0, double lambda, double mu, double eps_bar) {
  const double first = d0 * d0 / (lambda * eps_bar);
  if (mu <= 0.0) return first;
  const double second = std::log(mu * d0 * d0 / eps_bar + 1.0) / (lambda_tilde(lambda, mu) * mu);
  return std::min(first, second);
}

}  // namespace

double lambda_tilde(double lambda, double mu) { return lambda / (1.0 + lambda * mu); }

double easyrecur_threshold(double theta, double delta, double alpha0) {
  if (!(theta >= 1.0)) throw std::invalid_argument("easyrecur: theta must be >= 1");
  require_positive(delta, "easyrecur: delta");
  if (!(alpha0 >= 0.0)) throw std::invalid_argument("easyrecur: alpha0 must be >= 0");
  const double first = alpha0 / delta;
  if (theta == 1.0) return first;
  const double second = theta / (theta - 1.0) * std::log1p(alpha0 * (theta - 1.0) / delta);
  return std::min(first, second);
}

double bound_serious(double d0, double lambda, double mu, double eps_bar) {
  require_positive(lambda, "bound_serious: lambda");
  require_positive(eps_bar, "bound_serious: eps_bar");
  if (!(d0 >= 0.0)) throw std::invalid_argument("bound_serious: d0 must be >= 0");
  return serious_min(d0, lambda, mu, eps_bar) + 1.0;
}

double bound_null(double lambda, double M_f, double M_h, double mu, double d0, double eps_bar) {
  require_positive(lambda, "bound_null: lambda");
  require_positive(eps_bar, "bound_null: eps_bar");
  const double c = 2.0 * kNullConstant;
  const double M = M_f + M_h;
  const double first = std::isfinite(M) ? c * lambda * M * M_f : kInfinity;
  const double second = std::isfinite(d0)
                            ? c * lambda_tilde(lambda, mu) * M_f * M_f + 40.0 * std::sqrt(2.0) * M_f * d0
                            : kInfinity;
  if (!std::isfinite(first) && !std::isfinite(second)) {
    throw std::domain_error("bound_null: M_h is infinite and d0 is unknown");
  }
  return std::min(first, second) / eps_bar + 1.0;
}

double bound_null_delta(double lambda, double M_f, double M_h, double mu, double d_l0,
                        double delta) {
  require_positive(lambda, "bound_null_delta: lambda");
  require_positive(delta, "bound_null_delta: delta");
  const double M = M_f + M_h;
  const double first = std::isfinite(M) ? kNullConstant * lambda * M * M_f : kInfinity;
  const double second = std::isfinite(d_l0)
                            ? kNullConstant * lambda_tilde(lambda, mu) * M_f * M_f + 20.0 * M_f * d_l0
                            : kInfinity;
  if (!std::isfinite(first) && !std::isfinite(second)) {
    throw std::domain_error("bound_null_delta: M_h is infinite and d_l0 is unknown");
  }
  return std::min(first, second) / delta + 1.0;
}

double null_rate_constant(double lambda, double M_f, double M_h) {
  return kNullConstant * lambda * (M_f + M_h) * M_f;
}

double bound_total(double lambda, double M_f, double M_h, double mu, double d0, double eps_bar) {
  require_positive(lambda, "bound_total: lambda");
  require_positive(eps_bar, "bound_total: eps_bar");
  const double M = M_f + M_h;
  const double inner = std::min(lambda * M, lambda_tilde(lambda, mu) * M_f + d0);
  if (!std::isfinite(inner)) throw std::domain_error("bound_total: M_h is infinite and d0 is unknown");
  const double cycles = 2.0 * kNullConstant * M_f * inner / eps_bar + 1.0;
  return cycles * (serious_min(d0, lambda, mu, eps_bar) + 1.0);
}

double bound_cscs(double d0, double lambda, double mu, double M_f, double eps_bar) {
  require_positive(lambda, "bound_cscs: lambda");
  require_positive(eps_bar, "bound_cscs: eps_bar");
  if (lambda > eps_bar / (4.0 * M_f * M_f)) {
    throw std::domain_error("bound_cscs: requires lambda <= eps_bar / (4 M_f^2)");
  }
  double value = d0 * d0 / (lambda * eps_bar);
  if (mu > 0.0) {
    value = std::min(value, (1.0 + lambda * mu) / (lambda * mu) * std::log(mu * d0 * d0 / eps_bar + 1.0));
  }
  return tolerant_floor(value) + 1.0;
}

LambdaRange lambda_range(RangeKind kind, const RangeInputs& in) {
  require_positive(in.eps_bar, "lambda_range: eps_bar");
  require_positive(in.C, "lambda_range: C");
  LambdaRange r;
  auto fail = [&r](std::string why) {
    r.empty = true;
    r.reason = std::move(why);
  };
  switch (kind) {
    case RangeKind::strong:
      r.lower = in.d0 / in.M_f;
      r.upper = in.C * in.d0 * in.d0 / in.eps_bar;
      if (in.C * in.M_f * in.d0 / in.eps_bar < 1.0) {
        fail("C M_f d0 / eps_bar < 1");
      } else if (in.mu > in.C_prime * in.M_f / in.d0) {
        fail("mu > C' M_f / d0");
      }
      break;
    case RangeKind::convex:
      r.lower = in.eps_bar / (in.C * in.M_f * in.M_f);
      r.upper = in.C * in.d0 * in.d0 / in.eps_bar;
      if (in.C * in.M_f * in.d0 / in.eps_bar < 1.0) {
        fail("C M_f d0 / eps_bar < 1");
      } else if (in.M_h > in.C_prime * in.M_f) {
        fail("M_h > C' M_f");
      } else if (in.mu != 0.0) {
        fail("mu must be 0");
      }
      break;
    case RangeKind::pair: {
      const double M = in.M_f + in.M_h;
      r.lower = in.eps_bar / (in.C * M * in.M_f);
      r.upper = in.C * in.D_S * in.D_S / in.eps_bar;
      if (!std::isfinite(M)) fail("M_h is infinite");
      else if (!(in.D_S > 0.0) || !std::isfinite(in.D_S)) fail("bounding set diameter must be finite and > 0");
      break;
    }
  }
  if (!r.empty && !(r.lower <= r.upper)) fail("lower endpoint exceeds upper endpoint");
  return r;
}

long lower_bound(double M_f, double mu, double R0, double eps_bar) {
  require_positive(eps_bar, "lower_bound: eps_bar");
  double value = M_f * M_f * R0 * R0 / (128.0 * eps_bar * eps_bar);
  if (mu > 0.0) value = std::min(value, M_f * M_f / (8.0 * mu * eps_bar));
  return static_cast<long>(tolerant_floor(value)) + 1;
}

double comparator_convex(double M_f, double d0, double lambda, double eps_bar) {
  require_positive(lambda, "comparator: lambda");
  require_positive(eps_bar, "comparator: eps_bar");
  return M_f * M_f * std::pow(d0 + lambda * M_f, 4) / (lambda * std::pow(eps_bar, 3));
}

std::optional<double> comparator_strong(double M_f, double mu, double d0, double lambda,
                                        double eps_bar, double gap0, double c) {
  require_positive(lambda, "comparator: lambda");
  require_positive(eps_bar, "comparator: eps_bar");
  if (!(mu > 0.0) || 2.0 * c * lambda * mu > 1.0) return std::nullopt;
  const double lm = lambda * mu;
  const double lead = M_f * M_f / (lambda * mu * mu * eps_bar) + d0 * d0 / (lambda * eps_bar);
  return lead * log1plus(1.0 / lm) * log1plus(gap0 / (lm * eps_bar));
}

double bound_triple(double lambda, double M_f, double M_h, double d0, double rho_hat,
                    double eps_hat, double mu) {
  if (mu > 0.0) throw std::domain_error("bound_triple: requires mu = 0");
  if (!std::isfinite(M_h)) throw std::domain_error("bound_triple: requires finite M_h");
  require_positive(lambda, "bound_triple: lambda");
  require_positive(eps_hat, "bound_triple: eps_hat");
  require_positive(rho_hat, "bound_triple: rho_hat");
  const double MMf = (M_f + M_h) * M_f;
  return std::max(MMf / (rho_hat * rho_hat), MMf * d0 * d0 / (eps_hat * eps_hat)) +
         std::max(eps_hat / (lambda * rho_hat * rho_hat), d0 * d0 / (lambda * eps_hat)) +
         lambda * MMf / eps_hat;
}

BoundReport make_bound_report(double lambda, double M_f, double M_h, double mu, double d0,
                              double eps_bar, std::optional<double> R0) {
  BoundReport r;
  r.lambda = lambda;
  r.M_f = M_f;
  r.M_h = M_h;
  r.mu = mu;
  r.d0 = d0;
  r.eps_bar = eps_bar;
  auto attempt = [](auto&& fn) -> std::optional<double> {
    try {
      return fn();
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };
  if (std::isfinite(d0)) r.serious = attempt([&] { return bound_serious(d0, lambda, mu, eps_bar); });
  r.null_cycle = attempt([&] { return bound_null(lambda, M_f, M_h, mu, d0, eps_bar); });
  r.total = attempt([&] { return bound_total(lambda, M_f, M_h, mu, d0, eps_bar); });
  if (std::isfinite(d0)) r.cscs = attempt([&] { return bound_cscs(d0, lambda, mu, M_f, eps_bar); });
  if (R0) r.lower = lower_bound(M_f, mu, *R0, eps_bar);
  if (std::isfinite(d0)) {
    if (mu == 0.0) {
      r.comparator = comparator_convex(M_f, d0, lambda, eps_bar);
    }
  }
  const double M = M_f + M_h;
  r.reduction_regime = std::isfinite(M) && M * M_f > 0.0 && lambda <= eps_bar / 2.0 / (2.0 * M * M_f);
  return r;
}

}  // namespace bundlekit
