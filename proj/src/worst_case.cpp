#include "bundlekit/worst_case.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "bundlekit/oracles.hpp"

namespace bundlekit {

std::string_view to_string(WorstCaseTag tag) {
  switch (tag) {
    case WorstCaseTag::a1: return "a1";
    case WorstCaseTag::a2: return "a2";
    case WorstCaseTag::b1: return "b1";
    case WorstCaseTag::b2: return "b2";
  }
  return "unknown";
}

namespace {

void check_params(const WorstCaseParams& p) {
  if (!(p.M_f >= 0.0) || !(p.mu >= 0.0) || !(p.R0 > 0.0) || !(p.eps_bar > 0.0)) {
    throw std::invalid_argument("worst case: need M_f >= 0, mu >= 0, R0 > 0, eps_bar > 0");
  }
  if (p.n < 1) throw std::invalid_argument("worst case: dimension must be >= 1");
}

void attach_optimum(WorstCaseDesign& d, double mu) {
  const double curvature = d.tau + mu;
  const double k0 = static_cast<double>(d.k0);
  d.x_star_norm = d.gamma / (curvature * std::sqrt(k0));
  d.phi_star = -d.gamma * d.gamma / (2.0 * curvature * k0);
}

}  // namespace

WorstCaseDesign design_worst_case(const WorstCaseParams& p) {
  check_params(p);
  WorstCaseDesign d;
  d.R = p.R0;
  if (p.mu * p.R0 * p.R0 <= 8.0 * p.eps_bar) {
    if (p.M_f * p.R0 / p.eps_bar < 8.0) {
      d.tag = WorstCaseTag::a1;
      d.k0 = p.n;
      d.gamma = 0.0;
      d.tau = p.M_f / p.R0;
      return d;
    }
    d.tag = WorstCaseTag::a2;
    d.k0 = static_cast<Index>(
        tolerant_floor(p.M_f * p.M_f * p.R0 * p.R0 / (64.0 * p.eps_bar * p.eps_bar)));
    const double sk = std::sqrt(static_cast<double>(d.k0));
    d.gamma = sk / (1.0 + sk) * (p.M_f + p.mu * p.R0);
    d.tau = std::max(0.0, (p.M_f / p.R0 - p.mu * sk) / (1.0 + sk));
    attach_optimum(d, p.mu);
    return d;
  }
  if (p.M_f * p.M_f / (p.mu * p.eps_bar) < 8.0) {
    d.tag = WorstCaseTag::b1;
    d.k0 = p.n;
    return d;
  }
  d.tag = WorstCaseTag::b2;
  d.k0 = static_cast<Index>(tolerant_floor(p.M_f * p.M_f / (4.0 * p.mu * p.eps_bar)));
  d.gamma = p.M_f;
  d.tau = 0.0;
  attach_optimum(d, p.mu);
  return d;
}

ProblemInstance make_worst_case(const WorstCaseParams& p) {
  const WorstCaseDesign d = design_worst_case(p);
  if (p.n < d.k0) {
    throw std::invalid_argument("worst case: dimension too small (n = " + std::to_string(p.n) +
                                " < k0 = " + std::to_string(d.k0) + ")");
  }
  auto f = std::make_shared<WorstCaseOracle>(p.n, d.k0, d.gamma, d.tau, d.R);
  CompositePtr h = p.mu > 0.0 ? make_quadratic_term(p.mu, Vector::Zero(p.n)) : make_zero_term(p.n);

  KnownOptimum opt{Vector::Zero(p.n), 0.0};
  if (d.tag == WorstCaseTag::a2 || d.tag == WorstCaseTag::b2) {
    const double coord = -d.gamma / ((d.tau + p.mu) * static_cast<double>(d.k0));
    opt.x.head(d.k0).setConstant(coord);
    opt.phi_star = d.phi_star;
  }
  std::string name = "worst-case-" + std::string(to_string(d.tag));
  return make_instance(std::move(f), std::move(h), Vector::Zero(p.n), std::move(opt), p.R0,
                       std::move(name));
}

}  // namespace bundlekit
