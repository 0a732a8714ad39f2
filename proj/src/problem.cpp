#include "bundlekit/problem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bundlekit {

void Tolerances::validate() const {
  if (!(subproblem_gap > 0.0) || !(active_set_rel > 0.0) || !(certificate_slack > 0.0)) {
    throw std::invalid_argument("tolerances must be strictly positive");
  }
}

std::optional<double> ProblemInstance::d0() const {
  if (optimum) return (x0 - optimum->x).norm();
  return d0_bound;
}

ProblemInstance make_instance(OraclePtr f, CompositePtr h, Vector x0,
                              std::optional<KnownOptimum> optimum,
                              std::optional<double> d0_bound, std::string name) {
  if (!f || !h) throw std::invalid_argument("instance: missing f or h");
  if (x0.size() < 1) throw std::invalid_argument("instance: empty x0");
  if (f->dimension() != x0.size() || h->dimension() != x0.size()) {
    throw std::invalid_argument("instance: dimension mismatch between f, h and x0");
  }
  if (!x0.allFinite()) throw std::invalid_argument("instance: x0 has non-finite entries");
  if (!h->in_domain(x0)) throw std::invalid_argument("instance: x0 is not in dom h");
  if (d0_bound && !(*d0_bound > 0.0)) throw std::invalid_argument("instance: d0 bound must be > 0");

  ProblemInstance inst{std::move(f), std::move(h), std::move(x0), std::move(optimum), d0_bound,
                       std::move(name)};
  if (inst.optimum) {
    if (inst.optimum->x.size() != inst.x0.size()) {
      throw std::invalid_argument("instance: x* has the wrong dimension");
    }
    const double phi = evaluate_phi(inst, inst.optimum->x);
    const double phi_star = inst.optimum->phi_star;
    if (!(std::abs(phi - phi_star) <= 1e-10 * std::max(1.0, std::abs(phi_star)))) {
      std::ostringstream os;
      os.precision(17);
      os << "instance: phi(x*) = " << phi << " disagrees with phi* = " << phi_star;
      throw std::invalid_argument(os.str());
    }
  }
  return inst;
}

double evaluate_phi(const ProblemInstance& instance, const Vector& x) {
  if (x.size() != instance.dimension()) {
    throw std::invalid_argument("evaluate_phi: dimension mismatch");
  }
  if (!x.allFinite()) throw std::invalid_argument("evaluate_phi: non-finite point");
  if (!instance.h->in_domain(x)) return kInfinity;
  return instance.f->value(x) + instance.h->value(x);
}

double problem_scale(const ProblemInstance& instance) {
  return 1.0 + std::abs(evaluate_phi(instance, instance.x0));
}

std::vector<Vector> sample_domain_points(const ProblemInstance& instance, std::size_t count,
                                         std::mt19937_64& rng, double spread) {
  std::normal_distribution<double> normal(0.0, spread);
  std::vector<Vector> out;
  out.reserve(count);
  const Index n = instance.dimension();
  while (out.size() < count) {
    Vector z = instance.x0;
    for (Index i = 0; i < n; ++i) z(i) += normal(rng);
    if (!instance.h->in_domain(z)) z = instance.h->prox(1.0, z);
    out.push_back(std::move(z));
  }
  return out;
}

namespace {

std::string describe(const char* what, const Vector& x, double lhs, double rhs) {
  std::ostringstream os;
  os.precision(12);
  os << what << ": " << lhs << " vs " << rhs << " at x = [" << x.transpose() << "]";
  return os.str();
}

}  // namespace

ValidationReport validate_instance(const ProblemInstance& instance, std::size_t samples,
                                   std::uint64_t seed) {
  ValidationReport report;
  auto fail = [&](std::string message) {
    if (report.passed) report.first_violation = std::move(message);
    report.passed = false;
  };

  std::mt19937_64 rng(seed);
  double spread = 1.0 + instance.x0.norm();
  if (auto d0 = instance.d0()) spread = std::max(spread, *d0);
  const auto xs = sample_domain_points(instance, samples, rng, spread);
  const auto us = sample_domain_points(instance, samples, rng, spread);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const double M_f = instance.M_f();
  const double M_h = instance.M_h();
  const double mu = instance.mu();
  const auto& f = *instance.f;
  const auto& h = *instance.h;

  for (std::size_t s = 0; s < samples && report.passed; ++s) {
    const Vector& x = xs[s];
    const Vector& u = us[s];
    const double fx = f.value(x);
    const Vector g = f.subgradient(x);

    ++report.checks;
    if (g.norm() > M_f + 1e-12) fail(describe("subgradient norm exceeds M_f", x, g.norm(), M_f));

    ++report.checks;
    const double linear = fx + g.dot(u - x);
    const double fu = f.value(u);
    if (fu < linear - 1e-12 * (1.0 + std::abs(fx))) {
      fail(describe("subgradient inequality violated", x, fu, linear));
    }

    const double a = unit(rng);
    const Vector w = a * x + (1.0 - a) * u;
    const double hw = h.value(w);
    const double hx = h.value(x);
    const double hu = h.value(u);
    const double chord = a * hx + (1.0 - a) * hu - 0.5 * a * (1.0 - a) * mu * (x - u).squaredNorm();
    ++report.checks;
    if (hw > chord + 1e-12 * (1.0 + std::abs(hx) + std::abs(hu))) {
      fail(describe("mu-convexity of h violated", w, hw, chord));
    }

    if (std::isfinite(M_h)) {
      ++report.checks;
      const double diff = std::abs(hx - hu);
      const double bound = M_h * (x - u).norm();
      if (diff > bound + 1e-12 * (1.0 + std::abs(hx) + std::abs(hu))) {
        fail(describe("Lipschitz bound on h violated", x, diff, bound));
      }
    }
  }
  return report;
}

}  // namespace bundlekit
