#include "bundlekit/certificates.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace bundlekit {

std::size_t RunTrace::serious_count() const {
  return serious.empty() ? 0 : serious.size() - 1;
}

std::size_t RunTrace::null_count() const {
  std::size_t n = 0;
  for (const auto& r : records) n += r.kind == StepKind::null;
  return n;
}

std::vector<int> RunTrace::serious_indices() const {
  std::vector<int> out;
  out.reserve(serious.size());
  for (const auto& s : serious) out.push_back(s.j);
  return out;
}

BoundingSet BoundingSet::box(const Vector& lower, const Vector& upper) {
  if (lower.size() != upper.size() || lower.size() == 0 || !lower.allFinite() ||
      !upper.allFinite() || !(lower.array() <= upper.array()).all()) {
    throw std::invalid_argument("bounding box must be finite and nonempty");
  }
  BoundingSet s;
  s.kind = Kind::box;
  s.center = 0.5 * (lower + upper);
  s.half_widths = 0.5 * (upper - lower);
  return s;
}

BoundingSet BoundingSet::ball(Vector center, double radius) {
  if (center.size() == 0 || !std::isfinite(radius) || !(radius >= 0.0)) {
    throw std::invalid_argument("bounding ball must have a finite radius");
  }
  BoundingSet s;
  s.kind = Kind::ball;
  s.center = std::move(center);
  s.radius = radius;
  return s;
}

double BoundingSet::support(const Vector& v, const Vector& z) const {
  const double base = v.dot(z - center);
  if (kind == Kind::box) return base + v.cwiseAbs().dot(half_widths);
  return base + radius * v.norm();
}

double BoundingSet::diameter() const {
  return kind == Kind::box ? 2.0 * half_widths.norm() : 2.0 * radius;
}

SolutionTriple make_triple(const Vector& z0, const Vector& zk, const Vector& zhat,
                           double sum_delta, int k, double lambda) {
  const double lk = lambda * static_cast<double>(k);
  SolutionTriple t;
  t.z = zhat;
  t.v = (z0 - zk) / lk;
  t.eps = sum_delta / static_cast<double>(k) +
          ((zhat - z0).squaredNorm() - (zhat - zk).squaredNorm()) / (2.0 * lk);
  t.k = k;
  return t;
}

SolutionTriple certificate_triple(const RunTrace& trace, int k) {
  if (trace.mu > 0.0) {
    throw std::domain_error("certificates are only defined for mu = 0");
  }
  if (k < 1 || static_cast<std::size_t>(k) > trace.serious_count()) {
    throw std::invalid_argument("certificate_triple: k must be in [1, serious count]");
  }
  double sum_delta = 0.0;
  for (int i = 1; i <= k; ++i) sum_delta += trace.serious[i].delta;
  const auto& last = trace.serious[k];
  if (last.z.size() == 0) throw std::invalid_argument("certificate_triple: trace lacks points");
  return make_triple(trace.serious[0].z, last.z, last.z_hat, sum_delta, k, trace.lambda);
}

SolutionPair certificate_pair(const SolutionTriple& triple, const BoundingSet& S) {
  if (S.center.size() != triple.z.size()) throw std::invalid_argument("certificate_pair: dimension mismatch");
  return SolutionPair{triple.z, triple.eps + S.support(triple.v, triple.z)};
}

EpsSubgradientReport check_eps_subgradient(const ProblemInstance& instance,
                                           const SolutionTriple& triple, std::size_t samples,
                                           std::uint64_t seed, double slack) {
  EpsSubgradientReport report;
  std::mt19937_64 rng(seed);
  const double phi_z = evaluate_phi(instance, triple.z);
  double spread = 1.0 + (triple.z - instance.x0).norm();
  if (auto d0 = instance.d0()) spread += *d0;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Index n = triple.z.size();
  for (std::size_t s = 0; s < samples; ++s) {
    // Mix of near and far points so both local and global behavior is probed.
    const double radius = spread * std::pow(10.0, -4.0 * unit(rng));
    Vector u = triple.z;
    for (Index i = 0; i < n; ++i) u(i) += radius * normal(rng);
    if (!instance.h->in_domain(u)) u = instance.h->prox(1.0, u);
    const double margin = evaluate_phi(instance, u) - phi_z - triple.v.dot(u - triple.z) + triple.eps;
    report.worst_margin = std::min(report.worst_margin, margin);
    ++report.samples;
  }
  report.passed = report.worst_margin >= -slack;
  return report;
}

}  // namespace bundlekit
