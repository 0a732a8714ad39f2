#pragma once

#include <cstdint>

#include "bundlekit/problem.hpp"
#include "bundlekit/trace.hpp"

namespace bundlekit {

/// Compact set S containing dom h; either a box or a Euclidean ball.
struct BoundingSet {
  enum class Kind { box, ball };
  Kind kind = Kind::box;
  Vector center;
  Vector half_widths;
  double radius = 0.0;

  static BoundingSet box(const Vector& lower, const Vector& upper);
  static BoundingSet ball(Vector center, double radius);

  /// sup_{x in S} <v, z - x>.
  double support(const Vector& v, const Vector& z) const;
  double diameter() const;
};

/// v in the eps-subdifferential of phi at z.
struct SolutionTriple {
  Vector z;
  Vector v;
  double eps = 0.0;
  int k = 0;
};

struct SolutionPair {
  Vector z;
  double eta = 0.0;
};

/// Incremental form used inside the solver: v = (z0 - zk)/(lambda k),
/// eps = sum_delta / k + (||zhat - z0||^2 - ||zhat - zk||^2) / (2 lambda k).
SolutionTriple make_triple(const Vector& z0, const Vector& zk, const Vector& zhat,
                           double sum_delta, int k, double lambda);

/// Throws std::invalid_argument for k outside [1, serious count] and
/// std::domain_error when the run had mu > 0.
SolutionTriple certificate_triple(const RunTrace& trace, int k);

SolutionPair certificate_pair(const SolutionTriple& triple, const BoundingSet& S);

struct EpsSubgradientReport {
  bool passed = true;
  /// min over samples of phi(u) - phi(z) - <v, u - z> + eps.
  double worst_margin = kInfinity;
  std::size_t samples = 0;
};

EpsSubgradientReport check_eps_subgradient(const ProblemInstance& instance,
                                           const SolutionTriple& triple, std::size_t samples,
                                           std::uint64_t seed, double slack = 1e-9);

}  // namespace bundlekit
