#pragma once

#include <random>

#include "bundlekit/oracles.hpp"
#include "bundlekit/problem.hpp"

namespace bundlekit {

/// Random max-affine spec that is bounded below (0 lies in the convex hull of
/// the slopes) with max row norm exactly `M_f`; intercepts in (-1, 0].
MaxAffineSpec random_bounded_max_affine(Index n, Index pieces, double M_f, std::mt19937_64& rng);

/// f = |x| on the real line, h = 0, optimum at 0.
ProblemInstance abs_instance(double x0);

/// Minimizes phi = f + h for a max-affine f by the proximal point method, each
/// step solved with every piece in the bundle (so the model is f itself).
/// Returns a copy with the optimum attached. Throws std::invalid_argument for
/// other oracles and std::runtime_error if the iteration does not settle.
ProblemInstance with_reference_optimum(const ProblemInstance& instance, double lambda = 10.0);

}  // namespace bundlekit
