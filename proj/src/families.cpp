#include "bundlekit/families.hpp"

#include <cmath>
#include <stdexcept>

#include "bundlekit/bundle.hpp"
#include "bundlekit/subproblem.hpp"

namespace bundlekit {

MaxAffineSpec random_bounded_max_affine(Index n, Index pieces, double M_f, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("random max-affine: dimension must be >= 1");
  if (pieces < 2) throw std::invalid_argument("random max-affine: need at least two pieces");
  if (!(M_f > 0.0) || !std::isfinite(M_f)) throw std::invalid_argument("random max-affine: M_f must be > 0");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MaxAffineSpec spec{Matrix(pieces, n), Vector(pieces)};
  for (Index i = 0; i + 1 < pieces; ++i) {
    for (Index c = 0; c < n; ++c) spec.slopes(i, c) = normal(rng);
  }
  spec.slopes.row(pieces - 1) = -spec.slopes.topRows(pieces - 1).colwise().mean();
  spec.slopes *= M_f / spec.slopes.rowwise().norm().maxCoeff();
  for (Index i = 0; i < pieces; ++i) spec.intercepts(i) = -unit(rng);
  return spec;
}

ProblemInstance abs_instance(double x0) {
  MaxAffineSpec spec{Matrix(2, 1), Vector::Zero(2)};
  spec.slopes << 1.0, -1.0;
  return make_instance(make_max_affine(spec), make_zero_term(1), Vector::Constant(1, x0),
                       KnownOptimum{Vector::Zero(1), 0.0}, std::nullopt, "abs");
}

ProblemInstance with_reference_optimum(const ProblemInstance& instance, double lambda) {
  const auto* oracle = dynamic_cast<const MaxAffineOracle*>(instance.f.get());
  if (oracle == nullptr) throw std::invalid_argument("reference solve needs a max-affine f");
  const auto& spec = oracle->spec();

  Bundle bundle(BundlePolicy::keep_all());
  for (Index i = 0; i < spec.slopes.rows(); ++i) {
    Cut cut;
    cut.grad = spec.slopes.row(i).transpose();
    cut.intercept = spec.intercepts(i);
    cut.point = Vector::Zero(spec.slopes.cols());
    cut.value = cut.intercept;
    cut.id = i;
    bundle.push_back(std::move(cut));
  }
  Tolerances tol;
  tol.subproblem_gap = 1e-14;
  Vector x = instance.x0;
  std::optional<Vector> warm;
  for (int it = 0; it < 100000; ++it) {
    const SubproblemSolution sol = solve_prox_subproblem(bundle, *instance.h, x, lambda, tol, warm);
    const double move = (sol.x - x).norm();
    x = sol.x;
    warm = sol.weights;
    if (move <= 1e-13 * (1.0 + x.norm())) {
      ProblemInstance out = instance;
      out.optimum = KnownOptimum{x, evaluate_phi(instance, x)};
      return out;
    }
  }
  throw std::runtime_error("reference solve did not converge");
}

}  // namespace bundlekit
