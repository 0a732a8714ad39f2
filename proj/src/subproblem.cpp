#include "bundlekit/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bundlekit/simplex_qp.hpp"

namespace bundlekit {

namespace {

struct DualPoint {
  Vector theta;
  Vector z;
  Vector u;
  Vector grad;
  double dual = 0.0;
  double primal = 0.0;
  double gap = 0.0;
};

class DualEvaluator {
 public:
  DualEvaluator(const Matrix& G, const Vector& b, const CompositeTerm& h, const Vector& center,
                double lambda)
      : G_(G), b_(b), h_(h), center_(center), lambda_(lambda) {}

  DualPoint operator()(Vector theta) const {
    DualPoint p;
    p.theta = std::move(theta);
    p.z = center_ - lambda_ * (G_ * p.theta);
    p.u = h_.prox(lambda_, p.z);
    p.grad = b_ + G_.transpose() * p.u;
    const double rest = h_.value(p.u) + (p.u - center_).squaredNorm() / (2.0 * lambda_);
    const double weighted = p.theta.dot(p.grad);
    const double top = p.grad.maxCoeff();
    p.dual = weighted + rest;
    p.primal = top + rest;
    p.gap = std::max(0.0, top - weighted);
    return p;
  }

 private:
  const Matrix& G_;
  const Vector& b_;
  const CompositeTerm& h_;
  const Vector& center_;
  double lambda_;
};

// Near the optimum dual increments drop below rounding, so the gap decides.
bool improves(const DualPoint& candidate, const DualPoint& current) {
  if (!std::isfinite(candidate.dual)) return false;
  const double noise = 1e-14 * (1.0 + std::abs(current.dual));
  if (candidate.dual > current.dual + noise) return true;
  return candidate.dual >= current.dual - noise && candidate.gap < current.gap;
}

Vector initial_weights(const Matrix& G, const Vector& b, const CompositeTerm& h,
                       const Vector& center, double lambda, const std::optional<Vector>& warm) {
  const Index m = b.size();
  if (warm && warm->size() == m && warm->allFinite()) {
    Vector theta = warm->cwiseMax(0.0);
    const double total = theta.sum();
    if (total > 0.0) return theta / total;
  }
  const Vector values = b + G.transpose() * h.prox(lambda, center);
  Index best = 0;
  values.maxCoeff(&best);
  Vector theta = Vector::Zero(m);
  theta(best) = 1.0;
  return theta;
}

}  // namespace

SubproblemSolution solve_prox_subproblem(const Bundle& bundle, const CompositeTerm& h,
                                         const Vector& center, double lambda,
                                         const Tolerances& tol,
                                         const std::optional<Vector>& warm_start,
                                         const SubproblemOptions& options) {
  if (bundle.empty()) throw std::invalid_argument("subproblem: empty bundle");
  if (!(lambda > 0.0)) throw std::invalid_argument("subproblem: lambda must be > 0");
  if (center.size() != bundle.dimension() || h.dimension() != center.size()) {
    throw std::invalid_argument("subproblem: dimension mismatch");
  }

  const Matrix G = bundle.gradient_matrix();
  const Vector b = bundle.intercepts();
  const Index m = b.size();
  const DualEvaluator evaluate(G, b, h, center, lambda);

  DualPoint cur = evaluate(initial_weights(G, b, h, center, lambda, warm_start));
  if (!std::isfinite(cur.primal)) {
    throw SubproblemError("subproblem: prox of h left its domain");
  }

  std::optional<Matrix> gram;
  int iterations = 0;
  auto threshold = [&](const DualPoint& p) { return tol.subproblem_gap * (1.0 + std::abs(p.primal)); };

  while (cur.gap > threshold(cur)) {
    if (++iterations > options.max_iterations) {
      std::ostringstream os;
      os << "subproblem: gap " << cur.gap << " above tolerance after " << options.max_iterations
         << " iterations";
      throw SubproblemError(os.str());
    }

    const ProxJacobian J = h.prox_jacobian(lambda, cur.z);
    Matrix H;
    if (J.is_scalar()) {
      if (!gram) gram = G.transpose() * G;
      H = (lambda * J.diagonal(0)) * *gram;
    } else {
      H = lambda * J.congruence(G);
    }
    const Vector c = cur.grad + H * cur.theta;
    const SimplexQpResult qp =
        maximize_on_simplex(H, c, cur.theta, 0.01 * threshold(cur), 50 + 10 * static_cast<int>(m));

    DualPoint cand = evaluate(qp.theta);
    if (improves(cand, cur)) {
      cur = std::move(cand);
      continue;
    }

    bool accepted = false;
    const Vector direction = qp.theta - cur.theta;
    for (double t = 0.5; t > 1e-9; t *= 0.5) {
      DualPoint trial = evaluate(cur.theta + t * direction);
      if (improves(trial, cur)) {
        cur = std::move(trial);
        accepted = true;
        break;
      }
    }
    if (accepted) continue;

    // Pairwise step between the most violated cut and the worst supported one.
    Index s = 0;
    cur.grad.maxCoeff(&s);
    Index a = -1;
    for (Index i = 0; i < m; ++i) {
      if (cur.theta(i) > 0.0 && (a < 0 || cur.grad(i) < cur.grad(a))) a = i;
    }
    const double rise = cur.grad(s) - cur.grad(a);
    const double curvature = lambda * (G.col(s) - G.col(a)).squaredNorm();
    const double step = curvature > 0.0 ? std::min(cur.theta(a), rise / curvature) : cur.theta(a);
    Vector theta = cur.theta;
    theta(s) += step;
    theta(a) -= step;
    if (theta(a) < 0.0) theta(a) = 0.0;
    DualPoint next = evaluate(std::move(theta));
    if (!(next.dual >= cur.dual - 1e-14 * (1.0 + std::abs(cur.dual))) || step <= 0.0) {
      std::ostringstream os;
      os << "subproblem: stalled with gap " << cur.gap;
      throw SubproblemError(os.str());
    }
    cur = std::move(next);
  }

  SubproblemSolution out;
  out.x = std::move(cur.u);
  out.m = cur.primal;
  out.weights = std::move(cur.theta);
  out.gap = cur.gap;
  out.dual = cur.dual;
  out.model_value = cur.grad.maxCoeff();
  out.iterations = iterations;
  return out;
}

double verify_kkt(const SubproblemSolution& solution, const Bundle& bundle, const CompositeTerm& h,
                  const Vector& center, double lambda) {
  const Matrix G = bundle.gradient_matrix();
  const Vector values = bundle.intercepts() + G.transpose() * solution.x;
  const double complementarity =
      std::max(0.0, values.maxCoeff() - solution.weights.dot(values)) +
      std::abs(solution.weights.sum() - 1.0) + std::max(0.0, -solution.weights.minCoeff());
  const Vector residual = (center - solution.x) / lambda - G * solution.weights;
  return std::max(complementarity, h.distance_to_subdifferential(solution.x, residual));
}

}  // namespace bundlekit
