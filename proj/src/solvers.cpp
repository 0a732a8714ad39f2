#include "bundlekit/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "bundlekit/log.hpp"

namespace bundlekit {

Termination Termination::eps_solution(double eps_bar) {
  Termination t;
  t.kind = TerminationKind::eps_solution;
  t.eps_bar = eps_bar;
  return t;
}

Termination Termination::triple(double rho_hat, double eps_hat) {
  Termination t;
  t.kind = TerminationKind::triple;
  t.rho_hat = rho_hat;
  t.eps_hat = eps_hat;
  return t;
}

Termination Termination::pair(double eps_bar, BoundingSet set) {
  Termination t;
  t.kind = TerminationKind::pair;
  t.eps_bar = eps_bar;
  t.set = std::move(set);
  return t;
}

Termination Termination::iterations() { return Termination{}; }

bool serious_test(const SeriousRule& rule, const SeriousTestInput& in) {
  if (rule.kind == SeriousRule::Kind::rpb_tj) return in.t <= in.delta;
  const double slack =
      in.f_x - in.model_x - rule.alpha / (2.0 * in.lambda) * in.center_distance_sq;
  return in.phi_center - in.phi_x >= rule.gamma / (1.0 - rule.gamma) * slack;
}

namespace {

void check_termination(const ProblemInstance& instance, const Termination& term) {
  switch (term.kind) {
    case TerminationKind::eps_solution:
      if (!(term.eps_bar > 0.0)) throw std::invalid_argument("termination: eps_bar must be > 0");
      if (!instance.optimum) {
        throw std::invalid_argument("termination: eps_solution requires a known optimum");
      }
      break;
    case TerminationKind::triple:
      if (!(term.rho_hat > 0.0) || !(term.eps_hat > 0.0)) {
        throw std::invalid_argument("termination: rho_hat and eps_hat must be > 0");
      }
      if (instance.mu() > 0.0) throw std::invalid_argument("termination: certificates need mu = 0");
      break;
    case TerminationKind::pair:
      if (!(term.eps_bar > 0.0) || !term.set) {
        throw std::invalid_argument("termination: pair needs eps_bar > 0 and a bounding set");
      }
      if (term.set->center.size() != instance.dimension()) {
        throw std::invalid_argument("termination: bounding set dimension mismatch");
      }
      if (instance.mu() > 0.0) throw std::invalid_argument("termination: certificates need mu = 0");
      break;
    case TerminationKind::max_iterations:
      break;
  }
}

struct Counters {
  OracleCounters& c;
  double f(const SubgradientOracle& oracle, const Vector& x) {
    ++c.f_calls;
    return oracle.value(x);
  }
  double h(const CompositeTerm& term, const Vector& x) {
    ++c.h_calls;
    return term.value(x);
  }
  Vector g(const SubgradientOracle& oracle, const Vector& x) {
    ++c.g_calls;
    return oracle.subgradient(x);
  }
};

std::optional<Vector> carry_weights(const Bundle& before, const Vector& weights, const Bundle& after) {
  std::unordered_map<CutId, double> by_id;
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (weights(static_cast<Index>(i)) > 0.0) by_id.emplace(before.cuts()[i].id, weights(static_cast<Index>(i)));
  }
  Vector out = Vector::Zero(static_cast<Index>(after.size()));
  double total = 0.0;
  for (std::size_t i = 0; i < after.size(); ++i) {
    auto it = by_id.find(after.cuts()[i].id);
    if (it != by_id.end()) {
      out(static_cast<Index>(i)) = it->second;
      total += it->second;
    }
  }
  if (!(total > 0.0)) return std::nullopt;
  return out / total;
}

}  // namespace

RunTrace rpb_run(const ProblemInstance& instance, const RpbConfig& cfg) {
  if (!(cfg.lambda > 0.0) || !(cfg.delta > 0.0)) {
    throw std::invalid_argument("rpb: lambda and delta must be > 0");
  }
  if (cfg.max_iterations < 1) throw std::invalid_argument("rpb: max_iterations must be >= 1");
  if (cfg.serious_rule.kind == SeriousRule::Kind::descent &&
      (!(cfg.serious_rule.gamma > 0.0 && cfg.serious_rule.gamma < 1.0) ||
       !(cfg.serious_rule.alpha >= 0.0 && cfg.serious_rule.alpha <= 2.0))) {
    throw std::invalid_argument("rpb: descent rule needs gamma in (0,1) and alpha in [0,2]");
  }
  cfg.tol.validate();
  check_termination(instance, cfg.termination);
  if (cfg.track_eps && !instance.optimum) {
    throw std::invalid_argument("rpb: tracking eps requires a known optimum");
  }

  const auto& f = *instance.f;
  const auto& h = *instance.h;
  const double lambda = cfg.lambda;
  const double inv2l = 1.0 / (2.0 * lambda);

  RunTrace trace;
  trace.method = cfg.serious_rule.kind == SeriousRule::Kind::rpb_tj ? "rpb" : "rpb-descent";
  trace.lambda = lambda;
  trace.delta = cfg.delta;
  trace.mu = instance.mu();
  trace.x0 = instance.x0;
  if (instance.optimum) trace.phi_star = instance.optimum->phi_star;
  std::optional<double> hit_eps = cfg.track_eps;
  if (!hit_eps && cfg.termination.kind == TerminationKind::eps_solution) hit_eps = cfg.termination.eps_bar;
  trace.hit_eps = hit_eps;
  Counters calls{trace.counters};

  const Vector& x0 = instance.x0;
  const double f0 = calls.f(f, x0);
  const double phi0 = f0 + calls.h(h, x0);
  Bundle bundle(cfg.policy);
  bundle.push_back(make_cut(x0, f0, calls.g(f, x0), 0));

  Vector center = x0;
  double phi_center = phi0;
  int center_index = 0;
  Vector x_tilde = x0;
  double phi_x_tilde = phi0;
  Vector z_hat = x0;
  double phi_z_hat = phi0;
  Vector previous = x0;
  double sum_delta = 0.0;
  int k = 0;
  std::optional<Vector> warm;

  trace.serious.push_back(SeriousRecord{0, x0, x0, x0, phi0, phi0, phi0, 0.0, 0.0});

  bool done = false;
  for (int j = 1; j <= cfg.max_iterations && !done; ++j) {
    const SubproblemSolution sol = solve_prox_subproblem(bundle, h, center, lambda, cfg.tol, warm);
    ++trace.counters.solves;
    const Vector& x = sol.x;
    const double fx = calls.f(f, x);
    const double phi_x = fx + calls.h(h, x);
    Vector gx = calls.g(f, x);

    const double center_sq = (x - center).squaredNorm();
    const double reg_x = phi_x + inv2l * center_sq;
    const double reg_prev = phi_x_tilde + inv2l * (x_tilde - center).squaredNorm();
    if (reg_x <= reg_prev) {
      x_tilde = x;
      phi_x_tilde = phi_x;
    }
    const double t = std::min(reg_x, reg_prev) - sol.m;

    const bool serious = serious_test(
        cfg.serious_rule, SeriousTestInput{t, cfg.delta, lambda, phi_center, phi_x, fx,
                                           sol.model_value, center_sq});

    IterationRecord rec;
    rec.j = j;
    rec.kind = serious ? StepKind::serious : StepKind::null;
    rec.t = t;
    rec.m = sol.m;
    rec.phi_x = phi_x;
    rec.phi_x_tilde = phi_x_tilde;
    rec.model_value = sol.model_value;
    rec.f_x = fx;
    rec.bundle_size = bundle.size();
    rec.subproblem_gap = sol.gap;
    rec.subproblem_iterations = sol.iterations;
    rec.center_index = center_index;
    rec.step_norm = (x - previous).norm();
    rec.center_distance = std::sqrt(center_sq);
    if (cfg.record_points) {
      rec.x = x;
      rec.x_tilde = x_tilde;
    }

    Cut cut = make_cut(x, fx, std::move(gx), j);
    if (serious) {
      ++k;
      if (phi_x_tilde < phi_z_hat) {
        z_hat = x_tilde;
        phi_z_hat = phi_x_tilde;
      }
      const double delta_k = phi_x_tilde - sol.m;
      sum_delta += delta_k;
      trace.serious.push_back(
          SeriousRecord{j, x, x_tilde, z_hat, phi_x_tilde, phi_z_hat, sol.m, t, delta_k});
      center = x;
      phi_center = phi_x;
      center_index = j;

      if (hit_eps && !trace.first_hit && phi_z_hat - instance.optimum->phi_star <= *hit_eps) {
        trace.first_hit = j;
      }
      switch (cfg.termination.kind) {
        case TerminationKind::eps_solution:
          done = phi_z_hat - instance.optimum->phi_star <= cfg.termination.eps_bar;
          break;
        case TerminationKind::triple: {
          const SolutionTriple tri = make_triple(x0, x, z_hat, sum_delta, k, lambda);
          done = tri.v.norm() <= cfg.termination.rho_hat && tri.eps <= cfg.termination.eps_hat;
          break;
        }
        case TerminationKind::pair: {
          const SolutionTriple tri = make_triple(x0, x, z_hat, sum_delta, k, lambda);
          done = certificate_pair(tri, *cfg.termination.set).eta <= cfg.termination.eps_bar;
          break;
        }
        case TerminationKind::max_iterations:
          break;
      }
      Bundle next = update_serious(bundle, std::move(cut));
      warm = carry_weights(bundle, sol.weights, next);
      bundle = std::move(next);
    } else {
      std::vector<CutId> active = active_set(bundle, x, sol.model_value, cfg.tol);
      for (std::size_t i = 0; i < bundle.size(); ++i) {
        const CutId id = bundle.cuts()[i].id;
        if (sol.weights(static_cast<Index>(i)) > 0.0 &&
            std::find(active.begin(), active.end(), id) == active.end()) {
          active.push_back(id);
        }
      }
      Bundle next = update_null(bundle, active, std::move(cut));
      warm = carry_weights(bundle, sol.weights, next);
      bundle = std::move(next);
    }
    rec.k = k;
    rec.phi_zhat = phi_z_hat;
    rec.f_calls = trace.counters.f_calls;
    rec.g_calls = trace.counters.g_calls;
    trace.records.push_back(std::move(rec));
    previous = x;
  }

  trace.z_hat = z_hat;
  trace.phi_z_hat = phi_z_hat;
  if (done || cfg.termination.kind == TerminationKind::max_iterations) {
    trace.status = RunStatus::converged;
  } else {
    trace.status = RunStatus::max_iterations;
  }
  return trace;
}

RunTrace cscs_run(const ProblemInstance& instance, const CscsConfig& cfg) {
  if (!(cfg.lambda > 0.0)) throw std::invalid_argument("cscs: lambda must be > 0");
  if (cfg.max_iterations < 1) throw std::invalid_argument("cscs: max_iterations must be >= 1");
  if (cfg.termination.kind == TerminationKind::triple || cfg.termination.kind == TerminationKind::pair) {
    throw std::invalid_argument("cscs: supports eps_solution or max_iterations termination");
  }
  check_termination(instance, cfg.termination);
  if (cfg.track_eps && !instance.optimum) {
    throw std::invalid_argument("cscs: tracking eps requires a known optimum");
  }

  const auto& f = *instance.f;
  const auto& h = *instance.h;
  const double lambda = cfg.lambda;

  RunTrace trace;
  trace.method = "cscs";
  trace.lambda = lambda;
  trace.mu = instance.mu();
  trace.x0 = instance.x0;
  if (instance.optimum) trace.phi_star = instance.optimum->phi_star;
  std::optional<double> hit_eps = cfg.track_eps;
  if (!hit_eps && cfg.termination.kind == TerminationKind::eps_solution) hit_eps = cfg.termination.eps_bar;
  trace.hit_eps = hit_eps;
  Counters calls{trace.counters};

  Vector x = instance.x0;
  double fx = calls.f(f, x);
  double phi_x = fx + calls.h(h, x);
  Vector g = calls.g(f, x);
  Vector best = x;
  double phi_best = phi_x;
  trace.serious.push_back(SeriousRecord{0, x, x, x, phi_x, phi_x, phi_x, 0.0, 0.0});

  bool done = false;
  for (int j = 1; j <= cfg.max_iterations && !done; ++j) {
    const double intercept = fx - g.dot(x);
    Vector next = h.prox(lambda, x - lambda * g);
    ++trace.counters.solves;
    const double lin = intercept + g.dot(next);
    const double m = lin + h.value(next) + (next - x).squaredNorm() / (2.0 * lambda);
    const double step = (next - x).norm();

    x = std::move(next);
    fx = calls.f(f, x);
    phi_x = fx + calls.h(h, x);
    g = calls.g(f, x);
    if (phi_x < phi_best) {
      best = x;
      phi_best = phi_x;
    }

    IterationRecord rec;
    rec.j = j;
    rec.k = j;
    rec.kind = StepKind::serious;
    rec.t = std::max(0.0, phi_x + step * step / (2.0 * lambda) - m);
    rec.m = m;
    rec.phi_x = phi_x;
    rec.phi_x_tilde = phi_x;
    rec.phi_zhat = phi_best;
    rec.model_value = lin;
    rec.f_x = fx;
    rec.bundle_size = 1;
    rec.center_index = j - 1;
    rec.step_norm = step;
    rec.center_distance = step;
    rec.f_calls = trace.counters.f_calls;
    rec.g_calls = trace.counters.g_calls;
    if (cfg.record_points) {
      rec.x = x;
      rec.x_tilde = x;
    }
    trace.records.push_back(std::move(rec));
    trace.serious.push_back(SeriousRecord{j, x, x, best, phi_x, phi_best, m, 0.0, phi_x - m});

    if (hit_eps && !trace.first_hit && phi_x - instance.optimum->phi_star <= *hit_eps) {
      trace.first_hit = j;
    }
    if (cfg.termination.kind == TerminationKind::eps_solution) {
      done = phi_x - instance.optimum->phi_star <= cfg.termination.eps_bar;
    }
  }

  trace.z_hat = best;
  trace.phi_z_hat = phi_best;
  trace.status = (done || cfg.termination.kind == TerminationKind::max_iterations)
                     ? RunStatus::converged
                     : RunStatus::max_iterations;
  return trace;
}

bool reduction_check(const ProblemInstance& instance, double lambda, double delta) {
  const double M_f = instance.M_f();
  const double M = M_f + instance.M_h();
  if (!std::isfinite(M)) {
    log(LogLevel::warn, "reduction_check: M_f + M_h is infinite, condition cannot be verified");
    return false;
  }
  return 2.0 * lambda * M * M_f <= delta;
}

}  // namespace bundlekit
