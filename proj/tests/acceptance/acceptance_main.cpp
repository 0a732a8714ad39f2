// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bundlekit/bounds.hpp"
#include "bundlekit/certificates.hpp"
#include "bundlekit/oracles.hpp"
#include "bundlekit/solvers.hpp"
#include "bundlekit/subproblem.hpp"
#include "bundlekit/worst_case.hpp"
#include "grid_oracle.hpp"
#include "instances.hpp"

using namespace bundlekit;
using bundlekit::testing::TermKind;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

void report(int id, const char* title, const Outcome& o) {
  std::printf("[%s] criterion %d: %s -- %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
  std::fflush(stdout);
}

// Null cycles (l0, l1] of a run up to iteration `last`.
struct Cycle {
  int l0;
  int l1;
};

std::vector<Cycle> cycles_of(const RunTrace& trace, int last) {
  std::vector<Cycle> out;
  const auto idx = trace.serious_indices();
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (idx[i] > last) break;
    out.push_back({idx[i - 1], idx[i]});
  }
  return out;
}

// ---------------------------------------------------------------------------

Outcome criterion_lower_bound() {
  const auto start = Clock::now();
  const WorstCaseParams params{1.0, 0.0, 1.0, 1.0 / 80.0, 128};
  const ProblemInstance inst = make_worst_case(params);
  const WorstCaseDesign design = design_worst_case(params);
  const long lb = lower_bound(params.M_f, params.mu, params.R0, params.eps_bar);
  std::ostringstream os;
  bool pass = design.k0 == 100 && lb == 51;
  os << "k0=" << design.k0 << " lower_bound=" << lb;

  for (double lambda : {0.1, 1.0, 10.0}) {
    RpbConfig cfg;
    cfg.lambda = lambda;
    cfg.delta = params.eps_bar / 2.0;
    cfg.policy = BundlePolicy::lean();
    cfg.termination = Termination::eps_solution(params.eps_bar);
    cfg.record_points = false;
    const RunTrace trace = rpb_run(inst, cfg);
    const bool ok = trace.status == RunStatus::converged && trace.first_hit &&
                    *trace.first_hit >= design.k0;
    pass = pass && ok;
    os << " rpb(lambda=" << lambda << ")=" << (trace.first_hit ? *trace.first_hit : -1);
  }
  CscsConfig cs;
  cs.lambda = params.eps_bar / 4.0;
  cs.termination = Termination::eps_solution(params.eps_bar);
  cs.record_points = false;
  const RunTrace ctrace = cscs_run(inst, cs);
  const bool ok = ctrace.status == RunStatus::converged && ctrace.first_hit &&
                  *ctrace.first_hit >= design.k0;
  pass = pass && ok;
  os << " cscs(lambda=" << cs.lambda << ")=" << (ctrace.first_hit ? *ctrace.first_hit : -1);
  const double elapsed = seconds_since(start);
  pass = pass && elapsed < 60.0;
  os << " time=" << elapsed << "s";
  return {pass, os.str()};
}

// Instances shared by criteria 2, 3 and 8.
struct RandomCase {
  ProblemInstance instance;
  TermKind kind;
};

std::vector<RandomCase> random_cases() {
  const TermKind kinds[] = {TermKind::zero, TermKind::box, TermKind::quadratic};
  std::vector<RandomCase> out;
  for (int s = 0; s < 20; ++s) {
    const TermKind kind = kinds[s % 3];
    out.push_back({bundlekit::testing::random_instance(10, 20, kind, 1000 + s), kind});
  }
  return out;
}

struct UpperBoundRun {
  RunTrace trace;
  double lambda;
  const RandomCase* source;
};

std::vector<UpperBoundRun> g_upper_runs;

Outcome criterion_upper_bounds(const std::vector<RandomCase>& cases) {
  const auto start = Clock::now();
  const double eps = 1e-2;
  bool pass = true;
  std::ostringstream os;
  int runs = 0;
  double worst_serious = 0.0;
  double worst_null = 0.0;
  double worst_total = 0.0;
  for (const auto& c : cases) {
    const ProblemInstance& inst = c.instance;
    const double M_f = inst.M_f();
    const double M_h = inst.M_h();
    const double mu = inst.mu();
    const double d0 = *inst.d0();
    for (double lambda : {d0 / M_f, eps / (M_f * M_f)}) {
      RpbConfig cfg;
      cfg.lambda = lambda;
      cfg.delta = eps / 2.0;
      cfg.termination = Termination::eps_solution(eps);
      cfg.record_points = false;
      cfg.max_iterations = 2000000;
      RunTrace trace = rpb_run(inst, cfg);
      ++runs;
      if (trace.status != RunStatus::converged || !trace.first_hit) {
        pass = false;
        os << " [" << inst.name << " lambda=" << lambda << " did not converge]";
        continue;
      }
      const int hit = *trace.first_hit;
      const double bs = bound_serious(d0, lambda, mu, eps);
      const double bn = bound_null(lambda, M_f, M_h, mu, d0, eps);
      const double bt = bound_total(lambda, M_f, M_h, mu, d0, eps);
      const auto cycles = cycles_of(trace, hit);
      const double serious = static_cast<double>(cycles.size());
      int longest = 0;
      for (const auto& cy : cycles) longest = std::max(longest, cy.l1 - cy.l0);
      const bool ok = serious <= bs && longest <= bn && hit <= bt;
      if (!ok) {
        pass = false;
        os << " [" << inst.name << " lambda=" << lambda << " serious=" << serious << "/" << bs
           << " null=" << longest << "/" << bn << " total=" << hit << "/" << bt << "]";
      }
      worst_serious = std::max(worst_serious, serious / bs);
      worst_null = std::max(worst_null, longest / bn);
      worst_total = std::max(worst_total, hit / bt);
      g_upper_runs.push_back({std::move(trace), lambda, &c});
    }
  }
  const double elapsed = seconds_since(start);
  pass = pass && elapsed < 120.0;
  os << " runs=" << runs << " max observed/bound: serious=" << worst_serious << " null=" << worst_null
     << " total=" << worst_total << " time=" << elapsed << "s";
  return {pass, os.str()};
}

Outcome criterion_null_rate() {
  bool pass = true;
  std::ostringstream os;
  int checked = 0;
  double worst_ratio = 0.0;
  for (const auto& run : g_upper_runs) {
    const ProblemInstance& inst = run.source->instance;
    if (!std::isfinite(inst.M_h())) continue;
    ++checked;
    const double cap = null_rate_constant(run.lambda, inst.M_f(), inst.M_h()) + 1e-6;
    const auto& recs = run.trace.records;
    const auto cycles = cycles_of(run.trace, run.trace.iterations());
    for (const auto& cy : cycles) {
      for (int j = cy.l0 + 1; j <= cy.l1; ++j) {
        const auto& r = recs[j - 1];
        const double scaled = r.t * (j - cy.l0);
        worst_ratio = std::max(worst_ratio, scaled / cap);
        if (scaled > cap) {
          pass = false;
          os << " [rate " << inst.name << " j=" << j << "]";
        }
        if (j > cy.l0 + 1) {
          const auto& p = recs[j - 2];
          if (r.t > p.t + 1e-9 || r.m < p.m - 1e-9) {
            pass = false;
            os << " [monotonicity " << inst.name << " lambda=" << run.lambda << " j=" << j
               << " dt=" << r.t - p.t << " dm=" << r.m - p.m << "]";
          }
        }
      }
    }
  }
  os << " runs=" << checked << " max t_j(j-l0)/bound=" << worst_ratio;
  return {pass && checked > 0, os.str()};
}

Outcome criterion_reduction() {
  bool pass = true;
  std::ostringstream os;
  std::vector<ProblemInstance> instances;
  instances.push_back(bundlekit::testing::abs_instance(1.3));
  instances.push_back(bundlekit::testing::abs_instance(-0.7));
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    std::mt19937_64 rng(seed);
    auto spec = bundlekit::testing::random_bounded_max_affine(2, 6, 1.0, rng);
    instances.push_back(make_instance(make_max_affine(spec), make_zero_term(2), Vector::Constant(2, 1.5)));
  }
  instances.push_back(make_instance(instances[2].f, make_box_indicator(Vector::Constant(2, -1.0), Vector::Constant(2, 2.0)),
                                    Vector::Constant(2, 1.5)));
  double worst = 0.0;
  for (const auto& inst : instances) {
    const double delta = 0.1;
    const double M = inst.M_f() + inst.M_h();
    const double lambda = 0.9 * delta / (2.0 * M * inst.M_f());
    if (!reduction_check(inst, lambda, delta)) {
      pass = false;
      os << " [reduction_check false]";
    }
    RpbConfig cfg;
    cfg.lambda = lambda;
    cfg.delta = delta;
    cfg.policy = BundlePolicy::lean();
    cfg.max_iterations = 50;
    const RunTrace rpb = rpb_run(inst, cfg);
    CscsConfig cs;
    cs.lambda = lambda;
    cs.max_iterations = 50;
    const RunTrace cscs = cscs_run(inst, cs);
    if (rpb.serious_count() != 50 || rpb.records.size() != 50) {
      pass = false;
      os << " [" << rpb.null_count() << " null steps]";
    }
    for (std::size_t j = 0; j < rpb.records.size() && j < cscs.records.size(); ++j) {
      const Vector& a = rpb.records[j].x;
      const Vector& b = cscs.records[j].x;
      const double dev = (a - b).norm() / (1.0 + a.norm());
      worst = std::max(worst, dev);
      if (dev > 1e-9) pass = false;
    }
  }
  os << " instances=" << instances.size() << " max relative deviation=" << worst;
  return {pass, os.str()};
}

Outcome criterion_subproblem() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  bool pass = true;
  double worst_gap = 0.0;
  double worst_dx = 0.0;
  double worst_dm = 0.0;
  double worst_kkt = 0.0;
  std::ostringstream os;
  const CompositeKind kinds[] = {CompositeKind::zero, CompositeKind::quadratic, CompositeKind::box,
                                 CompositeKind::ball, CompositeKind::scaled_l1};
  for (int p = 0; p < 200; ++p) {
    const Index n = 1 + (p % 2);
    const CompositeKind kind = kinds[(p / 2) % 5];
    const int cuts = 1 + static_cast<int>(unit(rng) * 8.0) % 8;
    Bundle bundle(BundlePolicy::keep_all());
    for (int i = 0; i < cuts; ++i) {
      Vector point(n), grad(n);
      for (Index c = 0; c < n; ++c) {
        point(c) = 2.0 * U(rng);
        grad(c) = 2.0 * U(rng);
      }
      bundle.push_back(make_cut(point, U(rng), grad, i));
    }
    CompositeParams cp;
    cp.kind = kind;
    cp.dimension = n;
    cp.mu = 0.1 + 2.0 * unit(rng);
    cp.center = Vector(n);
    for (Index c = 0; c < n; ++c) cp.center(c) = U(rng);
    cp.lower = cp.center.array() - 0.2 - unit(rng);
    cp.upper = cp.center.array() + 0.2 + unit(rng);
    cp.radius = 0.3 + unit(rng);
    cp.omega = 0.1 + unit(rng);
    const CompositePtr h = make_composite(cp);
    Vector center(n);
    for (Index c = 0; c < n; ++c) center(c) = 2.0 * U(rng);
    const double lambda = std::exp(std::log(0.1) + unit(rng) * std::log(30.0));

    Tolerances tol;
    const SubproblemSolution sol = solve_prox_subproblem(bundle, *h, center, lambda, tol);
    const double scale = 1.0 + std::abs(sol.m);

    auto psi = [&](const Vector& u) {
      const double hu = h->value(u);
      if (!std::isfinite(hu)) return kInfinity;
      return eval_model(bundle, u).value + hu + (u - center).squaredNorm() / (2.0 * lambda);
    };
    double gmax = 0.0;
    for (const auto& c : bundle.cuts()) gmax = std::max(gmax, c.grad.norm());
    const Vector anchor = h->prox(lambda, center);
    const double radius = lambda * gmax + 1e-3;
    const auto grid = bundlekit::testing::grid_minimize(psi, anchor.array() - radius, anchor.array() + radius);

    const double dx = (sol.x - grid.x).norm();
    const double dm = std::abs(sol.m - grid.value);
    const double kkt = verify_kkt(sol, bundle, *h, center, lambda);
    worst_gap = std::max(worst_gap, sol.gap / scale);
    worst_dx = std::max(worst_dx, dx);
    worst_dm = std::max(worst_dm, dm);
    worst_kkt = std::max(worst_kkt, kkt);
    if (sol.gap > 1e-10 * scale || dx > 1e-3 || dm > 1e-6 || kkt > 1e-8) {
      pass = false;
      os << " [#" << p << " " << to_string(kind) << " n=" << n << " gap=" << sol.gap << " dx=" << dx
         << " dm=" << dm << " kkt=" << kkt << "]";
    }
  }
  os << " problems=200 max gap/scale=" << worst_gap << " max |dx|=" << worst_dx
     << " max |dm|=" << worst_dm << " max kkt=" << worst_kkt;
  return {pass, os.str()};
}

Outcome criterion_certificates() {
  bool pass = true;
  std::ostringstream os;
  const double eps_hat = 0.03;
  const double rho_hat = 0.05;
  double worst_margin = kInfinity;
  int triples = 0;
  for (int s = 0; s < 10; ++s) {
    const TermKind kind = s % 2 == 0 ? TermKind::zero : TermKind::box;
    const ProblemInstance inst = bundlekit::testing::random_instance(5, 10, kind, 500 + s);
    const double d0 = *inst.d0();
    RpbConfig cfg;
    cfg.lambda = 0.5 + 0.25 * s;
    cfg.delta = eps_hat / 3.0;
    cfg.termination = Termination::triple(rho_hat, eps_hat);
    cfg.max_iterations = 200000;
    const RunTrace trace = rpb_run(inst, cfg);
    const double lambda = cfg.lambda;
    const double delta = cfg.delta;
    const int K = static_cast<int>(trace.serious_count());
    for (int k = 1; k <= K; ++k) {
      const SolutionTriple tri = certificate_triple(trace, k);
      const double kk = static_cast<double>(k);
      const double v_cap = 2.0 * d0 / (lambda * kk) + std::sqrt(2.0 * delta / (lambda * kk)) + 1e-9;
      const double e_cap = 2.5 * delta * (1.0 + 1.0 / std::sqrt(kk) + 2.0 / (5.0 * kk)) +
                           15.0 * d0 * d0 / (4.0 * lambda * kk) + 1e-9;
      ++triples;
      if (tri.eps < -1e-12 || tri.v.norm() > v_cap || tri.eps > e_cap) {
        pass = false;
        os << " [run " << s << " k=" << k << " eps=" << tri.eps << "/" << e_cap
           << " |v|=" << tri.v.norm() << "/" << v_cap << "]";
      }
      if (k == K || k == 1 || k == (K + 1) / 2) {
        const auto check = check_eps_subgradient(inst, tri, 1000, 77 + k, 1e-9);
        worst_margin = std::min(worst_margin, check.worst_margin);
        if (!check.passed) {
          pass = false;
          os << " [run " << s << " k=" << k << " eps-subgradient margin " << check.worst_margin << "]";
        }
      }
    }
    if (trace.status != RunStatus::converged) {
      pass = false;
      os << " [run " << s << " did not reach the triple tolerance]";
    }
  }
  os << " runs=10 triples=" << triples << " worst sampled margin=" << worst_margin;
  return {pass, os.str()};
}

Outcome criterion_pair() {
  std::mt19937_64 rng(99);
  const Index n = 4;
  const double eps = 0.05;
  auto f = make_max_affine(bundlekit::testing::random_bounded_max_affine(n, 12, 1.0, rng));
  const Vector lo = Vector::Constant(n, -0.5);
  const Vector hi = Vector::Constant(n, 0.5);
  ProblemInstance inst = make_instance(f, make_box_indicator(lo, hi), Vector::Constant(n, 0.5));
  const BoundingSet S = BoundingSet::box(lo, hi);
  RangeInputs in;
  in.M_f = inst.M_f();
  in.M_h = inst.M_h();
  in.D_S = S.diameter();
  in.eps_bar = eps;
  in.C = 1.0;
  const LambdaRange range = lambda_range(RangeKind::pair, in);
  RpbConfig cfg;
  cfg.lambda = range.midpoint();
  cfg.delta = eps / 6.0;
  cfg.termination = Termination::pair(eps, S);
  cfg.max_iterations = 1000000;
  const RunTrace trace = rpb_run(inst, cfg);
  const int K = static_cast<int>(trace.serious_count());
  double eta = kInfinity;
  if (K >= 1) eta = certificate_pair(certificate_triple(trace, K), S).eta;
  const double scale = (in.M_f + in.M_h) * in.M_f * in.D_S * in.D_S / (eps * eps);
  std::ostringstream os;
  os << "D_S=" << in.D_S << " lambda=" << cfg.lambda << " range=[" << range.lower << ", " << range.upper
     << "] eta=" << eta << " iterations=" << trace.iterations() << " M M_f D_S^2/eps^2=" << scale
     << " ratio=" << trace.iterations() / scale;
  const bool pass = !range.empty && std::abs(in.D_S - 2.0) < 1e-12 &&
                    trace.status == RunStatus::converged && eta <= eps;
  return {pass, os.str()};
}

Outcome criterion_cscs(const std::vector<RandomCase>& cases) {
  const double eps = 1e-2;
  bool pass = true;
  std::ostringstream os;
  double worst = 0.0;
  for (const auto& c : cases) {
    const ProblemInstance& inst = c.instance;
    const double M_f = inst.M_f();
    const double lambda = eps / (4.0 * M_f * M_f);
    const double d0 = *inst.d0();
    const double bound = bound_cscs(d0, lambda, inst.mu(), M_f, eps);
    CscsConfig cs;
    cs.lambda = lambda;
    cs.termination = Termination::eps_solution(eps);
    cs.max_iterations = static_cast<int>(bound) + 1;
    cs.record_points = false;
    const RunTrace trace = cscs_run(inst, cs);
    if (!trace.first_hit || *trace.first_hit > bound) {
      pass = false;
      os << " [" << inst.name << " iterations="
         << (trace.first_hit ? *trace.first_hit : -1) << " bound=" << bound << "]";
      continue;
    }
    worst = std::max(worst, *trace.first_hit / bound);
  }
  os << " instances=" << cases.size() << " max observed/bound=" << worst;
  return {pass, os.str()};
}

}  // namespace

int main() {
  int failures = 0;
  auto run = [&](int id, const char* title, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    report(id, title, o);
    failures += !o.pass;
  };

  run(1, "empirical lower bound on the worst-case instance", criterion_lower_bound);
  std::vector<RandomCase> cases;
  run(2, "upper-bound compliance", [&] {
    cases = random_cases();
    return criterion_upper_bounds(cases);
  });
  run(3, "null-cycle rate and monotonicity", criterion_null_rate);
  run(4, "reduction to CS-CS", criterion_reduction);
  run(5, "subproblem exactness against the grid oracle", criterion_subproblem);
  run(6, "certificate validity", criterion_certificates);
  run(7, "bounded-domain solution pair", criterion_pair);
  run(8, "CS-CS iteration bound", [&] {
    if (cases.empty()) cases = random_cases();
    return criterion_cscs(cases);
  });
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
