// bundlekit: solve, bench, lowerbound and bounds front end.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bundlekit/certificates.hpp"
#include "bundlekit/log.hpp"
#include "bundlekit/subproblem.hpp"
#include "config.hpp"
#include "report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bundlekit;
using namespace bundlekit::cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitMaxIterations = 2;

struct CommonFlags {
  std::string config;
  std::string out;
  bool plot = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iter;

  Overrides overrides() const { return {seed, max_iter}; }
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool config_required) {
  auto* opt = cmd->add_option("--config", flags.config, "JSON run configuration");
  if (config_required) opt->required();
  cmd->add_option("--out", flags.out, "output directory (default: config 'out' or .)");
  cmd->add_flag("--plot", flags.plot, "write an SVG convergence plot");
  cmd->add_option("--seed", flags.seed, "random seed override");
  cmd->add_option("--max-iter", flags.max_iter, "iteration cap override")->check(CLI::PositiveNumber);
}

fs::path output_dir(const CommonFlags& flags, const std::optional<RunConfig>& cfg) {
  fs::path dir = !flags.out.empty() ? fs::path(flags.out) : (cfg && cfg->out ? fs::path(*cfg->out) : fs::path("."));
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

json vector_json(const Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json instance_json(const InstanceConfig& ic) {
  const ProblemInstance& inst = ic.instance;
  json j;
  j["family"] = ic.family;
  j["name"] = inst.name;
  j["n"] = inst.dimension();
  j["M_f"] = inst.M_f();
  j["M_h"] = number_or_string(inst.M_h());
  j["mu"] = inst.mu();
  j["h"] = std::string(to_string(inst.h->kind()));
  j["phi_x0"] = number_or_string(evaluate_phi(inst, inst.x0));
  j["phi_star"] = inst.optimum ? json(inst.optimum->phi_star) : json(nullptr);
  j["d0"] = inst.d0() ? json(*inst.d0()) : json(nullptr);
  if (ic.worst_case) {
    const WorstCaseDesign d = design_worst_case(*ic.worst_case);
    j["worst_case"] = {{"tag", std::string(to_string(d.tag))}, {"k0", d.k0},       {"gamma", d.gamma},
                       {"tau", d.tau},                          {"R", d.R},         {"x_star_norm", d.x_star_norm},
                       {"phi_star", d.phi_star}};
  }
  return j;
}

double report_eps(const RunConfig& cfg) {
  switch (cfg.termination.kind) {
    case TerminationKind::eps_solution:
    case TerminationKind::pair: return cfg.termination.eps_bar;
    case TerminationKind::triple: return cfg.termination.eps_hat;
    case TerminationKind::max_iterations: break;
  }
  return 2.0 * cfg.delta;
}

/// Observed quantities up to the first eps-hit (or the whole run).
struct Observed {
  std::optional<int> total;
  int serious = 0;
  int max_cycle = 0;
  bool all_serious = true;
};

Observed observe(const RunTrace& trace) {
  Observed o;
  o.total = trace.first_hit;
  const int last = trace.first_hit.value_or(trace.iterations());
  const auto idx = trace.serious_indices();
  for (std::size_t i = 1; i < idx.size() && idx[i] <= last; ++i) {
    ++o.serious;
    o.max_cycle = std::max(o.max_cycle, idx[i] - idx[i - 1]);
  }
  for (const auto& r : trace.records) {
    if (r.j > last) break;
    if (r.kind == StepKind::null) o.all_serious = false;
  }
  return o;
}

RunTrace run_solver(const RunConfig& cfg, SolverKind solver, double lambda) {
  const ProblemInstance& inst = cfg.instance->instance;
  if (solver == SolverKind::cscs) return cscs_run(inst, make_cscs_config(cfg, lambda));
  RunConfig local = cfg;
  local.solver = solver;
  return rpb_run(inst, make_rpb_config(local, lambda));
}

// ---------------------------------------------------------------------------

int cmd_solve(const CommonFlags& flags) {
  const RunConfig cfg = load_config(flags.config, flags.overrides());
  if (!cfg.instance) throw ConfigError(flags.config + ":1: solve needs an 'instance' block");
  const ProblemInstance& inst = cfg.instance->instance;
  const fs::path dir = output_dir(flags, cfg);

  const RunTrace trace = run_solver(cfg, cfg.solver, cfg.lambda);
  {
    std::ofstream csv(dir / "trace.csv", std::ios::binary);
    write_trace_csv(trace, csv);
  }

  json s;
  s["method"] = trace.method;
  s["config"] = cfg.raw;
  s["instance"] = instance_json(*cfg.instance);
  s["lambda"] = cfg.lambda;
  s["delta"] = cfg.solver == SolverKind::cscs ? json(nullptr) : json(cfg.delta);
  s["policy"] = cfg.policy.to_string();
  s["status"] = trace.status == RunStatus::converged ? "converged" : "max_iterations";
  s["iterations"] = trace.iterations();
  std::size_t serious_rows = 0;
  for (const auto& r : trace.records) serious_rows += r.kind == StepKind::serious;
  s["serious"] = serious_rows;
  s["null"] = trace.records.size() - serious_rows;
  s["first_hit"] = trace.first_hit ? json(*trace.first_hit) : json(nullptr);
  s["phi_zhat"] = trace.phi_z_hat;
  s["z_hat"] = vector_json(trace.z_hat);
  s["gap_to_phistar"] = trace.phi_star ? json(trace.phi_z_hat - *trace.phi_star) : json(nullptr);
  s["oracle_calls"] = {{"f", trace.counters.f_calls},
                       {"g", trace.counters.g_calls},
                       {"h", trace.counters.h_calls},
                       {"subproblems", trace.counters.solves}};

  const double eps = report_eps(cfg);
  json checks = json::object();
  if (const auto d0 = inst.d0()) {
    std::optional<double> R0;
    if (cfg.instance->worst_case) R0 = cfg.instance->worst_case->R0;
    const BoundReport br = make_bound_report(cfg.lambda, inst.M_f(), inst.M_h(), inst.mu(), *d0, eps, R0);
    s["bounds"] = bound_report_json(br);
    const Observed o = observe(trace);
    const bool bounds_apply = cfg.solver == SolverKind::rpb &&
                                 cfg.termination.kind == TerminationKind::eps_solution &&
                                 std::abs(cfg.delta - eps / 2.0) <= 1e-12 * eps && o.total;
    if (bounds_apply) {
      if (br.serious) checks["serious_within_bound"] = o.serious <= *br.serious;
      if (br.null_cycle) checks["null_cycles_within_bound"] = o.max_cycle <= *br.null_cycle;
      if (br.total) checks["total_within_bound"] = *o.total <= *br.total;
    }
    if (cfg.solver == SolverKind::cscs && br.cscs && o.total) checks["cscs_within_bound"] = *o.total <= *br.cscs;
    if (br.lower && o.total && cfg.instance->worst_case) checks["above_lower_bound"] = *o.total >= *br.lower;
    if (cfg.solver == SolverKind::rpb && reduction_check(inst, cfg.lambda, cfg.delta)) {
      checks["reduction_all_serious"] = o.all_serious;
    }
  }
  if (cfg.solver != SolverKind::cscs && inst.mu() == 0.0 && trace.serious_count() >= 1) {
    const SolutionTriple tri = certificate_triple(trace, static_cast<int>(trace.serious_count()));
    json c = {{"k", tri.k}, {"v_norm", tri.v.norm()}, {"eps", tri.eps}};
    if (cfg.termination.kind == TerminationKind::pair) {
      c["eta"] = certificate_pair(tri, *cfg.termination.set).eta;
    }
    s["certificate"] = c;
  }
  bool passed = true;
  for (const auto& item : checks.items()) passed = passed && item.value().get<bool>();
  s["checks"] = checks;
  s["passed"] = passed;
  write_file(dir / "summary.json", s.dump(2) + "\n");
  if (flags.plot || cfg.plot) write_file(dir / "plot.svg", render_svg(trace, trace.method + " on " + inst.name));

  std::printf("%s on %s: %s after %d iterations (%zu serious, %zu null), phi(z_hat) = %s\n", trace.method.c_str(),
              inst.name.c_str(), s["status"].get<std::string>().c_str(), trace.iterations(), serious_rows,
              trace.records.size() - serious_rows, format_number(trace.phi_z_hat).c_str());
  if (!passed) {
    log(LogLevel::error, "summary bound checks failed; see summary.json");
    return kExitError;
  }
  return trace.status == RunStatus::converged ? kExitOk : kExitMaxIterations;
}

// ---------------------------------------------------------------------------

struct BenchRow {
  SolverKind solver;
  double lambda = 0.0;
  RunTrace trace;
  Observed observed;
  BoundReport bounds;
  bool reduction = false;
  std::optional<bool> pass;
};

std::vector<double> log_spaced(double lo, double hi, int points) {
  if (points == 1) return {std::sqrt(lo * hi)};
  std::vector<double> out;
  for (int i = 0; i < points; ++i) {
    out.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (points - 1)));
  }
  return out;
}

int cmd_bench(const CommonFlags& flags) {
  RunConfig cfg = load_config(flags.config, flags.overrides());
  if (!cfg.bench) throw ConfigError(flags.config + ":1: bench needs a 'bench' block");
  const BenchConfig& b = *cfg.bench;
  const ProblemInstance& inst = cfg.instance->instance;
  const double eps = b.eps_bar;
  const double d0 = *inst.d0();

  std::vector<double> lambdas = b.lambdas;
  if (b.range) {
    RangeInputs in;
    in.M_f = inst.M_f();
    in.M_h = inst.M_h();
    in.mu = inst.mu();
    in.d0 = d0;
    in.eps_bar = eps;
    in.C = b.C;
    in.C_prime = b.C_prime;
    if (*b.range == RangeKind::pair) {
      if (!cfg.termination.set) throw ConfigError(flags.config + ":1: pair range needs a pair termination set");
      in.D_S = cfg.termination.set->diameter();
    }
    const LambdaRange r = lambda_range(*b.range, in);
    if (r.empty) {
      log(LogLevel::error, "lambda range is empty: " + r.reason);
      return kExitError;
    }
    lambdas = log_spaced(r.lower, r.upper, b.points);
  }
  // delta = eps/2 at every point.
  cfg.delta = eps / 2.0;
  cfg.termination = Termination::eps_solution(eps);

  std::vector<std::future<BenchRow>> jobs;
  for (SolverKind solver : b.solvers) {
    for (double lambda : lambdas) {
      jobs.push_back(std::async(std::launch::async, [&cfg, &inst, solver, lambda, eps, d0] {
        BenchRow row;
        row.solver = solver;
        row.lambda = lambda;
        RunConfig local = cfg;
        local.max_iterations = cfg.max_iterations;
        row.trace = run_solver(local, solver, lambda);
        row.observed = observe(row.trace);
        row.bounds = make_bound_report(lambda, inst.M_f(), inst.M_h(), inst.mu(), d0, eps);
        row.reduction = reduction_check(inst, lambda, eps / 2.0);
        const Observed& o = row.observed;
        if (o.total) {
          if (solver == SolverKind::rpb) {
            bool ok = (!row.bounds.serious || o.serious <= *row.bounds.serious) &&
                      (!row.bounds.null_cycle || o.max_cycle <= *row.bounds.null_cycle) &&
                      (!row.bounds.total || *o.total <= *row.bounds.total);
            if (row.reduction && local.policy.kind == PolicyKind::lean) ok = ok && o.all_serious;
            row.pass = ok;
          } else if (solver == SolverKind::cscs && row.bounds.cscs) {
            row.pass = *o.total <= *row.bounds.cscs;
          }
        }
        return row;
      }));
    }
  }
  std::vector<BenchRow> rows;
  for (auto& job : jobs) rows.push_back(job.get());

  const fs::path dir = output_dir(flags, cfg);
  fs::create_directories(dir / "points");
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  std::ostringstream table;
  table << "solver,lambda,status,iterations_to_eps,serious,null,max_null_cycle,all_serious,reduction_regime,"
           "bound_serious,bound_null,bound_total,bound_cscs,check\n";
  json points = json::array();
  bool any_fail = false, any_unfinished = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const BenchRow& r = rows[i];
    const std::string name = to_string(r.solver) + "_" + std::to_string(i) + ".csv";
    {
      std::ofstream csv(dir / "points" / name, std::ios::binary);
      write_trace_csv(r.trace, csv);
    }
    const bool converged = r.observed.total.has_value();
    any_unfinished = any_unfinished || !converged;
    any_fail = any_fail || (r.pass && !*r.pass);
    const std::string check = !r.pass ? "n/a" : (*r.pass ? "pass" : "FAIL");
    table << to_string(r.solver) << ',' << format_number(r.lambda) << ','
          << (converged ? "converged" : "max_iterations") << ','
          << (converged ? std::to_string(*r.observed.total) : std::string()) << ',' << r.observed.serious << ','
          << r.trace.null_count() << ',' << r.observed.max_cycle << ',' << (r.observed.all_serious ? "yes" : "no")
          << ',' << (r.reduction ? "yes" : "no") << ',' << opt(r.bounds.serious) << ',' << opt(r.bounds.null_cycle)
          << ',' << opt(r.bounds.total) << ',' << opt(r.bounds.cscs) << ',' << check << '\n';
    points.push_back({{"solver", to_string(r.solver)},
                      {"lambda", r.lambda},
                      {"trace", "points/" + name},
                      {"converged", converged},
                      {"iterations_to_eps", converged ? json(*r.observed.total) : json(nullptr)},
                      {"serious", r.observed.serious},
                      {"max_null_cycle", r.observed.max_cycle},
                      {"all_serious", r.observed.all_serious},
                      {"reduction_regime", r.reduction},
                      {"bounds", bound_report_json(r.bounds)},
                      {"check", check}});
  }
  write_file(dir / "bench.csv", table.str());
  json summary = {{"config", cfg.raw},
                  {"instance", instance_json(*cfg.instance)},
                  {"eps_bar", eps},
                  {"delta", eps / 2.0},
                  {"points", points},
                  {"passed", !any_fail}};
  write_file(dir / "bench.json", summary.dump(2) + "\n");
  std::cout << table.str();
  if (any_fail) return kExitError;
  return any_unfinished ? kExitMaxIterations : kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_lowerbound(const CommonFlags& flags, const LowerBoundConfig& direct, bool have_direct) {
  std::optional<RunConfig> cfg;
  LowerBoundConfig lb = direct;
  int max_iterations = flags.max_iter.value_or(100000);
  if (!flags.config.empty()) {
    cfg = load_config(flags.config, flags.overrides());
    if (!have_direct) {
      if (!cfg->lowerbound) throw ConfigError(flags.config + ":1: lowerbound needs a 'lowerbound' block");
      lb = *cfg->lowerbound;
    }
    if (cfg->raw.contains("max_iterations") || flags.max_iter) max_iterations = cfg->max_iterations;
  } else if (!have_direct) {
    throw ConfigError("lowerbound needs --config or --M_f/--R0/--eps/--n");
  }
  const WorstCaseParams& p = lb.params;
  const WorstCaseDesign design = design_worst_case(p);
  const ProblemInstance inst = make_worst_case(p);
  const long lower = lower_bound(p.M_f, p.mu, p.R0, p.eps_bar);
  const double d0 = *inst.d0();

  json runs = json::array();
  bool violated = false, undecided = false;
  std::printf("worst-case %s: k0=%lld gamma=%s tau=%s phi*=%s lower_bound=%ld\n",
              std::string(to_string(design.tag)).c_str(), static_cast<long long>(design.k0),
              format_number(design.gamma).c_str(), format_number(design.tau).c_str(),
              format_number(design.phi_star).c_str(), lower);
  std::printf("solver,lambda,iterations_to_eps,lower_bound,upper_bound,observed/upper,check\n");
  for (double lambda : lb.lambdas) {
    for (SolverKind solver : {SolverKind::rpb, SolverKind::cscs}) {
      RunTrace trace;
      std::optional<double> upper;
      if (solver == SolverKind::rpb) {
        RpbConfig c;
        c.lambda = lambda;
        c.delta = p.eps_bar / 2.0;
        c.policy = BundlePolicy::lean();
        c.termination = Termination::eps_solution(p.eps_bar);
        c.max_iterations = max_iterations;
        c.record_points = false;
        trace = rpb_run(inst, c);
        try {
          upper = bound_total(lambda, inst.M_f(), inst.M_h(), inst.mu(), d0, p.eps_bar);
        } catch (const std::domain_error&) {
        }
      } else {
        CscsConfig c;
        c.lambda = lambda;
        c.termination = Termination::eps_solution(p.eps_bar);
        c.max_iterations = max_iterations;
        c.record_points = false;
        trace = cscs_run(inst, c);
        if (lambda <= p.eps_bar / (4.0 * inst.M_f() * inst.M_f())) {
          upper = bound_cscs(d0, lambda, inst.mu(), inst.M_f(), p.eps_bar);
        }
      }
      std::string check;
      if (trace.first_hit) {
        check = *trace.first_hit >= lower ? "pass" : "FAIL";
      } else {
        // Not reached within the cap: the count exceeds max_iterations.
        check = max_iterations + 1 >= lower ? "pass" : "undecided";
      }
      violated = violated || check == "FAIL";
      undecided = undecided || check == "undecided";
      const std::string observed = trace.first_hit ? std::to_string(*trace.first_hit) : ">" + std::to_string(max_iterations);
      const std::string ratio = trace.first_hit && upper ? format_number(*trace.first_hit / *upper) : "";
      std::printf("%s,%s,%s,%ld,%s,%s,%s\n", to_string(solver).c_str(), format_number(lambda).c_str(),
                  observed.c_str(), lower, upper ? format_number(*upper).c_str() : "", ratio.c_str(), check.c_str());
      runs.push_back({{"solver", to_string(solver)},
                      {"lambda", lambda},
                      {"iterations_to_eps", trace.first_hit ? json(*trace.first_hit) : json(nullptr)},
                      {"max_iterations", max_iterations},
                      {"upper_bound", upper ? json(*upper) : json(nullptr)},
                      {"ratio_to_upper", trace.first_hit && upper ? json(*trace.first_hit / *upper) : json(nullptr)},
                      {"check", check}});
    }
  }
  if (cfg || !flags.out.empty()) {
    const fs::path dir = output_dir(flags, cfg);
    json summary = {{"M_f", p.M_f},
                    {"mu", p.mu},
                    {"R0", p.R0},
                    {"eps_bar", p.eps_bar},
                    {"n", p.n},
                    {"case", std::string(to_string(design.tag))},
                    {"k0", design.k0},
                    {"gamma", design.gamma},
                    {"tau", design.tau},
                    {"R", design.R},
                    {"phi_star", design.phi_star},
                    {"x_star_norm", design.x_star_norm},
                    {"lower_bound", lower},
                    {"runs", runs},
                    {"passed", !violated}};
    write_file(dir / "lowerbound.json", summary.dump(2) + "\n");
  }
  if (violated) return kExitError;
  return undecided ? kExitMaxIterations : kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_bounds(const CommonFlags& flags, const BoundsConfig& direct, bool have_direct) {
  std::optional<RunConfig> cfg;
  BoundsConfig b = direct;
  if (!flags.config.empty()) {
    cfg = load_config(flags.config, flags.overrides());
    if (!have_direct) {
      if (!cfg->bounds) throw ConfigError(flags.config + ":1: bounds needs a 'bounds' block");
      b = *cfg->bounds;
    }
  } else if (!have_direct) {
    throw ConfigError("bounds needs --config or --lambda/--M_f/--d0/--eps");
  }
  const BoundReport br = make_bound_report(b.lambda, b.M_f, b.M_h, b.mu, b.d0, b.eps_bar, b.R0);
  json j = bound_report_json(br);
  j["lambda_tilde"] = lambda_tilde(b.lambda, b.mu);
  j["null_rate_constant"] = number_or_string(null_rate_constant(b.lambda, b.M_f, b.M_h));
  j["comparator_convex"] = comparator_convex(b.M_f, b.d0, b.lambda, b.eps_bar);
  json ranges = json::object();
  auto range_json = [](const LambdaRange& r) {
    json o = {{"empty", r.empty}};
    if (r.empty) {
      o["reason"] = r.reason;
    } else {
      o["lower"] = r.lower;
      o["upper"] = r.upper;
    }
    return o;
  };
  RangeInputs in;
  in.M_f = b.M_f;
  in.M_h = b.M_h;
  in.mu = b.mu;
  in.d0 = b.d0;
  in.eps_bar = b.eps_bar;
  in.C = b.C;
  in.C_prime = b.C_prime;
  ranges["strong"] = range_json(lambda_range(RangeKind::strong, in));
  ranges["convex"] = range_json(lambda_range(RangeKind::convex, in));
  if (b.D_S) {
    in.D_S = *b.D_S;
    ranges["pair"] = range_json(lambda_range(RangeKind::pair, in));
  }
  j["lambda_ranges"] = ranges;
  if (b.rho_hat && b.eps_hat) {
    try {
      j["bound_triple"] = bound_triple(b.lambda, b.M_f, b.M_h, b.d0, *b.rho_hat, *b.eps_hat, b.mu);
    } catch (const std::domain_error& e) {
      j["bound_triple"] = nullptr;
      j["bound_triple_note"] = e.what();
    }
  }
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!flags.out.empty() || (cfg && cfg->out)) write_file(output_dir(flags, cfg) / "bounds.json", text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relaxed proximal bundle and CS-CS solvers with complexity-bound reporting"};
  app.require_subcommand(1);

  CommonFlags solve_flags, bench_flags, lb_flags, bounds_flags;
  auto* solve = app.add_subcommand("solve", "run one solver on a configured instance");
  add_common(solve, solve_flags, true);
  auto* bench = app.add_subcommand("bench", "sweep lambda and compare observed counts with the bounds");
  add_common(bench, bench_flags, true);

  LowerBoundConfig lb;
  std::vector<double> lb_lambdas;
  auto* lower = app.add_subcommand("lowerbound", "check iteration counts on the worst-case instance");
  add_common(lower, lb_flags, false);
  lower->add_option("--M_f", lb.params.M_f, "Lipschitz bound of f")->check(CLI::PositiveNumber);
  lower->add_option("--mu", lb.params.mu, "strong convexity modulus of h")->check(CLI::NonNegativeNumber);
  lower->add_option("--R0", lb.params.R0, "radius bound on d0")->check(CLI::PositiveNumber);
  auto* lb_eps = lower->add_option("--eps", lb.params.eps_bar, "target accuracy")->check(CLI::PositiveNumber);
  lower->add_option("--n", lb.params.n, "dimension")->check(CLI::PositiveNumber);
  lower->add_option("--lambdas", lb_lambdas, "stepsizes")->delimiter(',');

  BoundsConfig bc;
  std::string bc_mh;
  std::optional<double> bc_r0, bc_rho, bc_eps_hat, bc_ds;
  auto* bounds = app.add_subcommand("bounds", "print every bound formula for the given parameters");
  add_common(bounds, bounds_flags, false);
  bounds->add_option("--lambda", bc.lambda)->check(CLI::PositiveNumber);
  bounds->add_option("--M_f", bc.M_f)->check(CLI::PositiveNumber);
  bounds->add_option("--M_h", bc_mh, "number or inf");
  bounds->add_option("--mu", bc.mu)->check(CLI::NonNegativeNumber);
  bounds->add_option("--d0", bc.d0)->check(CLI::PositiveNumber);
  auto* bc_eps = bounds->add_option("--eps", bc.eps_bar)->check(CLI::PositiveNumber);
  bounds->add_option("--R0", bc_r0);
  bounds->add_option("--rho", bc_rho);
  bounds->add_option("--eps-hat", bc_eps_hat);
  bounds->add_option("--D_S", bc_ds);
  bounds->add_option("--C", bc.C)->check(CLI::PositiveNumber);
  bounds->add_option("--C-prime", bc.C_prime)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) return cmd_solve(solve_flags);
    if (*bench) return cmd_bench(bench_flags);
    if (*lower) {
      if (!lb_lambdas.empty()) lb.lambdas = lb_lambdas;
      if (lb.lambdas.empty()) lb.lambdas = {1.0};
      return cmd_lowerbound(lb_flags, lb, lb_eps->count() > 0);
    }
    if (*bounds) {
      if (!bc_mh.empty()) {
        if (bc_mh == "inf" || bc_mh == "infinity") {
          bc.M_h = kInfinity;
        } else {
          bc.M_h = std::stod(bc_mh);
        }
      }
      bc.R0 = bc_r0;
      bc.rho_hat = bc_rho;
      bc.eps_hat = bc_eps_hat;
      bc.D_S = bc_ds;
      return cmd_bounds(bounds_flags, bc, bc_eps->count() > 0);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  } catch (const SubproblemError& e) {
    std::fprintf(stderr, "error: subproblem failed: %s\n", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
