#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "bundlekit/families.hpp"
#include "bundlekit/oracles.hpp"

namespace bundlekit::cli {

using nlohmann::json;

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::rpb: return "rpb";
    case SolverKind::cscs: return "cscs";
    case SolverKind::rpb_descent: return "rpb-descent";
  }
  return "unknown";
}

namespace {

SolverKind solver_from_string(const std::string& s, const std::function<void(const std::string&)>& fail) {
  if (s == "rpb") return SolverKind::rpb;
  if (s == "cscs") return SolverKind::cscs;
  if (s == "rpb-descent") return SolverKind::rpb_descent;
  fail("unknown solver '" + s + "' (expected rpb, cscs or rpb-descent)");
  return SolverKind::rpb;
}

struct Source {
  const std::string& text;
  const std::string& name;

  int line_of(std::size_t offset) const {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
  }

  /// Offset of `"key":` at or after `from`, or `from` when not found.
  std::size_t find_key(const std::string& key, std::size_t from) const {
    const std::string quoted = "\"" + key + "\"";
    std::size_t pos = from;
    while ((pos = text.find(quoted, pos)) != std::string::npos) {
      std::size_t k = pos + quoted.size();
      while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
      if (k < text.size() && text[k] == ':') return pos;
      pos += quoted.size();
    }
    return from;
  }
};

/// A JSON value plus where it sits in the document, for anchored messages.
class Node {
 public:
  Node(const json& value, std::string path, std::size_t offset, const Source& src)
      : value_(value), path_(std::move(path)), offset_(offset), src_(src) {}

  const json& value() const { return value_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& message) const {
    std::ostringstream os;
    os << src_.name << ":" << src_.line_of(offset_) << ": " << (path_.empty() ? "" : path_ + ": ") << message;
    throw ConfigError(os.str());
  }

  void require_object() const {
    if (!value_.is_object()) fail("expected an object");
  }

  bool has(const std::string& key) const { return value_.contains(key); }

  Node child(const std::string& key) const {
    if (!has(key)) fail("missing required key '" + key + "'");
    return Node(value_.at(key), path_.empty() ? key : path_ + "." + key, src_.find_key(key, offset_), src_);
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    require_object();
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& item : value_.items()) {
      if (!allowed.count(item.key())) {
        Node(item.value(), path_, src_.find_key(item.key(), offset_), src_)
            .fail("unknown key '" + item.key() + "'");
      }
    }
  }

  double number() const {
    if (!value_.is_number()) fail("expected a number");
    const double v = value_.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }
  double positive() const {
    const double v = number();
    if (!(v > 0.0)) fail("expected a positive number");
    return v;
  }
  double nonnegative() const {
    const double v = number();
    if (!(v >= 0.0)) fail("expected a nonnegative number");
    return v;
  }
  /// A number or the strings "inf"/"infinity".
  double extended() const {
    if (value_.is_string()) {
      const auto s = value_.get<std::string>();
      if (s == "inf" || s == "infinity") return kInfinity;
      fail("expected a number or \"inf\"");
    }
    return nonnegative();
  }
  std::int64_t integer(std::int64_t lo) const {
    if (!value_.is_number_integer()) fail("expected an integer");
    const auto v = value_.get<std::int64_t>();
    if (v < lo) fail("expected an integer >= " + std::to_string(lo));
    return v;
  }
  bool boolean() const {
    if (!value_.is_boolean()) fail("expected true or false");
    return value_.get<bool>();
  }
  std::string string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }
  Vector vector() const {
    if (value_.is_number()) return Vector::Constant(1, number());
    if (!value_.is_array() || value_.empty()) fail("expected a nonempty array of numbers");
    Vector out(static_cast<Index>(value_.size()));
    for (std::size_t i = 0; i < value_.size(); ++i) {
      if (!value_[i].is_number()) fail("expected a nonempty array of numbers");
      out(static_cast<Index>(i)) = value_[i].get<double>();
    }
    if (!out.allFinite()) fail("array entries must be finite");
    return out;
  }
  Matrix matrix() const {
    if (!value_.is_array() || value_.empty()) fail("expected a nonempty array of rows");
    const std::size_t cols = value_[0].is_array() ? value_[0].size() : 0;
    if (cols == 0) fail("expected a nonempty array of rows");
    Matrix out(static_cast<Index>(value_.size()), static_cast<Index>(cols));
    for (std::size_t r = 0; r < value_.size(); ++r) {
      const auto& row = value_[r];
      if (!row.is_array() || row.size() != cols) fail("rows must be arrays of equal length");
      for (std::size_t c = 0; c < cols; ++c) {
        if (!row[c].is_number()) fail("matrix entries must be numbers");
        out(static_cast<Index>(r), static_cast<Index>(c)) = row[c].get<double>();
      }
    }
    if (!out.allFinite()) fail("matrix entries must be finite");
    return out;
  }

 private:
  const json& value_;
  std::string path_;
  std::size_t offset_;
  const Source& src_;
};

Vector fit(const Vector& v, Index n, const Node& node) {
  if (v.size() == n) return v;
  if (v.size() == 1) return Vector::Constant(n, v(0));
  node.fail("expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
}

CompositePtr parse_h(const Node& node, Index n) {
  node.allow_only({"kind", "mu", "center", "lower", "upper", "radius", "omega"});
  const Node kind_node = node.child("kind");
  CompositeParams p;
  p.dimension = n;
  try {
    p.kind = composite_kind_from_string(kind_node.string());
  } catch (const std::invalid_argument&) {
    kind_node.fail("unknown composite kind '" + kind_node.string() +
                   "' (expected zero, quadratic, box, ball or l1)");
  }
  const auto get = [&](const char* key) { return node.child(key); };
  switch (p.kind) {
    case CompositeKind::zero:
      node.allow_only({"kind"});
      break;
    case CompositeKind::quadratic:
      node.allow_only({"kind", "mu", "center"});
      p.mu = get("mu").nonnegative();
      p.center = node.has("center") ? fit(get("center").vector(), n, get("center")) : Vector::Zero(n);
      break;
    case CompositeKind::box:
      node.allow_only({"kind", "lower", "upper"});
      p.lower = fit(get("lower").vector(), n, get("lower"));
      p.upper = fit(get("upper").vector(), n, get("upper"));
      break;
    case CompositeKind::ball:
      node.allow_only({"kind", "center", "radius"});
      p.center = node.has("center") ? fit(get("center").vector(), n, get("center")) : Vector::Zero(n);
      p.radius = get("radius").positive();
      break;
    case CompositeKind::scaled_l1:
      node.allow_only({"kind", "omega"});
      p.omega = get("omega").nonnegative();
      break;
  }
  try {
    return make_composite(p);
  } catch (const std::invalid_argument& e) {
    node.fail(e.what());
  }
}

WorstCaseParams parse_worst_case(const Node& node, std::initializer_list<const char*> allowed) {
  node.allow_only(allowed);
  WorstCaseParams p;
  p.M_f = node.child("M_f").positive();
  p.mu = node.has("mu") ? node.child("mu").nonnegative() : 0.0;
  p.R0 = node.child("R0").positive();
  p.eps_bar = node.child("eps_bar").positive();
  p.n = static_cast<Index>(node.child("n").integer(1));
  return p;
}

InstanceConfig parse_instance(const Node& node, std::uint64_t seed) {
  node.require_object();
  const std::string family = node.child("family").string();
  InstanceConfig out;
  out.family = family;
  try {
    if (family == "abs") {
      node.allow_only({"family", "x0"});
      const double x0 = node.has("x0") ? node.child("x0").number() : 1.0;
      out.instance = abs_instance(x0);
    } else if (family == "worst_case") {
      const WorstCaseParams p = parse_worst_case(node, {"family", "M_f", "mu", "R0", "eps_bar", "n"});
      out.worst_case = p;
      out.instance = make_worst_case(p);
    } else if (family == "max_affine" || family == "random_max_affine") {
      const bool random = family == "random_max_affine";
      if (random) {
        node.allow_only({"family", "n", "pieces", "M_f", "seed", "x0", "h", "reference_solve"});
      } else {
        node.allow_only({"family", "slopes", "intercepts", "x0", "h", "reference_solve", "phi_star", "x_star"});
      }
      MaxAffineSpec spec;
      std::uint64_t local_seed = seed;
      if (random) {
        if (node.has("seed")) local_seed = static_cast<std::uint64_t>(node.child("seed").integer(0));
        std::mt19937_64 rng(local_seed);
        const Index n = static_cast<Index>(node.child("n").integer(1));
        const Index pieces = static_cast<Index>(node.child("pieces").integer(2));
        const double M_f = node.has("M_f") ? node.child("M_f").positive() : 1.0;
        spec = random_bounded_max_affine(n, pieces, M_f, rng);
      } else {
        spec.slopes = node.child("slopes").matrix();
        spec.intercepts = node.child("intercepts").vector();
        if (spec.intercepts.size() != spec.slopes.rows()) {
          node.child("intercepts").fail("need one intercept per slope row");
        }
      }
      const Index n = spec.slopes.cols();
      auto f = make_max_affine(spec);
      CompositePtr h = node.has("h") ? parse_h(node.child("h"), n) : make_zero_term(n);
      Vector x0;
      if (node.has("x0")) {
        x0 = fit(node.child("x0").vector(), n, node.child("x0"));
      } else if (random) {
        std::mt19937_64 rng(local_seed ^ 0x9e3779b97f4a7c15ULL);
        std::normal_distribution<double> normal(0.0, 1.0);
        x0.resize(n);
        for (Index i = 0; i < n; ++i) x0(i) = normal(rng);
        x0 = h->prox(1.0, x0);
      } else {
        x0 = Vector::Zero(n);
      }
      std::optional<KnownOptimum> optimum;
      if (node.has("phi_star")) {
        if (!node.has("x_star")) node.fail("phi_star needs x_star");
        optimum = KnownOptimum{fit(node.child("x_star").vector(), n, node.child("x_star")),
                               node.child("phi_star").number()};
      }
      ProblemInstance inst = make_instance(f, h, x0, optimum, std::nullopt, family);
      const bool reference = node.has("reference_solve") ? node.child("reference_solve").boolean() : !optimum;
      if (reference && !optimum) inst = with_reference_optimum(inst);
      out.instance = std::move(inst);
    } else {
      node.child("family").fail("unknown family '" + family +
                                "' (expected abs, max_affine, random_max_affine or worst_case)");
    }
  } catch (const std::invalid_argument& e) {
    node.fail(e.what());
  }
  return out;
}

Termination parse_termination(const Node& node, Index n) {
  node.require_object();
  const std::string kind = node.child("kind").string();
  if (kind == "eps_solution") {
    node.allow_only({"kind", "eps_bar"});
    return Termination::eps_solution(node.child("eps_bar").positive());
  }
  if (kind == "triple") {
    node.allow_only({"kind", "rho_hat", "eps_hat"});
    return Termination::triple(node.child("rho_hat").positive(), node.child("eps_hat").positive());
  }
  if (kind == "pair") {
    node.allow_only({"kind", "eps_bar", "set"});
    const Node set = node.child("set");
    set.require_object();
    const std::string sk = set.child("kind").string();
    try {
      if (sk == "box") {
        set.allow_only({"kind", "lower", "upper"});
        return Termination::pair(node.child("eps_bar").positive(),
                                 BoundingSet::box(fit(set.child("lower").vector(), n, set.child("lower")),
                                                  fit(set.child("upper").vector(), n, set.child("upper"))));
      }
      if (sk == "ball") {
        set.allow_only({"kind", "center", "radius"});
        const Vector c = set.has("center") ? fit(set.child("center").vector(), n, set.child("center"))
                                           : Vector::Zero(n);
        return Termination::pair(node.child("eps_bar").positive(), BoundingSet::ball(c, set.child("radius").positive()));
      }
    } catch (const std::invalid_argument& e) {
      set.fail(e.what());
    }
    set.child("kind").fail("unknown set kind '" + sk + "' (expected box or ball)");
  }
  if (kind == "max_iterations") {
    node.allow_only({"kind"});
    return Termination::iterations();
  }
  node.child("kind").fail("unknown termination '" + kind + "' (expected eps_solution, triple, pair or max_iterations)");
}

std::vector<double> positive_list(const Node& node) {
  const Vector v = node.vector();
  for (Index i = 0; i < v.size(); ++i) {
    if (!(v(i) > 0.0)) node.fail("entries must be positive");
  }
  return {v.data(), v.data() + v.size()};
}

BenchConfig parse_bench(const Node& node) {
  node.allow_only({"lambdas", "range", "points", "C", "C_prime", "eps_bar", "solvers"});
  BenchConfig b;
  b.eps_bar = node.child("eps_bar").positive();
  if (node.has("lambdas") == node.has("range")) node.fail("give exactly one of 'lambdas' and 'range'");
  if (node.has("lambdas")) b.lambdas = positive_list(node.child("lambdas"));
  if (node.has("range")) {
    const Node r = node.child("range");
    const std::string s = r.string();
    if (s == "strong") b.range = RangeKind::strong;
    else if (s == "convex") b.range = RangeKind::convex;
    else if (s == "pair") b.range = RangeKind::pair;
    else r.fail("unknown range '" + s + "' (expected strong, convex or pair)");
  }
  if (node.has("points")) b.points = static_cast<int>(node.child("points").integer(1));
  if (node.has("C")) b.C = node.child("C").positive();
  if (node.has("C_prime")) b.C_prime = node.child("C_prime").positive();
  if (node.has("solvers")) {
    const Node s = node.child("solvers");
    if (!s.value().is_array() || s.value().empty()) s.fail("expected a nonempty array of solver names");
    for (const auto& item : s.value()) {
      if (!item.is_string()) s.fail("expected solver names");
      b.solvers.push_back(solver_from_string(item.get<std::string>(), [&](const std::string& m) { s.fail(m); }));
    }
  } else {
    b.solvers = {SolverKind::rpb, SolverKind::cscs};
  }
  return b;
}

BoundsConfig parse_bounds(const Node& node) {
  node.allow_only({"lambda", "M_f", "M_h", "mu", "d0", "eps_bar", "R0", "rho_hat", "eps_hat", "D_S", "C", "C_prime"});
  BoundsConfig b;
  b.lambda = node.child("lambda").positive();
  b.M_f = node.child("M_f").positive();
  if (node.has("M_h")) b.M_h = node.child("M_h").extended();
  if (node.has("mu")) b.mu = node.child("mu").nonnegative();
  b.d0 = node.child("d0").positive();
  b.eps_bar = node.child("eps_bar").positive();
  if (node.has("R0")) b.R0 = node.child("R0").positive();
  if (node.has("rho_hat")) b.rho_hat = node.child("rho_hat").positive();
  if (node.has("eps_hat")) b.eps_hat = node.child("eps_hat").positive();
  if (node.has("D_S")) b.D_S = node.child("D_S").positive();
  if (node.has("C")) b.C = node.child("C").positive();
  if (node.has("C_prime")) b.C_prime = node.child("C_prime").positive();
  return b;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source, const Overrides& overrides) {
  RunConfig cfg;
  cfg.source = source;
  try {
    cfg.raw = json::parse(text);
  } catch (const json::parse_error& e) {
    const Source src{text, source};
    std::ostringstream os;
    os << source << ":" << src.line_of(e.byte == 0 ? 0 : e.byte - 1) << ": malformed JSON: " << e.what();
    throw ConfigError(os.str());
  }
  const Source src{text, source};
  const Node root(cfg.raw, "", 0, src);
  root.allow_only({"instance", "solver", "lambda", "delta", "policy", "descent", "termination", "max_iterations",
                   "seed", "plot", "out", "bench", "lowerbound", "bounds"});

  if (root.has("seed")) cfg.seed = static_cast<std::uint64_t>(root.child("seed").integer(0));
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (root.has("max_iterations")) cfg.max_iterations = static_cast<int>(root.child("max_iterations").integer(1));
  if (overrides.max_iterations) cfg.max_iterations = *overrides.max_iterations;
  if (root.has("plot")) cfg.plot = root.child("plot").boolean();
  if (root.has("out")) cfg.out = root.child("out").string();
  if (root.has("solver")) {
    const Node s = root.child("solver");
    cfg.solver = solver_from_string(s.string(), [&](const std::string& m) { s.fail(m); });
  }
  if (root.has("lambda")) cfg.lambda = root.child("lambda").positive();
  if (root.has("delta")) cfg.delta = root.child("delta").positive();
  if (root.has("policy")) {
    const Node p = root.child("policy");
    try {
      cfg.policy = BundlePolicy::parse(p.string());
    } catch (const std::invalid_argument& e) {
      p.fail(e.what());
    }
  }
  if (root.has("descent")) {
    const Node d = root.child("descent");
    d.allow_only({"gamma", "alpha"});
    cfg.descent = SeriousRule::descent(d.has("gamma") ? d.child("gamma").positive() : 0.5,
                                       d.has("alpha") ? d.child("alpha").nonnegative() : 0.0);
    if (!(cfg.descent.gamma < 1.0)) d.child("gamma").fail("gamma must lie in (0, 1)");
    if (cfg.descent.alpha > 2.0) d.child("alpha").fail("alpha must lie in [0, 2]");
  }
  if (root.has("instance")) cfg.instance = parse_instance(root.child("instance"), cfg.seed);
  if (root.has("termination")) {
    if (!cfg.instance) root.child("termination").fail("termination needs an instance");
    cfg.termination = parse_termination(root.child("termination"), cfg.instance->instance.dimension());
    const auto kind = cfg.termination.kind;
    if (kind == TerminationKind::eps_solution && !cfg.instance->instance.optimum) {
      root.child("termination").fail("eps_solution needs an instance with a known optimum");
    }
    if ((kind == TerminationKind::triple || kind == TerminationKind::pair) && cfg.instance->instance.mu() > 0.0) {
      root.child("termination").fail("certificate termination needs mu = 0");
    }
    if (cfg.solver == SolverKind::cscs && (kind == TerminationKind::triple || kind == TerminationKind::pair)) {
      root.child("termination").fail("cscs supports eps_solution or max_iterations termination only");
    }
  }
  if (root.has("bench")) {
    if (!cfg.instance) root.child("bench").fail("bench needs an instance");
    if (!cfg.instance->instance.optimum) root.child("bench").fail("bench needs an instance with a known optimum");
    cfg.bench = parse_bench(root.child("bench"));
  }
  if (root.has("lowerbound")) {
    const Node lb = root.child("lowerbound");
    LowerBoundConfig l;
    l.params = parse_worst_case(lb, {"M_f", "mu", "R0", "eps_bar", "n", "lambdas"});
    l.lambdas = lb.has("lambdas") ? positive_list(lb.child("lambdas")) : std::vector<double>{1.0};
    cfg.lowerbound = l;
  }
  if (root.has("bounds")) cfg.bounds = parse_bounds(root.child("bounds"));
  return cfg;
}

RunConfig load_config(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path, overrides);
}

RpbConfig make_rpb_config(const RunConfig& cfg, double lambda) {
  RpbConfig r;
  r.lambda = lambda;
  r.delta = cfg.delta;
  r.policy = cfg.policy;
  r.termination = cfg.termination;
  r.max_iterations = cfg.max_iterations;
  if (cfg.solver == SolverKind::rpb_descent) r.serious_rule = cfg.descent;
  if (cfg.instance && cfg.instance->instance.optimum && cfg.termination.kind == TerminationKind::eps_solution) {
    r.track_eps = cfg.termination.eps_bar;
  }
  return r;
}

CscsConfig make_cscs_config(const RunConfig& cfg, double lambda) {
  CscsConfig c;
  c.lambda = lambda;
  c.termination = cfg.termination;
  c.max_iterations = cfg.max_iterations;
  return c;
}

}  // namespace bundlekit::cli
