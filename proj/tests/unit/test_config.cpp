#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "config.hpp"
#include "report.hpp"

using namespace bundlekit;
using namespace bundlekit::cli;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "cfg.json", {});
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, AbsExample) {
  const auto cfg = load_config(std::string(BUNDLEKIT_TEST_DATA) + "/abs.json", {});
  ASSERT_TRUE(cfg.instance);
  EXPECT_EQ(cfg.instance->instance.dimension(), 1);
  EXPECT_DOUBLE_EQ(cfg.lambda, 1.0);
  EXPECT_DOUBLE_EQ(cfg.delta, 0.05);
  EXPECT_EQ(cfg.termination.kind, TerminationKind::eps_solution);
  EXPECT_EQ(cfg.max_iterations, 100);
}

TEST(Config, OverridesApply) {
  const auto cfg = load_config(std::string(BUNDLEKIT_TEST_DATA) + "/abs.json", {7u, 5});
  EXPECT_EQ(cfg.max_iterations, 5);
  EXPECT_EQ(cfg.seed, 7u);
}

TEST(Config, ErrorsCarryLine) {
  EXPECT_EQ(error_of("{\n  \"lambda\": 1,\n  \"bogus\": 2\n}"), "cfg.json:3: unknown key 'bogus'");
  EXPECT_NE(error_of("{\n  \"lambda\": -1\n}").find("cfg.json:2: lambda"), std::string::npos);
  EXPECT_NE(error_of("{\n  \"lambda\": 1,,\n}").find("cfg.json:2: malformed JSON"), std::string::npos);
  EXPECT_NE(error_of("{\"policy\": \"cap(0)\"}").find("policy"), std::string::npos);
}

TEST(Config, SemanticChecks) {
  // an eps target needs phi*
  EXPECT_FALSE(error_of(R"({"instance": {"family": "random_max_affine", "n": 2, "pieces": 3, "M_f": 1,
                           "reference_solve": false},
                           "termination": {"kind": "eps_solution", "eps_bar": 0.1}})").empty());
  EXPECT_FALSE(error_of(R"({"instance": {"family": "abs", "x0": 1}, "solver": "cscs",
                           "termination": {"kind": "triple", "rho_hat": 0.1, "eps_hat": 0.1}})").empty());
  EXPECT_TRUE(error_of(R"({"instance": {"family": "abs", "x0": 1}, "solver": "cscs",
                          "termination": {"kind": "eps_solution", "eps_bar": 0.1}})").empty());
}

TEST(Config, RandomFamilyIsSeeded) {
  const std::string text = R"({"instance": {"family": "random_max_affine", "n": 3, "pieces": 5, "M_f": 2}})";
  const auto a = parse_config(text, "a", {3u, std::nullopt});
  const auto b = parse_config(text, "b", {3u, std::nullopt});
  const auto c = parse_config(text, "c", {4u, std::nullopt});
  EXPECT_EQ(a.instance->instance.x0, b.instance->instance.x0);
  EXPECT_NE(a.instance->instance.x0, c.instance->instance.x0);
  EXPECT_DOUBLE_EQ(a.instance->instance.M_f(), 2.0);
  ASSERT_TRUE(a.instance->instance.optimum);
}

TEST(Config, BroadcastsScalarBounds) {
  const auto cfg = parse_config(R"({"instance": {"family": "random_max_affine", "n": 3, "pieces": 4, "M_f": 1,
                                    "h": {"kind": "box", "lower": -1, "upper": [1, 2, 3]}}})",
                                "x", {});
  const auto& h = *cfg.instance->instance.h;
  EXPECT_EQ(h.kind(), CompositeKind::box);
  EXPECT_TRUE(std::isinf(h.value(Vector::Constant(3, -1.5))));
  EXPECT_DOUBLE_EQ(h.value((Vector(3) << -1.0, 2.0, 3.0).finished()), 0.0);
}

TEST(Report, NumberFormat) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(kInfinity), "inf");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Report, TraceCsvAndCycles) {
  const auto cfg = load_config(std::string(BUNDLEKIT_TEST_DATA) + "/abs.json", {});
  const auto trace = rpb_run(cfg.instance->instance, make_rpb_config(cfg, cfg.lambda));
  std::ostringstream csv;
  write_trace_csv(trace, csv);
  std::istringstream in(csv.str());
  std::string header, row1, row2, extra;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  EXPECT_FALSE(static_cast<bool>(std::getline(in, extra)));
  EXPECT_EQ(header.rfind("j,k,kind,t_j,m_j,phi_xj,", 0), 0u);
  EXPECT_EQ(row1.rfind("1,0,null,0.5,", 0), 0u);
  EXPECT_EQ(row2.rfind("2,1,serious,", 0), 0u);
  EXPECT_EQ(cycle_lengths(trace), std::vector<int>{2});
  const std::string svg = render_svg(trace, "abs");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
}

TEST(Report, BoundJsonMarksInfinity) {
  const auto r = make_bound_report(1.0, 1.0, kInfinity, 0.0, 1.0, 0.1);
  const auto j = bound_report_json(r);
  EXPECT_EQ(j["M_h"], "inf");
  EXPECT_TRUE(j["bound_cscs"].is_null());
}
