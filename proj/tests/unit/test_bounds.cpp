#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bundlekit/bounds.hpp"
#include "bundlekit/certificates.hpp"
#include "bundlekit/solvers.hpp"
#include "instances.hpp"

using namespace bundlekit;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST(Bounds, Constants) {
  EXPECT_NEAR(kNullConstant, std::pow(16.0, 4.0 / 3.0), 1e-12);
  EXPECT_DOUBLE_EQ(lambda_tilde(2.0, 0.5), 1.0);
}

TEST(Bounds, EasyRecur) {
  EXPECT_NEAR(easyrecur_threshold(1.0, 0.5, 5.0), 10.0, 1e-12);
  EXPECT_NEAR(easyrecur_threshold(2.0, 1.0, 3.0), 2.0 * std::log(4.0), 1e-12);
  EXPECT_NEAR(easyrecur_threshold(1.0 + 1e-9, 0.5, 5.0), 10.0, 1e-6);
}

TEST(Bounds, EasyRecurMonotone) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> U(0.01, 5.0);
  for (int s = 0; s < 1000; ++s) {
    const double theta = 1.0 + U(rng);
    const double d1 = U(rng), d2 = U(rng);
    const double a1 = U(rng), a2 = U(rng);
    const double alpha = U(rng), delta = U(rng);
    EXPECT_GE(easyrecur_threshold(theta, std::min(d1, d2), alpha),
              easyrecur_threshold(theta, std::max(d1, d2), alpha));
    EXPECT_LE(easyrecur_threshold(theta, delta, std::min(a1, a2)),
              easyrecur_threshold(theta, delta, std::max(a1, a2)));
  }
}

TEST(Bounds, SeriousAndNull) {
  EXPECT_NEAR(bound_serious(1.0, 0.5, 0.0, 0.1), 21.0, 1e-12);
  EXPECT_NEAR(bound_serious(1.0, 1.0, 1.0, 0.1), 2.0 * std::log(11.0) + 1.0, 1e-12);
  EXPECT_NEAR(bound_null(1.0, 1.0, 0.0, 0.0, 1.0, 0.1), 2.0 * kNullConstant / 0.1 + 1.0, 1e-9);
  EXPECT_NEAR(bound_null(1.0, 1.0, 0.0, 0.0, 1.0, 0.1), 807.35, 0.01);
  // M_h = inf leaves only the d0 branch
  EXPECT_NEAR(bound_null(1.0, 1.0, kInfinity, 1.0, 1.0, 0.1),
              (2.0 * kNullConstant * 0.5 + 40.0 * std::sqrt(2.0)) / 0.1 + 1.0, 1e-9);
  EXPECT_THROW(bound_null(1.0, 1.0, kInfinity, 0.0, kInfinity, 0.1), std::domain_error);
  const double total = bound_total(1.0, 1.0, 0.0, 0.0, 1.0, 0.1);
  EXPECT_NEAR(total, (2.0 * kNullConstant * 1.0 / 0.1 + 1.0) * bound_serious(1.0, 1.0, 0.0, 0.1), 1e-9);
  EXPECT_NEAR(null_rate_constant(0.5, 1.0, 1.0), kNullConstant, 1e-12);
}

TEST(Bounds, Cscs) {
  EXPECT_DOUBLE_EQ(bound_cscs(1.0, 0.025, 0.0, 1.0, 0.1), 401.0);
  EXPECT_THROW(bound_cscs(1.0, 0.03, 0.0, 1.0, 0.1), std::domain_error);
  const double mu = 0.5, lambda = 0.02;
  const double expected = std::floor(std::min(1.0 / (lambda * 0.1),
                                              (1 + lambda * mu) / (lambda * mu) * std::log(mu / 0.1 + 1.0))) + 1.0;
  EXPECT_DOUBLE_EQ(bound_cscs(1.0, lambda, mu, 1.0, 0.1), expected);
}

TEST(Bounds, LambdaRanges) {
  RangeInputs in;
  in.M_f = 1.0;
  in.d0 = 1.0;
  in.eps_bar = 0.1;
  in.C = 2.0;
  const auto convex = lambda_range(RangeKind::convex, in);
  EXPECT_FALSE(convex.empty);
  EXPECT_NEAR(convex.lower, 0.05, 1e-15);
  EXPECT_NEAR(convex.upper, 20.0, 1e-12);

  RangeInputs weak;
  weak.M_f = 1.0;
  weak.d0 = 0.5;
  weak.eps_bar = 1.0;
  weak.C = 1.0;
  const auto strong = lambda_range(RangeKind::strong, weak);
  EXPECT_TRUE(strong.empty);
  EXPECT_FALSE(strong.reason.empty());

  RangeInputs pair;
  pair.M_f = 1.0;
  pair.M_h = 0.0;
  pair.D_S = 2.0;
  pair.eps_bar = 0.05;
  const auto pr = lambda_range(RangeKind::pair, pair);
  EXPECT_NEAR(pr.lower, 0.05, 1e-15);
  EXPECT_NEAR(pr.upper, 80.0, 1e-12);
  EXPECT_NEAR(pr.midpoint(), 2.0, 1e-12);
}

TEST(Bounds, LowerAndComparators) {
  EXPECT_EQ(lower_bound(1.0, 0.0, 1.0, 1.0 / 80.0), 51);
  EXPECT_EQ(lower_bound(1.0, 1.0, 4.0, 1.0 / 32.0), 5);
  EXPECT_NEAR(comparator_convex(1.0, 1.0, 1.0, 0.1), 16000.0, 1e-8);
  EXPECT_FALSE(comparator_strong(1.0, 0.0, 1.0, 1.0, 0.1, 1.0, 1.5).has_value());
  EXPECT_FALSE(comparator_strong(1.0, 1.0, 1.0, 1.0, 0.1, 1.0, 1.5).has_value());
  EXPECT_TRUE(comparator_strong(1.0, 0.1, 1.0, 1.0, 0.1, 1.0, 1.5).has_value());
}

TEST(Bounds, Triple) {
  EXPECT_NEAR(bound_triple(1.0, 1.0, 0.0, 1.0, 0.1, 0.1), 120.0, 1e-9);
  EXPECT_NEAR(bound_triple(1.0, 1.0, 0.0, 1.0, 1e12, 0.1), 100.0 + 10.0 + 10.0, 1e-9);
  EXPECT_THROW(bound_triple(1.0, 1.0, kInfinity, 1.0, 0.1, 0.1), std::domain_error);
  EXPECT_THROW(bound_triple(1.0, 1.0, 0.0, 1.0, 0.1, 0.1, 0.5), std::domain_error);
}

TEST(Bounds, Report) {
  const auto r = make_bound_report(0.025, 1.0, 0.0, 0.0, 1.0, 0.1, 1.0);
  ASSERT_TRUE(r.cscs.has_value());
  EXPECT_DOUBLE_EQ(*r.cscs, 401.0);
  ASSERT_TRUE(r.serious.has_value());
  ASSERT_TRUE(r.lower.has_value());
  EXPECT_TRUE(r.reduction_regime == (0.025 <= 0.05 / 2.0));
}

TEST(Certificates, AbsoluteValueRun) {
  const auto inst = bundlekit::testing::abs_instance(0.2);
  RpbConfig cfg;
  cfg.lambda = 1.0;
  cfg.delta = 0.05;
  cfg.max_iterations = 2;
  const auto trace = rpb_run(inst, cfg);
  const auto tri = certificate_triple(trace, 1);
  EXPECT_NEAR(tri.v(0), 0.2, 1e-10);
  EXPECT_NEAR(tri.eps, 0.0, 1e-10);
  EXPECT_NEAR(trace.serious[1].delta, -0.02, 1e-10);
  EXPECT_THROW(certificate_triple(trace, 2), std::invalid_argument);
  EXPECT_THROW(certificate_triple(trace, 0), std::invalid_argument);
}

TEST(Certificates, RefusesStrongConvexity) {
  const auto inst = bundlekit::testing::random_instance(2, 4, bundlekit::testing::TermKind::quadratic, 3);
  RpbConfig cfg;
  cfg.max_iterations = 20;
  const auto trace = rpb_run(inst, cfg);
  ASSERT_GE(trace.serious_count(), 1u);
  EXPECT_THROW(certificate_triple(trace, 1), std::domain_error);
}

TEST(Certificates, StationaryCenterGivesZeroResidual) {
  const auto tri = make_triple(vec({1.0, 2.0}), vec({1.0, 2.0}), vec({1.0, 2.0}), 0.3, 3, 0.5);
  EXPECT_EQ(tri.v.norm(), 0.0);
  EXPECT_NEAR(tri.eps, 0.1, 1e-15);
}

TEST(Certificates, Pairs) {
  SolutionTriple zero{vec({0.3}), vec({0.0}), 0.04, 1};
  EXPECT_DOUBLE_EQ(certificate_pair(zero, BoundingSet::ball(vec({0.0}), 1.0)).eta, 0.04);

  SolutionTriple t{vec({0.0}), vec({0.2}), 0.0, 1};
  EXPECT_NEAR(certificate_pair(t, BoundingSet::ball(vec({0.0}), 1.0)).eta, 0.2, 1e-15);

  SolutionTriple b{vec({0.5}), vec({0.1}), 0.01, 1};
  EXPECT_NEAR(certificate_pair(b, BoundingSet::box(vec({-1.0}), vec({1.0}))).eta, 0.16, 1e-15);
  EXPECT_DOUBLE_EQ(BoundingSet::box(Vector::Constant(4, -0.5), Vector::Constant(4, 0.5)).diameter(), 2.0);
}

TEST(Certificates, RandomRunSubgradientInequality) {
  std::mt19937_64 rng(10);
  auto f = make_max_affine(bundlekit::testing::random_bounded_max_affine(2, 6, 1.0, rng));
  const auto inst = make_instance(f, make_zero_term(2), vec({2.0, -1.0}));
  RpbConfig cfg;
  cfg.lambda = 0.7;
  cfg.delta = 0.01;
  cfg.max_iterations = 400;
  const auto trace = rpb_run(inst, cfg);
  ASSERT_GE(trace.serious_count(), 5u);
  const auto tri = certificate_triple(trace, 5);
  EXPECT_GE(tri.eps, -1e-12);
  const auto report = check_eps_subgradient(inst, tri, 1000, 3);
  EXPECT_TRUE(report.passed) << report.worst_margin;
  EXPECT_EQ(report.samples, 1000u);
}
