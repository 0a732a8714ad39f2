#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bundlekit/oracles.hpp"
#include "bundlekit/worst_case.hpp"

using namespace bundlekit;

TEST(WorstCase, CaseA2) {
  const WorstCaseParams p{1.0, 0.0, 1.0, 1.0 / 16.0, 8};
  const auto d = design_worst_case(p);
  EXPECT_EQ(d.tag, WorstCaseTag::a2);
  EXPECT_EQ(d.k0, 4);
  EXPECT_NEAR(d.gamma, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(d.tau, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(d.R, 1.0, 1e-15);
  EXPECT_NEAR(d.x_star_norm, 1.0, 1e-12);
  EXPECT_NEAR(d.phi_star, -1.0 / 6.0, 1e-15);
}

TEST(WorstCase, CaseB2) {
  const WorstCaseParams p{1.0, 1.0, 4.0, 1.0 / 32.0, 16};
  const auto d = design_worst_case(p);
  EXPECT_EQ(d.tag, WorstCaseTag::b2);
  EXPECT_EQ(d.k0, 8);
  EXPECT_NEAR(d.gamma, 1.0, 1e-15);
  EXPECT_EQ(d.tau, 0.0);
  EXPECT_NEAR(d.x_star_norm, 1.0 / (2.0 * std::sqrt(2.0)), 1e-12);
  EXPECT_NEAR(d.phi_star, -1.0 / 16.0, 1e-15);
  // d0 <= R0
  EXPECT_LE(std::sqrt(8.0 * p.eps_bar / p.mu), p.R0);
  EXPECT_LE(d.x_star_norm, p.R0);
}

TEST(WorstCase, CaseA1) {
  const WorstCaseParams p{1.0, 0.0, 1.0, 1.0, 4};
  const auto d = design_worst_case(p);
  EXPECT_EQ(d.tag, WorstCaseTag::a1);
  EXPECT_EQ(d.gamma, 0.0);
  EXPECT_NEAR(d.tau, 1.0, 1e-15);
  EXPECT_EQ(d.x_star_norm, 0.0);
  EXPECT_EQ(d.phi_star, 0.0);
  const auto inst = make_worst_case(p);
  EXPECT_EQ(evaluate_phi(inst, Vector::Zero(4)), 0.0);
}

TEST(WorstCase, CaseB1) {
  const WorstCaseParams p{1.0, 100.0, 1.0, 1.0, 4};
  EXPECT_EQ(design_worst_case(p).tag, WorstCaseTag::b1);
}

TEST(WorstCase, DimensionTooSmall) {
  const WorstCaseParams p{1.0, 0.0, 1.0, 1.0 / 80.0, 64};
  EXPECT_EQ(design_worst_case(p).k0, 100);
  EXPECT_THROW(make_worst_case(p), std::invalid_argument);
  EXPECT_THROW(make_worst_case(WorstCaseParams{1.0, 0.0, -1.0, 0.1, 8}), std::invalid_argument);
}

namespace bundlekit {
void PrintTo(const WorstCaseParams& p, std::ostream* os) {
  *os << "M_f " << p.M_f << " mu " << p.mu << " R0 " << p.R0 << " eps " << p.eps_bar << " n " << p.n;
}
}  // namespace bundlekit

class WorstCaseProperties : public ::testing::TestWithParam<WorstCaseParams> {};

TEST_P(WorstCaseProperties, ConstructedOptimumAndStructure) {
  const WorstCaseParams p = GetParam();
  const auto d = design_worst_case(p);
  const auto inst = make_worst_case(p);
  ASSERT_TRUE(inst.optimum.has_value());
  EXPECT_NEAR(evaluate_phi(inst, inst.optimum->x), d.phi_star, 1e-10);
  EXPECT_NEAR(inst.optimum->x.norm(), d.x_star_norm, 1e-12);
  EXPECT_LE(inst.M_f(), p.M_f + 1e-12);

  // Convexity: no nearby point improves on x*, so it is the global minimizer.
  std::mt19937_64 prng(17);
  std::normal_distribution<double> dir(0.0, 1.0);
  for (int s = 0; s < 200; ++s) {
    Vector v(p.n);
    for (Index i = 0; i < p.n; ++i) v(i) = dir(prng);
    const double scale = std::pow(10.0, -1.0 - 4.0 * (s % 5) / 4.0);
    EXPECT_GE(evaluate_phi(inst, inst.optimum->x + scale * v / v.norm()), d.phi_star - 1e-13);
  }

  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<Index> pick(0, d.k0 - 1);
  const Index n = p.n;
  for (int s = 0; s < 1000; ++s) {
    Vector x(n);
    for (Index i = 0; i < n; ++i) x(i) = 2.0 * normal(rng);
    EXPECT_LE(inst.f->subgradient(x).norm(), d.gamma + d.tau * d.R + 1e-12);

    // Nonnegativity when coordinates k0..n (1-based) vanish.
    Vector y = x;
    y.tail(n - d.k0 + 1).setZero();
    EXPECT_GE(evaluate_phi(inst, y), -1e-15);

    // Sparsity propagation: support in the first k coordinates, k < k0.
    const Index k = pick(rng);
    Vector z = Vector::Zero(n);
    for (Index i = 0; i < k; ++i) z(i) = normal(rng);
    const Vector g = inst.f->subgradient(z);
    for (Index i = k + 1; i < n; ++i) EXPECT_EQ(g(i), 0.0) << "k=" << k << " i=" << i;
  }
}

INSTANTIATE_TEST_SUITE_P(Cases, WorstCaseProperties,
                         ::testing::Values(WorstCaseParams{1.0, 0.0, 1.0, 1.0 / 16.0, 8},
                                           WorstCaseParams{1.0, 1.0, 4.0, 1.0 / 32.0, 16},
                                           WorstCaseParams{2.0, 0.0, 1.5, 0.02, 400}),
                         [](const ::testing::TestParamInfo<WorstCaseParams>& info) {
                           return "n" + std::to_string(info.param.n);
                         });
