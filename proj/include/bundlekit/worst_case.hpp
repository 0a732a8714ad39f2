#pragma once

#include <string_view>

#include "bundlekit/problem.hpp"

namespace bundlekit {

enum class WorstCaseTag { a1, a2, b1, b2 };

std::string_view to_string(WorstCaseTag tag);

struct WorstCaseParams {
  double M_f = 1.0;
  double mu = 0.0;
  double R0 = 1.0;
  double eps_bar = 0.1;
  Index n = 1;
};

/// Derived construction: f = gamma max_{i<k0} x_i + tau p_R, h = (mu/2)||x||^2, x0 = 0.
struct WorstCaseDesign {
  WorstCaseTag tag = WorstCaseTag::a1;
  double R = 1.0;
  Index k0 = 1;
  double gamma = 0.0;
  double tau = 0.0;
  double x_star_norm = 0.0;
  double phi_star = 0.0;
};

/// Case selection and parameters; valid for any n.
WorstCaseDesign design_worst_case(const WorstCaseParams& params);

/// Throws std::invalid_argument when n < k0 or the parameters are not positive.
ProblemInstance make_worst_case(const WorstCaseParams& params);

}  // namespace bundlekit
