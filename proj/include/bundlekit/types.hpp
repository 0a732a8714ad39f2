#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace bundlekit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// floor that absorbs rounding just below an integer, e.g. 6400/64 evaluated as 99.9999...
inline double tolerant_floor(double x) {
  return std::floor(x + 1e-9 * std::max(1.0, std::abs(x)));
}

}  // namespace bundlekit
