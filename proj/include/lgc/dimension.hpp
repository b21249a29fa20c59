#pragma once

#include "lgc/carpet.hpp"

namespace lgc {

struct DimensionResult {
  double s1 = 0.0;  // exponent with sum_{i in I} b_i^s1 = 1
  double s = 0.0;   // box dimension
  double residual_s1 = 0.0;
  double residual_s = 0.0;
  int iterations = 0;
};

inline constexpr double kDefaultDimensionTol = 1e-12;
inline constexpr int kBisectionCap = 200;

/// Solves sum over nonempty rows of b_i^s1 = 1 by bisection.
double solve_s1(const CarpetSpec& spec, double tol = kDefaultDimensionTol);

/// Solves sum_{i in I} sum_j b_i^s1 a_ij^(s - s1) = 1 for the box dimension.
/// Bisection runs on t = s - s1 so that s close to s1 loses no digits.
DimensionResult solve_bdim(const CarpetSpec& spec, double tol = kDefaultDimensionTol);

}  // namespace lgc
