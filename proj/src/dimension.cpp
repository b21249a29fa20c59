#include "lgc/dimension.hpp"

#include <cmath>
#include <functional>

#include "lgc/error.hpp"

namespace lgc {

namespace {

struct Root {
  double x = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Bisection for a strictly decreasing f with f(lo) >= 0. The upper end is
// doubled until f(hi) <= 0.
Root bisect_decreasing(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double f_lo = f(lo);
  if (f_lo <= 0.0) return {lo, f_lo, 0};
  double f_hi = f(hi);
  int expansions = 0;
  while (f_hi > 0.0) {
    if (++expansions > 64) throw Error(ErrorCode::kNoConvergence, "cannot bracket root");
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    f_hi = f(hi);
  }
  if (f_hi == 0.0) return {hi, 0.0, 0};

  int it = 0;
  for (; it < kBisectionCap; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // interval exhausted at double resolution
    const double f_mid = f(mid);
    if (f_mid == 0.0) return {mid, 0.0, it + 1};
    if (f_mid > 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
    if (!(f_lo > 0.0 && f_hi < 0.0)) {
      throw Error(ErrorCode::kNoConvergence, "bracket lost its sign change");
    }
  }
  const Root best = std::abs(f_lo) <= std::abs(f_hi) ? Root{lo, f_lo, it} : Root{hi, f_hi, it};
  if (std::abs(best.residual) > tol) {
    throw Error(ErrorCode::kNoConvergence,
                "residual " + std::to_string(best.residual) + " above tolerance");
  }
  return best;
}

void require_attractor(const CarpetSpec& spec) {
  if (spec.empty_attractor()) throw Error(ErrorCode::kEmptyAttractor, "every row is empty");
}

Root solve_s1_root(const CarpetSpec& spec, double tol) {
  require_attractor(spec);
  const auto& rows = spec.nonempty_rows();
  if (rows.size() == 1) return {0.0, 0.0, 0};
  auto f = [&](double s) {
    double sum = 0.0;
    for (int i : rows) sum += std::pow(spec.b(i), s);
    return sum - 1.0;
  };
  return bisect_decreasing(f, 0.0, 2.0, tol);
}

bool fills_square(const CarpetSpec& spec) {
  if (static_cast<int>(spec.nonempty_rows().size()) != spec.row_count()) return false;
  for (const auto& row : spec.rows()) {
    double sum = 0.0;
    for (const auto& c : row.cells) sum += c.a;
    if (std::abs(sum - 1.0) > kValidationTol) return false;
  }
  return true;
}

}  // namespace

double solve_s1(const CarpetSpec& spec, double tol) { return solve_s1_root(spec, tol).x; }

DimensionResult solve_bdim(const CarpetSpec& spec, double tol) {
  const Root s1 = solve_s1_root(spec, tol);
  DimensionResult out;
  out.s1 = s1.x;
  out.residual_s1 = s1.residual;
  out.iterations = s1.iterations;

  if (fills_square(spec)) {
    out.s = 2.0;
    return out;
  }

  std::vector<double> weight;  // b_i^s1 per digit
  std::vector<double> width;
  for (const auto& d : spec.digits()) {
    weight.push_back(std::pow(spec.b(d.row), s1.x));
    width.push_back(spec.a(d));
  }
  auto f = [&](double t) {
    double sum = 0.0;
    for (std::size_t k = 0; k < weight.size(); ++k) sum += weight[k] * std::pow(width[k], t);
    return sum - 1.0;
  };
  const Root t = bisect_decreasing(f, 0.0, std::max(2.0 - s1.x, 0.5), tol);
  out.s = s1.x + t.x;
  out.residual_s = t.residual;
  out.iterations += t.iterations;
  return out;
}

}  // namespace lgc
