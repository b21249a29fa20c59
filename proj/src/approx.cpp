#include "lgc/approx.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "lgc/error.hpp"
#include "lgc/io.hpp"

namespace lgc {

ApproxSet approx_set(const CarpetSpec& spec, double delta, std::size_t cap) {
  return {delta, stopping_rects(spec, delta, cap), spec.hash()};
}

namespace {

// Grid coordinates within 1e-9 of an integer are snapped onto it, so that
// cylinder edges sitting on grid lines do not leak into the next cell.
double snap(double q) {
  const double r = std::round(q);
  return std::abs(q - r) <= 1e-9 * std::max(1.0, std::abs(q)) ? r : q;
}

struct CellRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

CellRange cell_range(double from, double to, double delta, std::int64_t n) {
  const double q0 = snap(from / delta);
  const double q1 = snap(to / delta);
  auto lo = static_cast<std::int64_t>(std::floor(q0));
  auto hi = static_cast<std::int64_t>(std::ceil(q1)) - 1;
  if (hi < lo) hi = lo;
  lo = std::clamp<std::int64_t>(lo, 0, n - 1);
  hi = std::clamp<std::int64_t>(hi, 0, n - 1);
  return {lo, hi};
}

std::int64_t cells_per_axis(double delta) {
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(snap(1.0 / delta))));
}

template <class Sink>
void for_each_cell(const Rect& r, double delta, std::int64_t n, Sink&& sink) {
  const auto xs = cell_range(r.x0, r.x1(), delta, n);
  const auto ys = cell_range(r.y0, r.y1(), delta, n);
  for (auto u = xs.lo; u <= xs.hi; ++u) {
    for (auto v = ys.lo; v <= ys.hi; ++v) {
      sink(static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) +
           static_cast<std::uint64_t>(v));
    }
  }
}

void check_delta(double delta) {
  if (!(delta > 0.0) || !(delta <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1]");
  }
}

}  // namespace

std::uint64_t grid_count(const std::vector<Rect>& rects, double delta) {
  check_delta(delta);
  const auto n = cells_per_axis(delta);
  std::vector<std::vector<std::uint64_t>> per_thread(static_cast<std::size_t>(omp_get_max_threads()));
  const auto count = static_cast<std::ptrdiff_t>(rects.size());

#pragma omp parallel
  {
    auto& keys = per_thread[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
      for_each_cell(rects[static_cast<std::size_t>(k)], delta, n,
                    [&keys](std::uint64_t key) { keys.push_back(key); });
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  }

  std::vector<std::uint64_t> all;
  for (auto& keys : per_thread) {
    const auto mid = all.size();
    all.insert(all.end(), keys.begin(), keys.end());
    std::inplace_merge(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(mid), all.end());
  }
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all.size();
}

namespace serial {

std::uint64_t grid_count(const std::vector<Rect>& rects, double delta) {
  check_delta(delta);
  const auto n = cells_per_axis(delta);
  std::unordered_set<std::uint64_t> hit;
  for (const auto& r : rects) {
    for_each_cell(r, delta, n, [&hit](std::uint64_t key) { hit.insert(key); });
  }
  return hit.size();
}

}  // namespace serial

std::uint64_t box_count(const CarpetSpec& spec, double delta, std::size_t cap) {
  check_delta(delta);
  return grid_count(stopping_rects(spec, delta, cap), delta);
}

NDeltaCurve n_delta_curve(const CarpetSpec& spec, double delta_max, double delta_min, int steps,
                          std::size_t cap) {
  if (!(delta_min > 0.0 && delta_min < delta_max && delta_max <= 1.0) || steps < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "need 0 < delta_min < delta_max <= 1 and steps >= 2");
  }
  NDeltaCurve curve;
  const double ratio = std::log(delta_min / delta_max);
  for (int k = 0; k < steps; ++k) {
    double delta = delta_max * std::exp(ratio * k / (steps - 1));
    if (k == 0) delta = delta_max;
    if (k == steps - 1) delta = delta_min;
    curve.samples.push_back({delta, box_count(spec, delta, cap)});
  }
  return curve;
}

std::string render_svg(const std::vector<Rect>& rects) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"1024\" "
        "height=\"1024\">\n";
  for (const auto& r : rects) {
    os << "<rect x=\"" << format_double(r.x0) << "\" y=\"" << format_double(1.0 - r.y1())
       << "\" width=\"" << format_double(r.w) << "\" height=\"" << format_double(r.h)
       << "\" fill=\"black\" stroke=\"none\" opacity=\"1\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_svg_depth(const CarpetSpec& spec, int depth, std::size_t cap) {
  return render_svg(depth_rects(spec, depth, cap));
}

std::string render_svg_scale(const CarpetSpec& spec, double delta, std::size_t cap) {
  return render_svg(stopping_rects(spec, delta, cap));
}

}  // namespace lgc
