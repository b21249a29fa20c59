#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lgc/carpet.hpp"

namespace lgc {

/// Finite cover of the attractor by the stopping cylinders at `delta`.
struct ApproxSet {
  double delta = 0.0;
  std::vector<Rect> rects;
  std::string spec_hash;
};

struct NDeltaSample {
  double delta = 0.0;
  std::uint64_t count = 0;
};

/// Samples ordered by strictly decreasing delta.
struct NDeltaCurve {
  std::vector<NDeltaSample> samples;
};

ApproxSet approx_set(const CarpetSpec& spec, double delta,
                     std::size_t cap = default_cylinder_cap());

/// Number of cells of the delta-grid anchored at the origin that meet one of
/// `rects` in a set of positive area. A degenerate rectangle counts the
/// half-open cell containing it. Cells never leave [0, 1]^2.
std::uint64_t grid_count(const std::vector<Rect>& rects, double delta);

/// Covering count of the attractor at scale `delta`: grid cells hit by the
/// delta-stopping approximation.
std::uint64_t box_count(const CarpetSpec& spec, double delta,
                        std::size_t cap = default_cylinder_cap());

/// box_count at `steps` geometrically spaced scales from delta_max down to
/// delta_min, both endpoints included.
NDeltaCurve n_delta_curve(const CarpetSpec& spec, double delta_max, double delta_min, int steps,
                          std::size_t cap = default_cylinder_cap());

/// One <rect> per depth-`depth` cylinder in a unit viewBox, y flipped so
/// the first row sits at the bottom.
std::string render_svg_depth(const CarpetSpec& spec, int depth,
                             std::size_t cap = default_cylinder_cap());
/// Same, for the stopping cylinders at `delta`.
std::string render_svg_scale(const CarpetSpec& spec, double delta,
                             std::size_t cap = default_cylinder_cap());
std::string render_svg(const std::vector<Rect>& rects);

namespace serial {
std::uint64_t grid_count(const std::vector<Rect>& rects, double delta);
}  // namespace serial

}  // namespace lgc
