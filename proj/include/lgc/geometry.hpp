#pragma once

#include <algorithm>
#include <cmath>

namespace lgc {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Closed axis-aligned rectangle [x0, x0 + w] x [y0, y0 + h].
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double w = 0.0;
  double h = 0.0;

  double x1() const { return x0 + w; }
  double y1() const { return y0 + h; }
  double diameter() const { return std::hypot(w, h); }
};

// Separations at or below this are treated as touching. Coordinates are
// sums of O(depth) rounded products inside the unit square, so genuine gaps
// are many orders of magnitude larger at any depth the library enumerates.
inline constexpr double kTouchTol = 1e-13;

// Relative tolerance under which two distances count as the same value.
inline constexpr double kTieTol = 1e-9;

/// Euclidean distance between two closed rectangles; 0 when they meet.
inline double rect_distance(const Rect& a, const Rect& b) {
  const double gx = std::max({0.0, b.x0 - a.x1(), a.x0 - b.x1()});
  const double gy = std::max({0.0, b.y0 - a.y1(), a.y0 - b.y1()});
  return std::hypot(gx, gy);
}

/// Closed threshold test `d <= delta` with the shared tie tolerance.
inline bool within(double d, double delta) {
  return d <= delta + kTieTol * delta || d <= kTouchTol;
}

}  // namespace lgc
