#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lgc/carpet.hpp"
#include "lgc/geometry.hpp"

namespace lgc {

struct GapEntry {
  double value = 0.0;
  std::uint64_t multiplicity = 0;
};

/// Jump points of the delta-equivalence class count, largest first.
struct GapSequence {
  std::vector<GapEntry> entries;

  std::uint64_t total() const;
  /// alpha_1 >= alpha_2 >= ... with multiplicities expanded.
  std::vector<double> flatten() const;
};

/// Sorts descending and folds values within kTieTol (relative) of the
/// group's largest value into one entry. Values at or below kTouchTol are
/// dropped.
GapSequence aggregate(std::vector<GapEntry> raw);

/// Components of the graph joining rectangles at distance <= delta.
std::size_t n_delta_components(const std::vector<Rect>& rects, double delta);

/// Component label (a representative index) of every rectangle under the
/// same threshold graph.
std::vector<std::size_t> delta_component_labels(const std::vector<Rect>& rects, double delta);

/// Minimum-spanning-tree edge weights of the complete graph on `rects` under
/// rect_distance, as a gap sequence. Throws EmptyInput.
GapSequence gap_sequence_mst(const std::vector<Rect>& rects);

/// All-pairs reference: sweeps every distinct distance and records the drop
/// in the component count. Throws OracleCapExceeded above `cap` rects.
GapSequence gap_sequence_bruteforce(const std::vector<Rect>& rects, std::size_t cap = 500);

inline constexpr double kStabilityMargin = 4.0;

struct CarpetGaps {
  GapSequence sequence;  // entries >= cutoff only
  double delta_res = 0.0;
  double cutoff = 0.0;     // kStabilityMargin * delta_res
  double error_bar = 0.0;  // each value is exact to +- 2 delta_res
  std::size_t rect_count = 0;
};

CarpetGaps gap_sequence_of_carpet(const CarpetSpec& spec, double delta_res,
                                  std::size_t cap = default_cylinder_cap());

struct ScalingFit {
  double slope = 0.0;  // least squares of log alpha on log k, one point per distinct value
  double intercept = 0.0;
  double r2 = 0.0;
  double ratio_min = 0.0;  // extremes of alpha_k k^(1/s)
  double ratio_max = 0.0;
  std::size_t count = 0;  // gaps covered by the band
};

/// Throws TooFewGaps below 10 gaps or 2 distinct values.
ScalingFit scaling_fit(const GapSequence& gaps, double s);

namespace serial {
std::size_t n_delta_components(const std::vector<Rect>& rects, double delta);
GapSequence gap_sequence_mst(const std::vector<Rect>& rects);
}  // namespace serial

}  // namespace lgc
