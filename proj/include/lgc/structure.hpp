#pragma once

// Vertical projection, horizontal fibers and the separation quantities that
// control uniform disconnectedness of a carpet with an empty row.

#include <cstddef>
#include <vector>

#include "lgc/carpet.hpp"

namespace lgc {

/// The self-similar system phi_i(y) = b_i y + d_i over the nonempty rows.
struct ProjectionIFS {
  std::vector<int> rows;  // zero-based spec row of each map
  std::vector<double> ratios;
  std::vector<double> offsets;

  /// Extremes of the attractor F (fixed points of the outermost maps).
  double min() const;
  double max() const;
};

/// Row itinerary of a height; digits are zero-based spec row indices.
using Coding = std::vector<int>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted, pairwise interior-disjoint closed intervals. Touching intervals
/// are merged on construction.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }

  /// Distance from `x` to the set; the set must be nonempty.
  double distance_to(double x) const;
  /// True when every point of `other` lies in this set (within `tol`).
  bool contains(const IntervalSet& other, double tol = 1e-12) const;

 private:
  std::vector<Interval> intervals_;
};

ProjectionIFS project_F(const CarpetSpec& spec);

/// Every admissible depth-`depth` prefix whose cylinder phi_w[0,1] holds `y`,
/// lexicographically. Never more than two. Throws NotInProjection.
std::vector<Coding> y_codings(const CarpetSpec& spec, double y, int depth);

/// Throws InvalidCoding unless every digit is a nonempty row.
void check_coding(const CarpetSpec& spec, const Coding& coding);

/// K_{i_1...i_k}: union over all column choices of f_1 o ... o f_k [0,1].
IntervalSet fiber_approx(const CarpetSpec& spec, const Coding& coding,
                         std::size_t cap = default_cylinder_cap());

/// Exact Hausdorff distance between finite interval unions. Throws
/// EmptyInput.
double hausdorff_distance(const IntervalSet& a, const IntervalSet& b);

struct HdCheck {
  double distance = 0.0;
  double bound = 0.0;  // product of a*_i over the shared prefix
  double slack = 0.0;  // 2 a_max^depth truncation allowance
  int shared = 0;      // length of the shared prefix
  bool ok = false;
};

/// Compares the depth-`depth` fibers of two codings against the product of
/// the widest cell ratios along their shared prefix.
HdCheck check_hd_bound(const CarpetSpec& spec, const Coding& first, const Coding& second,
                       int depth);

/// Widest open interval of [0,1] not covered by the cells of `row`
/// (zero-based). Length 0 when the cells cover [0,1].
Interval row_gap(const CarpetSpec& spec, int row);

/// a_* min_i |I_i| / 3 with I_i the row gaps of the nonempty rows.
double gap_interval_lambda(const CarpetSpec& spec);

struct GapInterval {
  Interval gap;         // open interval J
  double lambda = 0.0;  // guaranteed ratio |J| / |I|
  int branch = 1;       // 1: middle third is empty; 2: image of a row gap
  int level = 0;        // cylinder level of the enclosing set for branch 2
};

/// Finds an open J inside the open interval `window` that misses the fiber
/// K of `coding` with |J| >= lambda |window|. The coding is a finite prefix of
/// the infinite word; it must be long enough to resolve `window`. Throws
/// NoGapFound.
GapInterval find_gap_interval(const CarpetSpec& spec, const Coding& coding, Interval window);

/// Whether some depth-|coding| cylinder of the fiber meets the open interval
/// (lo, hi). A cylinder lying inside the window counts without descending.
bool fiber_meets(const CarpetSpec& spec, const Coding& coding, Interval open);

struct DeltaClasses {
  double delta = 0.0;
  std::vector<Coding> words;                    // stopping row-words, bottom to top
  std::vector<std::vector<std::size_t>> classes;  // indices into `words`
  std::size_t max_class = 0;                    // empirical L
};

/// Partitions the stopping row-words at `delta` into delta-connected classes
/// using the distances between the blocks phi_w(F).
DeltaClasses idelta_classes(const CarpetSpec& spec, double delta,
                            std::size_t cap = default_cylinder_cap());

/// Length of the widest interval of [0,1] missed by the nonempty row strips
/// (0 when every row is nonempty).
double projection_gap(const CarpetSpec& spec);

/// 2 / (eta b_*^2), the bound on class sizes when `projection_gap` is
/// positive; infinity otherwise.
double class_size_bound(const CarpetSpec& spec);

/// Largest product of a*_i / b_i over the stopping row-words at `delta`.
double h_delta(const CarpetSpec& spec, double delta);

}  // namespace lgc
