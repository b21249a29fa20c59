#include "lgc/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lgc/error.hpp"

namespace lgc {

namespace {

// Absolute slack for point-in-cylinder and interval overlap tests.
constexpr double kEps = 1e-14;

void require_attractor(const CarpetSpec& spec) {
  if (spec.empty_attractor()) throw Error(ErrorCode::kEmptyAttractor, "every row is empty");
}

}  // namespace

// ---------------------------------------------------------------------------
// IntervalSet

IntervalSet::IntervalSet(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.lo <= intervals_.back().hi + kTouchTol) {
      intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
    } else {
      intervals_.push_back(iv);
    }
  }
}

double IntervalSet::distance_to(double x) const {
  // First interval with hi >= x.
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                             [](const Interval& iv, double v) { return iv.hi < v; });
  double best = std::numeric_limits<double>::infinity();
  if (it != intervals_.end()) best = std::max(0.0, it->lo - x);
  if (it != intervals_.begin()) best = std::min(best, x - std::prev(it)->hi);
  return best;
}

bool IntervalSet::contains(const IntervalSet& other, double tol) const {
  for (const auto& iv : other.intervals()) {
    auto it = std::lower_bound(intervals_.begin(), intervals_.end(), iv.lo - tol,
                               [](const Interval& a, double v) { return a.hi < v; });
    if (it == intervals_.end() || it->lo > iv.lo + tol || it->hi < iv.hi - tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Projection and codings

double ProjectionIFS::min() const {
  return offsets.front() / (1.0 - ratios.front());
}

double ProjectionIFS::max() const {
  return offsets.back() / (1.0 - ratios.back());
}

ProjectionIFS project_F(const CarpetSpec& spec) {
  require_attractor(spec);
  ProjectionIFS f;
  for (int i : spec.nonempty_rows()) {
    f.rows.push_back(i);
    f.ratios.push_back(spec.b(i));
    f.offsets.push_back(spec.d(i));
  }
  return f;
}

void check_coding(const CarpetSpec& spec, const Coding& coding) {
  if (coding.empty()) throw Error(ErrorCode::kInvalidCoding, "empty coding");
  for (int i : coding) {
    if (i < 0 || i >= spec.row_count() || spec.row(i).cells.empty()) {
      throw Error(ErrorCode::kInvalidCoding,
                  "row " + std::to_string(i + 1) + " is not a nonempty row");
    }
  }
}

std::vector<Coding> y_codings(const CarpetSpec& spec, double y, int depth) {
  require_attractor(spec);
  if (depth < 1) throw Error(ErrorCode::kInvalidArgument, "depth must be >= 1");
  std::vector<Coding> found;
  Coding word;
  auto visit = [&](auto&& self, double lo, double len) -> void {
    if (y < lo - kEps || y > lo + len + kEps) return;
    if (static_cast<int>(word.size()) == depth) {
      found.push_back(word);
      return;
    }
    for (int i : spec.nonempty_rows()) {
      word.push_back(i);
      self(self, lo + len * spec.d(i), len * spec.b(i));
      word.pop_back();
    }
  };
  visit(visit, 0.0, 1.0);
  if (found.empty()) {
    throw Error(ErrorCode::kNotInProjection, "no admissible prefix of depth " +
                                                 std::to_string(depth) + " covers the height");
  }
  if (found.size() > 2) {
    throw Error(ErrorCode::kVerificationFailed, "more than two codings for one height");
  }
  return found;
}

// ---------------------------------------------------------------------------
// Fibers

IntervalSet fiber_approx(const CarpetSpec& spec, const Coding& coding, std::size_t cap) {
  check_coding(spec, coding);
  IntervalSet current({{0.0, 1.0}});
  for (auto it = coding.rbegin(); it != coding.rend(); ++it) {
    const auto& cells = spec.row(*it).cells;
    if (current.size() * cells.size() > cap) {
      throw Error(ErrorCode::kBudgetExceeded, "fiber approximation exceeds interval cap");
    }
    std::vector<Interval> next;
    next.reserve(current.size() * cells.size());
    for (const auto& cell : cells) {
      for (const auto& iv : current.intervals()) {
        next.push_back({cell.c + cell.a * iv.lo, cell.c + cell.a * iv.hi});
      }
    }
    current = IntervalSet(std::move(next));
  }
  return current;
}

namespace {

double directed_hausdorff(const IntervalSet& from, const IntervalSet& to) {
  double worst = 0.0;
  for (const auto& iv : from.intervals()) {
    worst = std::max({worst, to.distance_to(iv.lo), to.distance_to(iv.hi)});
  }
  // Inside a gap of `to` the distance peaks at the gap midpoint.
  const auto& t = to.intervals();
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double mid = 0.5 * (t[k].hi + t[k + 1].lo);
    if (from.distance_to(mid) == 0.0) worst = std::max(worst, to.distance_to(mid));
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const IntervalSet& a, const IntervalSet& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kEmptyInput, "Hausdorff distance of empty set");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

HdCheck check_hd_bound(const CarpetSpec& spec, const Coding& first, const Coding& second,
                       int depth) {
  if (depth < 1 || static_cast<int>(first.size()) < depth ||
      static_cast<int>(second.size()) < depth) {
    throw Error(ErrorCode::kInvalidCoding, "codings must have at least `depth` digits");
  }
  HdCheck out;
  while (out.shared < depth && first[static_cast<std::size_t>(out.shared)] ==
                                   second[static_cast<std::size_t>(out.shared)]) {
    ++out.shared;
  }
  if (out.shared == depth) {
    throw Error(ErrorCode::kCodingsNotDiverging, "codings agree on all compared digits");
  }
  const Coding a(first.begin(), first.begin() + depth);
  const Coding b(second.begin(), second.begin() + depth);
  out.distance = hausdorff_distance(fiber_approx(spec, a), fiber_approx(spec, b));
  out.bound = 1.0;
  for (int k = 0; k < out.shared; ++k) out.bound *= spec.a_star(a[static_cast<std::size_t>(k)]);
  out.slack = 2.0 * std::pow(spec.a_max(), depth);
  out.ok = out.distance <= out.bound + out.slack + 1e-12;
  return out;
}

// ---------------------------------------------------------------------------
// Gap intervals inside fibers

Interval row_gap(const CarpetSpec& spec, int row) {
  const auto& cells = spec.row(row).cells;
  Interval best{0.0, 0.0};
  double cursor = 0.0;
  auto offer = [&best](double lo, double hi) {
    if (hi - lo > best.length() + kTouchTol) best = {lo, hi};
  };
  for (const auto& cell : cells) {
    offer(cursor, cell.c);
    cursor = std::max(cursor, cell.c + cell.a);
  }
  offer(cursor, 1.0);
  return best;
}

double gap_interval_lambda(const CarpetSpec& spec) {
  require_attractor(spec);
  double shortest = std::numeric_limits<double>::infinity();
  for (int i : spec.nonempty_rows()) shortest = std::min(shortest, row_gap(spec, i).length());
  return spec.a_min() * shortest / 3.0;
}

namespace {

double overlap(double lo, double hi, const Interval& open) {
  return std::min(hi, open.hi) - std::max(lo, open.lo);
}

}  // namespace

bool fiber_meets(const CarpetSpec& spec, const Coding& coding, Interval open) {
  check_coding(spec, coding);
  const auto depth = coding.size();
  auto visit = [&](auto&& self, double lo, double len, std::size_t level) -> bool {
    if (overlap(lo, lo + len, open) <= kEps) return false;
    // Every cylinder holds points of the fiber; one strictly inside settles it.
    if (lo > open.lo + kEps && lo + len < open.hi - kEps) return true;
    if (level == depth) return true;
    for (const auto& cell : spec.row(coding[level]).cells) {
      if (self(self, lo + len * cell.c, len * cell.a, level + 1)) return true;
    }
    return false;
  };
  return visit(visit, 0.0, 1.0, 0);
}

GapInterval find_gap_interval(const CarpetSpec& spec, const Coding& coding, Interval window) {
  check_coding(spec, coding);
  if (!(window.lo < window.hi) || window.lo < -kEps || window.hi > 1.0 + kEps) {
    throw Error(ErrorCode::kInvalidArgument, "window must be a nonempty subinterval of [0,1]");
  }
  GapInterval out;
  out.lambda = gap_interval_lambda(spec);
  const double third = window.length() / 3.0;
  const Interval middle{window.lo + third, window.lo + 2.0 * third};
  if (!fiber_meets(spec, coding, middle)) {
    out.gap = middle;
    out.branch = 1;
    return out;
  }

  // Largest cylinder meeting the middle third and lying inside the window.
  // Its parent, when it has one, must stick out of the window.
  struct Best {
    double lo = 0.0, len = -1.0;
    std::size_t level = 0;
  } best;
  const auto depth = coding.size();
  auto visit = [&](auto&& self, double lo, double len, std::size_t level) -> void {
    if (len <= best.len || overlap(lo, lo + len, middle) <= kEps) return;
    const bool inside = lo >= window.lo - kEps && lo + len <= window.hi + kEps;
    if (inside) {
      if (level < depth) best = {lo, len, level};
      return;
    }
    if (level == depth) return;
    for (const auto& cell : spec.row(coding[level]).cells) {
      self(self, lo + len * cell.c, len * cell.a, level + 1);
    }
  };
  visit(visit, 0.0, 1.0, 0);
  if (best.len < 0.0) {
    throw Error(ErrorCode::kNoGapFound, "coding too short to resolve the window");
  }
  const int row = coding[best.level];
  const Interval g = row_gap(spec, row);
  if (g.length() <= 0.0) {
    throw Error(ErrorCode::kNoGapFound,
                "row " + std::to_string(row + 1) + " has no uncovered interval");
  }
  out.gap = {best.lo + best.len * g.lo, best.lo + best.len * g.hi};
  out.branch = 2;
  out.level = static_cast<int>(best.level);
  return out;
}

// ---------------------------------------------------------------------------
// Delta-connected classes of the projection

DeltaClasses idelta_classes(const CarpetSpec& spec, double delta, std::size_t cap) {
  const ProjectionIFS f = project_F(spec);
  if (!(delta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "delta must be positive");
  const double f_lo = f.min();
  const double f_hi = f.max();

  DeltaClasses out;
  out.delta = delta;
  std::vector<Interval> hulls;  // exact hull of phi_w(F)
  Coding word;
  auto visit = [&](auto&& self, double offset, double scale) -> void {
    if (!word.empty() && reached_scale(scale, delta)) {
      if (out.words.size() >= cap) {
        throw Error(ErrorCode::kBudgetExceeded, "stopping row-words exceed cap");
      }
      out.words.push_back(word);
      hulls.push_back({offset + scale * f_lo, offset + scale * f_hi});
      return;
    }
    for (int i : spec.nonempty_rows()) {
      word.push_back(i);
      self(self, offset + scale * spec.d(i), scale * spec.b(i));
      word.pop_back();
    }
  };
  visit(visit, 0.0, 1.0);

  // Blocks are ordered bottom to top with disjoint interiors, so the
  // delta-connection graph is connected exactly across consecutive blocks.
  for (std::size_t k = 0; k < out.words.size(); ++k) {
    if (k == 0 || !within(std::max(0.0, hulls[k].lo - hulls[k - 1].hi), delta)) {
      out.classes.emplace_back();
    }
    out.classes.back().push_back(k);
  }
  for (const auto& c : out.classes) out.max_class = std::max(out.max_class, c.size());
  return out;
}

double projection_gap(const CarpetSpec& spec) {
  double best = 0.0;
  double cursor = 0.0;
  for (int i : spec.nonempty_rows()) {
    best = std::max(best, spec.d(i) - cursor);
    cursor = spec.d(i) + spec.b(i);
  }
  return std::max(best, 1.0 - cursor);
}

double class_size_bound(const CarpetSpec& spec) {
  const double eta = projection_gap(spec);
  if (eta <= kValidationTol) return std::numeric_limits<double>::infinity();
  double b_star = 1.0;
  for (const auto& r : spec.rows()) b_star = std::min(b_star, r.b);
  return 2.0 / (eta * b_star * b_star);
}

// ---------------------------------------------------------------------------

double h_delta(const CarpetSpec& spec, double delta) {
  require_attractor(spec);
  if (!(delta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "delta must be positive");
  // Both products depend only on how often each row occurs, so the search
  // runs over multisets (nondecreasing row sequences). A multiset is a
  // stopping word in some order iff its height product P has reached the
  // scale while P / b_i has not, for some row i it contains.
  const auto& rows = spec.nonempty_rows();
  double b_low = 1.0;
  for (int i : rows) b_low = std::min(b_low, spec.b(i));
  double best = 0.0;
  // Words of length one always stop, even when delta >= 1.
  auto visit = [&](auto&& self, std::size_t from, double b_prod, double r_prod, double b_used,
                   int length) -> void {
    if (length > 0 && reached_scale(b_prod, delta) &&
        (length == 1 || !reached_scale(b_prod / b_used, delta))) {
      best = std::max(best, r_prod);
    }
    for (std::size_t k = from; k < rows.size(); ++k) {
      const int i = rows[k];
      const double next = b_prod * spec.b(i);
      // Every stopping product exceeds delta times the smallest height.
      if (length > 0 && next <= delta * b_low * (1.0 - 1e-12)) continue;
      self(self, k, next, r_prod * spec.a_star(i) / spec.b(i), std::min(b_used, spec.b(i)), length + 1);
    }
  };
  visit(visit, 0, 1.0, 1.0, 1.0, 0);
  return best;
}

}  // namespace lgc
