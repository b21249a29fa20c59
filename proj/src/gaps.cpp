#include "lgc/gaps.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "lgc/error.hpp"
#include "lgc/union_find.hpp"

namespace lgc {

std::uint64_t GapSequence::total() const {
  std::uint64_t n = 0;
  for (const auto& e : entries) n += e.multiplicity;
  return n;
}

std::vector<double> GapSequence::flatten() const {
  std::vector<double> out;
  out.reserve(total());
  for (const auto& e : entries) out.insert(out.end(), e.multiplicity, e.value);
  return out;
}

GapSequence aggregate(std::vector<GapEntry> raw) {
  std::stable_sort(raw.begin(), raw.end(),
                   [](const GapEntry& a, const GapEntry& b) { return a.value > b.value; });
  GapSequence out;
  for (const auto& e : raw) {
    if (e.value <= kTouchTol || e.multiplicity == 0) continue;
    if (!out.entries.empty()) {
      auto& lead = out.entries.back();
      if (lead.value - e.value <= kTieTol * lead.value) {
        lead.multiplicity += e.multiplicity;
        continue;
      }
    }
    out.entries.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Threshold components on a hash grid

namespace {

using CellKey = std::uint64_t;

CellKey pack(std::int64_t cx, std::int64_t cy) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
         static_cast<std::uint32_t>(cy);
}

// Buckets rectangles by the cell of their lower-left corner. With cell size
// at least both delta and every extent, delta-close pairs sit in cells at
// most two apart per axis.
class HashGrid {
 public:
  HashGrid(const std::vector<Rect>& rects, double delta) : rects_(rects) {
    double extent = 0.0;
    for (const auto& r : rects) extent = std::max({extent, r.w, r.h});
    cell_ = std::max({delta, extent, 1e-12});
    for (std::size_t i = 0; i < rects.size(); ++i) {
      buckets_[pack(cx(rects[i]), cy(rects[i]))].push_back(static_cast<std::uint32_t>(i));
    }
  }

  template <class Sink>
  void for_each_neighbor(std::size_t i, double delta, Sink&& sink) const {
    const auto& r = rects_[i];
    const auto x = cx(r);
    const auto y = cy(r);
    for (std::int64_t dx = -2; dx <= 2; ++dx) {
      for (std::int64_t dy = -2; dy <= 2; ++dy) {
        const auto it = buckets_.find(pack(x + dx, y + dy));
        if (it == buckets_.end()) continue;
        for (auto j : it->second) {
          if (j > i && within(rect_distance(r, rects_[j]), delta)) sink(j);
        }
      }
    }
  }

 private:
  std::int64_t cx(const Rect& r) const { return static_cast<std::int64_t>(std::floor(r.x0 / cell_)); }
  std::int64_t cy(const Rect& r) const { return static_cast<std::int64_t>(std::floor(r.y0 / cell_)); }

  const std::vector<Rect>& rects_;
  double cell_ = 1.0;
  std::unordered_map<CellKey, std::vector<std::uint32_t>> buckets_;
};

void check_threshold(double delta) {
  if (!(delta >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "delta must be >= 0");
}

}  // namespace

std::size_t n_delta_components(const std::vector<Rect>& rects, double delta) {
  check_threshold(delta);
  if (rects.empty()) return 0;
  const HashGrid grid(rects, delta);
  const auto n = static_cast<std::ptrdiff_t>(rects.size());
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> edges(
      static_cast<std::size_t>(omp_get_max_threads()));

#pragma omp parallel
  {
    auto& mine = edges[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 256)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      grid.for_each_neighbor(static_cast<std::size_t>(i), delta, [&](std::uint32_t j) {
        mine.emplace_back(static_cast<std::uint32_t>(i), j);
      });
    }
  }

  UnionFind uf(rects.size());
  for (const auto& part : edges) {
    for (const auto& [a, b] : part) uf.unite(a, b);
  }
  return uf.components();
}

std::vector<std::size_t> delta_component_labels(const std::vector<Rect>& rects, double delta) {
  check_threshold(delta);
  std::vector<std::size_t> labels(rects.size());
  if (rects.empty()) return labels;
  const HashGrid grid(rects, delta);
  UnionFind uf(rects.size());
  for (std::size_t i = 0; i < rects.size(); ++i) {
    grid.for_each_neighbor(i, delta, [&](std::uint32_t j) { uf.unite(i, j); });
  }
  for (std::size_t i = 0; i < rects.size(); ++i) labels[i] = uf.find(i);
  return labels;
}

// ---------------------------------------------------------------------------
// Minimum spanning tree by Boruvka phases over a bounding-box tree

namespace {

struct Edge {
  double w = std::numeric_limits<double>::infinity();
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  // Total order so that Boruvka never closes a cycle on equal weights.
  friend bool operator<(const Edge& x, const Edge& y) {
    if (x.w != y.w) return x.w < y.w;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }
};

Edge make_edge(double w, std::size_t i, std::size_t j) {
  const auto lo = static_cast<std::uint32_t>(std::min(i, j));
  const auto hi = static_cast<std::uint32_t>(std::max(i, j));
  return {w, lo, hi};
}

class BoxTree {
 public:
  static constexpr std::size_t kLeafSize = 8;

  explicit BoxTree(const std::vector<Rect>& rects) : rects_(rects), order_(rects.size()) {
    std::iota(order_.begin(), order_.end(), std::uint32_t{0});
    nodes_.reserve(2 * rects.size() / kLeafSize + 2);
    build(0, rects.size());
    node_comp_.resize(nodes_.size());
  }

  /// Marks every node whose rectangles all share one component.
  void label(const std::vector<std::uint32_t>& comp) {
    comp_ = &comp;
    for (std::size_t k = nodes_.size(); k-- > 0;) {
      const auto& nd = nodes_[k];
      if (nd.left < 0) {
        const auto first = comp[order_[nd.begin]];
        bool uniform = true;
        for (auto p = nd.begin + 1; p < nd.end && uniform; ++p) uniform = comp[order_[p]] == first;
        node_comp_[k] = uniform ? static_cast<std::int64_t>(first) : -1;
      } else {
        const auto l = node_comp_[static_cast<std::size_t>(nd.left)];
        const auto r = node_comp_[static_cast<std::size_t>(nd.right)];
        node_comp_[k] = (l == r) ? l : -1;
      }
    }
  }

  /// Lightest edge from rectangle `i` to another component, if lighter than
  /// `best`.
  void nearest_foreign(std::size_t i, Edge& best) const { visit(0, i, best); }

 private:
  struct Node {
    Rect box;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::size_t begin = 0;
    std::size_t end = 0;
  };

  std::int32_t build(std::size_t begin, std::size_t end) {
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;
    for (auto p = begin; p < end; ++p) {
      const auto& r = rects_[order_[p]];
      x0 = std::min(x0, r.x0);
      y0 = std::min(y0, r.y0);
      x1 = std::max(x1, r.x1());
      y1 = std::max(y1, r.y1());
    }
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back({Rect{x0, y0, x1 - x0, y1 - y0}, -1, -1, begin, end});
    if (end - begin <= kLeafSize) return id;

    const bool split_x = (x1 - x0) >= (y1 - y0);
    const auto mid = begin + (end - begin) / 2;
    auto centre = [&](std::uint32_t k) {
      const auto& r = rects_[k];
      return split_x ? r.x0 + 0.5 * r.w : r.y0 + 0.5 * r.h;
    };
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::uint32_t a, std::uint32_t b) {
                       const double ca = centre(a), cb = centre(b);
                       return ca != cb ? ca < cb : a < b;
                     });
    const auto l = build(begin, mid);
    const auto r = build(mid, end);
    nodes_[static_cast<std::size_t>(id)].left = l;
    nodes_[static_cast<std::size_t>(id)].right = r;
    return id;
  }

  void visit(std::int32_t k, std::size_t i, Edge& best) const {
    const auto& comp = *comp_;
    const auto own = static_cast<std::int64_t>(comp[i]);
    const auto& nd = nodes_[static_cast<std::size_t>(k)];
    if (node_comp_[static_cast<std::size_t>(k)] == own) return;
    const auto& q = rects_[i];
    // The box extents are rounded once more than the rectangles inside, so
    // prune with a hair of slack to keep equal-weight candidates reachable.
    if (rect_distance(q, nd.box) > best.w + 1e-15) return;
    if (nd.left < 0) {
      for (auto p = nd.begin; p < nd.end; ++p) {
        const auto j = order_[p];
        if (comp[j] == comp[i]) continue;
        const Edge e = make_edge(rect_distance(q, rects_[j]), i, j);
        if (e < best) best = e;
      }
      return;
    }
    const double dl = rect_distance(q, nodes_[static_cast<std::size_t>(nd.left)].box);
    const double dr = rect_distance(q, nodes_[static_cast<std::size_t>(nd.right)].box);
    if (dl <= dr) {
      visit(nd.left, i, best);
      visit(nd.right, i, best);
    } else {
      visit(nd.right, i, best);
      visit(nd.left, i, best);
    }
  }

  const std::vector<Rect>& rects_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
  std::vector<std::int64_t> node_comp_;
  const std::vector<std::uint32_t>* comp_ = nullptr;
};

void require_rects(const std::vector<Rect>& rects) {
  if (rects.empty()) throw Error(ErrorCode::kEmptyInput, "no rectangles");
}

}  // namespace

GapSequence gap_sequence_mst(const std::vector<Rect>& rects) {
  require_rects(rects);
  const std::size_t n = rects.size();
  BoxTree tree(rects);
  UnionFind uf(n);
  std::vector<GapEntry> weights;
  weights.reserve(n - 1);
  std::vector<std::uint32_t> comp(n);

  while (uf.components() > 1) {
    // Group rectangles by component root.
    for (std::size_t i = 0; i < n; ++i) comp[i] = static_cast<std::uint32_t>(uf.find(i));
    std::vector<std::uint32_t> roots;
    for (std::size_t i = 0; i < n; ++i) {
      if (comp[i] == i) roots.push_back(static_cast<std::uint32_t>(i));
    }
    std::vector<std::uint32_t> slot(n);
    for (std::size_t k = 0; k < roots.size(); ++k) slot[roots[k]] = static_cast<std::uint32_t>(k);
    std::vector<std::size_t> start(roots.size() + 1, 0);
    for (std::size_t i = 0; i < n; ++i) ++start[slot[comp[i]] + 1];
    for (std::size_t k = 0; k < roots.size(); ++k) start[k + 1] += start[k];
    std::vector<std::uint32_t> members(n);
    {
      auto fill = start;
      for (std::size_t i = 0; i < n; ++i) members[fill[slot[comp[i]]]++] = static_cast<std::uint32_t>(i);
    }
    tree.label(comp);

    std::vector<Edge> best(roots.size());
    const auto m = static_cast<std::ptrdiff_t>(roots.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < m; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      Edge e;
      for (auto p = start[kk]; p < start[kk + 1]; ++p) tree.nearest_foreign(members[p], e);
      best[kk] = e;
    }

    std::sort(best.begin(), best.end());
    for (const auto& e : best) {
      if (std::isfinite(e.w) && uf.unite(e.a, e.b)) weights.push_back({e.w, 1});
    }
  }
  return aggregate(std::move(weights));
}

namespace serial {

std::size_t n_delta_components(const std::vector<Rect>& rects, double delta) {
  check_threshold(delta);
  if (rects.empty()) return 0;
  const HashGrid grid(rects, delta);
  UnionFind uf(rects.size());
  for (std::size_t i = 0; i < rects.size(); ++i) {
    grid.for_each_neighbor(i, delta, [&](std::uint32_t j) { uf.unite(i, j); });
  }
  return uf.components();
}

// Dense Prim: O(n^2) distance evaluations, O(n) memory.
GapSequence gap_sequence_mst(const std::vector<Rect>& rects) {
  require_rects(rects);
  const std::size_t n = rects.size();
  std::vector<double> key(n, std::numeric_limits<double>::infinity());
  std::vector<char> done(n, 0);
  std::vector<GapEntry> weights;
  std::size_t current = 0;
  done[0] = 1;
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t next = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j]) continue;
      key[j] = std::min(key[j], rect_distance(rects[current], rects[j]));
      if (next == n || key[j] < key[next]) next = j;
    }
    weights.push_back({key[next], 1});
    done[next] = 1;
    current = next;
  }
  return aggregate(std::move(weights));
}

}  // namespace serial

GapSequence gap_sequence_bruteforce(const std::vector<Rect>& rects, std::size_t cap) {
  require_rects(rects);
  if (rects.size() > cap) {
    throw Error(ErrorCode::kOracleCapExceeded,
                std::to_string(rects.size()) + " rects above oracle cap " + std::to_string(cap));
  }
  struct Pair {
    double d;
    std::uint32_t a, b;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    for (std::size_t j = i + 1; j < rects.size(); ++j) {
      pairs.push_back({rect_distance(rects[i], rects[j]), static_cast<std::uint32_t>(i),
                       static_cast<std::uint32_t>(j)});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.d < y.d; });

  // Raising delta through each distinct distance d: the count just below d
  // is N(d-), after joining every pair at d it is N(d).
  UnionFind uf(rects.size());
  std::vector<GapEntry> jumps;
  for (std::size_t k = 0; k < pairs.size();) {
    const double d = pairs[k].d;
    const auto before = uf.components();
    for (; k < pairs.size() && pairs[k].d == d; ++k) uf.unite(pairs[k].a, pairs[k].b);
    if (before > uf.components()) jumps.push_back({d, before - uf.components()});
  }
  return aggregate(std::move(jumps));
}

// ---------------------------------------------------------------------------

CarpetGaps gap_sequence_of_carpet(const CarpetSpec& spec, double delta_res, std::size_t cap) {
  if (!(delta_res > 0.0 && delta_res <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta_res must lie in (0, 1]");
  }
  CarpetGaps out;
  out.delta_res = delta_res;
  out.cutoff = kStabilityMargin * delta_res;
  out.error_bar = 2.0 * delta_res;
  const auto rects = stopping_rects(spec, delta_res, cap);
  out.rect_count = rects.size();
  const auto full = gap_sequence_mst(rects);
  for (const auto& e : full.entries) {
    if (e.value >= out.cutoff) out.sequence.entries.push_back(e);
  }
  return out;
}

ScalingFit scaling_fit(const GapSequence& gaps, double s) {
  if (!(s > 0.0)) throw Error(ErrorCode::kInvalidArgument, "exponent must be positive");
  const auto total = gaps.total();
  if (total < 10 || gaps.entries.size() < 2) {
    throw Error(ErrorCode::kTooFewGaps, std::to_string(total) + " gaps in " +
                                            std::to_string(gaps.entries.size()) +
                                            " distinct values, need 10 in at least 2");
  }
  ScalingFit fit;
  fit.count = static_cast<std::size_t>(total);
  fit.ratio_min = std::numeric_limits<double>::infinity();
  fit.ratio_max = 0.0;
  // Regression takes one point per distinct value, at the first rank k
  // holding it; a plateau of tied gaps would otherwise outweigh the rest.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  std::uint64_t first = 1;
  for (const auto& e : gaps.entries) {
    const double x = std::log(static_cast<double>(first));
    const double y = std::log(e.value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    // alpha_k k^(1/s) is smallest at the first rank and largest at the last.
    const double lo = e.value * std::pow(static_cast<double>(first), 1.0 / s);
    const double hi = e.value * std::pow(static_cast<double>(first + e.multiplicity - 1), 1.0 / s);
    fit.ratio_min = std::min(fit.ratio_min, lo);
    fit.ratio_max = std::max(fit.ratio_max, hi);
    first += e.multiplicity;
  }
  const auto n = static_cast<double>(gaps.entries.size());
  const double vx = sxx - sx * sx / n;
  const double vy = syy - sy * sy / n;
  const double cxy = sxy - sx * sy / n;
  fit.slope = cxy / vx;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.r2 = vy > 0.0 ? (cxy * cxy) / (vx * vy) : 1.0;
  return fit;
}

}  // namespace lgc
