#pragma once
// Fixtures and brute-force oracles shared by the test binaries. Oracles are
// written against the definitions directly and avoid the library kernels
// they check.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "lgc/carpet.hpp"
#include "lgc/structure.hpp"

namespace fixture {

inline lgc::CarpetSpec cd() {
  return lgc::parse_spec(R"({"rows":[
    {"b":"1/3","cells":[{"a":"1/4","c":"0"},{"a":"1/4","c":"3/4"}]},
    {"b":"1/3","cells":[]},
    {"b":"1/3","cells":[{"a":"1/4","c":"0"},{"a":"1/4","c":"3/4"}]}]})");
}

inline lgc::CarpetSpec mcm() {
  return lgc::parse_spec(R"({"rows":[
    {"b":"1/2","cells":[{"a":"1/3","c":"0"},{"a":"1/3","c":"2/3"}]},
    {"b":"1/2","cells":[{"a":"1/3","c":"1/3"}]}]})");
}

inline lgc::CarpetSpec touching() {
  return lgc::parse_spec(R"({"rows":[
    {"b":"1/2","cells":[{"a":"1/4","c":"0"},{"a":"1/4","c":"1/4"}]},
    {"b":"1/2","cells":[]}]})");
}

inline lgc::CarpetSpec mixed() {
  return lgc::parse_spec(R"({"rows":[
    {"b":0.3,"cells":[{"a":0.2,"c":0},{"a":0.1,"c":0.5},{"a":0.25,"c":0.75}]},
    {"b":0.2,"cells":[]},
    {"b":0.5,"cells":[{"a":0.3,"c":0.1},{"a":0.4,"c":0.6}]}]})");
}

inline lgc::CarpetSpec point() {
  return lgc::parse_spec(R"({"rows":[{"b":"1/2","cells":[{"a":"1/4","c":"0"}]},{"b":"1/2","cells":[]}]})");
}

/// Closed intervals of the level-k ternary Cantor construction as height-0
/// rects on the x axis.
inline std::vector<lgc::Rect> cantor_rects(int level) {
  std::vector<double> lo{0.0};
  double w = 1.0;
  for (int k = 0; k < level; ++k) {
    w /= 3.0;
    std::vector<double> next;
    for (double x : lo) {
      next.push_back(x);
      next.push_back(x + 2.0 * w);
    }
    lo = std::move(next);
  }
  std::vector<lgc::Rect> out;
  for (double x : lo) out.push_back({x, 0.0, w, 0.0});
  return out;
}

struct UniformGrid {
  int m = 0;  // rows, each of height 1/m
  int n = 0;  // columns, each of width 1/n
  int t = 0;  // nonempty rows
  int cells = 0;
  lgc::CarpetSpec spec;
};

/// Random cell pattern on an m x n grid with at least one cell.
inline UniformGrid random_uniform_grid(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_n(3, 6);
  UniformGrid g;
  g.n = pick_n(rng);
  g.m = std::uniform_int_distribution<int>(2, g.n - 1)(rng);
  std::bernoulli_distribution on(0.5);
  std::vector<lgc::RowSpec> rows(static_cast<std::size_t>(g.m));
  while (g.cells == 0) {
    g.t = 0;
    for (auto& row : rows) {
      row.b = 1.0 / g.m;
      row.cells.clear();
      for (int j = 0; j < g.n; ++j) {
        if (on(rng)) row.cells.push_back({1.0 / g.n, static_cast<double>(j) / g.n});
      }
      g.cells += static_cast<int>(row.cells.size());
      g.t += row.cells.empty() ? 0 : 1;
    }
  }
  g.spec = lgc::CarpetSpec(rows);
  return g;
}

/// Random valid spec with unequal ratios. `empty_row` forces one empty row.
inline lgc::CarpetSpec random_spec(std::mt19937_64& rng, bool empty_row) {
  std::uniform_int_distribution<int> pick_m(2, 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int m = pick_m(rng);
  std::vector<double> weights(static_cast<std::size_t>(m));
  for (auto& w : weights) w = 0.5 + u(rng);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const int skip = empty_row ? std::uniform_int_distribution<int>(0, m - 1)(rng) : -1;
  std::vector<lgc::RowSpec> rows;
  for (int i = 0; i < m; ++i) {
    lgc::RowSpec row;
    row.b = weights[static_cast<std::size_t>(i)] / total;
    if (i != skip) {
      const int n = std::uniform_int_distribution<int>(1, 3)(rng);
      // Widths below b, laid out left to right with random spacing.
      std::vector<double> a(static_cast<std::size_t>(n));
      for (auto& x : a) x = row.b * (0.2 + 0.7 * u(rng));
      double used = std::accumulate(a.begin(), a.end(), 0.0);
      if (used > 0.95) {
        for (auto& x : a) x *= 0.95 / used;
        used = 0.95;
      }
      double room = 1.0 - used;
      double c = 0.0;
      for (double w : a) {
        const double space = room * u(rng) / n;
        c += space;
        room -= space;
        row.cells.push_back({w, c});
        c += w;
      }
    }
    rows.push_back(row);
  }
  // Normalise the rounding in the last height.
  double rest = 1.0;
  for (int i = 0; i + 1 < m; ++i) rest -= rows[static_cast<std::size_t>(i)].b;
  rows.back().b = rest;
  for (auto& cell : rows.back().cells) cell.a = std::min(cell.a, 0.9 * rest);
  return lgc::CarpetSpec(rows);
}

inline std::vector<lgc::Rect> random_rects(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  std::uniform_real_distribution<double> size(0.0, 0.05);
  std::bernoulli_distribution degenerate(0.2);
  std::vector<lgc::Rect> out;
  for (std::size_t k = 0; k < n; ++k) {
    lgc::Rect r{pos(rng), pos(rng), size(rng), size(rng)};
    if (degenerate(rng)) r.w = 0.0;
    out.push_back(r);
  }
  return out;
}

}  // namespace fixture

namespace oracle {

/// log_m t + log_n (N / t), the box dimension of a uniform grid carpet.
inline double grid_dimension(int m, int n, int t, int cells) {
  return std::log(static_cast<double>(t)) / std::log(static_cast<double>(m)) +
         std::log(static_cast<double>(cells) / t) / std::log(static_cast<double>(n));
}

inline double distance(const lgc::Rect& p, const lgc::Rect& q) {
  const double dx = std::max({0.0, p.x0 - (q.x0 + q.w), q.x0 - (p.x0 + p.w)});
  const double dy = std::max({0.0, p.y0 - (q.y0 + q.h), q.y0 - (p.y0 + p.h)});
  return std::sqrt(dx * dx + dy * dy);
}

/// Components of the closed threshold graph by repeated flood fill over all
/// pairs. `slack` is the relative allowance used by the library.
inline std::size_t components(const std::vector<lgc::Rect>& rects, double delta,
                              double slack = 1e-9) {
  const std::size_t n = rects.size();
  std::vector<int> seen(n, 0);
  std::size_t count = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (std::size_t u = 0; u < n; ++u) {
        if (seen[u]) continue;
        const double d = distance(rects[v], rects[u]);
        if (d <= delta * (1.0 + slack) || d <= 1e-13) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
  }
  return count;
}

/// Kruskal over all pairs; returns MST edge weights sorted descending.
inline std::vector<double> mst_weights(const std::vector<lgc::Rect>& rects) {
  struct Edge {
    double w;
    std::size_t a, b;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    for (std::size_t j = i + 1; j < rects.size(); ++j) edges.push_back({distance(rects[i], rects[j]), i, j});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.w < y.w; });
  std::vector<std::size_t> parent(rects.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v];
    return v;
  };
  std::vector<double> out;
  for (const auto& e : edges) {
    const auto ra = root(e.a), rb = root(e.b);
    if (ra == rb) continue;
    parent[ra] = rb;
    out.push_back(e.w);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

/// Grid cells of side delta meeting some rect in positive area, found by
/// testing every cell of the grid against every rect.
inline std::size_t grid_cells(const std::vector<lgc::Rect>& rects, double delta) {
  const int n = static_cast<int>(std::ceil(1.0 / delta - 1e-9));
  const double eps = 1e-9 * delta;
  std::size_t count = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const double x0 = u * delta, x1 = std::min(1.0, (u + 1) * delta);
      const double y0 = v * delta, y1 = std::min(1.0, (v + 1) * delta);
      for (const auto& r : rects) {
        const double ox = std::min(x1, r.x0 + r.w) - std::max(x0, r.x0);
        const double oy = std::min(y1, r.y0 + r.h) - std::max(y0, r.y0);
        if (ox > eps && oy > eps) {
          ++count;
          break;
        }
      }
    }
  }
  return count;
}

/// Every column choice composed left to right, f_1 o ... o f_k [0,1].
inline void fiber_walk(const lgc::CarpetSpec& spec, const lgc::Coding& coding, std::size_t k, double lo,
                       double scale, std::vector<lgc::Interval>& out) {
  if (k == coding.size()) {
    out.push_back({lo, lo + scale});
    return;
  }
  for (const auto& cell : spec.row(coding[k]).cells) {
    fiber_walk(spec, coding, k + 1, lo + scale * cell.c, scale * cell.a, out);
  }
}

inline std::vector<lgc::Interval> fiber_intervals(const lgc::CarpetSpec& spec, const lgc::Coding& coding) {
  std::vector<lgc::Interval> out;
  fiber_walk(spec, coding, 0, 0.0, 1.0, out);
  std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) { return p.lo < q.lo; });
  return out;
}

inline double point_to_intervals(double x, const std::vector<lgc::Interval>& set) {
  double best = INFINITY;
  for (const auto& iv : set) best = std::min(best, std::max({0.0, iv.lo - x, x - iv.hi}));
  return best;
}

/// Hausdorff distance by sampling both sets at spacing `step`; the result
/// underestimates the truth by at most `step`.
inline double hausdorff_sampled(const std::vector<lgc::Interval>& a, const std::vector<lgc::Interval>& b,
                                double step) {
  auto directed = [step](const auto& from, const auto& to) {
    double worst = 0.0;
    for (const auto& iv : from) {
      const int n = std::max(1, static_cast<int>(std::ceil(iv.length() / step)));
      for (int k = 0; k <= n; ++k) {
        worst = std::max(worst, point_to_intervals(iv.lo + iv.length() * k / n, to));
      }
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

/// Stopping row-words of the projection at `delta`, generated breadth-first
/// and sorted bottom to top by their image offset.
inline std::vector<lgc::Coding> stopping_row_words(const lgc::CarpetSpec& spec, double delta) {
  struct Node {
    lgc::Coding word;
    double prod;
    double offset;
  };
  std::vector<Node> open{{{}, 1.0, 0.0}}, done;
  while (!open.empty()) {
    std::vector<Node> next;
    for (const auto& node : open) {
      for (int i : spec.nonempty_rows()) {
        Node child{node.word, node.prod * spec.b(i), node.offset + node.prod * spec.d(i)};
        child.word.push_back(i);
        (child.prod <= delta * (1 + 1e-12) ? done : next).push_back(child);
      }
    }
    open = std::move(next);
  }
  std::sort(done.begin(), done.end(), [](const Node& p, const Node& q) { return p.offset < q.offset; });
  std::vector<lgc::Coding> out;
  for (auto& n : done) out.push_back(n.word);
  return out;
}

}  // namespace oracle
