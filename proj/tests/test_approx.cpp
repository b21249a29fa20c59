#include "doctest.h"

#include <cmath>
#include <random>
#include <regex>

#include "lgc/approx.hpp"
#include "lgc/dimension.hpp"
#include "support.hpp"

namespace {

std::size_t count_rect_elements(const std::string& svg) {
  std::size_t n = 0;
  for (std::size_t pos = svg.find("<rect"); pos != std::string::npos; pos = svg.find("<rect", pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("approx_set: sizes and hash") {
  const auto cd = fixture::cd();
  const auto set = lgc::approx_set(cd, 1.0 / 3.0);
  CHECK(set.rects.size() == 4);
  CHECK(set.spec_hash == cd.hash());
  CHECK(lgc::approx_set(cd, 1.0 / 27.0).rects.size() == 64);
  CHECK(lgc::approx_set(fixture::point(), 0.01).rects.size() == 1);
}

TEST_CASE("box_count: spec examples") {
  CHECK(lgc::box_count(fixture::point(), 0.1) == 1);
  CHECK(lgc::box_count(fixture::cd(), 1.0 / 3.0) == 4);
}

TEST_CASE("box_count agrees with the cell-by-cell oracle") {
  std::mt19937_64 rng(5);
  std::vector<lgc::CarpetSpec> specs{fixture::cd(), fixture::mcm(), fixture::mixed(), fixture::point()};
  for (int k = 0; k < 6; ++k) specs.push_back(fixture::random_spec(rng, k % 2 == 0));
  for (const auto& spec : specs) {
    for (double delta : {1.0 / 3.0, 0.1, 1.0 / 9.0, 1.0 / 27.0, 0.03}) {
      const auto rects = lgc::stopping_rects(spec, delta);
      CHECK(lgc::grid_count(rects, delta) == oracle::grid_cells(rects, delta));
    }
  }
}

TEST_CASE("grid_count: degenerate and random rects match the serial reference") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const auto rects = fixture::random_rects(rng, 300);
    for (double delta : {0.1, 0.037, 0.01}) {
      CHECK(lgc::grid_count(rects, delta) == lgc::serial::grid_count(rects, delta));
    }
  }
  // A point on a grid line belongs to the cell above and to the right.
  CHECK(lgc::grid_count({{0.5, 0.5, 0.0, 0.0}}, 0.25) == 1);
  CHECK(lgc::grid_count({{1.0, 1.0, 0.0, 0.0}}, 0.25) == 1);
}

TEST_CASE("property: grid count lies between row-word count and four per cylinder") {
  for (const auto& spec : {fixture::cd(), fixture::mcm(), fixture::mixed()}) {
    for (int k = 1; k <= 6; ++k) {
      const double delta = std::pow(spec.b_max(), k);
      const auto n_cyl = lgc::stopping_rects(spec, delta).size();
      const auto count = lgc::box_count(spec, delta);
      CHECK(count <= 4 * n_cyl);
      // Strips are at least b_min delta tall, so one grid row meets at most
      // 1/b_min + 2 of them.
      const double per_cell = 1.0 / spec.b_min() + 2.0;
      CHECK(static_cast<double>(count) * per_cell >=
            static_cast<double>(oracle::stopping_row_words(spec, delta).size()));
    }
  }
  // On CD at 3^-k every cylinder fits in one grid row, so the tighter
  // bounds hold as well.
  const auto cd = fixture::cd();
  for (int k = 1; k <= 5; ++k) {
    const double delta = std::pow(3.0, -k);
    const auto count = lgc::box_count(cd, delta);
    CHECK(count >= oracle::stopping_row_words(cd, delta).size());
    CHECK(count <= 2 * lgc::stopping_rects(cd, delta).size());
  }
}

TEST_CASE("property: box_count times delta^s stays in a band of ratio 32") {
  for (const auto& spec : {fixture::cd(), fixture::mcm(), fixture::mixed()}) {
    const double s = lgc::solve_bdim(spec).s;
    const auto curve = lgc::n_delta_curve(spec, 0.2, 0.002, 6);
    double lo = INFINITY, hi = 0.0;
    for (const auto& p : curve.samples) {
      const double v = static_cast<double>(p.count) * std::pow(p.delta, s);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(hi / lo <= 32.0);
  }
}

TEST_CASE("box-counting slope of CD is within 5% of s") {
  const auto cd = fixture::cd();
  const double s = lgc::solve_bdim(cd).s;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = 6;
  for (int k = 2; k <= 7; ++k) {
    const double x = -std::log(std::pow(3.0, -k));
    const double y = std::log(static_cast<double>(lgc::box_count(cd, std::pow(3.0, -k))));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::abs(slope - s) <= 0.05 * s);
}

TEST_CASE("n_delta_curve: endpoints, order and agreement with box_count") {
  const auto cd = fixture::cd();
  const auto curve = lgc::n_delta_curve(cd, 1.0 / 3.0, 1.0 / 27.0, 3);
  REQUIRE(curve.samples.size() == 3);
  CHECK(curve.samples.front().delta == 1.0 / 3.0);
  CHECK(curve.samples.back().delta == 1.0 / 27.0);
  CHECK(curve.samples[0].count == 4);
  for (const auto& p : curve.samples) CHECK(p.count == lgc::box_count(cd, p.delta));
  for (std::size_t k = 1; k < curve.samples.size(); ++k) {
    CHECK(curve.samples[k].delta < curve.samples[k - 1].delta);
  }
  for (const auto& p : lgc::n_delta_curve(fixture::point(), 0.5, 0.001, 5).samples) CHECK(p.count == 1);
  const auto mcm = lgc::n_delta_curve(fixture::mcm(), 0.5, 0.125, 5);
  for (std::size_t k = 1; k < mcm.samples.size(); ++k) CHECK(mcm.samples[k].count >= mcm.samples[k - 1].count);
}

TEST_CASE("render: rect counts and layout") {
  CHECK(count_rect_elements(lgc::render_svg_depth(fixture::mcm(), 1)) == 3);
  CHECK(count_rect_elements(lgc::render_svg_depth(fixture::cd(), 2)) == 16);
  CHECK(count_rect_elements(lgc::render_svg_depth(fixture::mixed(), 0)) == 1);
  CHECK(count_rect_elements(lgc::render_svg_scale(fixture::cd(), 1.0 / 27.0)) == 64);
  const auto svg = lgc::render_svg({{0.0, 0.0, 0.25, 0.5}});
  CHECK(svg.find("viewBox=\"0 0 1 1\"") != std::string::npos);
  // The bottom-left rect lands at y = 1 - 0.5 after the flip.
  CHECK(std::regex_search(svg, std::regex("y=\"0\\.5\"")));
}
