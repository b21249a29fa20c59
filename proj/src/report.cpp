#include "lgc/report.hpp"

#include <cmath>

#include "lgc/error.hpp"
#include "lgc/structure.hpp"

namespace lgc {

Json to_json(const CarpetSpec& spec) {
  Json rows = Json::array();
  for (const auto& row : spec.rows()) {
    Json cells = Json::array();
    for (const auto& cell : row.cells) cells.push_back({{"a", cell.a}, {"c", cell.c}});
    rows.push_back({{"b", row.b}, {"cells", std::move(cells)}});
  }
  return {{"rows", std::move(rows)}};
}

Json to_json(const ValidationReport& report) {
  Json out = Json::array();
  for (const auto& v : report) {
    Json item;
    item["constraint"] = v.constraint;
    if (v.row > 0) item["row"] = v.row;
    if (v.col > 0) item["col"] = v.col;
    item["detail"] = v.detail;
    out.push_back(std::move(item));
  }
  return out;
}

Json to_json(const DimensionResult& dim) {
  Json out;
  out["s1"] = dim.s1;
  out["s"] = dim.s;
  out["residual_s1"] = dim.residual_s1;
  out["residual_s"] = dim.residual_s;
  out["iterations"] = dim.iterations;
  return out;
}

Json to_json(const TdResult& td) {
  Json out;
  out["kind"] = to_string(td.kind);
  out["depth"] = td.depth;
  out["diameter_bound"] = td.diameter_bound;
  out["bounds_by_depth"] = td.bounds;
  out["leaning_connected"] = td.leaning_connected;
  return out;
}

Json to_json(const EpsilonChain& chain, bool with_points) {
  Json out;
  out["epsilon0"] = chain.epsilon0;
  out["n"] = chain.steps;
  out["word_length"] = chain.word_length;
  out["digit"] = {chain.digit.row + 1, chain.digit.col + 1};
  out["endpoint_distance"] = chain.endpoint_distance;
  out["max_step_ratio"] = chain.max_step_ratio;
  out["slack_ratio"] = chain.slack_ratio;
  out["point_count"] = chain.points.size();
  if (with_points) {
    Json pts = Json::array();
    for (const auto& p : chain.points) pts.push_back({p.x, p.y});
    out["points"] = std::move(pts);
  }
  return out;
}

Json to_json(const UDVerdict& v) {
  Json out;
  out["kind"] = to_string(v.kind);
  out["evidence"] = v.evidence;
  out["empty_rows"] = v.empty_rows;
  out["full_row"] = v.full_row ? Json(*v.full_row) : Json(nullptr);
  out["depth_used"] = v.depth_used;
  out["diameter_bound"] = v.diameter_bound;
  out["td"] = to_json(v.td);
  out["chain"] = v.chain ? to_json(*v.chain) : Json(nullptr);
  out["quasisymmetric_to_cantor"] = v.quasisymmetric_to_cantor;
  return out;
}

Json to_json(const ScalingFit& fit, double s) {
  Json out;
  out["slope"] = fit.slope;
  out["expected_slope"] = -1.0 / s;
  out["intercept"] = fit.intercept;
  out["r2"] = fit.r2;
  out["ratio_band"] = {fit.ratio_min, fit.ratio_max};
  out["band_ratio"] = fit.ratio_max / fit.ratio_min;
  out["count"] = fit.count;
  return out;
}

Json to_json(const CarpetGaps& gaps, std::size_t top) {
  Json out;
  out["delta_res"] = gaps.delta_res;
  out["cutoff"] = gaps.cutoff;
  out["error_bar"] = gaps.error_bar;
  out["rect_count"] = gaps.rect_count;
  out["entry_count"] = gaps.sequence.entries.size();
  out["gap_count"] = gaps.sequence.total();
  Json entries = Json::array();
  std::size_t k = 0;
  for (const auto& e : gaps.sequence.entries) {
    if (top != 0 && k++ >= top) break;
    entries.push_back({e.value, e.multiplicity});
  }
  out["entries"] = std::move(entries);
  return out;
}

namespace {

Json error_json(const Error& e) {
  Json out;
  out["error"] = std::string(to_string(e.code()));
  out["message"] = e.what();
  return out;
}

}  // namespace

Json build_report(const CarpetSpec& spec, const ReportOptions& options) {
  Json doc;
  doc["command"] = "report";
  doc["spec_hash"] = spec.hash();
  Json params;
  params["delta_res"] = options.delta_res;
  params["max_depth"] = options.max_depth;
  params["tol"] = options.tol;
  params["top"] = options.top;
  doc["parameters"] = std::move(params);

  const auto violations = validate(spec);
  doc["validation"] = to_json(violations);
  if (!violations.empty()) return doc;

  DimensionResult dim;
  try {
    dim = solve_bdim(spec, options.tol);
    doc["dimension"] = to_json(dim);
  } catch (const Error& e) {
    doc["dimension"] = error_json(e);
    return doc;
  }

  try {
    const auto verdict = check_uniform_disconnectedness(spec, options.max_depth);
    doc["ud_verdict"] = to_json(verdict);
    doc["quasisymmetric_to_cantor"] = verdict.quasisymmetric_to_cantor;
  } catch (const Error& e) {
    doc["ud_verdict"] = error_json(e);
    doc["quasisymmetric_to_cantor"] = false;
  }

  // eta is the widest interval missed by the nonempty row strips; with
  // several empty-row gaps the widest gives the best class-size bound.
  Json separation;
  const double eta = projection_gap(spec);
  separation["eta"] = eta;
  separation["eta_choice"] = "widest gap between nonempty row strips";
  const double bound = class_size_bound(spec);
  separation["class_size_bound"] = std::isfinite(bound) ? Json(bound) : Json(nullptr);
  doc["separation"] = std::move(separation);

  try {
    const auto gaps = gap_sequence_of_carpet(spec, options.delta_res);
    doc["gaps"] = to_json(gaps, options.top);
    try {
      doc["scaling"] = dim.s > 0.0 ? to_json(scaling_fit(gaps.sequence, dim.s), dim.s)
                                   : error_json(Error(ErrorCode::kInvalidArgument,
                                                      "box dimension is zero"));
    } catch (const Error& e) {
      doc["scaling"] = error_json(e);
    }
  } catch (const Error& e) {
    doc["gaps"] = error_json(e);
    doc["scaling"] = error_json(e);
  }
  return doc;
}

std::string render_json(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace lgc
