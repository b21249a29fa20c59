#pragma once

// JSON payloads shared by the command-line tool and the acceptance suite.

#include <string>

#include "json.hpp"
#include "lgc/carpet.hpp"
#include "lgc/dimension.hpp"
#include "lgc/disconnect.hpp"
#include "lgc/gaps.hpp"

namespace lgc {

using Json = nlohmann::ordered_json;

/// Spec document accepted by parse_spec; numbers written as JSON numbers.
Json to_json(const CarpetSpec& spec);
Json to_json(const ValidationReport& report);
Json to_json(const DimensionResult& dim);
Json to_json(const TdResult& td);
Json to_json(const EpsilonChain& chain, bool with_points = false);
Json to_json(const UDVerdict& verdict);
Json to_json(const ScalingFit& fit, double s);
Json to_json(const CarpetGaps& gaps, std::size_t top);

struct ReportOptions {
  double delta_res = 1e-3;
  int max_depth = 8;
  double tol = kDefaultDimensionTol;
  std::size_t top = 50;  // gap entries listed in the report
};

/// Dimensions, uniform-disconnectedness verdict, gap sequence and its
/// scaling fit in one document. Never fails on an Undetermined verdict; a
/// stage that cannot run records its error instead.
Json build_report(const CarpetSpec& spec, const ReportOptions& options);

/// `dump` with two-space indent and a trailing newline.
std::string render_json(const Json& doc);

}  // namespace lgc
