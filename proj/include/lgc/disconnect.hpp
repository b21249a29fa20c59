#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgc/carpet.hpp"

namespace lgc {

/// One-based indices of rows without cells.
std::vector<int> empty_rows(const CarpetSpec& spec);

struct TdResult {
  enum class Kind { kCertifiedTD, kDiameterBound, kUndetermined };

  Kind kind = Kind::kUndetermined;
  int depth = 0;                  // certificate depth, or deepest level examined
  double diameter_bound = 0.0;    // meaningful for kDiameterBound
  std::vector<double> bounds;     // running bound after depth 1, 2, ...
  bool leaning_connected = false;  // bound shrank < 10% over the last two depths
};

/// Sufficient test for total disconnectedness: at some depth every pair of
/// cylinder rectangles is at positive distance. Otherwise reports the
/// largest bounding-box diagonal of a touching cluster at the deepest level,
/// which bounds the diameter of every connected component.
TdResult certify_totally_disconnected(const CarpetSpec& spec, int max_depth,
                                      std::size_t cap = default_cylinder_cap());

struct EpsilonChain {
  double epsilon0 = 0.0;
  int steps = 0;        // n, the chain has n + 1 points
  int word_length = 0;  // length of the shrinking map T
  Digit digit;          // T repeats this digit
  std::vector<Point> points;
  double endpoint_distance = 0.0;  // |xi - xi'|
  double max_step_ratio = 0.0;     // max step / endpoint distance
  double slack_ratio = 0.0;        // truncation allowance / endpoint distance
};

/// Constructs an epsilon0-chain between two distinct points of the carpet.
/// Requires every row to be nonempty (ChainUnavailable otherwise).
EpsilonChain build_epsilon_chain(const CarpetSpec& spec, double epsilon0, int depth_pad = 40);

struct UDVerdict {
  enum class Kind { kCertifiedUD, kCertifiedNotUD, kUndetermined };

  Kind kind = Kind::kUndetermined;
  std::string evidence;
  std::vector<int> empty_rows;  // one-based
  std::optional<int> full_row;  // one-based row whose cells cover [0,1]
  TdResult td;
  std::optional<EpsilonChain> chain;
  int depth_used = 0;
  double diameter_bound = 0.0;
  bool quasisymmetric_to_cantor = false;
};

inline constexpr double kVerdictChainEpsilon = 0.1;

UDVerdict check_uniform_disconnectedness(const CarpetSpec& spec, int max_depth,
                                         std::size_t cap = default_cylinder_cap());

std::string to_string(TdResult::Kind kind);
std::string to_string(UDVerdict::Kind kind);

}  // namespace lgc
