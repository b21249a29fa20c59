#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "lgc/approx.hpp"
#include "lgc/disconnect.hpp"
#include "lgc/gaps.hpp"
#include "lgc/structure.hpp"

namespace lgc {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// Writes `content` to `path`, or to standard output when `path` is empty.
/// Throws IoError.
void write_text(const std::string& path, std::string_view content);

// CSV payloads: header row, '.' decimals, '\n' line endings.

/// "value,multiplicity"; `top` limits the entry count (0 keeps all).
std::string gaps_csv(const GapSequence& gaps, std::size_t top = 0);
/// "delta,count" in decreasing delta.
std::string curve_csv(const NDeltaCurve& curve);
/// "index,x,y".
std::string chain_csv(const EpsilonChain& chain);
/// "lo,hi".
std::string intervals_csv(const IntervalSet& set);

}  // namespace lgc
