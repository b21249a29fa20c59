#include "lgc/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lgc/error.hpp"

namespace lgc {

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw Error(ErrorCode::kIo, "cannot format number");
  return {buf.data(), ptr};
}

void write_text(const std::string& path, std::string_view content) {
  if (path.empty()) {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw Error(ErrorCode::kIo, "write to standard output failed");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

std::string gaps_csv(const GapSequence& gaps, std::size_t top) {
  std::ostringstream os;
  os << "value,multiplicity\n";
  std::size_t k = 0;
  for (const auto& e : gaps.entries) {
    if (top != 0 && k++ >= top) break;
    os << format_double(e.value) << ',' << e.multiplicity << '\n';
  }
  return os.str();
}

std::string curve_csv(const NDeltaCurve& curve) {
  std::ostringstream os;
  os << "delta,count\n";
  for (const auto& s : curve.samples) os << format_double(s.delta) << ',' << s.count << '\n';
  return os.str();
}

std::string chain_csv(const EpsilonChain& chain) {
  std::ostringstream os;
  os << "index,x,y\n";
  for (std::size_t k = 0; k < chain.points.size(); ++k) {
    os << k << ',' << format_double(chain.points[k].x) << ',' << format_double(chain.points[k].y)
       << '\n';
  }
  return os.str();
}

std::string intervals_csv(const IntervalSet& set) {
  std::ostringstream os;
  os << "lo,hi\n";
  for (const auto& iv : set.intervals()) os << format_double(iv.lo) << ',' << format_double(iv.hi) << '\n';
  return os.str();
}

}  // namespace lgc
