#include "lgc/carpet.hpp"

#include <omp.h>

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "lgc/error.hpp"

namespace lgc {

CarpetSpec::CarpetSpec(std::vector<RowSpec> rows) : rows_(std::move(rows)) {
  offsets_.resize(rows_.size());
  a_star_.assign(rows_.size(), 0.0);
  double acc = 0.0;
  a_min_ = std::numeric_limits<double>::infinity();
  a_max_ = 0.0;
  b_min_ = std::numeric_limits<double>::infinity();
  b_max_ = 0.0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    offsets_[i] = acc;
    acc += rows_[i].b;
    if (rows_[i].cells.empty()) continue;
    nonempty_.push_back(static_cast<int>(i));
    b_min_ = std::min(b_min_, rows_[i].b);
    b_max_ = std::max(b_max_, rows_[i].b);
    for (std::size_t j = 0; j < rows_[i].cells.size(); ++j) {
      const double a = rows_[i].cells[j].a;
      digits_.push_back({static_cast<int>(i), static_cast<int>(j)});
      a_star_[i] = std::max(a_star_[i], a);
      a_min_ = std::min(a_min_, a);
      a_max_ = std::max(a_max_, a);
    }
  }
  if (nonempty_.empty()) {
    a_min_ = 0.0;
    b_min_ = 0.0;
  }
}

bool CarpetSpec::has_digit(Digit d) const {
  return d.row >= 0 && d.row < row_count() && d.col >= 0 &&
         d.col < static_cast<int>(row(d.row).cells.size());
}

std::string CarpetSpec::hash() const {
  // FNV-1a over the bit patterns of every parameter.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < n; ++k) {
      h ^= p[k];
      h *= 1099511628211ULL;
    }
  };
  auto mix_double = [&mix](double v) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    mix(&bits, sizeof bits);
  };
  const std::uint64_t m = rows_.size();
  mix(&m, sizeof m);
  for (const auto& r : rows_) {
    mix_double(r.b);
    const std::uint64_t n = r.cells.size();
    mix(&n, sizeof n);
    for (const auto& c : r.cells) {
      mix_double(c.a);
      mix_double(c.c);
    }
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return false;
  }
  return true;
}

std::uint64_t parse_integer(std::string_view s, std::string_view literal) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  constexpr std::uint64_t kExact = 1ULL << 53;
  if (ec != std::errc{} || ptr != s.data() + s.size() || v > kExact) {
    throw Error(ErrorCode::kSyntax,
                "rational component out of exact range in '" + std::string(literal) + "'");
  }
  return v;
}

double number_field(const nlohmann::json& node, const char* key, const std::string& where) {
  if (!node.is_object() || !node.contains(key)) {
    throw Error(ErrorCode::kSchema, where + ": missing field '" + key + "'");
  }
  const auto& v = node.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_number(v.get<std::string>());
  throw Error(ErrorCode::kSchema, where + ": field '" + key + "' must be a number or string");
}

}  // namespace

double parse_number(std::string_view literal) {
  if (const auto slash = literal.find('/'); slash != std::string_view::npos) {
    auto num = literal.substr(0, slash);
    const auto den = literal.substr(slash + 1);
    // A sign is accepted so that negative values reach the validator.
    const bool negative = !num.empty() && num.front() == '-';
    if (negative) num.remove_prefix(1);
    if (!all_digits(num) || !all_digits(den)) {
      throw Error(ErrorCode::kSyntax, "malformed rational '" + std::string(literal) + "'");
    }
    const auto p = parse_integer(num, literal);
    const auto q = parse_integer(den, literal);
    if (q == 0) {
      throw Error(ErrorCode::kSyntax, "zero denominator in '" + std::string(literal) + "'");
    }
    // Both operands are exact doubles, so the quotient is rounded once.
    const double v = static_cast<double>(p) / static_cast<double>(q);
    return negative ? -v : v;
  }
  double v = 0.0;
  const char* end = literal.data() + literal.size();
  auto [ptr, ec] = std::from_chars(literal.data(), end, v);
  if (literal.empty() || ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::kSyntax, "malformed number '" + std::string(literal) + "'");
  }
  return v;
}

CarpetSpec parse_spec(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kSyntax, e.what());
  }
  if (!doc.is_object() || !doc.contains("rows")) {
    throw Error(ErrorCode::kSchema, "top level must be an object with a 'rows' array");
  }
  const auto& rows = doc.at("rows");
  if (!rows.is_array()) throw Error(ErrorCode::kSchema, "'rows' must be an array");

  std::vector<RowSpec> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = "row " + std::to_string(i + 1);
    const auto& row = rows[i];
    RowSpec r;
    r.b = number_field(row, "b", where);
    if (!row.contains("cells")) {
      throw Error(ErrorCode::kSchema, where + ": missing field 'cells'");
    }
    const auto& cells = row.at("cells");
    if (!cells.is_array()) throw Error(ErrorCode::kSchema, where + ": 'cells' must be an array");
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const std::string cwhere = where + " cell " + std::to_string(j + 1);
      r.cells.push_back({number_field(cells[j], "a", cwhere), number_field(cells[j], "c", cwhere)});
    }
    out.push_back(std::move(r));
  }
  return CarpetSpec(std::move(out));
}

CarpetSpec load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate(const CarpetSpec& spec) {
  ValidationReport report;
  auto add = [&report](std::string constraint, int row, int col, std::string detail) {
    report.push_back({std::move(constraint), row, col, std::move(detail)});
  };
  // Non-strict x <= y fails below -tol; strict x < y fails at y - x <= 0.
  auto loose_fail = [](double slack) { return slack < -kValidationTol; };
  auto strict_fail = [](double slack) { return slack <= 0.0; };

  const int m = spec.row_count();
  if (m < 2) add("m >= 2", -1, -1, "m = " + std::to_string(m));

  double sum_b = 0.0;
  for (const auto& r : spec.rows()) sum_b += r.b;
  if (std::abs(sum_b - 1.0) > kValidationTol) {
    add("sum b_i = 1", -1, -1, "sum = " + std::to_string(sum_b));
  }

  for (int i = 0; i < m; ++i) {
    const auto& row = spec.row(i);
    const int ri = i + 1;
    if (strict_fail(row.b)) add("b_i > 0", ri, -1, "b = " + std::to_string(row.b));
    if (strict_fail(1.0 - row.b)) add("b_i < 1", ri, -1, "b = " + std::to_string(row.b));
    double sum_a = 0.0;
    const int n = static_cast<int>(row.cells.size());
    for (int j = 0; j < n; ++j) {
      const auto& cell = row.cells[static_cast<std::size_t>(j)];
      const int cj = j + 1;
      sum_a += cell.a;
      if (strict_fail(cell.a)) add("a_ij > 0", ri, cj, "a = " + std::to_string(cell.a));
      if (strict_fail(row.b - cell.a)) {
        add("a_ij < b_i strict", ri, cj,
            "a = " + std::to_string(cell.a) + ", b = " + std::to_string(row.b));
      }
      if (j == 0 && loose_fail(cell.c)) add("c_i1 >= 0", ri, cj, "c = " + std::to_string(cell.c));
      if (j + 1 < n) {
        const auto& next = row.cells[static_cast<std::size_t>(j + 1)];
        if (loose_fail(next.c - cell.c - cell.a)) {
          add("c_{i(j+1)}-c_ij >= a_ij", ri, cj,
              "c_ij = " + std::to_string(cell.c) + ", c_i(j+1) = " + std::to_string(next.c) +
                  ", a_ij = " + std::to_string(cell.a));
        }
      } else if (loose_fail(1.0 - cell.c - cell.a)) {
        add("1-c_{in_i} >= a_{in_i}", ri, cj,
            "c = " + std::to_string(cell.c) + ", a = " + std::to_string(cell.a));
      }
    }
    if (loose_fail(1.0 - sum_a)) add("sum_j a_ij <= 1", ri, -1, "sum = " + std::to_string(sum_a));
  }
  return report;
}

bool is_valid(const CarpetSpec& spec) { return validate(spec).empty(); }

// ---------------------------------------------------------------------------
// Maps

void check_word(const CarpetSpec& spec, const Word& word) {
  for (const auto& d : word) {
    if (!spec.has_digit(d)) throw Error(ErrorCode::kInvalidDigit, "digit " + to_string(d));
  }
}

namespace {

// Affine map x -> sx * x + ox, y -> sy * y + oy accumulated left to right.
struct Affine {
  double sx = 1.0, sy = 1.0, ox = 0.0, oy = 0.0;

  Affine then(const CarpetSpec& spec, Digit d) const {
    return {sx * spec.a(d), sy * spec.b(d.row), ox + sx * spec.c(d), oy + sy * spec.d(d.row)};
  }
  Rect unit_image() const { return {ox, oy, sx, sy}; }
};

Affine compose(const CarpetSpec& spec, const Word& word) {
  check_word(spec, word);
  Affine t;
  for (const auto& d : word) t = t.then(spec, d);
  return t;
}

}  // namespace

Point apply_word(const CarpetSpec& spec, const Word& word, Point p) {
  const auto t = compose(spec, word);
  return {t.sx * p.x + t.ox, t.sy * p.y + t.oy};
}

Rect apply_word(const CarpetSpec& spec, const Word& word, const Rect& r) {
  const auto t = compose(spec, word);
  return {t.sx * r.x0 + t.ox, t.sy * r.y0 + t.oy, t.sx * r.w, t.sy * r.h};
}

// ---------------------------------------------------------------------------
// Enumeration

std::size_t default_cylinder_cap() {
  if (const char* env = std::getenv("LG_MAX_CYLINDERS")) {
    std::size_t v = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec == std::errc{} && ptr == end && v > 0) return v;
  }
  return 10'000'000;
}

bool reached_scale(double b_prod, double delta) { return b_prod <= delta * (1.0 + 1e-12); }

namespace {

[[noreturn]] void budget_exceeded(std::size_t cap) {
  throw Error(ErrorCode::kBudgetExceeded,
              "cylinder count would exceed cap " + std::to_string(cap));
}

// Depth-first walk in lexicographic order. `stop(t, depth)` decides leaves;
// `emit(word, t)` receives them. Returns false once `budget` is exhausted.
template <class Stop, class Emit>
bool walk(const CarpetSpec& spec, Word& word, const Affine& t, Stop& stop, Emit& emit,
          std::atomic<std::size_t>& count, std::size_t cap) {
  if (stop(t, word.size())) {
    if (count.fetch_add(1, std::memory_order_relaxed) >= cap) return false;
    emit(word, t);
    return true;
  }
  for (const auto& d : spec.digits()) {
    word.push_back(d);
    const bool ok = walk(spec, word, t.then(spec, d), stop, emit, count, cap);
    word.pop_back();
    if (!ok) return false;
  }
  return true;
}

void require_attractor(const CarpetSpec& spec) {
  if (spec.empty_attractor()) throw Error(ErrorCode::kEmptyAttractor, "every row is empty");
}

// Visits the depth-1 subtrees, in parallel when `parallel` is set, and
// concatenates their outputs in digit order.
template <class Out, class Stop, class Make>
std::vector<Out> collect(const CarpetSpec& spec, Stop stop, Make make, std::size_t cap,
                         bool parallel) {
  const auto& digits = spec.digits();
  const auto n = static_cast<std::ptrdiff_t>(digits.size());
  std::vector<std::vector<Out>> parts(digits.size());
  std::atomic<std::size_t> count{0};
  std::atomic<bool> over{false};

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    if (over.load(std::memory_order_relaxed)) continue;
    const auto d = digits[static_cast<std::size_t>(k)];
    Word word{d};
    auto& part = parts[static_cast<std::size_t>(k)];
    auto emit = [&part, &make](const Word& w, const Affine& t) { part.push_back(make(w, t)); };
    if (!walk(spec, word, Affine{}.then(spec, d), stop, emit, count, cap)) {
      over.store(true, std::memory_order_relaxed);
    }
  }
  if (over.load()) budget_exceeded(cap);

  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<Out> out;
  out.reserve(total);
  for (auto& p : parts) {
    std::move(p.begin(), p.end(), std::back_inserter(out));
  }
  return out;
}

Cylinder make_cylinder(const Word& w, const Affine& t) {
  return {w, t.unit_image(), t.sx, t.sy};
}

Rect make_rect(const Word&, const Affine& t) { return t.unit_image(); }

auto stopping_rule(double delta) {
  return [delta](const Affine& t, std::size_t len) { return len >= 1 && reached_scale(t.sy, delta); };
}

auto depth_rule(int depth) {
  return [depth](const Affine&, std::size_t len) { return len >= static_cast<std::size_t>(depth); };
}

void check_delta(double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "delta must be positive");
}

}  // namespace

std::vector<Cylinder> enumerate_stopping(const CarpetSpec& spec, double delta, std::size_t cap) {
  require_attractor(spec);
  check_delta(delta);
  return collect<Cylinder>(spec, stopping_rule(delta), make_cylinder, cap, true);
}

std::vector<Rect> stopping_rects(const CarpetSpec& spec, double delta, std::size_t cap) {
  require_attractor(spec);
  check_delta(delta);
  return collect<Rect>(spec, stopping_rule(delta), make_rect, cap, true);
}

std::vector<Cylinder> enumerate_depth(const CarpetSpec& spec, int depth, std::size_t cap) {
  require_attractor(spec);
  if (depth < 0) throw Error(ErrorCode::kInvalidArgument, "depth must be >= 0");
  if (depth == 0) return {Cylinder{{}, Rect{0.0, 0.0, 1.0, 1.0}, 1.0, 1.0}};
  return collect<Cylinder>(spec, depth_rule(depth), make_cylinder, cap, true);
}

std::vector<Rect> depth_rects(const CarpetSpec& spec, int depth, std::size_t cap) {
  require_attractor(spec);
  if (depth < 0) throw Error(ErrorCode::kInvalidArgument, "depth must be >= 0");
  if (depth == 0) return {Rect{0.0, 0.0, 1.0, 1.0}};
  return collect<Rect>(spec, depth_rule(depth), make_rect, cap, true);
}

namespace serial {

std::vector<Cylinder> enumerate_stopping(const CarpetSpec& spec, double delta, std::size_t cap) {
  require_attractor(spec);
  check_delta(delta);
  return collect<Cylinder>(spec, stopping_rule(delta), make_cylinder, cap, false);
}

std::vector<Rect> stopping_rects(const CarpetSpec& spec, double delta, std::size_t cap) {
  require_attractor(spec);
  check_delta(delta);
  return collect<Rect>(spec, stopping_rule(delta), make_rect, cap, false);
}

}  // namespace serial

std::string to_string(Digit d) {
  return "(" + std::to_string(d.row + 1) + "," + std::to_string(d.col + 1) + ")";
}

std::string to_string(const Word& w) {
  std::string s = "[";
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ",";
    s += to_string(w[k]);
  }
  return s + "]";
}

}  // namespace lgc
