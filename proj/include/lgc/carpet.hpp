#pragma once

// Self-affine carpets built from diagonal maps
//   S_ij(x, y) = (a_ij x + c_ij, b_i y + d_i)
// arranged in horizontal rows of height b_i, each row holding n_i >= 0 cells.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lgc/geometry.hpp"

namespace lgc {

struct Cell {
  double a = 0.0;  // width ratio
  double c = 0.0;  // x offset
};

struct RowSpec {
  double b = 0.0;  // height ratio
  std::vector<Cell> cells;
};

/// One map of the IFS, addressed by zero-based row and column.
struct Digit {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Digit&, const Digit&) = default;
};

using Word = std::vector<Digit>;

/// Spec data plus derived quantities. Construction never validates; call
/// `validate` for the constraint report.
class CarpetSpec {
 public:
  CarpetSpec() = default;
  explicit CarpetSpec(std::vector<RowSpec> rows);

  const std::vector<RowSpec>& rows() const { return rows_; }
  int row_count() const { return static_cast<int>(rows_.size()); }
  const RowSpec& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }

  /// Cumulative row offsets; d(0) == 0.
  double d(int i) const { return offsets_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& offsets() const { return offsets_; }

  /// Digit set in lexicographic order.
  const std::vector<Digit>& digits() const { return digits_; }
  /// Zero-based indices of rows with at least one cell.
  const std::vector<int>& nonempty_rows() const { return nonempty_; }
  bool has_digit(Digit d) const;
  bool empty_attractor() const { return nonempty_.empty(); }

  double a(Digit d) const { return row(d.row).cells[static_cast<std::size_t>(d.col)].a; }
  double c(Digit d) const { return row(d.row).cells[static_cast<std::size_t>(d.col)].c; }
  double b(int i) const { return row(i).b; }

  /// max_j a_ij for a nonempty row, 0 for an empty one.
  double a_star(int i) const { return a_star_[static_cast<std::size_t>(i)]; }
  double a_min() const { return a_min_; }
  double a_max() const { return a_max_; }
  /// Extremes of b over nonempty rows.
  double b_min() const { return b_min_; }
  double b_max() const { return b_max_; }

  /// Stable hex identifier of the numeric content.
  std::string hash() const;

 private:
  std::vector<RowSpec> rows_;
  std::vector<double> offsets_;
  std::vector<Digit> digits_;
  std::vector<int> nonempty_;
  std::vector<double> a_star_;
  double a_min_ = 0.0;
  double a_max_ = 0.0;
  double b_min_ = 0.0;
  double b_max_ = 0.0;
};

/// Parses the JSON spec document. Numbers may be JSON numbers, decimal
/// strings, or rational strings "p/q".
CarpetSpec parse_spec(std::string_view text);
CarpetSpec load_spec(const std::string& path);

/// Parses a decimal or "p/q" literal. Throws SyntaxError.
double parse_number(std::string_view literal);

inline constexpr double kValidationTol = 1e-12;

struct Violation {
  std::string constraint;  // the inequality that failed
  int row = -1;            // one-based, -1 when not row-specific
  int col = -1;            // one-based, -1 when not cell-specific
  std::string detail;
};

using ValidationReport = std::vector<Violation>;

ValidationReport validate(const CarpetSpec& spec);
bool is_valid(const CarpetSpec& spec);

/// Throws InvalidDigit when a digit is not in D.
void check_word(const CarpetSpec& spec, const Word& word);

/// S_{w_1} o S_{w_2} o ... o S_{w_k}. Empty word is the identity.
Point apply_word(const CarpetSpec& spec, const Word& word, Point p);
Rect apply_word(const CarpetSpec& spec, const Word& word, const Rect& r);

struct Cylinder {
  Word word;
  Rect rect;
  double a_prod = 1.0;
  double b_prod = 1.0;
};

/// Cap from LG_MAX_CYLINDERS when set, otherwise 10^7.
std::size_t default_cylinder_cap();

/// True when a word with height product `b_prod` has reached the stopping
/// scale. A relative slack of 1e-12 absorbs rounding of products such as
/// (1/3)^2 against 1/9.
bool reached_scale(double b_prod, double delta);

/// All words whose b-product is the first to drop to <= delta, in
/// lexicographic order. For delta >= 1 these are the length-1 words.
std::vector<Cylinder> enumerate_stopping(const CarpetSpec& spec, double delta,
                                         std::size_t cap = default_cylinder_cap());

/// Rectangles of `enumerate_stopping` without materializing the words.
std::vector<Rect> stopping_rects(const CarpetSpec& spec, double delta,
                                 std::size_t cap = default_cylinder_cap());

/// All words of exactly `depth` digits, lexicographic.
std::vector<Cylinder> enumerate_depth(const CarpetSpec& spec, int depth,
                                      std::size_t cap = default_cylinder_cap());
std::vector<Rect> depth_rects(const CarpetSpec& spec, int depth,
                              std::size_t cap = default_cylinder_cap());

namespace serial {
// Single-threaded references kept for testing the parallel enumerators.
std::vector<Cylinder> enumerate_stopping(const CarpetSpec& spec, double delta,
                                         std::size_t cap = default_cylinder_cap());
std::vector<Rect> stopping_rects(const CarpetSpec& spec, double delta,
                                 std::size_t cap = default_cylinder_cap());
}  // namespace serial

/// One-based "(i,j)" text for diagnostics.
std::string to_string(Digit d);
std::string to_string(const Word& w);

}  // namespace lgc
