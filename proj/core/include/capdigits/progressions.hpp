#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "capdigits/rational_matrix.hpp"
#include "capdigits/zp.hpp"

namespace capdigits {

/// A weighted progression (x, y, z) with x + b*y + c*z = 0, not all equal.
struct Progression {
  int x = 0;
  int y = 0;
  int z = 0;

  /// Entry at position 1, 2 or 3.
  int at(int position) const;
  bool contains(int d) const noexcept { return x == d || y == d || z == d; }

  auto operator<=>(const Progression&) const = default;
};

std::string to_string(const Progression& v);

/// P_b(D) in lexicographic order.
struct ProgressionTable {
  LineEquation equation;
  DigitSetPair pair;
  std::vector<Progression> rows;
};

ProgressionTable enumerate_progressions(const DigitSetPair& pair, const LineEquation& eq);

/// Table for b' = c^{-1} b; its members are the mirrored triples (z, y, x).
ProgressionTable reverse_table(const ProgressionTable& t);

/// Table for b' = c; its members are the triples (x, z, y).
ProgressionTable swap_table(const ProgressionTable& t);

enum class PositionPair { FirstSecond, FirstThird };

struct RowLabel {
  PositionPair positions = PositionPair::FirstSecond;
  int digit = 0;

  friend bool operator==(const RowLabel&, const RowLabel&) = default;
};

/// Frequency-balance equations A chi = 0 over the progressions of one table.
///
/// Rows come in two blocks of |D'| rows each, by ascending digit: first the
/// position 1 vs 2 balances, then position 1 vs 3. Columns follow table order.
/// A progression that carries the digit in both compared positions gets 0.
struct ConstraintSystem {
  IntMatrix matrix;
  std::vector<RowLabel> row_labels;
  std::vector<Progression> column_labels;

  std::size_t rows() const noexcept { return matrix.rows(); }
  std::size_t cols() const noexcept { return matrix.cols(); }
};

ConstraintSystem build_constraint_system(const ProgressionTable& t);

}  // namespace capdigits
