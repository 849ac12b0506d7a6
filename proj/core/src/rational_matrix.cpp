#include "capdigits/rational_matrix.hpp"

#include <stdexcept>
#include <utility>

namespace capdigits {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<int> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw std::invalid_argument("matrix data has the wrong size");
}

RationalMatrix::RationalMatrix(const IntMatrix& m) : RationalMatrix(m.rows(), m.cols()) {
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = m(r, c);
  }
}

bool RationalMatrix::row_is_zero(std::size_t r) const {
  for (const auto& v : row(r)) {
    if (sgn(v) != 0) return false;
  }
  return true;
}

RationalMatrix RationalMatrix::select_columns(std::span<const std::size_t> columns) const {
  RationalMatrix out(rows_, columns.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j] >= cols_) throw std::out_of_range("column index out of range");
      out(r, j) = (*this)(r, columns[j]);
    }
  }
  return out;
}

EchelonForm reduced_row_echelon(RationalMatrix m) {
  EchelonForm out;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    std::size_t sel = pivot_row;
    while (sel < m.rows() && sgn(m(sel, col)) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != pivot_row) {
      for (std::size_t c = 0; c < m.cols(); ++c) swap(m(sel, c), m(pivot_row, c));
    }
    const Rational inv = 1 / m(pivot_row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(pivot_row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pivot_row || sgn(m(r, col)) == 0) continue;
      const Rational factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(pivot_row, c);
    }
    out.pivot_columns.push_back(col);
    ++pivot_row;
  }
  out.matrix = std::move(m);
  return out;
}

std::size_t rank(const RationalMatrix& m) { return reduced_row_echelon(m).rank(); }

bool same_row_space(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.cols()) return false;
  const auto ra = reduced_row_echelon(a);
  const auto rb = reduced_row_echelon(b);
  if (ra.pivot_columns != rb.pivot_columns) return false;
  // The nonzero rows of the reduced echelon form are a canonical basis of the row space.
  for (std::size_t r = 0; r < ra.rank(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (ra.matrix(r, c) != rb.matrix(r, c)) return false;
    }
  }
  return true;
}

}  // namespace capdigits
