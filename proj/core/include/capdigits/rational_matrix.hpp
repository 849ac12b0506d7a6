#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <vector>

namespace capdigits {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense row-major matrix with small signed entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<int> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const int> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<int> data_;
};

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  explicit RationalMatrix(const IntMatrix& m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  bool row_is_zero(std::size_t r) const;

  /// Submatrix made of the listed columns, in the listed order.
  RationalMatrix select_columns(std::span<const std::size_t> columns) const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct EchelonForm {
  RationalMatrix matrix;  // same shape as the input; zero rows at the bottom
  std::vector<std::size_t> pivot_columns;

  std::size_t rank() const noexcept { return pivot_columns.size(); }
};

/// Gauss-Jordan elimination over the rationals.
EchelonForm reduced_row_echelon(RationalMatrix m);

std::size_t rank(const RationalMatrix& m);

/// True iff both matrices have the same column count and span the same row space.
bool same_row_space(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace capdigits
