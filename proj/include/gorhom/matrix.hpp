#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gorhom/integer.hpp"
#include "gorhom/ring.hpp"

namespace gorhom {

/// Dense row-major matrix over a Ring. Over ℤ/m every entry is kept in [0, m).
class Matrix {
 public:
  Matrix() = default;
  Matrix(Ring ring, std::size_t rows, std::size_t cols);
  Matrix(Ring ring, std::size_t rows, std::size_t cols, std::vector<Int> entries);

  static Matrix identity(const Ring& ring, std::size_t n);
  static Matrix diagonal(const Ring& ring, const std::vector<Int>& diag);
  static Matrix column_vector(const Ring& ring, std::vector<Int> values);
  /// Parses "[[1,2],[3,4]]"; "[]" is 0×0 and "[[],[]]" is 2×0.
  static Matrix parse(const Ring& ring, const std::string& text);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Int& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const Int& v) { entries_[i * cols_ + j] = ring_.reduce(v); }
  void add_to(std::size_t i, std::size_t j, const Int& v);
  const std::vector<Int>& entries() const { return entries_; }

  bool is_zero() const;
  Matrix transpose() const;
  Matrix column(std::size_t j) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix select_columns(const std::vector<std::size_t>& idx) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  /// Copies `b` into this matrix with its top-left corner at (r0, c0).
  void paste(std::size_t r0, std::size_t c0, const Matrix& b);

  static Matrix hcat(const Matrix& a, const Matrix& b);
  static Matrix vcat(const Matrix& a, const Matrix& b);
  /// Block-diagonal sum.
  static Matrix dsum(const Matrix& a, const Matrix& b);

  Matrix operator*(const Matrix& b) const;
  Matrix operator+(const Matrix& b) const;
  Matrix operator-(const Matrix& b) const;
  Matrix operator-() const;
  Matrix scaled(const Int& c) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  /// "[[1,2],[3,4]]" with entries as stored.
  std::string to_string() const;

 private:
  Ring ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> entries_;
};

}  // namespace gorhom
