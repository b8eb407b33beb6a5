#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace opbar {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator once canonicalized.
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

/// Sparse vector with entries sorted by index and no explicit zeros.
class SparseVector {
 public:
  using Entry = std::pair<std::size_t, Rational>;

  SparseVector() = default;
  SparseVector(std::initializer_list<Entry> entries);

  /// Takes ownership of unsorted entries; merges duplicates, drops zeros.
  static SparseVector from_unsorted(std::vector<Entry> entries);
  static SparseVector unit(std::size_t index, Rational value = 1);

  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const Entry& front() const { return entries_.front(); }

  Rational at(std::size_t index) const;
  std::size_t max_index_bound() const { return entries_.empty() ? 0 : entries_.back().first + 1; }

  /// this += scale * other
  void add_scaled(const SparseVector& other, const Rational& scale);
  void scale(const Rational& s);
  SparseVector scaled(const Rational& s) const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;
};

/// Hash-based accumulator for building sparse vectors out of order.
class SparseAccumulator {
 public:
  void add(std::size_t index, const Rational& value);
  void add_scaled(const SparseVector& v, const Rational& scale);
  bool empty() const { return values_.empty(); }
  SparseVector take();

 private:
  std::unordered_map<std::size_t, Rational> values_;
};

/// Rational matrix with dense semantics and column-major sparse storage.
/// A matrix with zero rows or zero columns is legal and denotes a map
/// between zero spaces.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_dense(const std::vector<std::vector<Rational>>& rows);
  static Matrix from_columns(std::size_t rows, std::vector<SparseVector> columns);
  /// Matrix whose columns are the unit vectors e_{images[j]}.
  static Matrix selection(std::size_t rows, std::span<const std::size_t> images);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  std::size_t nnz() const;
  bool is_zero() const;

  const SparseVector& column(std::size_t j) const { return columns_[j]; }
  const std::vector<SparseVector>& columns() const { return columns_; }
  void set_column(std::size_t j, SparseVector v);
  Rational at(std::size_t i, std::size_t j) const { return columns_[j].at(i); }

  Matrix transpose() const;
  SparseVector apply(const SparseVector& v) const;

  /// Submatrix on the given row and column index lists (in that order).
  Matrix submatrix(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const;
  Matrix select_columns(std::span<const std::size_t> col_ids) const;
  Matrix select_rows(std::span<const std::size_t> row_ids) const;

  static Matrix hstack(std::span<const Matrix> blocks);
  static Matrix vstack(std::span<const Matrix> blocks);
  static Matrix block_diagonal(std::span<const Matrix> blocks);
  static Matrix kronecker(const Matrix& a, const Matrix& b);

  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator-() const;
  Matrix scaled(const Rational& s) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.columns_ == b.columns_;
  }

  std::vector<std::vector<Rational>> to_dense() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVector> columns_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

}  // namespace opbar
