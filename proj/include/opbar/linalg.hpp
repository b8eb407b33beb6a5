#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "opbar/matrix.hpp"

namespace opbar {

class ContainmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotIdempotentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Incremental reduced row echelon form over Q.
///
/// Rows are kept with a leading 1 at their pivot. insert() only clears
/// leading entries; reduce_fully() makes every row vanish on all other
/// pivots.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t width);

  /// Returns true when v was independent of the rows inserted so far.
  bool insert(SparseVector v);
  void reduce_fully();

  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseVector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_pivot(std::size_t column) const { return pivot_row_[column] >= 0; }

 private:
  std::size_t width_;
  std::vector<SparseVector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::ptrdiff_t> pivot_row_;
};

/// A linear subspace of Q^n with a reduced basis: basis vector i has a 1 at
/// position pivots[i] and every other basis vector vanishes there, so
/// coordinates of any member are read off at the pivots.
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::size_t ambient, Matrix basis, std::vector<std::size_t> pivots);

  static Subspace zero(std::size_t ambient);
  static Subspace full(std::size_t ambient);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const SparseVector& v) const;
  /// Coordinates in the reduced basis; throws ContainmentError otherwise.
  SparseVector coordinates(const SparseVector& v) const;
  /// Coordinates of every column of m.
  Matrix coordinates(const Matrix& m) const;

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
  std::vector<std::ptrdiff_t> pivot_pos_;  // ambient index -> basis index or -1
};

std::size_t rank(const Matrix& m);
Subspace kernel_basis(const Matrix& m);
Subspace column_space(const Matrix& m);
Subspace span_of(std::size_t ambient, const std::vector<SparseVector>& vectors);
Subspace intersect(const Subspace& a, const Subspace& b);

/// dim(total) - dim(sub) after checking sub is contained in total.
std::size_t quotient_dim(const Subspace& sub, const Subspace& total);

struct ProjectorImage {
  Subspace image;
  Matrix section;     // ambient x k, columns are the reduced basis of im(p)
  Matrix retraction;  // k x ambient, coordinates of p(v) in that basis
};

/// Presents im(p) for an idempotent p as a direct summand.
ProjectorImage projector_image(const Matrix& p);

/// Inverse of a square invertible matrix; throws std::domain_error otherwise.
Matrix inverse(const Matrix& m);

}  // namespace opbar
