#include "opbar/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace opbar {

RowEchelon::RowEchelon(std::size_t width) : width_(width), pivot_row_(width, -1) {}

bool RowEchelon::insert(SparseVector v) {
  while (!v.empty()) {
    const std::size_t lead = v.front().first;
    if (lead >= width_) throw std::out_of_range("vector longer than echelon width");
    const std::ptrdiff_t r = pivot_row_[lead];
    if (r < 0) {
      Rational inv = 1 / v.front().second;
      v.scale(inv);
      pivot_row_[lead] = static_cast<std::ptrdiff_t>(rows_.size());
      pivots_.push_back(lead);
      rows_.push_back(std::move(v));
      return true;
    }
    Rational factor = -v.front().second;
    v.add_scaled(rows_[static_cast<std::size_t>(r)], factor);
  }
  return false;
}

void RowEchelon::reduce_fully() {
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] > pivots_[b]; });
  for (std::size_t r : order) {
    std::vector<std::pair<std::size_t, Rational>> hits;
    for (const auto& [col, x] : rows_[r])
      if (col != pivots_[r] && pivot_row_[col] >= 0) hits.emplace_back(col, x);
    for (const auto& [col, x] : hits) rows_[r].add_scaled(rows_[static_cast<std::size_t>(pivot_row_[col])], -x);
  }
}

Subspace::Subspace(std::size_t ambient, Matrix basis, std::vector<std::size_t> pivots)
    : ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots)) {
  if (basis_.rows() != ambient_ || basis_.cols() != pivots_.size())
    throw std::invalid_argument("subspace basis shape mismatch");
  pivot_pos_.assign(ambient_, -1);
  for (std::size_t i = 0; i < pivots_.size(); ++i) pivot_pos_[pivots_[i]] = static_cast<std::ptrdiff_t>(i);
}

Subspace Subspace::zero(std::size_t ambient) { return Subspace(ambient, Matrix(ambient, 0), {}); }

Subspace Subspace::full(std::size_t ambient) {
  std::vector<std::size_t> p(ambient);
  std::iota(p.begin(), p.end(), 0);
  return Subspace(ambient, Matrix::identity(ambient), std::move(p));
}

SparseVector Subspace::coordinates(const SparseVector& v) const {
  std::vector<SparseVector::Entry> c;
  SparseAccumulator residue;
  residue.add_scaled(v, 1);
  for (const auto& [idx, x] : v) {
    if (idx >= ambient_) throw ContainmentError("vector is longer than the ambient space");
    const std::ptrdiff_t i = pivot_pos_[idx];
    if (i < 0) continue;
    residue.add_scaled(basis_.column(static_cast<std::size_t>(i)), -x);
    c.emplace_back(static_cast<std::size_t>(i), x);
  }
  if (!residue.take().empty()) throw ContainmentError("vector is not in the span of the subspace basis");
  return SparseVector::from_unsorted(std::move(c));
}

bool Subspace::contains(const SparseVector& v) const {
  try {
    coordinates(v);
    return true;
  } catch (const ContainmentError&) {
    return false;
  }
}

Matrix Subspace::coordinates(const Matrix& m) const {
  if (m.rows() != ambient_) throw std::invalid_argument("coordinate matrix has wrong ambient dimension");
  std::vector<SparseVector> cols;
  cols.reserve(m.cols());
  for (const auto& c : m.columns()) cols.push_back(coordinates(c));
  return Matrix::from_columns(dim(), std::move(cols));
}

namespace {

std::vector<std::size_t> sparsest_first(const std::vector<SparseVector>& vs) {
  std::vector<std::size_t> order(vs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vs[a].nnz() < vs[b].nnz(); });
  return order;
}

Subspace from_echelon(RowEchelon& e) {
  e.reduce_fully();
  std::vector<std::size_t> order(e.rank());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return e.pivots()[a] < e.pivots()[b]; });
  std::vector<SparseVector> cols;
  std::vector<std::size_t> pivots;
  for (std::size_t r : order) {
    cols.push_back(e.rows()[r]);
    pivots.push_back(e.pivots()[r]);
  }
  return Subspace(e.width(), Matrix::from_columns(e.width(), std::move(cols)), std::move(pivots));
}

}  // namespace

std::size_t rank(const Matrix& m) {
  // Eliminate along the shorter side.
  if (m.cols() <= m.rows()) {
    RowEchelon e(m.rows());
    for (std::size_t j : sparsest_first(m.columns())) e.insert(m.column(j));
    return e.rank();
  }
  Matrix t = m.transpose();
  RowEchelon e(t.rows());
  for (std::size_t j : sparsest_first(t.columns())) e.insert(t.column(j));
  return e.rank();
}

Subspace kernel_basis(const Matrix& m) {
  const std::size_t n = m.cols();
  Matrix rows = m.transpose();
  RowEchelon e(n);
  for (std::size_t i : sparsest_first(rows.columns())) e.insert(rows.column(i));
  e.reduce_fully();
  std::vector<std::vector<SparseVector::Entry>> kernel_cols(n);
  for (std::size_t r = 0; r < e.rank(); ++r) {
    const std::size_t p = e.pivots()[r];
    for (const auto& [col, x] : e.rows()[r])
      if (col != p) kernel_cols[col].emplace_back(p, -x);
  }
  std::vector<SparseVector> basis;
  std::vector<std::size_t> pivots;
  for (std::size_t f = 0; f < n; ++f) {
    if (e.is_pivot(f)) continue;
    kernel_cols[f].emplace_back(f, 1);
    basis.push_back(SparseVector::from_unsorted(std::move(kernel_cols[f])));
    pivots.push_back(f);
  }
  return Subspace(n, Matrix::from_columns(n, std::move(basis)), std::move(pivots));
}

Subspace column_space(const Matrix& m) {
  RowEchelon e(m.rows());
  for (std::size_t j : sparsest_first(m.columns())) e.insert(m.column(j));
  return from_echelon(e);
}

Subspace span_of(std::size_t ambient, const std::vector<SparseVector>& vectors) {
  RowEchelon e(ambient);
  for (std::size_t j : sparsest_first(vectors)) e.insert(vectors[j]);
  return from_echelon(e);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersecting subspaces of different spaces");
  // Solve A x = B y; the intersection is A * (x-part of ker [A | -B]).
  std::vector<Matrix> blocks{a.basis(), b.basis().scaled(-1)};
  Subspace k = kernel_basis(Matrix::hstack(blocks));
  std::vector<SparseVector> vecs;
  std::vector<std::size_t> top(a.dim());
  std::iota(top.begin(), top.end(), 0);
  Matrix x = k.basis().select_rows(top);
  for (const auto& c : x.columns()) vecs.push_back(a.basis().apply(c));
  return span_of(a.ambient_dim(), vecs);
}

std::size_t quotient_dim(const Subspace& sub, const Subspace& total) {
  if (sub.ambient_dim() != total.ambient_dim()) throw std::invalid_argument("quotient of subspaces of different spaces");
  for (std::size_t j = 0; j < sub.dim(); ++j)
    if (!total.contains(sub.basis().column(j)))
      throw ContainmentError("basis vector " + std::to_string(j) + " of the subspace is not in the total space");
  return total.dim() - sub.dim();
}

ProjectorImage projector_image(const Matrix& p) {
  if (p.rows() != p.cols()) throw NotIdempotentError("projector must be square");
  if (!(p * p == p)) throw NotIdempotentError("matrix is not idempotent");
  Subspace img = column_space(p);
  Matrix retraction = p.transpose().select_columns(img.pivots()).transpose();
  Matrix section = img.basis();
  return {std::move(img), std::move(section), std::move(retraction)};
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::domain_error("inverse of a non-square matrix");
  Matrix rows = m.transpose();
  RowEchelon e(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    SparseVector r = rows.column(i);
    r.add_scaled(SparseVector::unit(n + i), 1);
    e.insert(std::move(r));
  }
  e.reduce_fully();
  std::vector<std::vector<SparseVector::Entry>> inv_rows(n);
  std::size_t count = 0;
  for (std::size_t r = 0; r < e.rank(); ++r) {
    const std::size_t p = e.pivots()[r];
    if (p >= n) continue;
    ++count;
    for (const auto& [col, x] : e.rows()[r]) {
      if (col < n && col != p) throw std::domain_error("matrix is singular");
      if (col >= n) inv_rows[p].emplace_back(col - n, x);
    }
  }
  if (count != n) throw std::domain_error("matrix is singular");
  std::vector<SparseVector> cols;
  for (auto& r : inv_rows) cols.push_back(SparseVector::from_unsorted(std::move(r)));
  return Matrix::from_columns(n, std::move(cols)).transpose();
}

}  // namespace opbar
