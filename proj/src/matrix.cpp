#include "opbar/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace opbar {

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

SparseVector::SparseVector(std::initializer_list<Entry> entries)
    : SparseVector(from_unsorted(std::vector<Entry>(entries))) {}

SparseVector SparseVector::from_unsorted(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  SparseVector out;
  out.entries_.reserve(entries.size());
  for (auto& e : entries) {
    if (!out.entries_.empty() && out.entries_.back().first == e.first) {
      out.entries_.back().second += e.second;
    } else {
      out.entries_.push_back(std::move(e));
    }
  }
  std::erase_if(out.entries_, [](const Entry& e) { return e.second == 0; });
  return out;
}

SparseVector SparseVector::unit(std::size_t index, Rational value) {
  SparseVector v;
  if (value != 0) v.entries_.emplace_back(index, std::move(value));
  return v;
}

Rational SparseVector::at(std::size_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) return it->second;
  return 0;
}

void SparseVector::add_scaled(const SparseVector& other, const Rational& scale) {
  if (scale == 0 || other.entries_.empty()) return;
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      merged.emplace_back(b->first, scale * b->second);
      ++b;
    } else {
      Rational v = a->second + scale * b->second;
      if (v != 0) merged.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
}

void SparseVector::scale(const Rational& s) {
  if (s == 0) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.second *= s;
}

SparseVector SparseVector::scaled(const Rational& s) const {
  SparseVector out = *this;
  out.scale(s);
  return out;
}

void SparseAccumulator::add(std::size_t index, const Rational& value) {
  if (value == 0) return;
  auto [it, inserted] = values_.try_emplace(index, value);
  if (!inserted) it->second += value;
}

void SparseAccumulator::add_scaled(const SparseVector& v, const Rational& scale) {
  if (scale == 0) return;
  for (const auto& [i, x] : v) add(i, x * scale);
}

SparseVector SparseAccumulator::take() {
  std::vector<SparseVector::Entry> entries;
  entries.reserve(values_.size());
  for (auto& [i, x] : values_)
    if (x != 0) entries.emplace_back(i, std::move(x));
  values_.clear();
  return SparseVector::from_unsorted(std::move(entries));
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.columns_[i] = SparseVector::unit(i);
  return m;
}

Matrix Matrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows[0].size();
  Matrix m(r, c);
  for (std::size_t j = 0; j < c; ++j) {
    std::vector<SparseVector::Entry> entries;
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged dense matrix");
      if (rows[i][j] != 0) entries.emplace_back(i, rows[i][j]);
    }
    m.columns_[j] = SparseVector::from_unsorted(std::move(entries));
  }
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, std::vector<SparseVector> columns) {
  Matrix m;
  m.rows_ = rows;
  for (const auto& c : columns)
    if (c.max_index_bound() > rows) throw std::out_of_range("column entry outside matrix");
  m.columns_ = std::move(columns);
  return m;
}

Matrix Matrix::selection(std::size_t rows, std::span<const std::size_t> images) {
  Matrix m(rows, images.size());
  for (std::size_t j = 0; j < images.size(); ++j) m.columns_[j] = SparseVector::unit(images[j]);
  return m;
}

std::size_t Matrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.nnz();
  return n;
}

bool Matrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const SparseVector& c) { return c.empty(); });
}

void Matrix::set_column(std::size_t j, SparseVector v) {
  if (v.max_index_bound() > rows_) throw std::out_of_range("column entry outside matrix");
  columns_.at(j) = std::move(v);
}

Matrix Matrix::transpose() const {
  std::vector<std::vector<SparseVector::Entry>> rows(rows_);
  for (std::size_t j = 0; j < columns_.size(); ++j)
    for (const auto& [i, x] : columns_[j]) rows[i].emplace_back(j, x);
  Matrix t(columns_.size(), rows_);
  for (std::size_t i = 0; i < rows_; ++i) t.columns_[i] = SparseVector::from_unsorted(std::move(rows[i]));
  return t;
}

SparseVector Matrix::apply(const SparseVector& v) const {
  if (v.max_index_bound() > cols()) throw std::invalid_argument("vector length exceeds matrix columns");
  if (v.nnz() == 1) return columns_[v.front().first].scaled(v.front().second);
  SparseAccumulator acc;
  for (const auto& [j, x] : v) acc.add_scaled(columns_[j], x);
  return acc.take();
}

Matrix Matrix::submatrix(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const {
  std::vector<std::ptrdiff_t> remap(rows_, -1);
  for (std::size_t k = 0; k < row_ids.size(); ++k) remap.at(row_ids[k]) = static_cast<std::ptrdiff_t>(k);
  Matrix m(row_ids.size(), col_ids.size());
  for (std::size_t k = 0; k < col_ids.size(); ++k) {
    std::vector<SparseVector::Entry> entries;
    for (const auto& [i, x] : columns_.at(col_ids[k]))
      if (remap[i] >= 0) entries.emplace_back(static_cast<std::size_t>(remap[i]), x);
    m.columns_[k] = SparseVector::from_unsorted(std::move(entries));
  }
  return m;
}

Matrix Matrix::select_columns(std::span<const std::size_t> col_ids) const {
  Matrix m(rows_, col_ids.size());
  for (std::size_t k = 0; k < col_ids.size(); ++k) m.columns_[k] = columns_.at(col_ids[k]);
  return m;
}

Matrix Matrix::select_rows(std::span<const std::size_t> row_ids) const {
  std::vector<std::size_t> all(cols());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
  return submatrix(row_ids, all);
}

Matrix Matrix::hstack(std::span<const Matrix> blocks) {
  if (blocks.empty()) return {};
  Matrix m(blocks[0].rows(), 0);
  for (const auto& b : blocks) {
    if (b.rows() != m.rows_) throw std::invalid_argument("hstack row mismatch");
    m.columns_.insert(m.columns_.end(), b.columns_.begin(), b.columns_.end());
  }
  return m;
}

Matrix Matrix::vstack(std::span<const Matrix> blocks) {
  if (blocks.empty()) return {};
  const std::size_t c = blocks[0].cols();
  std::size_t total_rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != c) throw std::invalid_argument("vstack column mismatch");
    total_rows += b.rows();
  }
  Matrix m(total_rows, c);
  for (std::size_t j = 0; j < c; ++j) {
    std::vector<SparseVector::Entry> entries;
    std::size_t offset = 0;
    for (const auto& b : blocks) {
      for (const auto& [i, x] : b.columns_[j]) entries.emplace_back(i + offset, x);
      offset += b.rows();
    }
    m.columns_[j] = SparseVector::from_unsorted(std::move(entries));
  }
  return m;
}

Matrix Matrix::block_diagonal(std::span<const Matrix> blocks) {
  std::size_t r = 0;
  std::size_t c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Matrix m(r, c);
  std::size_t ro = 0;
  std::size_t co = 0;
  for (const auto& b : blocks) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::vector<SparseVector::Entry> entries;
      for (const auto& [i, x] : b.columns_[j]) entries.emplace_back(i + ro, x);
      m.columns_[co + j] = SparseVector::from_unsorted(std::move(entries));
    }
    ro += b.rows();
    co += b.cols();
  }
  return m;
}

Matrix Matrix::kronecker(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ja = 0; ja < a.cols(); ++ja)
    for (std::size_t jb = 0; jb < b.cols(); ++jb) {
      std::vector<SparseVector::Entry> entries;
      for (const auto& [ia, xa] : a.columns_[ja])
        for (const auto& [ib, xb] : b.columns_[jb]) entries.emplace_back(ia * b.rows() + ib, xa * xb);
      m.columns_[ja * b.cols() + jb] = SparseVector::from_unsorted(std::move(entries));
    }
  return m;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols() != other.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  Matrix m(rows_, other.cols());
  for (std::size_t j = 0; j < other.cols(); ++j) m.columns_[j] = apply(other.columns_[j]);
  return m;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols() != other.cols()) throw std::invalid_argument("matrix sum dimension mismatch");
  Matrix m = *this;
  for (std::size_t j = 0; j < cols(); ++j) m.columns_[j].add_scaled(other.columns_[j], 1);
  return m;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (rows_ != other.rows_ || cols() != other.cols()) throw std::invalid_argument("matrix difference dimension mismatch");
  Matrix m = *this;
  for (std::size_t j = 0; j < cols(); ++j) m.columns_[j].add_scaled(other.columns_[j], -1);
  return m;
}

Matrix Matrix::operator-() const { return scaled(-1); }

Matrix Matrix::scaled(const Rational& s) const {
  Matrix m = *this;
  for (auto& c : m.columns_) c.scale(s);
  return m;
}

std::vector<std::vector<Rational>> Matrix::to_dense() const {
  std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols(), 0));
  for (std::size_t j = 0; j < cols(); ++j)
    for (const auto& [i, x] : columns_[j]) d[i][j] = x;
  return d;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  const auto d = m.to_dense();
  os << "[";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < d[i].size(); ++j) os << (j ? " " : "") << d[i][j];
  }
  return os << "]";
}

}  // namespace opbar
