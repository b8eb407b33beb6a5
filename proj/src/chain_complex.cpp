#include "opbar/chain_complex.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace opbar {

ChainComplex::ChainComplex(std::vector<Generator> basis, Matrix differential)
    : basis_(std::move(basis)), differential_(std::move(differential)) {
  const std::size_t n = basis_.size();
  if (differential_.rows() != n || differential_.cols() != n)
    throw std::invalid_argument("differential must be square on the basis");
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [i, x] : differential_.column(j)) {
      if (basis_[i].degree != basis_[j].degree - 1)
        throw std::invalid_argument("differential does not lower degree by one at " + basis_[j].name);
      if (basis_[i].weight != basis_[j].weight)
        throw std::invalid_argument("differential does not preserve weight at " + basis_[j].name);
    }
  if (n > 0 && !(differential_ * differential_).is_zero()) throw std::invalid_argument("differential does not square to zero");
}

ChainComplex ChainComplex::graded(std::vector<Generator> basis) {
  const std::size_t n = basis.size();
  return ChainComplex(std::move(basis), Matrix(n, n));
}

ChainComplex ChainComplex::line(int degree, int weight, std::string name) {
  return graded({Generator{std::move(name), degree, weight}});
}

std::set<int> ChainComplex::degrees() const {
  std::set<int> s;
  for (const auto& g : basis_) s.insert(g.degree);
  return s;
}

std::set<int> ChainComplex::weights() const {
  std::set<int> s;
  for (const auto& g : basis_) s.insert(g.weight);
  return s;
}

std::vector<std::size_t> ChainComplex::indices(int degree) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].degree == degree) out.push_back(i);
  return out;
}

std::vector<std::size_t> ChainComplex::indices(int degree, int weight) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].degree == degree && basis_[i].weight == weight) out.push_back(i);
  return out;
}

int ChainComplex::min_degree() const {
  if (basis_.empty()) return 0;
  return std::min_element(basis_.begin(), basis_.end(), [](auto& a, auto& b) { return a.degree < b.degree; })->degree;
}

int ChainComplex::max_degree() const {
  if (basis_.empty()) return 0;
  return std::max_element(basis_.begin(), basis_.end(), [](auto& a, auto& b) { return a.degree < b.degree; })->degree;
}

Matrix ChainComplex::differential_block(int degree, int weight) const {
  auto cols = indices(degree, weight);
  auto rows = indices(degree - 1, weight);
  return differential_.submatrix(rows, cols);
}

long ChainComplex::euler_characteristic() const {
  long chi = 0;
  for (const auto& g : basis_) chi += (g.degree % 2 == 0) ? 1 : -1;
  return chi;
}

ChainComplex ChainComplex::with_weight(int weight) const {
  auto basis = basis_;
  for (auto& g : basis) g.weight = weight;
  return ChainComplex(std::move(basis), differential_);
}

void HomologyTable::set(HomologyKey key, long betti) {
  if (betti < 0) throw std::logic_error("negative Betti number");
  entries_[key] = betti;
}

long HomologyTable::betti(HomologyKey key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second;
}

long HomologyTable::betti(int degree) const {
  long total = 0;
  for (const auto& [k, b] : entries_)
    if (k.degree == degree) total += b;
  return total;
}

std::map<HomologyKey, long> HomologyTable::nonzero() const {
  std::map<HomologyKey, long> out;
  for (const auto& [k, b] : entries_)
    if (b != 0) out.emplace(k, b);
  return out;
}

HomologyTable HomologyTable::window(int lo, int hi) const {
  HomologyTable t;
  for (const auto& [k, b] : entries_)
    if (k.degree >= lo && k.degree <= hi) t.entries_.emplace(k, b);
  return t;
}

HomologyTable HomologyTable::with_arity(int arity) const {
  HomologyTable t;
  for (const auto& [k, b] : entries_) {
    HomologyKey key = k;
    key.arity = arity;
    t.entries_[key] += b;
  }
  return t;
}

void HomologyTable::merge(const HomologyTable& other) {
  for (const auto& [k, b] : other.entries_) entries_[k] += b;
}

std::ostream& operator<<(std::ostream& os, const HomologyTable& t) {
  os << "{";
  bool first = true;
  for (const auto& [k, b] : t.nonzero()) {
    os << (first ? "" : ", ") << "(a" << k.arity << ",w" << k.weight << ",d" << k.degree << ")=" << b;
    first = false;
  }
  return os << "}";
}

HomologyTable homology(const ChainComplex& c) {
  HomologyTable table;
  std::set<std::pair<int, int>> blocks;
  for (const auto& g : c.basis()) blocks.emplace(g.weight, g.degree);
  std::map<std::pair<int, int>, std::size_t> ranks;
  auto rank_of = [&](int weight, int degree) -> std::size_t {
    auto key = std::make_pair(weight, degree);
    auto it = ranks.find(key);
    if (it != ranks.end()) return it->second;
    std::size_t r = rank(c.differential_block(degree, weight));
    ranks.emplace(key, r);
    return r;
  };
  for (const auto& [w, n] : blocks) {
    long dim = static_cast<long>(c.indices(n, w).size());
    long betti = dim - static_cast<long>(rank_of(w, n)) - static_cast<long>(rank_of(w, n + 1));
    table.set({0, w, n}, betti);
  }
  return table;
}

void check_chain_map(const ChainComplex& source, const ChainComplex& target, const Matrix& f) {
  if (f.rows() != target.dim() || f.cols() != source.dim()) throw std::invalid_argument("chain map has wrong shape");
  for (std::size_t j = 0; j < f.cols(); ++j)
    for (const auto& [i, x] : f.column(j)) {
      if (target.generator(i).degree != source.generator(j).degree)
        throw std::invalid_argument("chain map does not preserve degree at " + source.generator(j).name);
      if (target.generator(i).weight != source.generator(j).weight)
        throw std::invalid_argument("chain map does not preserve weight at " + source.generator(j).name);
    }
  if (!(f * source.differential() == target.differential() * f))
    throw std::invalid_argument("map does not commute with the differentials");
}

bool is_chain_map(const ChainComplex& source, const ChainComplex& target, const Matrix& f) {
  try {
    check_chain_map(source, target, f);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

ChainMap::ChainMap(ChainComplex src, ChainComplex tgt, Matrix m)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
  check_chain_map(source, target, matrix);
}

ChainMap ChainMap::identity(const ChainComplex& c) { return ChainMap(c, c, Matrix::identity(c.dim())); }

namespace {

Matrix degree_sign(const ChainComplex& c) {
  Matrix s(c.dim(), c.dim());
  for (std::size_t i = 0; i < c.dim(); ++i) s.set_column(i, SparseVector::unit(i, c.generator(i).degree % 2 == 0 ? 1 : -1));
  return s;
}

}  // namespace

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b) {
  std::vector<Generator> basis;
  basis.reserve(a.dim() * b.dim());
  for (const auto& x : a.basis())
    for (const auto& y : b.basis())
      basis.push_back({"(" + x.name + "⊗" + y.name + ")", x.degree + y.degree, x.weight + y.weight});
  Matrix d = Matrix::kronecker(a.differential(), Matrix::identity(b.dim())) +
             Matrix::kronecker(degree_sign(a), b.differential());
  return ChainComplex(std::move(basis), std::move(d));
}

Matrix tensor_symmetry(const ChainComplex& a, const ChainComplex& b) {
  Matrix m(a.dim() * b.dim(), a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      int sign = (a.generator(i).degree * b.generator(j).degree) % 2 == 0 ? 1 : -1;
      m.set_column(i * b.dim() + j, SparseVector::unit(j * a.dim() + i, sign));
    }
  return m;
}

ChainComplex mapping_cone(const ChainMap& f) {
  const auto& src = f.source;
  const auto& tgt = f.target;
  std::vector<Generator> basis = tgt.basis();
  for (const auto& g : src.basis()) basis.push_back({"s" + g.name, g.degree + 1, g.weight});
  const std::size_t nt = tgt.dim();
  const std::size_t n = nt + src.dim();
  Matrix d(n, n);
  for (std::size_t j = 0; j < nt; ++j) d.set_column(j, tgt.differential().column(j));
  for (std::size_t j = 0; j < src.dim(); ++j) {
    SparseVector col = f.matrix.column(j);
    std::vector<SparseVector::Entry> shifted;
    for (const auto& [i, x] : src.differential().column(j)) shifted.emplace_back(i + nt, -x);
    col.add_scaled(SparseVector::from_unsorted(std::move(shifted)), 1);
    d.set_column(nt + j, std::move(col));
  }
  return ChainComplex(std::move(basis), std::move(d));
}

ChainComplex shift(const ChainComplex& c, int s) {
  auto basis = c.basis();
  for (auto& g : basis) g.degree += s;
  return ChainComplex(std::move(basis), s % 2 == 0 ? c.differential() : c.differential().scaled(-1));
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  auto basis = a.basis();
  basis.insert(basis.end(), b.basis().begin(), b.basis().end());
  std::vector<Matrix> blocks{a.differential(), b.differential()};
  return ChainComplex(std::move(basis), Matrix::block_diagonal(blocks));
}

bool is_quasi_isomorphism(const ChainMap& f) { return homology(mapping_cone(f)).is_zero(); }

}  // namespace opbar
