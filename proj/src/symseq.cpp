#include "opbar/symseq.hpp"

#include <sstream>

namespace opbar {

namespace {

const ChainComplex& zero_complex() {
  static const ChainComplex z;
  return z;
}

const std::vector<Matrix>& no_matrices() {
  static const std::vector<Matrix> v;
  return v;
}

}  // namespace

SymSeq::SymSeq(const SymSeq& other)
    : components_(other.components_),
      transpositions_(other.transpositions_),
      non_sigma_(other.non_sigma_),
      cut_off_(other.cut_off_) {}

SymSeq& SymSeq::operator=(const SymSeq& other) {
  if (this == &other) return *this;
  components_ = other.components_;
  transpositions_ = other.transpositions_;
  non_sigma_ = other.non_sigma_;
  cut_off_ = other.cut_off_;
  std::lock_guard lock(cache_mutex_);
  cache_.clear();
  return *this;
}

SymSeq::SymSeq(int max_arity, bool non_sigma)
    : components_(static_cast<std::size_t>(max_arity + 1)),
      transpositions_(static_cast<std::size_t>(max_arity + 1)),
      non_sigma_(non_sigma) {
  if (max_arity < 0) throw std::invalid_argument("max_arity must be non-negative");
  if (!non_sigma)
    for (int n = 2; n <= max_arity; ++n) transpositions_[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n - 1), Matrix(0, 0));
}

SymSeq::SymSeq(std::vector<ChainComplex> components, std::vector<std::vector<Matrix>> transpositions, bool non_sigma)
    : components_(std::move(components)), transpositions_(std::move(transpositions)), non_sigma_(non_sigma) {
  if (components_.empty()) throw std::invalid_argument("a symmetric sequence needs at least arity 0");
  transpositions_.resize(components_.size());
  if (non_sigma_) {
    for (auto& t : transpositions_)
      if (!t.empty()) throw std::invalid_argument("non-Σ sequences carry no action tables");
  } else {
    for (std::size_t n = 0; n < components_.size(); ++n) {
      std::size_t want = n >= 2 ? n - 1 : 0;
      if (transpositions_[n].size() != want)
        throw std::invalid_argument("arity " + std::to_string(n) + " needs " + std::to_string(want) + " transposition matrices");
    }
  }
  check();
}

SymSeq SymSeq::with_trivial_actions(std::vector<ChainComplex> components, bool non_sigma) {
  std::vector<std::vector<Matrix>> t(components.size());
  if (!non_sigma)
    for (std::size_t n = 2; n < components.size(); ++n)
      t[n].assign(n - 1, Matrix::identity(components[n].dim()));
  return SymSeq(std::move(components), std::move(t), non_sigma);
}

const ChainComplex& SymSeq::operator[](int n) const {
  if (n < 0 || n > max_arity()) return zero_complex();
  return components_[static_cast<std::size_t>(n)];
}

bool SymSeq::is_zero() const {
  for (const auto& c : components_)
    if (c.dim() != 0) return false;
  return true;
}

const std::vector<Matrix>& SymSeq::transpositions(int n) const {
  if (n < 0 || n > max_arity()) return no_matrices();
  return transpositions_[static_cast<std::size_t>(n)];
}

const Matrix& SymSeq::permutation_matrix(int n, const Permutation& sigma) const {
  if (non_sigma_ && !is_identity(sigma)) throw std::logic_error("permutation action requested in non-Σ mode");
  std::lock_guard lock(cache_mutex_);
  auto key = std::make_pair(n, sigma);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  Matrix m = Matrix::identity(dim(n));
  if (dim(n) > 0)
    for (int k : transposition_word(sigma)) m = transpositions(n)[static_cast<std::size_t>(k)] * m;
  return cache_.emplace(key, std::move(m)).first->second;
}

SparseVector SymSeq::act(int n, const Permutation& sigma, const SparseVector& v) const {
  if (is_identity(sigma)) return v;
  return permutation_matrix(n, sigma).apply(v);
}

void SymSeq::check() const {
  if (non_sigma_) return;
  for (int n = 2; n <= max_arity(); ++n) {
    const auto& c = (*this)[n];
    const auto& s = transpositions(n);
    auto where = [&](const std::string& what) { return "arity " + std::to_string(n) + ": " + what; };
    const Matrix id = Matrix::identity(c.dim());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i].rows() != c.dim() || s[i].cols() != c.dim())
        throw std::invalid_argument(where("s_" + std::to_string(i) + " has the wrong shape"));
      try {
        check_chain_map(c, c, s[i]);
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(where("s_" + std::to_string(i) + " is not a chain map (" + e.what() + ")"));
      }
      if (!(s[i] * s[i] == id)) throw std::invalid_argument(where("relation s_" + std::to_string(i) + "^2 = id fails"));
    }
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (!(s[i] * s[i + 1] * s[i] == s[i + 1] * s[i] * s[i + 1]))
        throw std::invalid_argument(where("braid relation s_" + std::to_string(i) + " s_" + std::to_string(i + 1) + " s_" +
                                          std::to_string(i) + " = s_" + std::to_string(i + 1) + " s_" + std::to_string(i) +
                                          " s_" + std::to_string(i + 1) + " fails"));
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 2; j < s.size(); ++j)
        if (!(s[i] * s[j] == s[j] * s[i]))
          throw std::invalid_argument(where("commutation s_" + std::to_string(i) + " s_" + std::to_string(j) + " = s_" +
                                            std::to_string(j) + " s_" + std::to_string(i) + " fails"));
  }
}

SymSeqMap SymSeqMap::identity(const SymSeq& a) {
  SymSeqMap f;
  for (int n = 0; n <= a.max_arity(); ++n) f.components.push_back(Matrix::identity(a.dim(n)));
  return f;
}

SymSeqMap SymSeqMap::zero(const SymSeq& source, const SymSeq& target) {
  SymSeqMap f;
  int top = std::max(source.max_arity(), target.max_arity());
  for (int n = 0; n <= top; ++n) f.components.emplace_back(target.dim(n), source.dim(n));
  return f;
}

SymSeqMap SymSeqMap::then(const SymSeqMap& next) const {
  if (next.components.size() != components.size()) throw std::invalid_argument("composing maps of different arity ranges");
  SymSeqMap out;
  for (std::size_t n = 0; n < components.size(); ++n) out.components.push_back(next.components[n] * components[n]);
  return out;
}

void check_symseq_map(const SymSeq& source, const SymSeq& target, const SymSeqMap& f) {
  int top = std::max(source.max_arity(), target.max_arity());
  if (static_cast<int>(f.components.size()) < top + 1) throw std::invalid_argument("map is missing arity components");
  for (int n = 0; n <= top; ++n) {
    try {
      check_chain_map(source[n], target[n], f[n]);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("arity " + std::to_string(n) + ": " + e.what());
    }
    if (source.non_sigma() || target.non_sigma() || source.dim(n) == 0 || target.dim(n) == 0) continue;
    for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(n); ++k)
      if (!(f[n] * source.transpositions(n)[k] == target.transpositions(n)[k] * f[n]))
        throw std::invalid_argument("arity " + std::to_string(n) + ": map does not commute with s_" + std::to_string(k));
  }
}

bool is_symseq_map(const SymSeq& source, const SymSeq& target, const SymSeqMap& f) {
  try {
    check_symseq_map(source, target, f);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

namespace {

SymSeq concentrated(int arity, const ChainComplex& c, int max_arity, bool non_sigma) {
  std::vector<ChainComplex> comps(static_cast<std::size_t>(std::max(max_arity, arity) + 1));
  comps[static_cast<std::size_t>(arity)] = c;
  return SymSeq::with_trivial_actions(std::move(comps), non_sigma);
}

}  // namespace

SymSeq unit_I(int max_arity, bool non_sigma) { return concentrated(1, ChainComplex::line(0, 0, "id"), max_arity, non_sigma); }

SymSeq unit_one(int max_arity, bool non_sigma) { return concentrated(0, ChainComplex::line(0, 0, "1"), max_arity, non_sigma); }

SymSeq hat(const ChainComplex& z, int max_arity, bool non_sigma) { return concentrated(0, z, max_arity, non_sigma); }

namespace gen {

SymSeq random_symseq(std::mt19937& rng, int min_arity, int max_arity, int max_dim, int max_degree) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<ChainComplex> comps(static_cast<std::size_t>(max_arity + 1));
  std::vector<std::vector<Matrix>> trans(static_cast<std::size_t>(max_arity + 1));
  for (int n = 0; n <= max_arity; ++n) {
    const auto swaps = static_cast<std::size_t>(std::max(0, n - 1));
    trans[static_cast<std::size_t>(n)].assign(swaps, Matrix(0, 0));
    if (n < min_arity) continue;
    std::vector<Generator> basis;
    std::vector<Matrix> ts(swaps);
    Matrix d;
    const std::string stem = "a" + std::to_string(n) + "_";
    if ((n == 2 || n == 3) && max_dim >= 2 && pick(0, 2) == 0) {
      const int deg = pick(0, max_degree);
      basis = {{stem + "0", deg, 0}, {stem + "1", deg, 0}};
      d = Matrix(2, 2);
      if (n == 2) {
        ts[0] = Matrix::from_dense({{0, 1}, {1, 0}});
      } else {
        // on e0 - e1, e1 - e2
        ts[0] = Matrix::from_dense({{-1, 1}, {0, 1}});
        ts[1] = Matrix::from_dense({{1, 0}, {1, -1}});
      }
    } else {
      const int pieces = pick(0, std::min(max_dim, 2));
      std::vector<int> sign, deg;
      for (int i = 0; i < pieces; ++i) {
        sign.push_back(n >= 2 ? pick(0, 1) : 0);
        deg.push_back(pick(0, max_degree));
        basis.push_back({stem + std::to_string(i), deg.back(), 0});
      }
      d = Matrix(basis.size(), basis.size());
      if (pieces == 2 && sign[0] == sign[1] && std::abs(deg[0] - deg[1]) == 1 && pick(0, 1) == 1) {
        const std::size_t hi = deg[0] > deg[1] ? 0 : 1;
        const Rational c = std::vector<Rational>{1, -1, 2, Rational(1, 2)}[static_cast<std::size_t>(pick(0, 3))];
        d.set_column(hi, SparseVector::unit(1 - hi, c));
      }
      for (std::size_t k = 0; k < swaps; ++k) {
        ts[k] = Matrix(basis.size(), basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) ts[k].set_column(i, SparseVector::unit(i, sign[i] ? -1 : 1));
      }
    }
    comps[static_cast<std::size_t>(n)] = ChainComplex(std::move(basis), std::move(d));
    trans[static_cast<std::size_t>(n)] = std::move(ts);
  }
  SymSeq out(std::move(comps), std::move(trans));
  out.check();
  return out;
}

}  // namespace gen

}  // namespace opbar
