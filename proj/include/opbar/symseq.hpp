#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "opbar/chain_complex.hpp"
#include "opbar/permutation.hpp"

namespace opbar {

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite window on the infinite objects: arities 0..max_arity, generator
/// weight at most max_weight (when set), and a degree window used when
/// reporting.
struct TruncationPolicy {
  int max_arity = 4;
  std::optional<int> max_weight;
  int min_degree = -1000;
  int max_degree = 1000;

  bool admits_weight(int w) const { return !max_weight || w <= *max_weight; }
};

/// Symmetric sequence of chain complexes, exactly zero above max_arity.
///
/// Σ_n acts on A[n] on the left: σ relabels input i as σ(i). The action is
/// given by the matrices of the adjacent transpositions s_0, ..., s_{n-2},
/// which must be degree- and weight-preserving chain maps satisfying the
/// Coxeter relations. Koszul signs enter only through generator degrees when
/// tensor factors are permuted; the action tables never carry them. In
/// non-Σ mode there are no action tables.
class SymSeq {
 public:
  SymSeq() = default;
  SymSeq(const SymSeq& other);
  SymSeq& operator=(const SymSeq& other);
  /// Zero sequence.
  explicit SymSeq(int max_arity, bool non_sigma = false);
  SymSeq(std::vector<ChainComplex> components, std::vector<std::vector<Matrix>> transpositions, bool non_sigma = false);

  /// Components with trivial Σ_n-actions (identity transposition matrices).
  static SymSeq with_trivial_actions(std::vector<ChainComplex> components, bool non_sigma = false);

  int max_arity() const { return static_cast<int>(components_.size()) - 1; }
  bool non_sigma() const { return non_sigma_; }
  /// True when arities above max_arity were cut off rather than being zero.
  /// Such a sequence cannot sit on the left of a circle product whose right
  /// factor has an arity-0 part.
  bool cut_off() const { return cut_off_; }
  void set_cut_off(bool c) { cut_off_ = c; }

  /// Component at arity n; the zero complex above max_arity.
  const ChainComplex& operator[](int n) const;
  std::size_t dim(int n) const { return (*this)[n].dim(); }
  bool is_zero() const;

  /// Matrices of s_0, ..., s_{n-2} on A[n] (empty in non-Σ mode).
  const std::vector<Matrix>& transpositions(int n) const;

  /// ρ(σ) applied to a vector of A[n].
  SparseVector act(int n, const Permutation& sigma, const SparseVector& v) const;
  /// Full matrix of ρ(σ), cached.
  const Matrix& permutation_matrix(int n, const Permutation& sigma) const;

  /// Throws std::invalid_argument naming the failing relation.
  void check() const;

 private:
  std::vector<ChainComplex> components_;
  std::vector<std::vector<Matrix>> transpositions_;
  bool non_sigma_ = false;
  bool cut_off_ = false;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<int, Permutation>, Matrix> cache_;
};

using SymSeqPtr = std::shared_ptr<const SymSeq>;

/// Per-arity degree-0 chain maps.
struct SymSeqMap {
  std::vector<Matrix> components;

  static SymSeqMap identity(const SymSeq& a);
  static SymSeqMap zero(const SymSeq& source, const SymSeq& target);
  const Matrix& operator[](int n) const { return components.at(static_cast<std::size_t>(n)); }
  SymSeqMap then(const SymSeqMap& next) const;  // next ∘ this

  friend bool operator==(const SymSeqMap&, const SymSeqMap&) = default;
};

/// Chain-map and equivariance check; throws std::invalid_argument.
void check_symseq_map(const SymSeq& source, const SymSeq& target, const SymSeqMap& f);
bool is_symseq_map(const SymSeq& source, const SymSeq& target, const SymSeqMap& f);

/// k concentrated at arity 1, degree 0: the unit for the circle product.
SymSeq unit_I(int max_arity, bool non_sigma = false);
/// k concentrated at arity 0, degree 0: the unit for the tensor product.
SymSeq unit_one(int max_arity, bool non_sigma = false);
/// The sequence concentrated at arity 0 with value z.
SymSeq hat(const ChainComplex& z, int max_arity, bool non_sigma = false);

namespace gen {

/// Random sequence on arities min_arity..max_arity. Each component is a sum
/// of trivial and sign characters, the regular representation of Σ_2 or the
/// 2-dimensional irreducible of Σ_3, at most max_dim in total, in degrees
/// 0..max_degree, sometimes with a nonzero differential.
SymSeq random_symseq(std::mt19937& rng, int min_arity, int max_arity, int max_dim, int max_degree);

}  // namespace gen

}  // namespace opbar
