#pragma once

#include <unordered_map>

#include "opbar/circle.hpp"

namespace opbar {

/// B_1 ⊗̌ ... ⊗̌ B_t. Basis at arity r: a set map π: [r] -> [t] (order
/// preserving in non-Σ mode) and a basis element of B_i[|π^{-1}(i)|] for
/// each i, stored as a CircleTerm with a = 0.
class TensorProduct {
 public:
  TensorProduct(std::vector<SymSeqPtr> factors, int max_arity, bool non_sigma = false);

  const SymSeq& result() const { return *result_; }
  SymSeqPtr result_ptr() const { return result_; }
  int t() const { return static_cast<int>(factors_.size()); }
  const std::vector<CircleTerm>& terms(int r) const { return terms_[static_cast<std::size_t>(r)]; }
  /// Index of a term at its arity, if it is a basis term.
  std::optional<std::size_t> index(const CircleTerm& term) const;

  /// Swap of tensor factors k and k+1 with its Koszul sign. Only defined
  /// when those two factors are the same sequence.
  Matrix block_transposition(int r, int k) const;

 private:
  std::vector<SymSeqPtr> factors_;
  bool non_sigma_;
  std::vector<std::vector<CircleTerm>> terms_;
  std::vector<std::unordered_map<std::u32string, std::size_t>> lookup_;
  SymSeqPtr result_;
};

/// B^{⊗̌t} with its commuting Σ_r and Σ_t actions. t = 0 gives the unit 1.
struct TensorPower {
  std::shared_ptr<TensorProduct> product;
  /// block_actions[r][k] is the action of s_k ∈ Σ_t on arity r.
  std::vector<std::vector<Matrix>> block_actions;
};
TensorPower tensor_power(const SymSeqPtr& b, int t, int max_arity);

/// Coinvariants of a Σ_t-action given by adjacent transpositions, presented
/// as a direct summand through the averaging idempotent.
struct Coinvariants {
  ChainComplex complex;
  Matrix section;
  Matrix retraction;
};
Coinvariants coinvariants(const ChainComplex& c, const std::vector<Matrix>& transpositions, int t, bool non_sigma = false);

/// Graded Σ-equivariant maps P -> Q as a chain complex, D f = d f - (-1)^{|f|} f d.
/// Basis element degree is the map degree, weight the weight shift.
struct HomComplex {
  ChainComplex complex;
  /// Column k is basis map k flattened as entry (i, j) at i * dim P + j.
  Matrix maps;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
};
HomComplex equivariant_hom(const ChainComplex& p, const std::vector<Matrix>& p_action, const ChainComplex& q,
                           const std::vector<Matrix>& q_action);

/// Map∘(B,C)[t] = ⊕_{r ≤ N} Hom_{Σ_r}((B^{⊗̌t})[r], C[r]) for t ≤ t_max, with
/// Σ_t acting by (τ·f)(x) = f(τ^{-1}·x).
SymSeq mapping_sequence(const SymSeqPtr& b, const SymSeq& c, int t_max);

/// mapping_sequence with the pieces kept: per t the tensor power and per r
/// the hom complex, its offset in the arity-t basis and a coordinate solver.
struct MappingData {
  struct Piece {
    HomComplex hom;
    std::size_t offset = 0;
    Subspace span;
    Matrix from_span;
    /// Coordinates of a flattened equivariant map; throws ContainmentError.
    SparseVector coordinates(const SparseVector& flat) const { return from_span.apply(span.coordinates(flat)); }
  };
  std::vector<TensorPower> powers;
  std::vector<std::vector<Piece>> pieces;  // [t][r]
  SymSeq seq;
};
MappingData mapping_data(const SymSeqPtr& b, const SymSeq& c, int t_max);

/// Dimension of the space of degree-0, weight-preserving, Σ-equivariant chain
/// maps A -> B, summed over arities.
std::size_t hom_dim(const SymSeq& a, const SymSeq& b);

}  // namespace opbar
