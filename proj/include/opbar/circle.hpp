#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "opbar/symseq.hpp"

namespace opbar {

/// Unreduced basis term a ⊗ (π; b_1, ..., b_t) of A[t] ⊗ (B^{⊗̌t})[r].
///
/// blocks[x] = π(x) for x in [r]; factors[i] is a basis index of
/// B[|π^{-1}(i)|]. Inside block i the inputs of b_i are matched with the
/// elements of π^{-1}(i) in increasing order.
struct CircleTerm {
  std::uint32_t a = 0;
  std::vector<std::uint8_t> blocks;
  std::vector<std::uint32_t> factors;

  int t() const { return static_cast<int>(factors.size()); }
  int arity() const { return static_cast<int>(blocks.size()); }
  friend bool operator==(const CircleTerm&, const CircleTerm&) = default;
};

using TermVector = std::vector<std::pair<CircleTerm, Rational>>;

/// Sizes of the blocks of π.
std::vector<int> block_sizes(const CircleTerm& term);

/// The circle product A∘B, (A∘B)[r] = ⊕_t A[t] ⊗_{Σ_t} (B^{⊗̌t})[r].
///
/// Each Σ_t-orbit of (π; b) data has a canonical representative: nonempty
/// blocks ordered by their least element, then empty blocks ordered by
/// factor index. The coinvariants of an orbit are the coinvariants of A[t]
/// under its stabilizer (twisted by Koszul signs of the permuted factors),
/// computed as the image of the averaging idempotent. retract() is the
/// quotient map from unreduced terms, section() a chosen splitting of it.
/// In non-Σ mode π is order preserving and there are no coinvariants.
class Circle {
 public:
  Circle(SymSeqPtr a, SymSeqPtr b, TruncationPolicy policy);
  Circle(const SymSeq& a, const SymSeq& b, TruncationPolicy policy);

  const SymSeq& left() const { return *a_; }
  const SymSeq& right() const { return *b_; }
  SymSeqPtr left_ptr() const { return a_; }
  SymSeqPtr right_ptr() const { return b_; }
  const SymSeq& result() const { return *result_; }
  SymSeqPtr result_ptr() const { return result_; }
  const TruncationPolicy& policy() const { return policy_; }
  bool non_sigma() const { return non_sigma_; }

  /// Coinvariant class of c·term in result()[r] (zero beyond the weight bound).
  void retract(const CircleTerm& term, const Rational& c, SparseAccumulator& out) const;
  SparseVector retract(const CircleTerm& term) const;
  /// Retract a ⊗ (π; v_1 ⊗ ... ⊗ v_t) for a vector a and factor vectors v_i.
  void retract_product(const SparseVector& a, const std::vector<std::uint8_t>& blocks,
                       const std::vector<SparseVector>& factors, const Rational& c, SparseAccumulator& out) const;

  /// Unreduced representative of basis vector j of result()[r].
  TermVector section(int r, std::size_t j) const;

  int term_degree(const CircleTerm& term) const;
  int term_weight(const CircleTerm& term) const;

  /// Number of Σ_t-orbits at arity r (for reports).
  std::size_t orbit_count(int r) const { return arities_[static_cast<std::size_t>(r)].orbits.size(); }

 private:
  struct Stabilizer {
    bool trivial = true;
    Matrix section;     // dim A[t] x k
    Matrix retraction;  // k x dim A[t]
  };
  struct Orbit {
    CircleTerm rep;  // rep.a unused
    std::size_t start = 0;
    std::size_t count = 0;
    const Stabilizer* stab = nullptr;
    std::vector<std::int32_t> kept;    // local basis index -> stabilizer basis index
    std::vector<std::int32_t> local;   // stabilizer basis index -> local index or -1
  };
  struct Arity {
    std::vector<Orbit> orbits;
    std::unordered_map<std::u32string, std::size_t> lookup;
    std::vector<std::uint32_t> basis_orbit;
  };

  std::vector<Generator> enumerate(int r);
  void add_orbit(int r, CircleTerm rep, std::vector<Generator>& basis);
  const Stabilizer& stabilizer(const CircleTerm& rep);
  /// Reorders the blocks into canonical position; returns the permutation τ
  /// (old block i moves to τ(i)) and its Koszul sign.
  int canonicalize(CircleTerm& term, Permutation& tau) const;
  void build_structure();

  SymSeqPtr a_, b_;
  TruncationPolicy policy_;
  bool non_sigma_;
  std::vector<Arity> arities_;
  std::unordered_map<std::string, std::unique_ptr<Stabilizer>> stabilizers_;
  SymSeqPtr result_;
};

using CirclePtr = std::shared_ptr<const Circle>;

/// Linear map on unreduced terms of A∘B with values in some E[r]. Used for
/// operad multiplications, module actions and associativity rebracketing.
using TermProduct = std::function<SparseVector(const CircleTerm&)>;

/// f∘g: A∘B -> A'∘B'. Null pointers stand for identities.
SymSeqMap circle_map(const Circle& source, const Circle& target, const SymSeqMap* f, const SymSeqMap* g);

/// Rebrackets one term of A ⊗ (B∘C)^{⊗t} into (A∘B)∘C, applies m to the
/// inner A∘B term and retracts into E∘C.
void regroup_apply(const CircleTerm& term, const Rational& c, const Circle& bc, const TermProduct& m, const Circle& ec,
                   SparseAccumulator& out);

/// m∘id: A∘(B∘C) -> E∘C where `outer` = A∘(B∘C).
SymSeqMap compose_two_level(const Circle& outer, const Circle& bc, const TermProduct& m, const Circle& ec);

/// The map A∘B -> E given on unreduced terms.
SymSeqMap apply_product(const Circle& ab, const TermProduct& m, const SymSeq& e);

/// (A∘B)∘C -> A∘(B∘C) and its inverse.
struct Associator {
  SymSeqMap forward;
  SymSeqMap backward;
};
Associator canonical_assoc(const Circle& ab, const Circle& ab_c, const Circle& bc, const Circle& a_bc);

/// I∘B -> B and A∘I -> A.
SymSeqMap left_unitor(const Circle& ib);
SymSeqMap right_unitor(const Circle& ai);

/// z ↦ u ⊗ z into O∘Z, where u is a vector of O[1] (normally the unit).
SymSeqMap left_unit_insertion(const Circle& oz, const SparseVector& unit);
/// a ↦ a ⊗ (u, ..., u) into A∘O.
SymSeqMap right_unit_insertion(const Circle& ao, const SparseVector& unit);

/// O(Z) = ⊕_t O[t] ⊗_{Σ_t} Z^{⊗t} in weights ≤ W, with Z placed in weight 1.
/// Returns the complex (O∘Ẑ)[0].
ChainComplex apply_to_object(const SymSeq& o, const ChainComplex& z, int max_weight);

}  // namespace opbar
