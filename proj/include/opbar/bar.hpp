#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opbar/operad.hpp"
#include "opbar/simplicial.hpp"

namespace opbar {

/// Raised when an operation's hypotheses fail (for example Quillen homology
/// of an operad with O[0] ≠ 0 or O[1] ≠ k).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// B(X, O, Y) with levels X∘O^{∘k}∘Y for k ≤ S, built right-associated:
/// Z_0 = Y, Z_{j+1} = O∘Z_j and level k = X∘Z_k.
///
/// d_0 is the right action on X, d_i for 0 < i < k multiplies the i-th and
/// (i+1)-st copies of O, d_k is the left action on Y, and s_j inserts the unit
/// after the j-th factor.
struct BarConstruction {
  RightModulePtr left;
  OperadPtr op;
  LeftModulePtr right;
  int top = 0;
  TruncationPolicy policy;

  std::vector<CirclePtr> z;  // z[j] = O∘Z_{j-1}; z[0] is null
  std::vector<SymSeqPtr> z_seq;
  std::vector<CirclePtr> levels;  // X∘Z_k, shared with z[k+1] when X = O
  std::vector<std::vector<SymSeqMap>> faces;         // [k][i]
  std::vector<std::vector<SymSeqMap>> degeneracies;  // [k][j]
  bool left_is_operad = false;

  int max_arity() const { return policy.max_arity; }
  const SymSeq& level(int k) const { return levels[static_cast<std::size_t>(k)]->result(); }
  /// The simplicial chain complex at one arity.
  SimplicialChainComplex arity(int r) const;
};

BarConstruction bar(const RightModulePtr& x, const OperadPtr& o, const LeftModulePtr& y, int s);

/// An augmented simplicial object X -> A with an extra degeneracy
/// s_{-1}: X_{n-1} -> X_n (X_{-1} = A).
struct AugmentedObject {
  SimplicialChainComplex x;
  ChainComplex base;
  Matrix augmentation;        // X_0 -> A
  std::vector<Matrix> extra;  // extra[n]: X_{n-1} -> X_n, extra[0]: A -> X_0
};

/// Extra degeneracy s_{-1} = η∘id on B(O, O, Y), with augmentation λ.
AugmentedObject left_contraction(const BarConstruction& b, int r);
/// Mirror: B(X, O, O) with s_{k+1} = id∘(η, ..., η), presented on the
/// opposite simplicial object, with augmentation the right action on X.
AugmentedObject right_contraction(const BarConstruction& b, int r);

struct ContractionReport {
  bool ok = true;
  bool relations_ok = true;  // false when a matrix identity failed, before any homology
  std::string message;
  HomologyTable bar_homology;   // H(|B|) in the window
  HomologyTable base_homology;  // H(A) in the window
  std::optional<int> window_top;
};

/// Checks the augmentation and extra-degeneracy relations, r∘s = id, that
/// H(x, α) = s_{-1}^c d_0^c (c = number of zeros of α) is a simplicial
/// homotopy from s∘r to id, and that |r| is a homology isomorphism in the
/// trustworthy window.
ContractionReport contraction_check(const AugmentedObject& a, int arity = 0);

/// contraction_check on every arity of B(O, O, Y), plus π0(B) ≅ Y.
ContractionReport contraction_check(const OperadPtr& o, const LeftModulePtr& y, int s);
ContractionReport contraction_check(const BarConstruction& b);
/// Mirror check on every arity of B(X, O, O).
ContractionReport right_module_resolution(const RightModulePtr& x, const OperadPtr& o, int s);

struct HomologyReport {
  HomologyTable table;  // keyed by (arity, weight, degree)
  int window_top = 0;
  std::string config;
};

/// H(|B|) per arity, weight and degree, restricted to the trustworthy window.
HomologyReport bar_homology(const BarConstruction& b, std::optional<int> max_degree = std::nullopt);

/// Throws PreconditionError unless O[0] = 0 and O[1] = k·id.
void require_augmentable(const Operad& o);
/// B(I, O, Y) with I a right O-module through ε; throws PreconditionError
/// unless O[0] = 0 and O[1] = k·id.
BarConstruction quillen_bar(const OperadPtr& o, const LeftModulePtr& y, int s);
/// B(O', O, Y) for f: O -> O'.
BarConstruction change_bar(const OperadMap& f, const LeftModulePtr& y, int s);

/// Homology of |B(I, O, Y)|.
HomologyReport quillen_homology(const OperadPtr& o, const LeftModulePtr& y, int s,
                                std::optional<int> max_degree = std::nullopt);

/// Homology of |B(O', O, Y)| for f: O -> O', O' a right O-module along f.
HomologyReport change_of_operads(const OperadMap& f, const LeftModulePtr& y, int s,
                                 std::optional<int> max_degree = std::nullopt);

}  // namespace opbar
