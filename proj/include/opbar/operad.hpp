#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>

#include "opbar/circle.hpp"

namespace opbar {

/// Raised when an operad, module or map fails an axiom. The message names
/// the axiom, the arities and the basis elements of a witness.
class AxiomError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (m, n, i): x ∘_i y for x of arity m, y of arity n, 0 ≤ i < m. The matrix
/// maps the pair basis (x, y) ↦ column x·dim(n) + y into arity m+n-1.
/// Missing entries are zero.
using PartialKey = std::tuple<int, int, int>;
using PartialTables = std::map<PartialKey, Matrix>;

/// x ∘_i y for vectors, with x in X[m] and y in O[n].
SparseVector partial_compose(const PartialTables& tables, const SymSeq& x_seq, const SymSeq& o_seq, int m,
                             const SparseVector& x, int n, const SparseVector& y, int i);

/// γ(x; y_1, ..., y_t) for an unreduced term of X∘O: compose left to right,
/// which needs no signs, then relabel the inputs by the block structure.
SparseVector compose_term(const PartialTables& tables, const SymSeq& x_seq, const SymSeq& o_seq, const CircleTerm& term);

class Operad {
 public:
  /// Validates every axiom up to the max arity; throws AxiomError.
  Operad(SymSeq seq, SparseVector unit, PartialTables partials, std::string name = "");

  const SymSeq& seq() const { return *seq_; }
  SymSeqPtr seq_ptr() const { return seq_; }
  int max_arity() const { return seq_->max_arity(); }
  bool non_sigma() const { return seq_->non_sigma(); }
  const SparseVector& unit() const { return unit_; }
  const PartialTables& partials() const { return partials_; }
  const std::string& name() const { return name_; }

  /// O[0] = 0 and O[1] = k·id, the shape required for Quillen homology.
  bool augmentable() const { return augmentable_; }

  SparseVector compose(int m, const SparseVector& x, int n, const SparseVector& y, int i) const {
    return partial_compose(partials_, *seq_, *seq_, m, x, n, y, i);
  }
  /// The monoid multiplication on unreduced terms of O∘O.
  TermProduct multiplication() const;
  /// Same product with only the inner factors in O: terms of X∘O for a
  /// right module given by tables.
  SparseVector gamma(const CircleTerm& term) const { return compose_term(partials_, *seq_, *seq_, term); }

 private:
  SymSeqPtr seq_;
  SparseVector unit_;
  PartialTables partials_;
  std::string name_;
  bool augmentable_ = false;
};

using OperadPtr = std::shared_ptr<const Operad>;

/// Axiom checks shared by operads and right modules: right unit, sequential
/// and parallel associativity and equivariance of x ∘_i y with x in X.
/// Throws AxiomError with a located witness.
void check_partial_action(const std::string& what, const SymSeq& x_seq, const PartialTables& tables, const Operad& o);
void check_operad(const Operad& o);

/// The assembled m: O∘O -> O satisfies m(m∘id) = m(id∘m)·assoc and both unit
/// triangles, as matrix identities up to the max arity.
void check_monoid_identities(const Operad& o);

struct OperadMap {
  OperadPtr source;
  OperadPtr target;
  SymSeqMap map;
};
void check_operad_map(const OperadMap& f);
OperadMap identity_map(const OperadPtr& o);

/// ε: O -> I when O[1] = k·id and O[0] = 0.
OperadMap augmentation(const OperadPtr& o);

struct LeftModule {
  OperadPtr op;
  SymSeqPtr seq;
  TermProduct action;  // unreduced terms of O∘Y -> Y
  std::optional<int> max_weight;
  std::string name;

  bool is_algebra() const;
  TruncationPolicy policy() const { return {seq->max_arity(), max_weight}; }
};
using LeftModulePtr = std::shared_ptr<const LeftModule>;

struct RightModule {
  OperadPtr op;
  SymSeqPtr seq;
  PartialTables tables;  // X[m] ⊗ O[n] -> X[m+n-1]
  std::string name;

  TermProduct action() const;
};
using RightModulePtr = std::shared_ptr<const RightModule>;

void check_module(const LeftModule& m);
void check_module(const RightModule& m);

LeftModule free_left_module(const OperadPtr& o, const SymSeq& y, std::optional<int> max_weight = std::nullopt);
/// O(V) with V placed in weight 1.
LeftModule free_algebra(const OperadPtr& o, const ChainComplex& v, int max_weight);
/// V in weight 1 with every action through positive arity zero.
LeftModule square_zero(const OperadPtr& o, const ChainComplex& v, int max_weight);
LeftModule operad_as_left_module(const OperadPtr& o);
RightModule operad_as_right_module(const OperadPtr& o);
/// I as a right O-module through the augmentation.
RightModule unit_right_module(const OperadPtr& o);

RightModule restrict_along(const OperadMap& f, const RightModule& m);
LeftModule restrict_along(const OperadMap& f, const LeftModule& m);

/// Map∘(Y,Y) with the composition induced by the adjunction, up to arity
/// `bound`. For Y = Ẑ this is the usual Hom(Z^{⊗n}, Z).
OperadPtr endomorphism_operad(const SymSeq& y, int bound);
/// o ↦ (x ↦ λ(o ⊗ x)), the operad map adjoint to a left action.
OperadMap action_adjoint(const LeftModule& m, const OperadPtr& end);

namespace builtin {
OperadPtr unit(int max_arity, bool non_sigma = false);
OperadPtr com(int max_arity);
OperadPtr ass(int max_arity);
/// Planar operad with one operation in each positive arity (non-Σ Com and Ass agree).
OperadPtr planar(int max_arity, const std::string& name = "planar");
/// Zeroes arities above n; rejected when O[0] ≠ 0.
OperadPtr truncate(const OperadPtr& o, int n);
/// The projection Ass -> Com sending every word to μ_n.
OperadMap ass_to_com(const OperadPtr& ass, const OperadPtr& com);
}  // namespace builtin

}  // namespace opbar
