#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "opbar/chain_complex.hpp"

namespace opbar {

/// Outcome of a structural check. `message` locates the first failure.
struct Report {
  bool ok = true;
  std::string message;

  static Report failure(std::string m) { return {false, std::move(m)}; }
  explicit operator bool() const { return ok; }
};

/// Levels X_0..X_S of a simplicial chain complex with its faces and
/// degeneracies, all degree- and weight-preserving chain maps.
///
/// A finite object is understood to be degenerate above S. When `infinite`
/// is set the levels are a window on an object with nondegenerate simplices
/// beyond S, and realization only reports a trustworthy range of degrees.
struct SimplicialChainComplex {
  std::vector<ChainComplex> levels;
  std::vector<std::vector<Matrix>> faces;         // faces[n][i]: X_n -> X_{n-1}, faces[0] empty
  std::vector<std::vector<Matrix>> degeneracies;  // degeneracies[n][j]: X_n -> X_{n+1}, n < S
  bool infinite = false;

  int top() const { return static_cast<int>(levels.size()) - 1; }
  const Matrix& face(int n, int i) const {
    return faces.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(i));
  }
  const Matrix& degeneracy(int n, int j) const {
    return degeneracies.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(j));
  }
  /// Lowest internal degree over all levels (0 when everything is zero).
  int min_internal_degree() const;
  /// Copy with only levels 0..s.
  SimplicialChainComplex truncated(int s) const;
};

Report check_simplicial_identities(const SimplicialChainComplex& x);

/// Constant simplicial object on z with S+1 levels.
SimplicialChainComplex constant(const ChainComplex& z, int s);

/// Moore normalization as a bicomplex: column p is N X_p = ∩_{i<p} ker d_i with
/// the internal differential, the horizontal map is (-1)^p d_p.
struct Bicomplex {
  std::vector<ChainComplex> columns;
  std::vector<Matrix> horizontal;  // [p]: N_p -> N_{p-1}; [0] is empty
  std::vector<Subspace> normal;    // N_p inside X_p with a reduced basis
};

Bicomplex normalize(const SimplicialChainComplex& x);
/// Throws std::logic_error if d_h² ≠ 0, d_v² ≠ 0 or d_h d_v ≠ d_v d_h.
void check_bicomplex(const Bicomplex& b);

/// Direct-sum total complex of columns 0..max_p. Basis ordered by column
/// first, so lower truncations are prefixes. Tot differential d_h + (-1)^p d_v.
ChainComplex total_complex(const Bicomplex& b, int max_p);

/// Span of the images of s_0, ..., s_{n-1} in X_n.
Subspace degenerate_subobject(const SimplicialChainComplex& x, int n);

struct DoldKanReport {
  bool ok = true;
  std::string message;
  /// counts[n][k]: number of surjections [n] -> [k].
  std::vector<std::vector<long>> counts;
};
/// Ψ_n: ⊕_{[n]->>[k]} N X_k -> X_n from the degeneracy operators, checked to be
/// an isomorphism at every level.
DoldKanReport dold_kan_check(const SimplicialChainComplex& x, const Bicomplex& n);
DoldKanReport dold_kan_check(const SimplicialChainComplex& x);

struct QuotientComplex {
  ChainComplex complex;
  Matrix projection;  // X -> quotient
};
/// Quotient of a complex by a subcomplex spanned by homogeneous vectors.
QuotientComplex quotient(const ChainComplex& c, const std::vector<SparseVector>& sub);
/// coker(d_0 - d_1: X_1 -> X_0).
QuotientComplex pi0(const SimplicialChainComplex& x);

/// A simplicial set with finitely many simplices per level up to a bound.
struct FiniteSimplicialSet {
  std::vector<std::vector<std::vector<int>>> simplices;  // [n][k]: vertex list of simplex k
  std::vector<std::vector<std::vector<std::size_t>>> faces;         // [n][i][k]
  std::vector<std::vector<std::vector<std::size_t>>> degeneracies;  // [n][j][k]

  int top() const { return static_cast<int>(simplices.size()) - 1; }
  std::size_t size(int n) const { return simplices[static_cast<std::size_t>(n)].size(); }
};

/// Δ[z] as all monotone maps [n] -> [z], n ≤ max_level.
FiniteSimplicialSet standard_simplex(int z, int max_level);
/// ∂Δ[z]: the non-surjective monotone maps.
FiniteSimplicialSet boundary_simplex(int z, int max_level);
Report check_simplicial_set(const FiniteSimplicialSet& k);

/// (z·K)_n = ⊕_{K_n} z, summand order following K_n.
SimplicialChainComplex copower(const ChainComplex& z, const FiniteSimplicialSet& k);

struct SimplicialMap {
  std::vector<Matrix> levels;
};
Report check_simplicial_map(const SimplicialChainComplex& x, const SimplicialChainComplex& y, const SimplicialMap& f);
SimplicialMap identity_map(const SimplicialChainComplex& x);

/// H: X·Δ[1] -> Y. components[n][c] is H on the summand of the simplex of
/// Δ[1]_n with c zeros, c = 0..n+1.
struct SimplicialHomotopy {
  std::vector<std::vector<Matrix>> components;
};
/// True iff H is simplicial, H(id·d¹) = f (vertex 0, all zeros) and
/// H(id·d⁰) = g. Throws std::invalid_argument on shape mismatch.
bool verify_simplicial_homotopy(const SimplicialChainComplex& x, const SimplicialChainComplex& y,
                                const SimplicialHomotopy& h, const SimplicialMap& f, const SimplicialMap& g);

struct Realization {
  Bicomplex bicomplex;
  ChainComplex complex;
  /// Homology is exact in total degrees ≤ this value; unset when exact everywhere.
  std::optional<int> trustworthy_top;
};
Realization realization(const SimplicialChainComplex& x);
/// |f| on Tot N.
Matrix realize_map(const SimplicialChainComplex& x, const Bicomplex& nx, const Bicomplex& ny, const SimplicialMap& f);

/// R_n: total complex of N truncated to columns ≤ n.
ChainComplex skeletal_truncation(const SimplicialChainComplex& x, int n);

/// Total complex with the alternating-sum differential on the whole X_p,
/// used as an independent oracle for realization.
ChainComplex unnormalized_total(const SimplicialChainComplex& x);

/// Degree window where homology of a realization at bound S is exact: total
/// degrees ≤ S - 1 + q_min for an infinite object.
std::optional<int> trustworthy_top(const SimplicialChainComplex& x);

namespace gen {

/// The simplicial object with Moore complex given by columns n_k and a
/// horizontal differential dh[k]: N_k -> N_{k-1} (chain maps, dh∘dh = 0):
/// X_n = ⊕_{[n]->>[k]} N_k.
SimplicialChainComplex dold_kan_inverse(const std::vector<ChainComplex>& n, const std::vector<Matrix>& dh, int s);

/// Random small chain complex with dims in [0, max_dim] per degree in [0, max_degree].
ChainComplex random_complex(std::mt19937& rng, int max_dim, int max_degree);
/// Γ(H ⊗ V) for random H (simplicial direction) and V, in random bases.
SimplicialChainComplex random_simplicial(std::mt19937& rng, int s);
/// Same levels conjugated by random invertible matrices that respect the grading.
SimplicialChainComplex rebase(std::mt19937& rng, const SimplicialChainComplex& x);

/// Levelwise quasi-isomorphism X -> X ⊕ A with A levelwise acyclic.
struct GeneratedMap {
  SimplicialChainComplex source;
  SimplicialChainComplex target;
  SimplicialMap map;
};
GeneratedMap random_quasi_iso(std::mt19937& rng, int s);
/// Levelwise monomorphism X -> X ⊕ X'.
GeneratedMap random_mono(std::mt19937& rng, int s);

/// The homotopy Δ[z]×Δ[1] -> Δ[z], (α, β) ↦ βα, from the vertex-0
/// retraction s∘r to the identity of z·Δ[z].
struct Contraction {
  SimplicialMap retraction;  // z·Δ[z] -> z·Δ[0]
  SimplicialMap section;     // z·Δ[0] -> z·Δ[z]
  SimplicialHomotopy homotopy;
};
Contraction simplex_contraction(const ChainComplex& z, int dim, int max_level);

}  // namespace gen

}  // namespace opbar
