#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace opbar {

/// Permutation of {0, ..., n-1} stored as its list of images: p[i] = σ(i).
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
/// (σ∘τ)(i) = σ(τ(i))
Permutation compose(const Permutation& sigma, const Permutation& tau);
Permutation inverse(const Permutation& sigma);
bool is_identity(const Permutation& sigma);
/// The adjacent transposition s_k exchanging k and k+1.
Permutation adjacent_transposition(int n, int k);

/// All n! permutations in lexicographic order.
std::vector<Permutation> all_permutations(int n);

/// Indices k_1, ..., k_m with σ = s_{k_m} ... s_{k_1}, so a left action is
/// evaluated by applying s_{k_1} first. The word is reduced.
std::vector<int> transposition_word(const Permutation& sigma);

/// Koszul sign of moving graded factors: the factor at position i moves to
/// position σ(i); the sign is the product of (-1)^{d_i d_j} over all pairs
/// whose order is inverted.
int koszul_sign(const Permutation& sigma, std::span<const int> degrees);

long factorial(int n);
long binomial(int n, int k);

}  // namespace opbar
