#include "opbar/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace opbar {

Permutation identity_permutation(int n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size()) throw std::invalid_argument("composing permutations of different sizes");
  Permutation out(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) out[i] = sigma[static_cast<std::size_t>(tau[i])];
  return out;
}

Permutation inverse(const Permutation& sigma) {
  Permutation out(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) out[static_cast<std::size_t>(sigma[i])] = static_cast<int>(i);
  return out;
}

bool is_identity(const Permutation& sigma) {
  for (std::size_t i = 0; i < sigma.size(); ++i)
    if (sigma[i] != static_cast<int>(i)) return false;
  return true;
}

Permutation adjacent_transposition(int n, int k) {
  if (k < 0 || k + 1 >= n) throw std::out_of_range("adjacent transposition index out of range");
  Permutation p = identity_permutation(n);
  std::swap(p[static_cast<std::size_t>(k)], p[static_cast<std::size_t>(k) + 1]);
  return p;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  Permutation p = identity_permutation(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<int> transposition_word(const Permutation& sigma) {
  // σ = σ' s_j whenever σ(j) > σ(j+1), with σ' = σ s_j one inversion shorter.
  // After the sort σ s_{j_1} ... s_{j_m} = id, i.e. σ = s_{j_m} ... s_{j_1}.
  Permutation p = sigma;
  std::vector<int> found;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j + 1 < p.size(); ++j) {
      if (p[j] > p[j + 1]) {
        std::swap(p[j], p[j + 1]);
        found.push_back(static_cast<int>(j));
        changed = true;
      }
    }
  }
  return found;
}

int koszul_sign(const Permutation& sigma, std::span<const int> degrees) {
  if (degrees.size() != sigma.size()) throw std::invalid_argument("degree list does not match permutation");
  int sign = 1;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (degrees[i] % 2 == 0) continue;
    for (std::size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j] && degrees[j] % 2 != 0) sign = -sign;
  }
  return sign;
}

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace opbar
