#pragma once

#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "opbar/linalg.hpp"

namespace opbar {

/// A named basis element. Weight counts generator tensor factors and is
/// preserved by every structure map in this library.
struct Generator {
  std::string name;
  int degree = 0;
  int weight = 0;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Finite-dimensional chain complex over Q with a flat graded basis.
///
/// Homological indexing: the differential lowers degree by one and
/// preserves weight. Both conditions and d∘d = 0 are checked on construction.
class ChainComplex {
 public:
  ChainComplex() = default;
  ChainComplex(std::vector<Generator> basis, Matrix differential);

  /// Complex with zero differential.
  static ChainComplex graded(std::vector<Generator> basis);
  /// One generator "x" in the given degree.
  static ChainComplex line(int degree = 0, int weight = 0, std::string name = "x");

  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  const std::vector<Generator>& basis() const { return basis_; }
  const Generator& generator(std::size_t i) const { return basis_[i]; }
  const Matrix& differential() const { return differential_; }

  std::set<int> degrees() const;
  std::set<int> weights() const;
  std::vector<std::size_t> indices(int degree) const;
  std::vector<std::size_t> indices(int degree, int weight) const;
  std::size_t dim(int degree) const { return indices(degree).size(); }
  /// Minimum degree present, or 0 for the zero complex.
  int min_degree() const;
  int max_degree() const;

  /// Block d_n : C_n -> C_{n-1} of the given weight.
  Matrix differential_block(int degree, int weight) const;
  long euler_characteristic() const;

  /// Copy with every generator weight replaced.
  ChainComplex with_weight(int weight) const;

 private:
  std::vector<Generator> basis_;
  Matrix differential_;
};

struct HomologyKey {
  int arity = 0;
  int weight = 0;
  int degree = 0;
  auto operator<=>(const HomologyKey&) const = default;
};

/// Betti numbers keyed by (arity, weight, degree); absent keys are zero.
class HomologyTable {
 public:
  void set(HomologyKey key, long betti);
  long betti(HomologyKey key) const;
  long betti(int degree) const;  // summed over arity and weight
  /// Entries with nonzero Betti number.
  std::map<HomologyKey, long> nonzero() const;
  const std::map<HomologyKey, long>& entries() const { return entries_; }
  /// Restrict to degrees in [lo, hi].
  HomologyTable window(int lo, int hi) const;
  HomologyTable with_arity(int arity) const;
  void merge(const HomologyTable& other);
  bool is_zero() const { return nonzero().empty(); }

  friend bool operator==(const HomologyTable& a, const HomologyTable& b) { return a.nonzero() == b.nonzero(); }

 private:
  std::map<HomologyKey, long> entries_;
};

std::ostream& operator<<(std::ostream& os, const HomologyTable& t);

HomologyTable homology(const ChainComplex& c);

/// Degree-0 chain map. Commutation with the differentials and degree/weight
/// preservation are checked on construction.
struct ChainMap {
  ChainMap(ChainComplex source, ChainComplex target, Matrix matrix);
  static ChainMap identity(const ChainComplex& c);

  ChainComplex source;
  ChainComplex target;
  Matrix matrix;
};

/// Throws std::invalid_argument describing the first failure.
void check_chain_map(const ChainComplex& source, const ChainComplex& target, const Matrix& f);
bool is_chain_map(const ChainComplex& source, const ChainComplex& target, const Matrix& f);

/// d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy on the basis of ordered pairs.
ChainComplex tensor(const ChainComplex& a, const ChainComplex& b);
/// Symmetry a⊗b -> b⊗a, x⊗y ↦ (-1)^{|x||y|} y⊗x.
Matrix tensor_symmetry(const ChainComplex& a, const ChainComplex& b);

/// cone(f)_n = target_n ⊕ source_{n-1}, d(y, x) = (dy + f x, -dx).
ChainComplex mapping_cone(const ChainMap& f);
/// Degrees raised by s; the differential picks up the sign (-1)^s.
ChainComplex shift(const ChainComplex& c, int s);
ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);

bool is_quasi_isomorphism(const ChainMap& f);

}  // namespace opbar
