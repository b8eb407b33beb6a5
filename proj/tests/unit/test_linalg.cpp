#include "doctest.h"
#include "opbar/chain_complex.hpp"
#include "opbar/permutation.hpp"

using namespace opbar;

TEST_CASE("rank of identity and kernel of a row") {
  CHECK(rank(Matrix::identity(3)) == 3);
  Matrix row = Matrix::from_dense({{1, 1}});
  Subspace k = kernel_basis(row);
  REQUIRE(k.dim() == 1);
  SparseVector v = k.basis().column(0);
  CHECK(v.at(0) == -v.at(1));
  CHECK(v.at(0) != 0);
}

TEST_CASE("swap averaging projector has image spanned by (1,1)") {
  Matrix p = Matrix::from_dense({{make_rational(1, 2), make_rational(1, 2)}, {make_rational(1, 2), make_rational(1, 2)}});
  ProjectorImage img = projector_image(p);
  REQUIRE(img.image.dim() == 1);
  CHECK(img.section.column(0) == SparseVector({{0, 1}, {1, 1}}));
  CHECK(img.retraction * img.section == Matrix::identity(1));
  CHECK(img.section * img.retraction == p);
  CHECK_THROWS_AS(projector_image(Matrix::from_dense({{1, 1}, {0, 0}}) + Matrix::identity(2)), NotIdempotentError);
}

TEST_CASE("inverse and singular matrices") {
  Matrix m = Matrix::from_dense({{2, 1}, {1, 1}});
  CHECK(m * inverse(m) == Matrix::identity(2));
  CHECK_THROWS_AS(inverse(Matrix::from_dense({{1, 2}, {2, 4}})), std::domain_error);
}

TEST_CASE("intersection and quotient dimension") {
  Subspace a = span_of(3, {SparseVector{{0, 1}}, SparseVector{{1, 1}}});
  Subspace b = span_of(3, {SparseVector{{1, 1}}, SparseVector{{2, 1}}});
  CHECK(intersect(a, b).dim() == 1);
  CHECK(quotient_dim(intersect(a, b), a) == 1);
  CHECK_THROWS_AS(quotient_dim(a, b), ContainmentError);
}

TEST_CASE("chain complex validation and homology") {
  std::vector<Generator> basis{{"x", 1, 0}, {"y", 0, 0}};
  Matrix d(2, 2);
  d.set_column(0, SparseVector::unit(1));
  ChainComplex c(basis, d);
  CHECK(homology(c).is_zero());
  CHECK_THROWS_AS(ChainComplex(basis, Matrix::identity(2)), std::invalid_argument);
  ChainComplex s = ChainComplex::graded({{"a", 0, 0}, {"b", 2, 0}});
  auto h = homology(s);
  CHECK(h.betti({0, 0, 0}) == 1);
  CHECK(h.betti({0, 0, 2}) == 1);
  CHECK(s.euler_characteristic() == 2);
}

TEST_CASE("tensor differential squares to zero and cone of identity is acyclic") {
  std::vector<Generator> basis{{"x", 1, 0}, {"y", 0, 0}};
  Matrix d(2, 2);
  d.set_column(0, SparseVector::unit(1));
  ChainComplex c(basis, d);
  ChainComplex t = tensor(c, c);
  CHECK(t.dim() == 4);
  CHECK(homology(t).is_zero());
  ChainComplex l = ChainComplex::line(0);
  CHECK(homology(mapping_cone(ChainMap::identity(l))).is_zero());
  CHECK(is_quasi_isomorphism(ChainMap::identity(c)));
  ChainComplex odd = ChainComplex::line(1);
  Matrix sw = tensor_symmetry(odd, odd);
  CHECK(sw.at(0, 0) == -1);
}

TEST_CASE("transposition words reproduce the permutation") {
  for (int n = 1; n <= 4; ++n)
    for (const auto& sigma : all_permutations(n)) {
      Permutation p = identity_permutation(n);
      for (int k : transposition_word(sigma)) p = compose(adjacent_transposition(n, k), p);
      CHECK(p == sigma);
    }
}

TEST_CASE("koszul sign of swapping two odd factors") {
  std::vector<int> odd{1, 1};
  std::vector<int> mixed{1, 2};
  CHECK(koszul_sign({1, 0}, odd) == -1);
  CHECK(koszul_sign({1, 0}, mixed) == 1);
  CHECK(koszul_sign({0, 1}, odd) == 1);
}
