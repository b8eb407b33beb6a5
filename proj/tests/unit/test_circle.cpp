#include "doctest.h"
#include "opbar/circle.hpp"

using namespace opbar;

namespace {

SymSeq point_at(int arity, int degree, int max_arity, int weight = 0) {
  std::vector<ChainComplex> comps(static_cast<std::size_t>(max_arity + 1));
  comps[static_cast<std::size_t>(arity)] = ChainComplex::line(degree, weight);
  return SymSeq::with_trivial_actions(std::move(comps));
}

// k[Σ_n] at arity n with the left regular action.
SymSeq regular_at(int n, int max_arity) {
  std::vector<ChainComplex> comps(static_cast<std::size_t>(max_arity + 1));
  std::vector<std::vector<Matrix>> trans(static_cast<std::size_t>(max_arity + 1));
  for (int m = 2; m <= max_arity; ++m) trans[static_cast<std::size_t>(m)].assign(static_cast<std::size_t>(m - 1), Matrix(0, 0));
  auto perms = all_permutations(n);
  std::vector<Generator> basis;
  for (std::size_t i = 0; i < perms.size(); ++i) basis.push_back({"w" + std::to_string(i), 0, 0});
  comps[static_cast<std::size_t>(n)] = ChainComplex::graded(basis);
  std::vector<Matrix> ts;
  for (int k = 0; k + 1 < n; ++k) {
    Matrix m(perms.size(), perms.size());
    for (std::size_t i = 0; i < perms.size(); ++i) {
      Permutation q = compose(adjacent_transposition(n, k), perms[i]);
      auto j = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), q) - perms.begin());
      m.set_column(i, SparseVector::unit(j));
    }
    ts.push_back(m);
  }
  trans[static_cast<std::size_t>(n)] = ts;
  return SymSeq(std::move(comps), std::move(trans));
}

}  // namespace

TEST_CASE("units") {
  SymSeq i = unit_I(3);
  CHECK(i.dim(1) == 1);
  CHECK(i.dim(0) == 0);
  CHECK(unit_one(3).dim(0) == 1);
  CHECK(hat(ChainComplex(), 3).is_zero());
}

TEST_CASE("circle with the unit on either side") {
  SymSeq b = regular_at(2, 3);
  Circle ib(unit_I(3), b, {3, std::nullopt});
  Circle bi(b, unit_I(3), {3, std::nullopt});
  for (int r = 0; r <= 3; ++r) {
    CHECK(ib.result().dim(r) == b.dim(r));
    CHECK(bi.result().dim(r) == b.dim(r));
  }
  SymSeqMap lu = left_unitor(ib);
  SymSeqMap ru = right_unitor(bi);
  for (int r = 0; r <= 3; ++r) {
    CHECK(rank(lu[r]) == b.dim(r));
    CHECK(rank(ru[r]) == b.dim(r));
  }
  CHECK(is_symseq_map(ib.result(), b, lu));
  CHECK(is_symseq_map(bi.result(), b, ru));
}

TEST_CASE("trivial arity-2 with arity-1 point gives one dimension") {
  Circle c(point_at(2, 0, 3), point_at(1, 0, 3), {3, std::nullopt});
  CHECK(c.result().dim(2) == 1);
}

TEST_CASE("odd arity-0 inputs are killed by symmetrization") {
  Circle c(point_at(2, 0, 3), point_at(0, 1, 3, 1), {3, 2});
  CHECK(c.result().dim(0) == 0);
  Circle even(point_at(2, 0, 3), point_at(0, 0, 3, 1), {3, 2});
  CHECK(even.result().dim(0) == 1);
}

TEST_CASE("arity-0 right factor needs a weight bound") {
  CHECK_THROWS_AS(Circle(point_at(2, 0, 3), point_at(0, 0, 3), {3, std::nullopt}), TruncationError);
}

TEST_CASE("apply_to_object for the commutative pattern") {
  std::vector<ChainComplex> comps(3);
  comps[1] = ChainComplex::line(0);
  comps[2] = ChainComplex::line(0);
  SymSeq com2 = SymSeq::with_trivial_actions(comps);
  ChainComplex even = apply_to_object(com2, ChainComplex::line(0), 2);
  CHECK(even.indices(0, 1).size() == 1);
  CHECK(even.indices(0, 2).size() == 1);
  ChainComplex odd = apply_to_object(com2, ChainComplex::line(1), 2);
  CHECK(odd.indices(1, 1).size() == 1);
  CHECK(odd.indices(2, 2).size() == 0);
}

TEST_CASE("associator is an invertible equivariant chain map") {
  SymSeq a = regular_at(2, 3);
  SymSeq b = point_at(2, 1, 3);
  SymSeq c = regular_at(1, 3);
  TruncationPolicy p{3, std::nullopt};
  Circle ab(a, b, p), bc(b, c, p);
  Circle ab_c(ab.result_ptr(), std::make_shared<SymSeq>(c), p);
  Circle a_bc(std::make_shared<SymSeq>(a), bc.result_ptr(), p);
  Associator as = canonical_assoc(ab, ab_c, bc, a_bc);
  for (int r = 0; r <= 3; ++r) {
    CHECK(ab_c.result().dim(r) == a_bc.result().dim(r));
    CHECK(as.backward[r] * as.forward[r] == Matrix::identity(ab_c.result().dim(r)));
    CHECK(as.forward[r] * as.backward[r] == Matrix::identity(a_bc.result().dim(r)));
  }
  CHECK(is_symseq_map(ab_c.result(), a_bc.result(), as.forward));
}

#include "opbar/tensor.hpp"

TEST_CASE("tensor of two arity-1 points is the regular representation") {
  auto a = std::make_shared<SymSeq>(point_at(1, 0, 3));
  TensorProduct ab({a, a}, 3);
  REQUIRE(ab.result().dim(2) == 2);
  Coinvariants co = coinvariants(ab.result()[2], ab.result().transpositions(2), 2);
  CHECK(co.complex.dim() == 1);
  auto odd = std::make_shared<SymSeq>(point_at(1, 1, 3));
  TensorProduct oo({odd, odd}, 3);
  CHECK(oo.result().transpositions(2)[0] == Matrix::from_dense({{0, 1}, {1, 0}}));
  CHECK(oo.block_transposition(2, 0) == Matrix::from_dense({{0, -1}, {-1, 0}}));
}

TEST_CASE("tensor power counts") {
  auto b = std::make_shared<SymSeq>(point_at(1, 0, 3));
  CHECK(tensor_power(b, 0, 3).product->result().dim(0) == 1);
  CHECK(tensor_power(b, 0, 3).product->result().dim(1) == 0);
  CHECK(tensor_power(b, 1, 3).product->result().dim(1) == 1);
  CHECK(tensor_power(b, 3, 3).product->result().dim(3) == 6);
}

TEST_CASE("coinvariants of signed swaps") {
  ChainComplex c = ChainComplex::graded({{"x", 0, 0}, {"y", 0, 0}});
  CHECK(coinvariants(c, {Matrix::from_dense({{0, 1}, {1, 0}})}, 2).complex.dim() == 1);
  CHECK(coinvariants(c, {Matrix::identity(2)}, 2).complex.dim() == 2);
  ChainComplex x = ChainComplex::line(2);
  CHECK(coinvariants(x, {Matrix::identity(1).scaled(-1)}, 2).complex.dim() == 0);
}

TEST_CASE("mapping sequence out of the unit and into zero") {
  SymSeq c = regular_at(2, 3);
  SymSeq m = mapping_sequence(std::make_shared<SymSeq>(unit_I(3)), c, 3);
  for (int t = 0; t <= 3; ++t) CHECK(m.dim(t) == c.dim(t));
  SymSeq z = mapping_sequence(std::make_shared<SymSeq>(c), SymSeq(3), 3);
  CHECK(z.is_zero());
}

TEST_CASE("hom adjunction dimensions on a small instance") {
  SymSeq a = regular_at(2, 3);
  SymSeq b = point_at(1, 0, 3);
  SymSeq c = regular_at(2, 3);
  Circle ab(a, b, {3, std::nullopt});
  SymSeq m = mapping_sequence(std::make_shared<SymSeq>(b), c, 3);
  CHECK(hom_dim(ab.result(), c) == hom_dim(a, m));
  CHECK(hom_dim(ab.result(), c) == 2);
}
