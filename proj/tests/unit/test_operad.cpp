#include "doctest.h"
#include "opbar/operad.hpp"

using namespace opbar;

namespace {

std::vector<std::size_t> dims(const SymSeq& s) {
  std::vector<std::size_t> out;
  for (int n = 0; n <= s.max_arity(); ++n) out.push_back(s.dim(n));
  return out;
}

ChainComplex two_generators() { return ChainComplex::graded({{"x", 0, 0}, {"y", 0, 0}}); }

}  // namespace

TEST_CASE("builtin operads satisfy the axioms") {
  CHECK(dims(builtin::com(4)->seq()) == std::vector<std::size_t>{0, 1, 1, 1, 1});
  CHECK(dims(builtin::ass(4)->seq()) == std::vector<std::size_t>{0, 1, 2, 6, 24});
  CHECK(builtin::planar(4)->non_sigma());
  CHECK(builtin::unit(3)->augmentable());
  CHECK_NOTHROW(check_monoid_identities(*builtin::com(3)));
  CHECK_NOTHROW(check_monoid_identities(*builtin::ass(3)));
  CHECK_NOTHROW(check_monoid_identities(*builtin::planar(3)));
  CHECK_NOTHROW(builtin::ass_to_com(builtin::ass(4), builtin::com(4)));
  CHECK(dims(builtin::truncate(builtin::ass(4), 2)->seq()) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("a mutated composition table is rejected with a witness") {
  OperadPtr com = builtin::com(4);
  PartialTables t = com->partials();
  t[{2, 2, 0}] = Matrix::identity(1).scaled(2);
  try {
    Operad bad(com->seq(), com->unit(), t, "mutant");
    FAIL("accepted a mutant");
  } catch (const AxiomError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("associativity") != std::string::npos);
    CHECK(msg.find("mu2") != std::string::npos);
  }
}

TEST_CASE("a non-equivariant table is rejected") {
  OperadPtr ass = builtin::ass(3);
  PartialTables t = ass->partials();
  // Send x0x1 ∘_0 x0 to x1x0 only.
  Matrix m = t.at({2, 1, 0});
  m.set_column(0, SparseVector::unit(1));
  t[{2, 1, 0}] = m;
  CHECK_THROWS_AS(Operad(ass->seq(), ass->unit(), t, "mutant"), AxiomError);
}

TEST_CASE("ass to com is not invertible and com to ass is rejected") {
  OperadPtr ass = builtin::ass(3), com = builtin::com(3);
  SymSeqMap back = SymSeqMap::zero(com->seq(), ass->seq());
  for (int n = 1; n <= 3; ++n) back.components[static_cast<std::size_t>(n)] = Matrix::from_columns(ass->seq().dim(n), {SparseVector::unit(0)});
  CHECK_THROWS_AS(check_operad_map({com, ass, back}), AxiomError);
}

TEST_CASE("free algebras") {
  OperadPtr com = builtin::com(3), ass = builtin::ass(3);
  LeftModule fc = free_algebra(com, two_generators(), 3);
  LeftModule fa = free_algebra(ass, two_generators(), 3);
  CHECK(fc.is_algebra());
  CHECK(fc.seq->dim(0) == 2 + 3 + 4);
  CHECK(fa.seq->dim(0) == 2 + 4 + 8);
  CHECK_NOTHROW(check_module(fc));
  CHECK_NOTHROW(check_module(fa));
  // Odd generator: Com(x) is exterior, Ass(x) is not.
  LeftModule odd_c = free_algebra(com, ChainComplex::line(1), 3);
  LeftModule odd_a = free_algebra(ass, ChainComplex::line(1), 3);
  CHECK(odd_c.seq->dim(0) == 1);
  CHECK(odd_a.seq->dim(0) == 3);
  CHECK_NOTHROW(check_module(odd_a));
}

TEST_CASE("square-zero, unit and restricted modules") {
  OperadPtr com = builtin::com(3), ass = builtin::ass(3);
  CHECK_NOTHROW(check_module(square_zero(com, two_generators(), 3)));
  CHECK_NOTHROW(check_module(square_zero(ass, ChainComplex::line(1), 3)));
  CHECK_NOTHROW(check_module(unit_right_module(ass)));
  CHECK_NOTHROW(check_module(operad_as_right_module(ass)));
  CHECK_NOTHROW(check_module(operad_as_left_module(com)));
  OperadMap f = builtin::ass_to_com(ass, com);
  CHECK_NOTHROW(check_module(restrict_along(f, operad_as_right_module(com))));
  CHECK_NOTHROW(check_module(restrict_along(f, free_algebra(com, two_generators(), 3))));
}

TEST_CASE("a broken action is caught") {
  OperadPtr com = builtin::com(3);
  LeftModule m = square_zero(com, ChainComplex::line(0), 3);
  TermProduct good = m.action;
  m.action = [good](const CircleTerm& t) {
    SparseVector v = good(t);
    v.scale(2);
    return v;
  };
  CHECK_THROWS_AS(check_module(m), AxiomError);
}

TEST_CASE("endomorphism operads") {
  OperadPtr end_i = endomorphism_operad(unit_I(3), 3);
  CHECK(dims(end_i->seq()) == std::vector<std::size_t>{0, 1, 0, 0});
  OperadPtr end_k = endomorphism_operad(hat(ChainComplex::line(0), 3), 3);
  CHECK(dims(end_k->seq()) == std::vector<std::size_t>{1, 1, 1, 1});
}

TEST_CASE("an action is adjoint to an operad map into End") {
  for (int degree : {0, 1}) {
    LeftModule a = free_algebra(builtin::ass(3), ChainComplex::line(degree), 3);
    OperadPtr end = endomorphism_operad(*a.seq, 3);
    CHECK_NOTHROW(check_operad_map(action_adjoint(a, end)));
    LeftModule c = free_algebra(builtin::com(3), ChainComplex::line(degree), 2);
    OperadPtr end_c = endomorphism_operad(*c.seq, 3);
    CHECK_NOTHROW(check_operad_map(action_adjoint(c, end_c)));
  }
}
