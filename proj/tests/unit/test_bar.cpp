#include "doctest.h"
#include "opbar/bar.hpp"

using namespace opbar;

namespace {

LeftModulePtr ptr(LeftModule m) { return std::make_shared<const LeftModule>(std::move(m)); }
RightModulePtr ptr(RightModule m) { return std::make_shared<const RightModule>(std::move(m)); }

// Weight generating functions of iterated free algebras on one weight-1
// generator, counted directly: g[w] basis elements in weight w.
using Series = std::vector<long>;

Series com_of(const Series& g) {
  // multisets of items, at least one item
  Series out(g.size(), 0);
  out[0] = 1;
  for (std::size_t i = 1; i < g.size(); ++i)
    for (long t = 0; t < g[i]; ++t)
      for (std::size_t w = i; w < g.size(); ++w) out[w] += out[w - i];
  out[0] = 0;
  return out;
}

Series ass_of(const Series& g) {
  // nonempty sequences of items
  Series seqs(g.size(), 0);
  seqs[0] = 1;
  for (std::size_t w = 1; w < g.size(); ++w)
    for (std::size_t i = 1; i <= w; ++i) seqs[w] += g[i] * seqs[w - i];
  seqs[0] = 0;
  return seqs;
}

Series generator(int w) {
  Series g(static_cast<std::size_t>(w + 1), 0);
  g[1] = 1;
  return g;
}

Series weight_dims(const ChainComplex& c, int w) {
  Series out(static_cast<std::size_t>(w + 1), 0);
  for (const Generator& g : c.basis()) out[static_cast<std::size_t>(g.weight)] += 1;
  return out;
}

}  // namespace

TEST_CASE("bar over the unit operad is constant") {
  OperadPtr i = builtin::unit(3);
  LeftModulePtr y = ptr(free_algebra(i, ChainComplex::graded({{"x", 0, 1}, {"y", 1, 1}}), 2));
  const BarConstruction b = bar(ptr(operad_as_right_module(i)), i, y, 3);
  const SimplicialChainComplex x = b.arity(0);
  CHECK(check_simplicial_identities(x).ok);
  for (int k = 0; k <= 3; ++k) CHECK(x.levels[static_cast<std::size_t>(k)].dim() == 2);
  for (int k = 1; k <= 3; ++k)
    for (int j = 0; j <= k; ++j) CHECK(x.face(k, j) == Matrix::identity(2));
  const ContractionReport r = contraction_check(i, y, 3);
  CHECK_MESSAGE(r.ok, r.message);
}

TEST_CASE("level dimensions of B(O, O, O(x)) match direct counts") {
  const int w = 4, s = 2;
  SUBCASE("com") {
    OperadPtr com = builtin::com(4);
    const BarConstruction b = bar(ptr(operad_as_right_module(com)), com, ptr(free_algebra(com, ChainComplex::line(0), w)), s);
    // level k is Com applied k+2 times
    for (int k = 0; k <= s; ++k) {
      Series g = com_of(generator(w));
      for (int j = 0; j <= k; ++j) g = com_of(g);
      CHECK(weight_dims(b.level(k)[0], w) == g);
    }
    CHECK(check_simplicial_identities(b.arity(0)).ok);
  }
  SUBCASE("ass") {
    OperadPtr ass = builtin::ass(4);
    const BarConstruction b = bar(ptr(operad_as_right_module(ass)), ass, ptr(free_algebra(ass, ChainComplex::line(0), w)), s);
    for (int k = 0; k <= s; ++k) {
      Series g = ass_of(generator(w));
      for (int j = 0; j <= k; ++j) g = ass_of(g);
      CHECK(weight_dims(b.level(k)[0], w) == g);
    }
    CHECK(check_simplicial_identities(b.arity(0)).ok);
  }
}

TEST_CASE("extra degeneracy contracts B(O, O, Y)") {
  OperadPtr com = builtin::com(3), ass = builtin::ass(3);
  const ChainComplex v = ChainComplex::graded({{"x", 0, 0}, {"y", 1, 0}});
  for (const OperadPtr& o : {com, ass}) {
    for (const LeftModulePtr& y : {ptr(free_algebra(o, v, 3)), ptr(square_zero(o, v, 3)), ptr(operad_as_left_module(o))}) {
      const ContractionReport r = contraction_check(o, y, 3);
      CHECK_MESSAGE(r.ok, std::string(o->name() + " " + y->name + ": " + r.message));
      CHECK(r.bar_homology == r.base_homology);
    }
  }
}

TEST_CASE("B(X, O, O) resolves X and a mutated degeneracy is caught") {
  OperadPtr com = builtin::com(3);
  const RightModulePtr x = ptr(unit_right_module(com));
  const ContractionReport ok = right_module_resolution(x, com, 3);
  CHECK_MESSAGE(ok.ok, ok.message);

  const BarConstruction b = bar(x, com, ptr(operad_as_left_module(com)), 3);
  AugmentedObject a = right_contraction(b, 3);
  REQUIRE(a.x.levels[1].dim() > 0);
  a.x.degeneracies[1][0] = a.x.degeneracies[1][0].scaled(2);
  const ContractionReport bad = contraction_check(a, 3);
  CHECK_FALSE(bad.ok);
  CHECK(bad.message.find("arity 3") != std::string::npos);
}

TEST_CASE("Quillen homology of a free algebra is its generators") {
  const ChainComplex v = ChainComplex::graded({{"x", 0, 0}, {"y", 1, 0}});
  for (const OperadPtr& o : {builtin::com(3), builtin::ass(3)}) {
    const HomologyReport h = quillen_homology(o, ptr(free_algebra(o, v, 3)), 3);
    CHECK(h.window_top == 2);
    HomologyTable expected;
    expected.set({0, 1, 0}, 1);
    expected.set({0, 1, 1}, 1);
    CHECK_MESSAGE(h.table == expected, o->name());
  }
}

TEST_CASE("Quillen homology refuses operads with unary or nullary junk") {
  OperadPtr e = endomorphism_operad(unit_one(2), 2);
  CHECK_FALSE(e->augmentable());
  CHECK_THROWS_AS(quillen_homology(e, ptr(operad_as_left_module(e)), 2), PreconditionError);
}

TEST_CASE("changing operads along Ass -> Com abelianises a free algebra") {
  OperadPtr ass = builtin::ass(3), com = builtin::com(3);
  const OperadMap f = builtin::ass_to_com(ass, com);
  const HomologyReport h = change_of_operads(f, ptr(free_algebra(ass, ChainComplex::line(0), 3)), 3);
  HomologyTable expected;
  for (int w = 1; w <= 3; ++w) expected.set({0, w, 0}, 1);
  CHECK(h.table == expected);
}
