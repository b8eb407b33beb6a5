#include "doctest.h"
#include "opbar/simplicial.hpp"

using namespace opbar;

namespace {

ChainComplex disk_plus_line() {
  // a -> b in degrees 1, 0 plus a cycle c in degree 1.
  Matrix d(3, 3);
  d.set_column(0, SparseVector::unit(1));
  return ChainComplex({{"a", 1, 0}, {"b", 0, 0}, {"c", 1, 0}}, d);
}

bool quasi_iso(const ChainComplex& s, const ChainComplex& t, const Matrix& f) {
  return is_quasi_isomorphism(ChainMap(s, t, f));
}

HomologyTable within(const HomologyTable& h, int top) { return h.window(-1000, top); }

}  // namespace

TEST_CASE("constant objects") {
  const ChainComplex z = disk_plus_line();
  const SimplicialChainComplex x = constant(z, 3);
  CHECK(check_simplicial_identities(x));
  const Bicomplex b = normalize(x);
  CHECK(b.columns[0].dim() == 3);
  for (int p = 1; p <= 3; ++p) CHECK(b.columns[static_cast<std::size_t>(p)].dim() == 0);
  const DoldKanReport dk = dold_kan_check(x, b);
  CHECK(dk.ok);
  CHECK(dk.counts[3] == std::vector<long>{1, 3, 3, 1});
  CHECK(pi0(x).complex.dim() == 3);
  CHECK(homology(realization(x).complex) == homology(z));
  CHECK(degenerate_subobject(x, 2).dim() == 3);
}

TEST_CASE("a negated face is reported") {
  SimplicialChainComplex x = constant(disk_plus_line(), 2);
  x.faces[2][1] = x.faces[2][1].scaled(-1);
  const Report r = check_simplicial_identities(x);
  CHECK_FALSE(r.ok);
  CHECK(r.message.find("level 2") != std::string::npos);
}

TEST_CASE("standard simplices and copowers") {
  const FiniteSimplicialSet d2 = standard_simplex(2, 4);
  CHECK(check_simplicial_set(d2));
  CHECK(d2.size(0) == 3);
  CHECK(d2.size(1) == 6);
  const FiniteSimplicialSet b2 = boundary_simplex(2, 3);
  CHECK(check_simplicial_set(b2));
  CHECK(b2.size(1) == 6 - 0);  // every 1-simplex of Δ[2] misses a vertex
  CHECK(b2.size(2) == 10 - 1);

  const ChainComplex z = disk_plus_line();
  const SimplicialChainComplex x1 = copower(z, standard_simplex(1, 3));
  CHECK(check_simplicial_identities(x1));
  CHECK(pi0(x1).complex.dim() == z.dim());
  CHECK(dold_kan_check(x1).ok);
  CHECK(homology(realization(x1).complex) == homology(z));
  // |z·∂Δ[2]| is z ⊗ (a circle).
  const Realization circle = realization(copower(ChainComplex::line(0), b2));
  CHECK(homology(circle.complex).betti(0) == 1);
  CHECK(homology(circle.complex).betti(1) == 1);
  CHECK(homology(circle.complex).betti(2) == 0);
}

TEST_CASE("the vertex-0 retraction of z·Δ[2]") {
  const ChainComplex z = disk_plus_line();
  const int s = 4;
  const SimplicialChainComplex x = copower(z, standard_simplex(2, s));
  const SimplicialChainComplex pt = copower(z, standard_simplex(0, s));
  const gen::Contraction c = gen::simplex_contraction(z, 2, s);
  CHECK(check_simplicial_map(x, pt, c.retraction));
  CHECK(check_simplicial_map(pt, x, c.section));
  SimplicialMap sr;
  for (int n = 0; n <= s; ++n) sr.levels.push_back(c.section.levels[static_cast<std::size_t>(n)] * c.retraction.levels[static_cast<std::size_t>(n)]);
  CHECK(verify_simplicial_homotopy(x, x, c.homotopy, sr, identity_map(x)));
  CHECK_FALSE(verify_simplicial_homotopy(x, x, c.homotopy, identity_map(x), sr));
  SimplicialHomotopy broken = c.homotopy;
  broken.components[2][1] = broken.components[2][2];
  CHECK_FALSE(verify_simplicial_homotopy(x, x, broken, sr, identity_map(x)));

  const Realization rx = realization(x), rp = realization(pt);
  CHECK(quasi_iso(rx.complex, rp.complex, realize_map(x, rx.bicomplex, rp.bicomplex, c.retraction)));
}

TEST_CASE("prescribed Moore complex round trip") {
  // N_0 = k, N_1 = k with dh = 1: contractible in the simplicial direction.
  std::vector<ChainComplex> n{ChainComplex::line(0), ChainComplex::line(0), ChainComplex::line(0)};
  std::vector<Matrix> dh{Matrix(), Matrix::identity(1), Matrix(1, 1)};
  const SimplicialChainComplex x = gen::dold_kan_inverse(n, dh, 4);
  CHECK(check_simplicial_identities(x));
  CHECK(x.levels[2].dim() == 1 + 2 + 1);
  const Bicomplex b = normalize(x);
  for (int p = 0; p <= 2; ++p) CHECK(b.columns[static_cast<std::size_t>(p)].dim() == 1);
  CHECK(b.columns[3].dim() == 0);
  CHECK(dold_kan_check(x, b).ok);
  const HomologyTable h = homology(realization(x).complex);
  CHECK(h.betti(0) == 0);
  CHECK(h.betti(1) == 0);
  CHECK(h.betti(2) == 1);
}

TEST_CASE("random simplicial objects") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const SimplicialChainComplex x = gen::random_simplicial(rng, 3);
    REQUIRE(check_simplicial_identities(x));
    const Bicomplex b = normalize(x);
    CHECK(dold_kan_check(x, b).ok);
    for (int n = 1; n <= 3; ++n) CHECK(b.normal[static_cast<std::size_t>(n)].dim() + degenerate_subobject(x, n).dim() == x.levels[static_cast<std::size_t>(n)].dim());
    const int top = 3 - 1 + x.min_internal_degree();
    CHECK(within(homology(realization(x).complex), top) == within(homology(unnormalized_total(x)), top));
    // Skeleta: successive quotients are the normalized columns shifted.
    for (int n = 1; n <= 3; ++n)
      CHECK(skeletal_truncation(x, n).dim() - skeletal_truncation(x, n - 1).dim() == b.columns[static_cast<std::size_t>(n)].dim());
  }
}

TEST_CASE("realization preserves quasi-isomorphisms and monomorphisms") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    const gen::GeneratedMap q = gen::random_quasi_iso(rng, 3);
    REQUIRE(check_simplicial_map(q.source, q.target, q.map));
    const Realization a = realization(q.source), b = realization(q.target);
    CHECK(quasi_iso(a.complex, b.complex, realize_map(q.source, a.bicomplex, b.bicomplex, q.map)));

    const gen::GeneratedMap m = gen::random_mono(rng, 3);
    REQUIRE(check_simplicial_map(m.source, m.target, m.map));
    const Realization c = realization(m.source), d = realization(m.target);
    const Matrix f = realize_map(m.source, c.bicomplex, d.bicomplex, m.map);
    CHECK(rank(f) == f.cols());
  }
}
