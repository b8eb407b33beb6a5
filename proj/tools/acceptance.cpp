#include "acceptance.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include "opbar/bar.hpp"
#include "opbar/tensor.hpp"

namespace opbar::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

LeftModulePtr ptr(LeftModule m) { return std::make_shared<const LeftModule>(std::move(m)); }
RightModulePtr ptr(RightModule m) { return std::make_shared<const RightModule>(std::move(m)); }
SymSeqPtr ptr(SymSeq s) { return std::make_shared<const SymSeq>(std::move(s)); }

bool invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

HomologyTable upto(const HomologyTable& h, int top) { return h.window(-1000, top); }

std::string describe(const HomologyTable& h) {
  std::ostringstream os;
  os << h;
  return os.str();
}

// Everything the later criteria share: bar objects for Dold–Kan, and the
// simplicial objects of criterion 9 for criterion 10.
struct Shared {
  std::vector<std::pair<std::string, SimplicialChainComplex>> bars;
  struct Realized {
    std::string name;
    SimplicialChainComplex x;
    Realization r;
  };
  std::vector<Realized> realized;

  void keep_bar(const std::string& name, const BarConstruction& b) {
    for (int r = 0; r <= b.max_arity(); ++r) {
      bool any = false;
      for (int k = 0; k <= b.top; ++k) any = any || b.level(k).dim(r) > 0;
      if (any) bars.emplace_back(name + " arity " + std::to_string(r), b.arity(r));
    }
  }
};

// ---- 1: unit and associativity isomorphisms --------------------------------

void monoidal_instance(std::mt19937& rng) {
  const int n = 3;
  const TruncationPolicy p{n, std::nullopt};
  const SymSeqPtr a = ptr(gen::random_symseq(rng, 0, n, 2, 2));
  const SymSeqPtr b = ptr(gen::random_symseq(rng, 1, n, 2, 2));
  const SymSeqPtr c = ptr(gen::random_symseq(rng, 1, n, 2, 2));
  const SymSeqPtr d = ptr(gen::random_symseq(rng, 1, n, 2, 2));
  const SymSeqPtr i = ptr(unit_I(n));

  auto iso = [&](const SymSeq& s, const SymSeq& t, const SymSeqMap& f, const std::string& what) {
    require(is_symseq_map(s, t, f), what + " is not an equivariant chain map");
    for (int r = 0; r <= n; ++r) require(invertible(f[r]), what + " is not invertible at arity " + std::to_string(r));
  };

  // unitors; A may have arity 0, so I∘A needs a weight bound (everything is weight 0)
  const Circle ia(i, a, {n, 0}), ai(a, i, p);
  iso(ia.result(), *a, left_unitor(ia), "left unitor");
  iso(ai.result(), *a, right_unitor(ai), "right unitor");

  // associator
  const Circle ab(a, b, p), bc(b, c, p), cd(c, d, p);
  const Circle abc(ab.result_ptr(), c, p), a_bc(a, bc.result_ptr(), p);
  const Associator alpha = canonical_assoc(ab, abc, bc, a_bc);
  iso(abc.result(), a_bc.result(), alpha.forward, "associator");
  for (int r = 0; r <= n; ++r)
    require(alpha.backward[r] * alpha.forward[r] == Matrix::identity(abc.result().dim(r)), "associator inverse");

  // triangle: (A∘I)∘B -> A∘(I∘B) -> A∘B equals ρ∘id
  const Circle ai_b(ai.result_ptr(), b, p), ib(i, b, p), a_ib(a, ib.result_ptr(), p);
  const Associator t = canonical_assoc(ai, ai_b, ib, a_ib);
  const SymSeqMap lam = left_unitor(ib), rho = right_unitor(ai);
  const SymSeqMap via_assoc = t.forward.then(circle_map(a_ib, ab, nullptr, &lam));
  require(via_assoc == circle_map(ai_b, ab, &rho, nullptr), "triangle identity");

  // pentagon
  const Circle abc_d(abc.result_ptr(), d, p), ab_cd(ab.result_ptr(), cd.result_ptr(), p);
  const Circle bcd(b, cd.result_ptr(), p), a_bcd(a, bcd.result_ptr(), p);
  const Circle a_bc_d(a_bc.result_ptr(), d, p), bc_d(bc.result_ptr(), d, p), a__bc_d(a, bc_d.result_ptr(), p);
  const SymSeqMap top = canonical_assoc(abc, abc_d, cd, ab_cd).forward.then(canonical_assoc(ab, ab_cd, bcd, a_bcd).forward);
  const Associator inner = canonical_assoc(bc, bc_d, cd, bcd);
  const SymSeqMap bottom = circle_map(abc_d, a_bc_d, &alpha.forward, nullptr)
                               .then(canonical_assoc(a_bc, a_bc_d, bc_d, a__bc_d).forward)
                               .then(circle_map(a__bc_d, a_bcd, nullptr, &inner.forward));
  require(top == bottom, "pentagon identity");
}

std::string criterion1(std::mt19937& rng) {
  for (int k = 0; k < 25; ++k) {
    try {
      monoidal_instance(rng);
    } catch (const Failure& f) {
      throw Failure("instance " + std::to_string(k) + ": " + f.what());
    }
  }
  return "25 random quadruples: unitors, associator, triangle, pentagon";
}

// ---- 2: hom(A∘B, C) = hom(A, Map(B, C)) -------------------------------------

std::string criterion2(std::mt19937& rng) {
  const int n = 3;
  std::size_t nonzero = 0;
  for (int k = 0; k < 10; ++k) {
    const SymSeq a = gen::random_symseq(rng, 0, n, 2, 2);
    const SymSeqPtr b = ptr(gen::random_symseq(rng, 1, n, 2, 2));
    const SymSeq c = gen::random_symseq(rng, 0, n, 2, 2);
    const Circle ab(a, *b, {n, std::nullopt});
    const std::size_t lhs = hom_dim(ab.result(), c);
    const std::size_t rhs = hom_dim(a, mapping_sequence(b, c, n));
    require(lhs == rhs, "instance " + std::to_string(k) + ": " + std::to_string(lhs) + " vs " + std::to_string(rhs));
    nonzero += lhs > 0;
  }
  return "10 random triples, " + std::to_string(nonzero) + " with nonzero hom";
}

// ---- 3: Dold–Kan ------------------------------------------------------------

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void dold_kan_instance(const std::string& name, const SimplicialChainComplex& x) {
  const Bicomplex b = normalize(x);
  const DoldKanReport dk = dold_kan_check(x, b);
  require(dk.ok, name + ": " + dk.message);
  for (int m = 0; m <= x.top(); ++m) {
    std::size_t sum = 0;
    for (int k = 0; k <= m; ++k) sum += static_cast<std::size_t>(binomial(m, k)) * b.columns[static_cast<std::size_t>(k)].dim();
    require(sum == x.levels[static_cast<std::size_t>(m)].dim(), name + ": dim X_" + std::to_string(m) + " is not Σ C(n,k) dim N_k");
  }
}

std::string criterion3(std::mt19937& rng, const Shared& shared) {
  for (int k = 0; k < 10; ++k) dold_kan_instance("random " + std::to_string(k), gen::random_simplicial(rng, 4));
  for (const auto& [name, x] : shared.bars) dold_kan_instance(name, x);
  return "10 random objects and " + std::to_string(shared.bars.size()) + " bar components, levels ≤ 4";
}

// ---- 4, 5: B(O, O, Y) --------------------------------------------------------

struct BarRun {
  std::string identities;  // detail or empty
  std::string homology;
  int pairs = 0;
};

std::vector<LeftModulePtr> test_modules(const OperadPtr& o, int w) {
  return {ptr(free_algebra(o, ChainComplex::line(0), w)), ptr(square_zero(o, ChainComplex::line(0), w)), ptr(operad_as_left_module(o))};
}

// I is the only operad here with nothing outside arity 1.
bool only_arity_one(const Operad& o) {
  for (int r = 0; r <= o.max_arity(); ++r)
    if (r != 1 && o.seq().dim(r) > 0) return false;
  return true;
}

// Runs the contraction on every (O, Y) pair and records the first failure of
// each kind.
BarRun bar_suite(const std::vector<OperadPtr>& operads, Shared* shared, bool homology_for_unit) {
  const int s = 4, w = 4;
  BarRun run;
  for (const OperadPtr& o : operads) {
    for (const LeftModulePtr& y : test_modules(o, w)) {
      const std::string name = "B(" + o->name() + ", " + o->name() + ", " + y->name + ")";
      const BarConstruction b = bar(ptr(operad_as_right_module(o)), o, y, s);
      const bool is_unit = only_arity_one(*o);
      for (int r = 0; r <= b.max_arity(); ++r) {
        const Report id = check_simplicial_identities(b.arity(r));
        if (!id && run.identities.empty()) run.identities = name + " arity " + std::to_string(r) + ": " + id.message;
      }
      const ContractionReport c = contraction_check(b);
      if (!c.relations_ok && run.identities.empty()) run.identities = name + ": " + c.message;
      if (!is_unit || homology_for_unit) {
        ++run.pairs;
        if (run.homology.empty()) {
          if (!c.window_top || *c.window_top < 2)
            run.homology = name + ": trustworthy window stops below degree 2";
          else if (!(upto(c.bar_homology, 2) == upto(c.base_homology, 2)))
            run.homology = name + ": H(|B|) = " + describe(upto(c.bar_homology, 2)) + " but H(Y) = " + describe(upto(c.base_homology, 2));
          else if (!c.ok && c.relations_ok)
            run.homology = name + ": " + c.message;
        }
      }
      if (shared) shared->keep_bar(name, b);
    }
  }
  return run;
}

// ---- 6, 7: Quillen homology ---------------------------------------------------

HomologyTable qh(const OperadPtr& o, const LeftModulePtr& y, Shared* shared, const std::string& name) {
  const BarConstruction b = quillen_bar(o, y, 4);
  const HomologyReport h = bar_homology(b, 2);
  require(h.window_top >= 2, name + ": trustworthy window stops at " + std::to_string(h.window_top));
  if (shared) shared->keep_bar(name, b);
  return h.table;
}

std::string criterion6(const std::vector<OperadPtr>& operads, Shared* shared) {
  HomologyTable expected;
  expected.set({0, 1, 0}, 1);
  for (const OperadPtr& o : operads) {
    const std::string name = "QH(" + o->name() + "(Q))";
    const HomologyTable t = qh(o, ptr(free_algebra(o, ChainComplex::line(0), 4)), shared, name);
    require(t == expected, name + " = " + describe(t));
  }
  return "weights ≤ 4, degrees ≤ 2: only (1, 0) = 1";
}

struct GoldenRow {
  int weight, degree;
  long betti;
};

std::map<std::string, std::vector<GoldenRow>> read_golden(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot read golden file " + path);
  std::map<std::string, std::vector<GoldenRow>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string op;
    GoldenRow g{};
    row >> op >> g.weight >> g.degree >> g.betti;
    require(!row.fail(), "malformed golden row: " + line);
    out[op].push_back(g);
  }
  return out;
}

void match_golden(const std::string& name, const HomologyTable& t, const std::vector<GoldenRow>& rows) {
  require(!rows.empty(), name + ": no golden rows");
  std::map<std::pair<int, int>, long> want;
  for (const GoldenRow& g : rows) want[{g.weight, g.degree}] = g.betti;
  for (const auto& [key, betti] : want)
    require(t.betti({0, key.first, key.second}) == betti,
            name + ": weight " + std::to_string(key.first) + " degree " + std::to_string(key.second) + " has " +
                std::to_string(t.betti({0, key.first, key.second})) + ", oracle says " + std::to_string(betti));
  for (const auto& [key, betti] : t.nonzero())
    require(key.arity == 0 && want.count({key.weight, key.degree}),
            name + ": entry outside the oracle table at weight " + std::to_string(key.weight));
}

std::string criterion7(const std::string& golden, Shared* shared) {
  const auto table = read_golden(golden);
  for (const auto& [o, key] : {std::pair{builtin::ass(4), "ass"}, std::pair{builtin::com(4), "com"}}) {
    const std::string name = "QH(sq0 over " + o->name() + ")";
    require(table.count(key), std::string("golden file has no rows for ") + key);
    match_golden(name, qh(o, ptr(square_zero(o, ChainComplex::line(0), 4)), shared, name), table.at(key));
  }
  return "Ass≤4 and Com≤4 agree with the oracle on all " + std::to_string(table.at("ass").size() + table.at("com").size()) + " rows";
}

// ---- 8: change of operads -----------------------------------------------------

std::string criterion8(Shared* shared) {
  const OperadPtr ass = builtin::ass(3), com = builtin::com(3);
  const LeftModulePtr y = ptr(free_algebra(ass, ChainComplex::line(0), 3));

  const BarConstruction b = change_bar(builtin::ass_to_com(ass, com), y, 4);
  const HomologyReport h = bar_homology(b, 2);
  require(h.window_top >= 2, "window stops below degree 2");
  const ChainComplex free_com = apply_to_object(com->seq(), ChainComplex::line(0), 3);
  HomologyTable expected;
  for (int w = 1; w <= 3; ++w) {
    expected.set({0, w, 0}, static_cast<long>(free_com.indices(0, w).size()));
    require(free_com.indices(0, w).size() == 1, "free Com-algebra on Q is not 1-dimensional in weight " + std::to_string(w));
  }
  require(h.table == expected, "|B(Com, Ass, Ass(Q))| = " + describe(h.table));
  if (shared) shared->keep_bar("B(Com, Ass, Ass(Q))", b);

  const BarConstruction bi = change_bar(identity_map(ass), y, 4);
  const HomologyReport hi = bar_homology(bi, 2);
  const HomologyTable hy = upto(homology((*y->seq)[0]), 2).with_arity(0);
  require(hi.table == hy, "f = id: " + describe(hi.table) + " vs H(Y) = " + describe(hy));
  if (shared) shared->keep_bar("B(Ass, Ass, Ass(Q))", bi);
  return "Ass→Com gives the free Com-algebra (1, 1, 1) in degree 0; id gives H(Y)";
}

// ---- 9, 10: realization and skeleta ------------------------------------------

bool quasi_iso(const ChainComplex& s, const ChainComplex& t, const Matrix& f) { return is_quasi_isomorphism(ChainMap(s, t, f)); }

// The unnormalized complex stops at level S with its degenerate part, so the
// two only agree below total degree S + q_min on any window.
void normalized_vs_unnormalized(const Shared::Realized& o) {
  const int top = o.x.top() - 1 + o.x.min_internal_degree();
  require(upto(homology(o.r.complex), top) == upto(homology(unnormalized_total(o.x)), top),
          o.name + ": normalized and unnormalized homology differ");
}

std::string criterion9(std::mt19937& rng, Shared& shared) {
  const int s = 4;
  for (int k = 0; k < 3; ++k) {
    const ChainComplex y = gen::random_complex(rng, 2, 2);
    const SimplicialChainComplex x0 = copower(y, standard_simplex(0, s));
    const Realization r0 = realization(x0);
    require(r0.complex.dim() == y.dim() && homology(r0.complex) == homology(y), "|Y·Δ[0]| is not Y");
    const SimplicialChainComplex x2 = copower(y, standard_simplex(2, s));
    const gen::Contraction c = gen::simplex_contraction(y, 2, s);
    require(check_simplicial_map(x2, x0, c.retraction).ok, "vertex-0 retraction is not simplicial");
    const Realization r2 = realization(x2);
    require(quasi_iso(r2.complex, r0.complex, realize_map(x2, r2.bicomplex, r0.bicomplex, c.retraction)),
            "|Y·Δ[2]| -> |Y| is not a quasi-isomorphism");
    shared.realized.push_back({"Y·Δ[0] #" + std::to_string(k), x0, r0});
    shared.realized.push_back({"Y·Δ[2] #" + std::to_string(k), x2, r2});
  }
  for (int k = 0; k < 10; ++k) {
    const gen::GeneratedMap q = gen::random_quasi_iso(rng, s);
    require(check_simplicial_map(q.source, q.target, q.map).ok, "generated quasi-iso is not simplicial");
    const Realization a = realization(q.source), b = realization(q.target);
    const ChainMap f(a.complex, b.complex, realize_map(q.source, a.bicomplex, b.bicomplex, q.map));
    require(homology(mapping_cone(f)).is_zero(), "cone of quasi-iso #" + std::to_string(k) + " is not acyclic");
    shared.realized.push_back({"quasi-iso source #" + std::to_string(k), q.source, a});
    shared.realized.push_back({"quasi-iso target #" + std::to_string(k), q.target, b});
  }
  for (int k = 0; k < 10; ++k) {
    const gen::GeneratedMap m = gen::random_mono(rng, s);
    require(check_simplicial_map(m.source, m.target, m.map).ok, "generated mono is not simplicial");
    const Realization a = realization(m.source), b = realization(m.target);
    const Matrix f = realize_map(m.source, a.bicomplex, b.bicomplex, m.map);
    for (int d : a.complex.degrees()) {
      const auto cols = a.complex.indices(d);
      require(rank(f.select_columns(cols)) == cols.size(), "|mono #" + std::to_string(k) + "| is not injective in degree " + std::to_string(d));
    }
    shared.realized.push_back({"mono source #" + std::to_string(k), m.source, a});
    shared.realized.push_back({"mono target #" + std::to_string(k), m.target, b});
  }
  for (const Shared::Realized& o : shared.realized) normalized_vs_unnormalized(o);
  return std::to_string(shared.realized.size()) + " objects: Δ[0], Δ[2], 10 quasi-isos, 10 monos";
}

std::string criterion10(const Shared& shared) {
  std::size_t checks = 0;
  for (const auto& [name, x, full] : shared.realized) {
    const ChainComplex& t = full.complex;
    std::vector<ChainComplex> r;
    for (int n = 0; n <= x.top(); ++n) r.push_back(total_complex(full.bicomplex, n));
    for (int n = 0; n <= x.top(); ++n) {
      const ChainComplex& rn = r[static_cast<std::size_t>(n)];
      for (int d = std::min(t.min_degree(), 0); d <= t.max_degree() + 1; ++d) {
        const std::size_t below = n == 0 ? 0 : r[static_cast<std::size_t>(n - 1)].dim(d);
        require(rn.dim(d) - below == full.bicomplex.columns[static_cast<std::size_t>(n)].dim(d - n),
                name + ": R_" + std::to_string(n) + "/R_" + std::to_string(n - 1) + " in degree " + std::to_string(d));
      }
      // R_n agrees with |X| through total degree n - 1.
      for (int d = std::min(t.min_degree(), 0); d <= n - 1; ++d) {
        require(rn.dim(d) == t.dim(d), name + ": R_" + std::to_string(n) + " misses degree " + std::to_string(d));
        for (int w : t.weights())
          require(rn.differential_block(d, w) == t.differential_block(d, w),
                  name + ": R_" + std::to_string(n) + " differential differs in degree " + std::to_string(d));
        ++checks;
      }
    }
  }
  return std::to_string(checks) + " (object, n, degree) comparisons";
}

// ---- 11: non-Σ ---------------------------------------------------------------

std::string criterion11(const std::string& golden) {
  const std::vector<OperadPtr> operads{builtin::unit(4, true), builtin::planar(4)};
  const BarRun run = bar_suite(operads, nullptr, true);
  require(run.identities.empty(), "identities: " + run.identities);
  require(run.homology.empty(), "contraction: " + run.homology);
  criterion6({builtin::planar(4)}, nullptr);
  // Ass is planar with Σ freely adjoined, so the square-zero tables agree.
  const auto table = read_golden(golden);
  match_golden("QH(sq0 over planar)", qh(builtin::planar(4), ptr(square_zero(builtin::planar(4), ChainComplex::line(0), 4)), nullptr, "planar"),
               table.at("ass"));
  return std::to_string(run.pairs) + " non-Σ bar pairs, QH of free = V, square-zero matches the Ass oracle";
}

}  // namespace

std::vector<Result> run(const std::string& golden, unsigned seed) {
  std::mt19937 rng(seed);
  Shared shared;
  std::map<int, Result> out;
  auto time = [&](int id, const std::string& title, double budget, const std::function<std::string()>& f) {
    Result r{id, title, false, "", 0, budget};
    const auto t0 = Clock::now();
    try {
      r.detail = f();
      r.pass = true;
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (r.pass && r.seconds > budget) {
      r.pass = false;
      r.detail += " (over budget)";
    }
    out[id] = r;
  };

  time(1, "monoidal axioms", 30, [&] { return criterion1(rng); });
  time(2, "adjunction", 30, [&] { return criterion2(rng); });

  // 4 and 5 come from one run over the nine pairs.
  BarRun bars;
  time(4, "simplicial identities", 120, [&] {
    bars = bar_suite({builtin::unit(4), builtin::com(4), builtin::ass(4)}, &shared, false);
    require(bars.identities.empty(), bars.identities);
    return "9 bar constructions B(O, O, Y), S = 4, W = 4, every arity";
  });
  time(5, "contraction", 300, [&] {
    require(bars.pairs == 6, "bar constructions were not built: " + out[4].detail);
    require(bars.homology.empty(), bars.homology);
    return std::to_string(bars.pairs) + " pairs: H(|B(O,O,Y)|) = H(Y) through degree 2 (timed with 4)";
  });
  time(6, "QH of free algebras", 300, [&] { return criterion6({builtin::com(4), builtin::ass(4)}, &shared); });
  time(7, "square-zero oracle", 300, [&] { return criterion7(golden, &shared); });
  time(8, "change of operads", 300, [&] { return criterion8(&shared); });
  time(3, "Dold–Kan", 60, [&] { return criterion3(rng, shared); });
  time(9, "realization", 120, [&] { return criterion9(rng, shared); });
  time(10, "skeleta", 60, [&] { return criterion10(shared); });
  time(11, "non-Σ", 300, [&] { return criterion11(golden); });

  std::vector<Result> v;
  for (auto& [id, r] : out) v.push_back(r);
  return v;
}

void print(std::ostream& os, const std::vector<Result>& results) {
  for (const Result& r : results)
    os << "criterion " << std::setw(2) << r.id << "  " << (r.pass ? "PASS" : "FAIL") << "  " << std::fixed << std::setprecision(2)
       << std::setw(7) << r.seconds << "s / " << std::setprecision(0) << r.budget << "s  " << r.title << ": " << r.detail << "\n";
}

}  // namespace opbar::acceptance
