#include "opbar/operad.hpp"

#include <map>
#include <sstream>

#include "opbar/tensor.hpp"

namespace opbar {

namespace {

int parity_sign(long d) { return d % 2 == 0 ? 1 : -1; }

[[noreturn]] void fail(const std::string& what, const std::string& axiom, const std::string& where) {
  throw AxiomError(what + ": " + axiom + " fails at " + where);
}

std::string generator_name(const SymSeq& s, int n, std::size_t i) { return s[n].generator(i).name; }

SparseVector apply_component(const SymSeqMap& f, int n, const SparseVector& v) {
  if (n < 0 || static_cast<std::size_t>(n) >= f.components.size()) return {};
  return f[n].apply(v);
}

// σ' with σ'·(λ ∘_i μ) = (σ·λ) ∘_{σ(i)} μ, for λ of arity l and μ of arity n.
Permutation block_expansion(const Permutation& sigma, int i, int n) {
  const int l = static_cast<int>(sigma.size());
  const int k = sigma[static_cast<std::size_t>(i)];
  auto old_pos = [&](int a, int j) { return a < i ? a : (a == i ? i + j : a + n - 1); };
  auto new_pos = [&](int b, int j) { return b < k ? b : (b == k ? k + j : b + n - 1); };
  Permutation out(static_cast<std::size_t>(l + n - 1));
  for (int a = 0; a < l; ++a) {
    const int b = sigma[static_cast<std::size_t>(a)];
    if (a == i) {
      for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(old_pos(a, j))] = new_pos(b, j);
    } else {
      out[static_cast<std::size_t>(old_pos(a, 0))] = new_pos(b, 0);
    }
  }
  return out;
}

void check_table_shapes(const std::string& what, const SymSeq& x, const PartialTables& tables, const SymSeq& o) {
  for (const auto& [key, mat] : tables) {
    const auto [m, n, i] = key;
    std::ostringstream where;
    where << "(m, n, i) = (" << m << ", " << n << ", " << i << ")";
    if (m < 1 || n < 0 || i < 0 || i >= m || m > x.max_arity() || n > o.max_arity() || m + n - 1 > x.max_arity())
      fail(what, "composition index out of range", where.str());
    if (mat.rows() != x.dim(m + n - 1) || mat.cols() != x.dim(m) * o.dim(n))
      fail(what, "composition table shape", where.str());
    const std::size_t dn = o.dim(n);
    for (std::size_t col = 0; col < mat.cols(); ++col) {
      const std::size_t a = col / dn, b = col % dn;
      const Generator& ga = x[m].generator(a);
      const Generator& gb = o[n].generator(b);
      for (const auto& [q, c] : mat.column(col)) {
        const Generator& gq = x[m + n - 1].generator(q);
        if (gq.degree != ga.degree + gb.degree || gq.weight != ga.weight + gb.weight)
          fail(what, "degree or weight of a composite", where.str() + " on " + ga.name + " ∘ " + gb.name);
      }
    }
  }
}

}  // namespace

SparseVector partial_compose(const PartialTables& tables, const SymSeq& x_seq, const SymSeq& o_seq, int m,
                             const SparseVector& x, int n, const SparseVector& y, int i) {
  (void)x_seq;
  auto it = tables.find({m, n, i});
  if (it == tables.end() || x.empty() || y.empty()) return {};
  const std::size_t dn = o_seq.dim(n);
  SparseAccumulator acc;
  for (const auto& [a, xa] : x)
    for (const auto& [b, yb] : y) acc.add_scaled(it->second.column(a * dn + b), xa * yb);
  return acc.take();
}

SparseVector compose_term(const PartialTables& tables, const SymSeq& x_seq, const SymSeq& o_seq, const CircleTerm& term) {
  const int t = term.t();
  const std::vector<int> sizes = block_sizes(term);
  SparseVector v = SparseVector::unit(term.a);
  int cur = t, pos = 0;
  for (int i = 0; i < t; ++i) {
    const int n = sizes[static_cast<std::size_t>(i)];
    v = partial_compose(tables, x_seq, o_seq, cur, v, n, SparseVector::unit(term.factors[static_cast<std::size_t>(i)]),
                        pos);
    if (v.empty()) return v;
    cur += n - 1;
    pos += n;
  }
  const int r = term.arity();
  std::vector<int> next(static_cast<std::size_t>(t));
  for (int i = 1; i < t; ++i) next[static_cast<std::size_t>(i)] = next[static_cast<std::size_t>(i - 1)] + sizes[static_cast<std::size_t>(i - 1)];
  Permutation sigma(static_cast<std::size_t>(r));
  for (int x = 0; x < r; ++x) sigma[static_cast<std::size_t>(next[term.blocks[static_cast<std::size_t>(x)]]++)] = x;
  if (is_identity(sigma)) return v;
  return x_seq.act(r, sigma, v);
}

Operad::Operad(SymSeq seq, SparseVector unit, PartialTables partials, std::string name)
    : seq_(std::make_shared<const SymSeq>(std::move(seq))),
      unit_(std::move(unit)),
      partials_(std::move(partials)),
      name_(std::move(name)) {
  const std::string what = "operad " + name_;
  if (seq_->max_arity() < 1) fail(what, "unit", "arity 1 (missing)");
  const ChainComplex& one = (*seq_)[1];
  if (unit_.empty() || unit_.max_index_bound() > one.dim()) fail(what, "unit", "arity 1 (not a vector of O[1])");
  for (const auto& [q, c] : unit_)
    if (one.generator(q).degree != 0 || one.generator(q).weight != 0) fail(what, "unit", "degree or weight nonzero");
  if (!one.differential().apply(unit_).empty()) fail(what, "unit", "d(id) ≠ 0");
  augmentable_ = seq_->dim(0) == 0 && one.dim() == 1;
  check_operad(*this);
}

TermProduct Operad::multiplication() const {
  return [this](const CircleTerm& t) { return gamma(t); };
}

void check_partial_action(const std::string& what, const SymSeq& x, const PartialTables& tables, const Operad& o) {
  const SymSeq& os = o.seq();
  check_table_shapes(what, x, tables, os);
  const int nx = x.max_arity(), no = o.max_arity();
  auto comp = [&](int m, const SparseVector& a, int n, const SparseVector& b, int i) {
    return partial_compose(tables, x, os, m, a, n, b, i);
  };
  auto e = [](std::size_t i) { return SparseVector::unit(i); };
  auto at = [](std::initializer_list<int> v) {
    std::ostringstream s;
    s << "(";
    bool first = true;
    for (int k : v) s << (first ? "" : ", ") << k, first = false;
    s << ")";
    return s.str();
  };

  // d(x ∘_i y) = dx ∘_i y + (-1)^{|x|} x ∘_i dy
  for (const auto& [key, mat] : tables) {
    const auto [m, n, i] = key;
    for (std::size_t a = 0; a < x.dim(m); ++a)
      for (std::size_t b = 0; b < os.dim(n); ++b) {
        const SparseVector lhs = x[m + n - 1].differential().apply(comp(m, e(a), n, e(b), i));
        SparseVector rhs = comp(m, x[m].differential().column(a), n, e(b), i);
        rhs.add_scaled(comp(m, e(a), n, os[n].differential().column(b), i), parity_sign(x[m].generator(a).degree));
        if (lhs != rhs)
          fail(what, "Leibniz rule", "(m, n, i) = " + at({m, n, i}) + " on " + generator_name(x, m, a) + " ∘ " + generator_name(os, n, b));
      }
  }

  for (int m = 1; m <= nx; ++m)
    for (int i = 0; i < m; ++i)
      for (std::size_t a = 0; a < x.dim(m); ++a)
        if (comp(m, e(a), 1, o.unit(), i) != e(a))
          fail(what, "right unit", "arity " + std::to_string(m) + ", i = " + std::to_string(i) + " on " + generator_name(x, m, a));

  // (λ ∘_i μ) ∘_{i+j} ν = λ ∘_i (μ ∘_j ν)
  for (int l = 1; l <= nx; ++l)
    for (int m = 1; m <= no; ++m)
      for (int n = 0; n <= no; ++n) {
        if (l + m - 1 > nx || m + n - 1 > no || l + m + n - 2 > nx) continue;
        for (std::size_t a = 0; a < x.dim(l); ++a)
          for (std::size_t b = 0; b < os.dim(m); ++b)
            for (std::size_t c = 0; c < os.dim(n); ++c)
              for (int i = 0; i < l; ++i)
                for (int j = 0; j < m; ++j) {
                  const SparseVector lhs = comp(l + m - 1, comp(l, e(a), m, e(b), i), n, e(c), i + j);
                  const SparseVector rhs = comp(l, e(a), m + n - 1, o.compose(m, e(b), n, e(c), j), i);
                  if (lhs != rhs)
                    fail(what, "sequential associativity",
                         "arities " + at({l, m, n}) + ", (i, j) = " + at({i, j}) + " on " + generator_name(x, l, a) + ", " +
                             generator_name(os, m, b) + ", " + generator_name(os, n, c));
                }
      }

  // (λ ∘_i μ) ∘_{k+m-1} ν = (-1)^{|μ||ν|} (λ ∘_k ν) ∘_i μ for i < k
  for (int l = 2; l <= nx; ++l)
    for (int m = 0; m <= no; ++m)
      for (int n = 0; n <= no; ++n) {
        if (l + m - 1 > nx || l + n - 1 > nx || l + m + n - 2 > nx) continue;
        for (std::size_t a = 0; a < x.dim(l); ++a)
          for (std::size_t b = 0; b < os.dim(m); ++b)
            for (std::size_t c = 0; c < os.dim(n); ++c)
              for (int i = 0; i < l; ++i)
                for (int k = i + 1; k < l; ++k) {
                  const SparseVector lhs = comp(l + m - 1, comp(l, e(a), m, e(b), i), n, e(c), k + m - 1);
                  SparseVector rhs = comp(l + n - 1, comp(l, e(a), n, e(c), k), m, e(b), i);
                  rhs.scale(parity_sign(static_cast<long>(os[m].generator(b).degree) * os[n].generator(c).degree));
                  if (lhs != rhs)
                    fail(what, "parallel associativity",
                         "arities " + at({l, m, n}) + ", (i, k) = " + at({i, k}) + " on " + generator_name(x, l, a) + ", " +
                             generator_name(os, m, b) + ", " + generator_name(os, n, c));
                }
      }

  if (x.non_sigma()) return;
  for (int l = 2; l <= nx; ++l)
    for (int k = 0; k + 1 < l; ++k) {
      const Permutation s = adjacent_transposition(l, k);
      for (int n = 0; n <= no && l + n - 1 <= nx; ++n)
        for (int i = 0; i < l; ++i) {
          const Permutation expanded = block_expansion(s, i, n);
          for (std::size_t a = 0; a < x.dim(l); ++a)
            for (std::size_t b = 0; b < os.dim(n); ++b) {
              const SparseVector lhs = comp(l, x.act(l, s, e(a)), n, e(b), s[static_cast<std::size_t>(i)]);
              const SparseVector rhs = x.act(l + n - 1, expanded, comp(l, e(a), n, e(b), i));
              if (lhs != rhs)
                fail(what, "equivariance in the outer factor",
                     "arities " + at({l, n}) + ", s_" + std::to_string(k) + ", i = " + std::to_string(i) + " on " +
                         generator_name(x, l, a) + ", " + generator_name(os, n, b));
            }
        }
    }
  for (int l = 1; l <= nx; ++l)
    for (int n = 2; n <= no && l + n - 1 <= nx; ++n)
      for (int k = 0; k + 1 < n; ++k) {
        const Permutation s = adjacent_transposition(n, k);
        for (int i = 0; i < l; ++i) {
          const Permutation shifted = adjacent_transposition(l + n - 1, i + k);
          for (std::size_t a = 0; a < x.dim(l); ++a)
            for (std::size_t b = 0; b < os.dim(n); ++b) {
              const SparseVector lhs = comp(l, e(a), n, os.act(n, s, e(b)), i);
              const SparseVector rhs = x.act(l + n - 1, shifted, comp(l, e(a), n, e(b), i));
              if (lhs != rhs)
                fail(what, "equivariance in the inner factor",
                     "arities " + at({l, n}) + ", s_" + std::to_string(k) + ", i = " + std::to_string(i) + " on " +
                         generator_name(x, l, a) + ", " + generator_name(os, n, b));
            }
        }
      }
}

void check_operad(const Operad& o) {
  const std::string what = "operad " + o.name();
  const SymSeq& s = o.seq();
  for (int n = 0; n <= o.max_arity(); ++n)
    for (std::size_t a = 0; a < s.dim(n); ++a)
      if (o.compose(1, o.unit(), n, SparseVector::unit(a), 0) != SparseVector::unit(a))
        fail(what, "left unit", "arity " + std::to_string(n) + " on " + generator_name(s, n, a));
  check_partial_action(what, s, o.partials(), o);
}

void check_monoid_identities(const Operad& o) {
  const std::string what = "operad " + o.name();
  const TruncationPolicy policy{o.max_arity(), std::nullopt};
  const Circle oo(o.seq_ptr(), o.seq_ptr(), policy);
  const SymSeqMap m = apply_product(oo, o.multiplication(), o.seq());
  const Circle oo_o(oo.result_ptr(), o.seq_ptr(), policy);
  const Circle o_oo(o.seq_ptr(), oo.result_ptr(), policy);
  const Associator assoc = canonical_assoc(oo, oo_o, oo, o_oo);
  const SymSeqMap lhs = circle_map(oo_o, oo, &m, nullptr).then(m);
  const SymSeqMap rhs = assoc.forward.then(circle_map(o_oo, oo, nullptr, &m)).then(m);
  const SymSeqMap id = SymSeqMap::identity(o.seq());
  const SymSeqMap left = left_unit_insertion(oo, o.unit()).then(m);
  const SymSeqMap right = right_unit_insertion(oo, o.unit()).then(m);
  for (int n = 0; n <= o.max_arity(); ++n) {
    if (!(lhs[n] == rhs[n])) fail(what, "m(m∘1) = m(1∘m)α", "arity " + std::to_string(n));
    if (!(left[n] == id[n])) fail(what, "left unit triangle", "arity " + std::to_string(n));
    if (!(right[n] == id[n])) fail(what, "right unit triangle", "arity " + std::to_string(n));
  }
}

void check_operad_map(const OperadMap& f) {
  const Operad& p = *f.source;
  const Operad& o = *f.target;
  const std::string what = "operad map " + p.name() + " -> " + o.name();
  if (p.non_sigma() != o.non_sigma()) fail(what, "Σ mode", "source and target");
  if (static_cast<int>(f.map.components.size()) != p.max_arity() + 1) fail(what, "shape", "number of components");
  // Target arities above its bound count as zero.
  SymSeq target = o.seq();
  if (o.max_arity() < p.max_arity()) {
    std::vector<ChainComplex> comps;
    std::vector<std::vector<Matrix>> trans;
    for (int n = 0; n <= p.max_arity(); ++n) {
      comps.push_back(o.seq()[n]);
      trans.push_back(n <= o.max_arity() ? o.seq().transpositions(n) : std::vector<Matrix>{});
    }
    target = SymSeq(std::move(comps), std::move(trans), o.non_sigma());
  }
  try {
    check_symseq_map(p.seq(), target, f.map);
  } catch (const std::invalid_argument& e) {
    fail(what, "equivariant chain map", e.what());
  }
  if (apply_component(f.map, 1, p.unit()) != o.unit()) fail(what, "preserves the unit", "arity 1");
  for (const auto& [key, mat] : p.partials()) {
    const auto [m, n, i] = key;
    for (std::size_t a = 0; a < p.seq().dim(m); ++a)
      for (std::size_t b = 0; b < p.seq().dim(n); ++b) {
        const SparseVector lhs = apply_component(f.map, m + n - 1, p.compose(m, SparseVector::unit(a), n, SparseVector::unit(b), i));
        const SparseVector rhs = o.compose(m, apply_component(f.map, m, SparseVector::unit(a)), n,
                                           apply_component(f.map, n, SparseVector::unit(b)), i);
        if (lhs != rhs)
          fail(what, "f(x ∘_i y) = f(x) ∘_i f(y)",
               "(m, n, i) = (" + std::to_string(m) + ", " + std::to_string(n) + ", " + std::to_string(i) + ") on " +
                   generator_name(p.seq(), m, a) + ", " + generator_name(p.seq(), n, b));
      }
  }
}

OperadMap identity_map(const OperadPtr& o) { return {o, o, SymSeqMap::identity(o->seq())}; }

OperadMap augmentation(const OperadPtr& o) {
  if (!o->augmentable()) throw std::invalid_argument("operad " + o->name() + " has no canonical augmentation (needs O[0] = 0, O[1] = k)");
  OperadPtr unit = builtin::unit(o->max_arity(), o->non_sigma());
  SymSeqMap map = SymSeqMap::zero(o->seq(), unit->seq());
  map.components[1] = Matrix::from_columns(1, {SparseVector::unit(0, 1 / o->unit().at(0))});
  OperadMap eps{o, unit, std::move(map)};
  check_operad_map(eps);
  return eps;
}

bool LeftModule::is_algebra() const {
  for (int n = 1; n <= seq->max_arity(); ++n)
    if (seq->dim(n) > 0) return false;
  return true;
}

TermProduct RightModule::action() const {
  return [seq = seq, op = op, tables = tables](const CircleTerm& t) { return compose_term(tables, *seq, op->seq(), t); };
}

void check_module(const LeftModule& mod) {
  const std::string what = "left module " + mod.name;
  const Operad& o = *mod.op;
  if (o.non_sigma() != mod.seq->non_sigma()) fail(what, "Σ mode", "operad and module");
  const TruncationPolicy policy = mod.policy();
  const Circle oy(o.seq_ptr(), mod.seq, policy);
  const SymSeqMap lambda = apply_product(oy, mod.action, *mod.seq);
  try {
    check_symseq_map(oy.result(), *mod.seq, lambda);
  } catch (const std::invalid_argument& e) {
    fail(what, "action is an equivariant chain map", e.what());
  }
  const SymSeqMap unit = left_unit_insertion(oy, o.unit()).then(lambda);
  const SymSeqMap id = SymSeqMap::identity(*mod.seq);
  const Circle o_oy(o.seq_ptr(), oy.result_ptr(), policy);
  const SymSeqMap lhs = compose_two_level(o_oy, oy, o.multiplication(), oy).then(lambda);
  const SymSeqMap rhs = circle_map(o_oy, oy, nullptr, &lambda).then(lambda);
  for (int n = 0; n <= mod.seq->max_arity(); ++n) {
    if (!(unit[n] == id[n])) fail(what, "unit", "arity " + std::to_string(n));
    if (!(lhs[n] == rhs[n])) fail(what, "λ(γ∘1) = λ(1∘λ)", "arity " + std::to_string(n));
  }
}

void check_module(const RightModule& mod) {
  if (mod.op->non_sigma() != mod.seq->non_sigma()) fail("right module " + mod.name, "Σ mode", "operad and module");
  check_partial_action("right module " + mod.name, *mod.seq, mod.tables, *mod.op);
}

LeftModule free_left_module(const OperadPtr& o, const SymSeq& y, std::optional<int> max_weight) {
  auto circle = std::make_shared<const Circle>(o->seq_ptr(), std::make_shared<const SymSeq>(y),
                                               TruncationPolicy{o->max_arity(), max_weight});
  LeftModule out;
  out.op = o;
  out.seq = circle->result_ptr();
  out.max_weight = max_weight;
  out.name = "free(" + o->name() + ")";
  TermProduct gamma = o->multiplication();
  out.action = [circle, gamma, o](const CircleTerm& t) {
    SparseAccumulator acc;
    regroup_apply(t, 1, *circle, gamma, *circle, acc);
    return acc.take();
  };
  return out;
}

LeftModule free_algebra(const OperadPtr& o, const ChainComplex& v, int max_weight) {
  LeftModule out = free_left_module(o, hat(v.with_weight(1), o->max_arity(), o->non_sigma()), max_weight);
  out.name = o->name() + "(V)";
  return out;
}

LeftModule square_zero(const OperadPtr& o, const ChainComplex& v, int max_weight) {
  const OperadMap eps = augmentation(o);
  LeftModule out;
  out.op = o;
  out.seq = std::make_shared<const SymSeq>(hat(v.with_weight(1), o->max_arity(), o->non_sigma()));
  out.max_weight = max_weight;
  out.name = "sqzero(" + o->name() + ")";
  const Matrix e1 = eps.map[1];
  out.action = [e1](const CircleTerm& t) -> SparseVector {
    if (t.t() != 1) return {};
    const Rational c = e1.at(0, t.a);
    if (c == 0) return {};
    return SparseVector::unit(t.factors[0], c);
  };
  return out;
}

LeftModule operad_as_left_module(const OperadPtr& o) {
  LeftModule out;
  out.op = o;
  out.seq = o->seq_ptr();
  out.action = o->multiplication();
  out.name = o->name();
  return out;
}

RightModule operad_as_right_module(const OperadPtr& o) { return {o, o->seq_ptr(), o->partials(), o->name()}; }

RightModule unit_right_module(const OperadPtr& o) {
  const OperadMap eps = augmentation(o);
  RightModule out = restrict_along(eps, operad_as_right_module(eps.target));
  out.name = "I";
  return out;
}

RightModule restrict_along(const OperadMap& f, const RightModule& m) {
  if (f.target != m.op && f.target->partials() != m.op->partials())
    throw std::invalid_argument("restriction along a map whose target is not the module's operad");
  RightModule out;
  out.op = f.source;
  out.seq = m.seq;
  out.name = m.name + "|" + f.source->name();
  for (const auto& [key, mat] : m.tables) {
    const auto [a, n, i] = key;
    if (n > f.source->max_arity()) continue;
    Matrix res = mat * Matrix::kronecker(Matrix::identity(m.seq->dim(a)), f.map[n]);
    if (!res.is_zero()) out.tables.emplace(key, std::move(res));
  }
  return out;
}

LeftModule restrict_along(const OperadMap& f, const LeftModule& m) {
  if (f.target != m.op && f.target->partials() != m.op->partials())
    throw std::invalid_argument("restriction along a map whose target is not the module's operad");
  LeftModule out = m;
  out.op = f.source;
  out.name = m.name + "|" + f.source->name();
  out.action = [map = f.map, act = m.action](const CircleTerm& t) {
    SparseAccumulator acc;
    CircleTerm u = t;
    for (const auto& [o, c] : map[t.t()].column(t.a)) {
      u.a = static_cast<std::uint32_t>(o);
      acc.add_scaled(act(u), c);
    }
    return acc.take();
  };
  return out;
}

namespace {

// Basis element k of Map∘(Y,Y)[t] as a matrix Y^{⊗t}[r] -> Y[r].
struct EndBasis {
  int r = 0;
  int degree = 0;
  Matrix map;
};

std::vector<std::vector<EndBasis>> end_basis(const MappingData& md) {
  std::vector<std::vector<EndBasis>> out(md.pieces.size());
  for (std::size_t t = 0; t < md.pieces.size(); ++t)
    for (std::size_t r = 0; r < md.pieces[t].size(); ++r) {
      const HomComplex& h = md.pieces[t][r].hom;
      for (std::size_t k = 0; k < h.maps.cols(); ++k) {
        std::vector<std::vector<SparseVector::Entry>> cols(h.source_dim);
        for (const auto& [idx, x] : h.maps.column(k)) cols[idx % h.source_dim].emplace_back(idx / h.source_dim, x);
        std::vector<SparseVector> sv;
        for (auto& c : cols) sv.push_back(SparseVector::from_unsorted(std::move(c)));
        out[t].push_back({static_cast<int>(r), h.complex.generator(k).degree, Matrix::from_columns(h.target_dim, std::move(sv))});
      }
    }
  return out;
}

SparseVector end_coordinates(const MappingData& md, int t, int r, const std::vector<SparseVector>& columns) {
  const MappingData::Piece& p = md.pieces[static_cast<std::size_t>(t)][static_cast<std::size_t>(r)];
  std::vector<SparseVector::Entry> flat;
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [q, c] : columns[j]) flat.emplace_back(q * p.hom.source_dim + j, c);
  SparseVector local = p.coordinates(SparseVector::from_unsorted(std::move(flat)));
  std::vector<SparseVector::Entry> shifted;
  for (const auto& [k, c] : local) shifted.emplace_back(k + p.offset, c);
  return SparseVector::from_unsorted(std::move(shifted));
}

}  // namespace

OperadPtr endomorphism_operad(const SymSeq& y, int bound) {
  auto yp = std::make_shared<const SymSeq>(y);
  const MappingData md = mapping_data(yp, y, bound);
  const auto basis = end_basis(md);
  const int n_ar = y.max_arity();

  SparseAccumulator unit;
  if (bound >= 1) {
    for (int r = 0; r <= n_ar; ++r) {
      const auto& terms = md.powers[1].product->terms(r);
      std::vector<SparseVector> cols;
      for (const CircleTerm& term : terms) cols.push_back(SparseVector::unit(term.factors[0]));
      unit.add_scaled(end_coordinates(md, 1, r, cols), 1);
    }
  }

  PartialTables tables;
  for (int m = 1; m <= bound; ++m)
    for (int n = 0; m + n - 1 <= bound; ++n)
      for (int i = 0; i < m; ++i) {
        const auto& fb = basis[static_cast<std::size_t>(m)];
        const auto& gb = basis[static_cast<std::size_t>(n)];
        const int total = m + n - 1;
        const TensorProduct& big = *md.powers[static_cast<std::size_t>(total)].product;
        const TensorProduct& outer = *md.powers[static_cast<std::size_t>(m)].product;
        const TensorProduct& inner = *md.powers[static_cast<std::size_t>(n)].product;
        std::vector<SparseVector> cols(fb.size() * gb.size());
        bool any = false;
        for (std::size_t a = 0; a < fb.size(); ++a)
          for (std::size_t b = 0; b < gb.size(); ++b) {
            const EndBasis& f = fb[a];
            const EndBasis& g = gb[b];
            std::vector<SparseVector> columns;
            for (const CircleTerm& term : big.terms(f.r)) {
              const std::vector<int> sizes = block_sizes(term);
              CircleTerm in;
              std::vector<std::uint8_t> out_blocks(term.blocks.size());
              for (std::size_t x = 0; x < term.blocks.size(); ++x) {
                const int bl = term.blocks[x];
                if (bl >= i && bl < i + n) in.blocks.push_back(static_cast<std::uint8_t>(bl - i));
                out_blocks[x] = static_cast<std::uint8_t>(bl < i ? bl : (bl < i + n ? i : bl - n + 1));
              }
              SparseAccumulator acc;
              if (in.arity() == g.r) {
                for (int j = 0; j < n; ++j) in.factors.push_back(term.factors[static_cast<std::size_t>(i + j)]);
                long before = 0;
                for (int j = 0; j < i; ++j)
                  before += y[sizes[static_cast<std::size_t>(j)]].generator(term.factors[static_cast<std::size_t>(j)]).degree;
                const int sign = parity_sign(before * g.degree);
                CircleTerm o_term;
                o_term.blocks = out_blocks;
                for (int j = 0; j < i; ++j) o_term.factors.push_back(term.factors[static_cast<std::size_t>(j)]);
                o_term.factors.push_back(0);
                for (int j = i + n; j < total; ++j) o_term.factors.push_back(term.factors[static_cast<std::size_t>(j)]);
                for (const auto& [q, c] : g.map.column(*inner.index(in))) {
                  o_term.factors[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(q);
                  acc.add_scaled(f.map.column(*outer.index(o_term)), c * sign);
                }
              }
              columns.push_back(acc.take());
            }
            SparseVector v = end_coordinates(md, total, f.r, columns);
            any = any || !v.empty();
            cols[a * gb.size() + b] = std::move(v);
          }
        if (any) tables.emplace(PartialKey{m, n, i}, Matrix::from_columns(md.seq.dim(total), std::move(cols)));
      }
  return std::make_shared<const Operad>(md.seq, unit.take(), std::move(tables), "End");
}

OperadMap action_adjoint(const LeftModule& mod, const OperadPtr& end) {
  const Operad& o = *mod.op;
  const MappingData md = mapping_data(mod.seq, *mod.seq, end->max_arity());
  SymSeqMap map;
  for (int t = 0; t <= o.max_arity(); ++t) {
    std::vector<SparseVector> cols;
    for (std::size_t a = 0; a < o.seq().dim(t); ++a) {
      SparseAccumulator acc;
      if (t <= end->max_arity()) {
        for (int r = 0; r <= mod.seq->max_arity(); ++r) {
          std::vector<SparseVector> columns;
          for (CircleTerm term : md.powers[static_cast<std::size_t>(t)].product->terms(r)) {
            term.a = static_cast<std::uint32_t>(a);
            columns.push_back(mod.action(term));
          }
          try {
            acc.add_scaled(end_coordinates(md, t, r, columns), 1);
          } catch (const ContainmentError&) {
            fail("left module " + mod.name, "action is equivariant", "arity " + std::to_string(t) + " on " + generator_name(o.seq(), t, a));
          }
        }
      }
      cols.push_back(acc.take());
    }
    map.components.push_back(Matrix::from_columns(end->seq().dim(t), std::move(cols)));
  }
  return {mod.op, end, std::move(map)};
}

namespace builtin {

OperadPtr unit(int max_arity, bool non_sigma) {
  PartialTables t;
  t.emplace(PartialKey{1, 1, 0}, Matrix::identity(1));
  return std::make_shared<const Operad>(unit_I(max_arity, non_sigma), SparseVector::unit(0), std::move(t), "I");
}

namespace {
OperadPtr one_per_arity(int max_arity, bool non_sigma, const std::string& name) {
  std::vector<ChainComplex> comps{ChainComplex()};
  for (int n = 1; n <= max_arity; ++n) comps.push_back(ChainComplex::line(0, 0, "mu" + std::to_string(n)));
  PartialTables t;
  for (int m = 1; m <= max_arity; ++m)
    for (int n = 1; m + n - 1 <= max_arity; ++n)
      for (int i = 0; i < m; ++i) t.emplace(PartialKey{m, n, i}, Matrix::identity(1));
  return std::make_shared<const Operad>(SymSeq::with_trivial_actions(std::move(comps), non_sigma), SparseVector::unit(0),
                                        std::move(t), name);
}
}  // namespace

OperadPtr com(int max_arity) { return one_per_arity(max_arity, false, "Com"); }

OperadPtr planar(int max_arity, const std::string& name) { return one_per_arity(max_arity, true, name); }

OperadPtr ass(int max_arity) {
  // Basis of Ass[n]: words w, read as the monomial x_{w(0)} ... x_{w(n-1)}.
  std::vector<std::vector<Permutation>> words(static_cast<std::size_t>(max_arity + 1));
  std::vector<std::map<Permutation, std::size_t>> index(static_cast<std::size_t>(max_arity + 1));
  std::vector<ChainComplex> comps{ChainComplex()};
  std::vector<std::vector<Matrix>> trans(static_cast<std::size_t>(max_arity + 1));
  for (int n = 1; n <= max_arity; ++n) {
    auto& w = words[static_cast<std::size_t>(n)];
    w = all_permutations(n);
    std::vector<Generator> basis;
    for (std::size_t k = 0; k < w.size(); ++k) {
      index[static_cast<std::size_t>(n)].emplace(w[k], k);
      std::string name;
      for (int x : w[k]) name += "x" + std::to_string(x);
      basis.push_back({name, 0, 0});
    }
    comps.push_back(ChainComplex::graded(std::move(basis)));
    for (int k = 0; k + 1 < n; ++k) {
      const Permutation s = adjacent_transposition(n, k);
      std::vector<std::size_t> images;
      for (const Permutation& word : w) images.push_back(index[static_cast<std::size_t>(n)].at(compose(s, word)));
      trans[static_cast<std::size_t>(n)].push_back(Matrix::selection(w.size(), images));
    }
  }
  PartialTables t;
  for (int m = 1; m <= max_arity; ++m)
    for (int n = 1; m + n - 1 <= max_arity; ++n)
      for (int i = 0; i < m; ++i) {
        const auto& wm = words[static_cast<std::size_t>(m)];
        const auto& wn = words[static_cast<std::size_t>(n)];
        std::vector<std::size_t> images;
        for (const Permutation& u : wm)
          for (const Permutation& v : wn) {
            Permutation out;
            for (int x : u) {
              if (x < i) out.push_back(x);
              else if (x > i) out.push_back(x + n - 1);
              else
                for (int y : v) out.push_back(y + i);
            }
            images.push_back(index[static_cast<std::size_t>(m + n - 1)].at(out));
          }
        t.emplace(PartialKey{m, n, i}, Matrix::selection(words[static_cast<std::size_t>(m + n - 1)].size(), images));
      }
  return std::make_shared<const Operad>(SymSeq(std::move(comps), std::move(trans)), SparseVector::unit(0), std::move(t),
                                        "Ass");
}

OperadPtr truncate(const OperadPtr& o, int n) {
  if (o->seq().dim(0) > 0) throw TruncationError("arity truncation of an operad with O[0] ≠ 0 is not an operad");
  if (n < 1 || n > o->max_arity()) throw std::invalid_argument("truncation arity out of range");
  std::vector<ChainComplex> comps;
  std::vector<std::vector<Matrix>> trans;
  for (int k = 0; k <= n; ++k) {
    comps.push_back(o->seq()[k]);
    trans.push_back(o->seq().transpositions(k));
  }
  PartialTables t;
  for (const auto& [key, mat] : o->partials())
    if (std::get<0>(key) + std::get<1>(key) - 1 <= n) t.emplace(key, mat);
  return std::make_shared<const Operad>(SymSeq(std::move(comps), std::move(trans), o->non_sigma()), o->unit(),
                                        std::move(t), o->name() + "<=" + std::to_string(n));
}

OperadMap ass_to_com(const OperadPtr& ass, const OperadPtr& com) {
  SymSeqMap map = SymSeqMap::zero(ass->seq(), com->seq());
  for (int n = 1; n <= ass->max_arity(); ++n) {
    if (com->seq().dim(n) == 0) continue;
    std::vector<SparseVector> cols(ass->seq().dim(n), SparseVector::unit(0));
    map.components[static_cast<std::size_t>(n)] = Matrix::from_columns(1, std::move(cols));
  }
  OperadMap f{ass, com, std::move(map)};
  check_operad_map(f);
  return f;
}

}  // namespace builtin

}  // namespace opbar
