#include "opbar/bar.hpp"

#include <sstream>

namespace opbar {

namespace {

bool same_operad(const OperadPtr& a, const OperadPtr& b) {
  return a == b || (a->seq().non_sigma() == b->seq().non_sigma() && a->partials() == b->partials() &&
                    a->unit() == b->unit() && a->max_arity() == b->max_arity());
}

Matrix component(const SymSeqMap& f, int r) { return f[r]; }

}  // namespace

SimplicialChainComplex BarConstruction::arity(int r) const {
  SimplicialChainComplex x;
  x.infinite = true;
  for (int k = 0; k <= top; ++k) x.levels.push_back(level(k)[r]);
  x.faces.resize(static_cast<std::size_t>(top + 1));
  x.degeneracies.resize(static_cast<std::size_t>(top));
  for (int k = 1; k <= top; ++k)
    for (const SymSeqMap& d : faces[static_cast<std::size_t>(k)]) x.faces[static_cast<std::size_t>(k)].push_back(component(d, r));
  for (int k = 0; k < top; ++k)
    for (const SymSeqMap& s : degeneracies[static_cast<std::size_t>(k)])
      x.degeneracies[static_cast<std::size_t>(k)].push_back(component(s, r));
  return x;
}

BarConstruction bar(const RightModulePtr& x, const OperadPtr& o, const LeftModulePtr& y, int s) {
  if (s < 0) throw std::invalid_argument("simplicial bound must be non-negative");
  if (!same_operad(x->op, o) || !same_operad(y->op, o))
    throw std::invalid_argument("bar construction: modules are not over the given operad");
  if (x->seq->non_sigma() != o->non_sigma() || y->seq->non_sigma() != o->non_sigma())
    throw std::invalid_argument("bar construction: Σ mode mismatch");
  BarConstruction b;
  b.left = x;
  b.op = o;
  b.right = y;
  b.top = s;
  const int n = std::max({o->max_arity(), y->seq->max_arity(), x->seq->max_arity()});
  b.policy = TruncationPolicy{n, y->max_weight};
  b.left_is_operad = x->seq == o->seq_ptr();

  const int zmax = b.left_is_operad ? s + 1 : s;
  b.z.push_back(nullptr);
  b.z_seq.push_back(y->seq);
  for (int j = 1; j <= zmax; ++j) {
    b.z.push_back(std::make_shared<const Circle>(o->seq_ptr(), b.z_seq.back(), b.policy));
    b.z_seq.push_back(b.z.back()->result_ptr());
  }
  for (int k = 0; k <= s; ++k)
    b.levels.push_back(b.left_is_operad ? b.z[static_cast<std::size_t>(k + 1)]
                                        : std::make_shared<const Circle>(x->seq, b.z_seq[static_cast<std::size_t>(k)], b.policy));

  auto zc = [&](int j) -> const Circle& { return *b.z[static_cast<std::size_t>(j)]; };
  auto lc = [&](int k) -> const Circle& { return *b.levels[static_cast<std::size_t>(k)]; };
  const TermProduct gamma = o->multiplication();

  // merge[m][j]: Z_m -> Z_{m-1} multiplying the j-th and (j+1)-st copies of O.
  std::vector<std::vector<SymSeqMap>> merge(static_cast<std::size_t>(s + 1));
  for (int m = 2; m <= s; ++m) {
    auto& mm = merge[static_cast<std::size_t>(m)];
    mm.resize(static_cast<std::size_t>(m));
    mm[1] = compose_two_level(zc(m), zc(m - 1), gamma, zc(m - 1));
    for (int j = 2; j < m; ++j)
      mm[static_cast<std::size_t>(j)] = circle_map(zc(m), zc(m - 1), nullptr, &merge[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j - 1)]);
  }
  // act[m]: Z_m -> Z_{m-1} through the action on Y.
  std::vector<SymSeqMap> act(static_cast<std::size_t>(s + 1));
  for (int m = 1; m <= s; ++m)
    act[static_cast<std::size_t>(m)] = m == 1 ? apply_product(zc(1), y->action, *y->seq)
                                              : circle_map(zc(m), zc(m - 1), nullptr, &act[static_cast<std::size_t>(m - 1)]);
  // ins[m][j]: Z_m -> Z_{m+1} inserting the unit before the j-th factor.
  std::vector<std::vector<SymSeqMap>> ins(static_cast<std::size_t>(s));
  for (int m = 0; m < s; ++m) {
    auto& im = ins[static_cast<std::size_t>(m)];
    im.push_back(left_unit_insertion(zc(m + 1), o->unit()));
    for (int j = 1; j <= m; ++j)
      im.push_back(circle_map(zc(m), zc(m + 1), nullptr, &ins[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j - 1)]));
  }

  const TermProduct rho = x->action();
  b.faces.resize(static_cast<std::size_t>(s + 1));
  for (int k = 1; k <= s; ++k) {
    auto& f = b.faces[static_cast<std::size_t>(k)];
    f.push_back(compose_two_level(lc(k), zc(k), rho, lc(k - 1)));
    for (int i = 1; i < k; ++i) f.push_back(circle_map(lc(k), lc(k - 1), nullptr, &merge[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]));
    f.push_back(circle_map(lc(k), lc(k - 1), nullptr, &act[static_cast<std::size_t>(k)]));
  }
  b.degeneracies.resize(static_cast<std::size_t>(s));
  for (int k = 0; k < s; ++k)
    for (int j = 0; j <= k; ++j)
      b.degeneracies[static_cast<std::size_t>(k)].push_back(
          circle_map(lc(k), lc(k + 1), nullptr, &ins[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]));
  return b;
}

namespace {

struct AugmentationMaps {
  SymSeqMap augmentation;
  std::vector<SymSeqMap> extra;
  bool opposite = false;
  const SymSeq* base = nullptr;
};

AugmentationMaps left_maps(const BarConstruction& b) {
  if (!b.left_is_operad) throw std::invalid_argument("extra degeneracy on the left needs X = O");
  AugmentationMaps m;
  m.base = b.right->seq.get();
  m.augmentation = apply_product(*b.z[1], b.right->action, *b.right->seq);
  for (int n = 0; n <= b.top; ++n) m.extra.push_back(left_unit_insertion(*b.z[static_cast<std::size_t>(n + 1)], b.op->unit()));
  return m;
}

AugmentationMaps right_maps(const BarConstruction& b) {
  if (b.right->seq != b.op->seq_ptr()) throw std::invalid_argument("extra degeneracy on the right needs Y = O");
  AugmentationMaps m;
  m.opposite = true;
  m.base = b.left->seq.get();
  m.augmentation = apply_product(*b.levels[0], b.left->action(), *b.left->seq);
  // ext[k]: Z_k -> Z_{k+1}, z ↦ z∘(η, ..., η) at the innermost level.
  std::vector<SymSeqMap> ext;
  for (int k = 0; k < b.top; ++k)
    ext.push_back(k == 0 ? right_unit_insertion(*b.z[1], b.op->unit())
                         : circle_map(*b.z[static_cast<std::size_t>(k)], *b.z[static_cast<std::size_t>(k + 1)], nullptr, &ext.back()));
  // extra[0]: X -> X∘O; extra[n]: L_{n-1} -> L_n.
  m.extra.push_back(right_unit_insertion(*b.levels[0], b.op->unit()));
  for (int n = 1; n <= b.top; ++n)
    m.extra.push_back(circle_map(*b.levels[static_cast<std::size_t>(n - 1)], *b.levels[static_cast<std::size_t>(n)], nullptr,
                                 &ext[static_cast<std::size_t>(n - 1)]));
  return m;
}

SimplicialChainComplex opposite(const SimplicialChainComplex& x) {
  SimplicialChainComplex y = x;
  for (int n = 1; n <= x.top(); ++n)
    for (int i = 0; i <= n; ++i) y.faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] = x.face(n, n - i);
  for (int n = 0; n < x.top(); ++n)
    for (int j = 0; j <= n; ++j) y.degeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)] = x.degeneracy(n, n - j);
  return y;
}

AugmentedObject extract(const BarConstruction& b, const AugmentationMaps& m, int r) {
  AugmentedObject a;
  a.x = m.opposite ? opposite(b.arity(r)) : b.arity(r);
  a.base = (*m.base)[r];
  a.augmentation = m.augmentation[r];
  for (const SymSeqMap& e : m.extra) a.extra.push_back(e[r]);
  return a;
}

std::string at(const std::string& what, int n, int i = -1) {
  std::string s = what + " at level " + std::to_string(n);
  if (i >= 0) s += " (" + std::to_string(i) + ")";
  return s;
}

bool arity_is_zero(const BarConstruction& b, int r) {
  if (b.right->seq->dim(r) > 0 || b.left->seq->dim(r) > 0) return false;
  for (int k = 0; k <= b.top; ++k)
    if (b.level(k).dim(r) > 0) return false;
  return true;
}

}  // namespace

AugmentedObject left_contraction(const BarConstruction& b, int r) { return extract(b, left_maps(b), r); }
AugmentedObject right_contraction(const BarConstruction& b, int r) { return extract(b, right_maps(b), r); }

ContractionReport contraction_check(const AugmentedObject& a, int arity) {
  ContractionReport rep;
  bool homology_stage = false;
  auto fail = [&](const std::string& m) {
    rep.ok = false;
    rep.relations_ok = homology_stage;
    rep.message = "arity " + std::to_string(arity) + ": " + m;
    return rep;
  };
  const SimplicialChainComplex& x = a.x;
  const int s = x.top();
  if (const Report r = check_simplicial_identities(x); !r) return fail(r.message);
  if (static_cast<int>(a.extra.size()) != s + 1) return fail("extra degeneracy needs one map per level");
  if (!is_chain_map(x.levels[0], a.base, a.augmentation)) return fail("augmentation is not a chain map");
  auto face = [&](int n, int i) -> const Matrix& { return n == 0 ? a.augmentation : x.face(n, i); };
  auto dim = [&](int n) { return n < 0 ? a.base.dim() : x.levels[static_cast<std::size_t>(n)].dim(); };
  if (s >= 1 && !(a.augmentation * x.face(1, 0) == a.augmentation * x.face(1, 1))) return fail("ε d_0 = ε d_1");
  for (int n = 0; n <= s; ++n) {
    const Matrix& e = a.extra[static_cast<std::size_t>(n)];
    if (!(face(n, 0) * e == Matrix::identity(dim(n - 1)))) return fail(at("d_0 s_{-1} = id", n));
    for (int i = 1; i <= n; ++i)
      if (!(x.face(n, i) * e == a.extra[static_cast<std::size_t>(n - 1)] * face(n - 1, i - 1)))
        return fail(at("d_i s_{-1} = s_{-1} d_{i-1}", n, i));
    if (n + 1 <= s) {
      if (!(x.degeneracy(n, 0) * e == a.extra[static_cast<std::size_t>(n + 1)] * e)) return fail(at("s_0 s_{-1} = s_{-1} s_{-1}", n));
      for (int j = 0; j + 1 <= n; ++j)
        if (!(x.degeneracy(n, j + 1) * e == a.extra[static_cast<std::size_t>(n + 1)] * x.degeneracy(n - 1, j)))
          return fail(at("s_{j+1} s_{-1} = s_{-1} s_j", n, j));
    }
  }
  // r = ε d_0^n and s = s_{-1}^{n+1}.
  SimplicialMap r, sec;
  std::vector<std::vector<Matrix>> down(static_cast<std::size_t>(s + 1)), up(static_cast<std::size_t>(s + 1));
  for (int n = 0; n <= s; ++n) {
    auto& d = down[static_cast<std::size_t>(n)];
    auto& u = up[static_cast<std::size_t>(n)];
    d.push_back(Matrix::identity(dim(n)));
    u.push_back(Matrix::identity(dim(n)));
    // d[c] = d_0^c: X_n -> X_{n-c}; u[c] = s_{-1}^c: X_{n-c} -> X_n.
    for (int c = 1; c <= n + 1; ++c) {
      d.push_back(face(n - c + 1, 0) * d.back());
      u.push_back(u.back() * a.extra[static_cast<std::size_t>(n - c + 1)]);
    }
    r.levels.push_back(d.back());
    sec.levels.push_back(u.back());
    if (!(r.levels.back() * sec.levels.back() == Matrix::identity(a.base.dim()))) return fail(at("r∘s = id", n));
  }
  const SimplicialChainComplex point = constant(a.base, s);
  if (const Report rr = check_simplicial_map(x, point, r); !rr) return fail("r is not simplicial: " + rr.message);
  if (const Report rs = check_simplicial_map(point, x, sec); !rs) return fail("s is not simplicial: " + rs.message);
  SimplicialHomotopy h;
  SimplicialMap sr;
  for (int n = 0; n <= s; ++n) {
    auto& comps = h.components.emplace_back();
    for (int c = 0; c <= n + 1; ++c)
      comps.push_back(up[static_cast<std::size_t>(n)][static_cast<std::size_t>(c)] * down[static_cast<std::size_t>(n)][static_cast<std::size_t>(c)]);
    sr.levels.push_back(sec.levels[static_cast<std::size_t>(n)] * r.levels[static_cast<std::size_t>(n)]);
  }
  if (!verify_simplicial_homotopy(x, x, h, sr, identity_map(x))) return fail("extra-degeneracy homotopy from s∘r to id");

  homology_stage = true;
  const Realization rx = realization(x);
  const Realization rp = realization(point);
  rep.window_top = trustworthy_top(x);
  const int top = rep.window_top.value_or(1000);
  const ChainMap rmap(rx.complex, rp.complex, realize_map(x, rx.bicomplex, rp.bicomplex, r));
  const HomologyTable cone = homology(mapping_cone(rmap)).window(-1000, top);
  rep.bar_homology = homology(rx.complex).window(-1000, top).with_arity(arity);
  rep.base_homology = homology(a.base).window(-1000, top).with_arity(arity);
  if (!cone.is_zero()) return fail("cone of |r| has homology in the trustworthy window");
  if (!(rep.bar_homology == rep.base_homology)) return fail("H(|B|) differs from H(Y)");
  return rep;
}

namespace {

ContractionReport check_all_arities(const BarConstruction& b, const AugmentationMaps& m, bool with_pi0) {
  ContractionReport total;
  for (int r = 0; r <= b.max_arity(); ++r) {
    if (arity_is_zero(b, r)) continue;
    const AugmentedObject a = extract(b, m, r);
    ContractionReport one = contraction_check(a, r);
    if (one.ok && with_pi0 && b.top >= 1 && pi0(a.x).complex.dim() != a.base.dim()) {
      one.ok = false;
      one.relations_ok = false;
      one.message = "arity " + std::to_string(r) + ": π0(B) is not Y";
    }
    total.bar_homology.merge(one.bar_homology);
    total.base_homology.merge(one.base_homology);
    total.window_top = one.window_top;
    total.relations_ok = total.relations_ok && one.relations_ok;
    if (!one.ok && total.ok) {
      total.ok = false;
      total.message = one.message;
    }
  }
  return total;
}

int window_for(const BarConstruction& b) {
  int lo = 0;
  bool any = false;
  for (int r = 0; r <= b.max_arity(); ++r)
    for (int k = 0; k <= b.top; ++k) {
      const ChainComplex& c = b.level(k)[r];
      if (c.is_zero()) continue;
      lo = any ? std::min(lo, c.min_degree()) : c.min_degree();
      any = true;
    }
  return b.top - 1 + lo;
}

}  // namespace

ContractionReport contraction_check(const OperadPtr& o, const LeftModulePtr& y, int s) {
  auto x = std::make_shared<const RightModule>(operad_as_right_module(o));
  return contraction_check(bar(x, o, y, s));
}

ContractionReport contraction_check(const BarConstruction& b) { return check_all_arities(b, left_maps(b), true); }

ContractionReport right_module_resolution(const RightModulePtr& x, const OperadPtr& o, int s) {
  auto y = std::make_shared<const LeftModule>(operad_as_left_module(o));
  const BarConstruction b = bar(x, o, y, s);
  return check_all_arities(b, right_maps(b), false);
}

HomologyReport bar_homology(const BarConstruction& b, std::optional<int> max_degree) {
  HomologyReport rep;
  rep.window_top = window_for(b);
  if (max_degree) rep.window_top = std::min(rep.window_top, *max_degree);
  std::ostringstream cfg;
  cfg << "B(" << b.left->name << ", " << b.op->name() << ", " << b.right->name << ") S=" << b.top
      << " W=" << (b.policy.max_weight ? std::to_string(*b.policy.max_weight) : "none") << " N=" << b.max_arity();
  rep.config = cfg.str();
  for (int r = 0; r <= b.max_arity(); ++r) {
    if (arity_is_zero(b, r)) continue;
    const SimplicialChainComplex x = b.arity(r);
    if (const Report ok = check_simplicial_identities(x); !ok)
      throw std::logic_error("bar construction fails a simplicial identity: arity " + std::to_string(r) + ", " + ok.message);
    rep.table.merge(homology(realization(x).complex).window(-1000, rep.window_top).with_arity(r));
  }
  return rep;
}

void require_augmentable(const Operad& o) {
  if (!o.augmentable())
    throw PreconditionError("Quillen homology via B(I, O, Y) needs O[0] = 0 and O[1] = k·id; operad " + o.name() +
                            " has dim O[0] = " + std::to_string(o.seq().dim(0)) + ", dim O[1] = " + std::to_string(o.seq().dim(1)));
}

BarConstruction quillen_bar(const OperadPtr& o, const LeftModulePtr& y, int s) {
  require_augmentable(*o);
  return bar(std::make_shared<const RightModule>(unit_right_module(o)), o, y, s);
}

BarConstruction change_bar(const OperadMap& f, const LeftModulePtr& y, int s) {
  return bar(std::make_shared<const RightModule>(restrict_along(f, operad_as_right_module(f.target))), f.source, y, s);
}

HomologyReport quillen_homology(const OperadPtr& o, const LeftModulePtr& y, int s, std::optional<int> max_degree) {
  return bar_homology(quillen_bar(o, y, s), max_degree);
}

HomologyReport change_of_operads(const OperadMap& f, const LeftModulePtr& y, int s, std::optional<int> max_degree) {
  return bar_homology(change_bar(f, y, s), max_degree);
}

}  // namespace opbar
