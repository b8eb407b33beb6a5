#include "opbar/circle.hpp"

#include <algorithm>
#include <numeric>

namespace opbar {

std::vector<int> block_sizes(const CircleTerm& term) {
  std::vector<int> sizes(term.factors.size(), 0);
  for (auto b : term.blocks) ++sizes[b];
  return sizes;
}

namespace {

std::u32string key_of(const CircleTerm& t) {
  std::u32string k;
  k.reserve(1 + t.blocks.size() + t.factors.size());
  k.push_back(static_cast<char32_t>(t.factors.size()));
  for (auto b : t.blocks) k.push_back(static_cast<char32_t>(b));
  for (auto f : t.factors) k.push_back(static_cast<char32_t>(f));
  return k;
}

// Rank of each element of [r] inside its block.
std::vector<int> ranks_in_blocks(const std::vector<std::uint8_t>& blocks, int t) {
  std::vector<int> seen(static_cast<std::size_t>(t), 0);
  std::vector<int> rank(blocks.size());
  for (std::size_t x = 0; x < blocks.size(); ++x) rank[x] = seen[blocks[x]]++;
  return rank;
}

// Restricted growth strings of length r with exactly k labels.
void set_partitions(int r, int k, std::vector<std::uint8_t>& cur, int used, const std::function<void()>& emit) {
  if (static_cast<int>(cur.size()) == r) {
    if (used == k) emit();
    return;
  }
  int remaining = r - static_cast<int>(cur.size());
  if (used + remaining < k) return;
  for (int lbl = 0; lbl <= used && lbl < k; ++lbl) {
    cur.push_back(static_cast<std::uint8_t>(lbl));
    set_partitions(r, k, cur, std::max(used, lbl + 1), emit);
    cur.pop_back();
  }
}

int parity_sign(long d) { return d % 2 == 0 ? 1 : -1; }

}  // namespace

Circle::Circle(const SymSeq& a, const SymSeq& b, TruncationPolicy policy)
    : Circle(std::make_shared<const SymSeq>(a), std::make_shared<const SymSeq>(b), policy) {}

Circle::Circle(SymSeqPtr a, SymSeqPtr b, TruncationPolicy policy)
    : a_(std::move(a)), b_(std::move(b)), policy_(policy), non_sigma_(a_->non_sigma()) {
  if (a_->non_sigma() != b_->non_sigma()) throw std::invalid_argument("circle product of Σ and non-Σ sequences");
  if (policy_.max_arity < 0) throw std::invalid_argument("max_arity must be non-negative");
  if (policy_.max_weight && *policy_.max_weight < 0) throw std::invalid_argument("max_weight must be non-negative");
  if (b_->dim(0) > 0) {
    if (!policy_.max_weight)
      throw TruncationError("circle product with a nonzero arity-0 right factor needs a weight bound");
    if (a_->cut_off())
      throw TruncationError("left factor was cut off in arity; its circle product with an arity-0 right factor is not exact");
  }
  arities_.resize(static_cast<std::size_t>(policy_.max_arity + 1));
  build_structure();
}

const Circle::Stabilizer& Circle::stabilizer(const CircleTerm& rep) {
  static const Stabilizer trivial{};
  if (non_sigma_) return trivial;
  const int t = rep.t();
  // Runs of equal factors among the trailing empty blocks.
  std::vector<int> sizes = block_sizes(rep);
  std::vector<std::pair<int, int>> runs;
  for (int i = 0; i < t;) {
    int j = i + 1;
    if (sizes[static_cast<std::size_t>(i)] == 0)
      while (j < t && sizes[static_cast<std::size_t>(j)] == 0 && rep.factors[static_cast<std::size_t>(j)] == rep.factors[static_cast<std::size_t>(i)]) ++j;
    if (j - i >= 2) runs.emplace_back(i, j - i);
    i = j;
  }
  if (runs.empty()) return trivial;
  std::vector<int> degrees(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i)
    degrees[static_cast<std::size_t>(i)] = (*b_)[sizes[static_cast<std::size_t>(i)]].generator(rep.factors[static_cast<std::size_t>(i)]).degree;
  std::string key = std::to_string(t);
  for (auto [s, l] : runs) key += ":" + std::to_string(s) + "," + std::to_string(l) + "," + std::to_string(degrees[static_cast<std::size_t>(s)] & 1);
  auto it = stabilizers_.find(key);
  if (it != stabilizers_.end()) return *it->second;

  // Enumerate the product of the symmetric groups on the runs.
  std::vector<Permutation> group{identity_permutation(t)};
  for (auto [s, l] : runs) {
    std::vector<Permutation> next;
    for (const auto& g : group)
      for (const auto& p : all_permutations(l)) {
        Permutation h = g;
        for (int x = 0; x < l; ++x) h[static_cast<std::size_t>(s + x)] = s + p[static_cast<std::size_t>(x)];
        next.push_back(std::move(h));
      }
    group = std::move(next);
  }
  const std::size_t n = a_->dim(t);
  Matrix avg(n, n);
  for (const auto& g : group) {
    int sign = koszul_sign(g, degrees);
    const Matrix& m = a_->permutation_matrix(t, g);
    avg = avg + (sign > 0 ? m : m.scaled(-1));
  }
  avg = avg.scaled(Rational(1, static_cast<long>(group.size())));
  ProjectorImage img = projector_image(avg);
  auto stab = std::make_unique<Stabilizer>();
  stab->trivial = false;
  stab->section = std::move(img.section);
  stab->retraction = std::move(img.retraction);
  return *stabilizers_.emplace(key, std::move(stab)).first->second;
}

int Circle::canonicalize(CircleTerm& term, Permutation& tau) const {
  const int t = term.t();
  tau = identity_permutation(t);
  if (non_sigma_ || t <= 1) return 1;
  std::vector<int> first(static_cast<std::size_t>(t), -1);
  for (std::size_t x = 0; x < term.blocks.size(); ++x)
    if (first[term.blocks[x]] < 0) first[term.blocks[x]] = static_cast<int>(x);
  std::vector<int> order(static_cast<std::size_t>(t));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    int fi = first[static_cast<std::size_t>(i)], fj = first[static_cast<std::size_t>(j)];
    if ((fi < 0) != (fj < 0)) return fi >= 0;
    if (fi >= 0) return fi < fj;
    return term.factors[static_cast<std::size_t>(i)] < term.factors[static_cast<std::size_t>(j)];
  });
  bool moved = false;
  for (int p = 0; p < t; ++p) {
    tau[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] = p;
    moved |= order[static_cast<std::size_t>(p)] != p;
  }
  if (!moved) return 1;
  std::vector<int> sizes = block_sizes(term);
  std::vector<int> degrees(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i)
    degrees[static_cast<std::size_t>(i)] = (*b_)[sizes[static_cast<std::size_t>(i)]].generator(term.factors[static_cast<std::size_t>(i)]).degree;
  int sign = koszul_sign(tau, degrees);
  std::vector<std::uint32_t> factors(term.factors.size());
  for (int i = 0; i < t; ++i) factors[static_cast<std::size_t>(tau[static_cast<std::size_t>(i)])] = term.factors[static_cast<std::size_t>(i)];
  term.factors = std::move(factors);
  for (auto& b : term.blocks) b = static_cast<std::uint8_t>(tau[b]);
  return sign;
}

int Circle::term_degree(const CircleTerm& term) const {
  int d = (*a_)[term.t()].generator(term.a).degree;
  std::vector<int> sizes = block_sizes(term);
  for (std::size_t i = 0; i < term.factors.size(); ++i) d += (*b_)[sizes[i]].generator(term.factors[i]).degree;
  return d;
}

int Circle::term_weight(const CircleTerm& term) const {
  int w = (*a_)[term.t()].generator(term.a).weight;
  std::vector<int> sizes = block_sizes(term);
  for (std::size_t i = 0; i < term.factors.size(); ++i) w += (*b_)[sizes[i]].generator(term.factors[i]).weight;
  return w;
}

void Circle::add_orbit(int r, CircleTerm rep, std::vector<Generator>& basis) {
  Arity& ar = arities_[static_cast<std::size_t>(r)];
  const int t = rep.t();
  const ChainComplex& at = (*a_)[t];
  const Stabilizer& stab = stabilizer(rep);
  std::vector<int> sizes = block_sizes(rep);
  int fdeg = 0, fweight = 0;
  std::string fname = "{";
  for (std::size_t x = 0; x < rep.blocks.size(); ++x) fname += (x ? "," : "") + std::to_string(rep.blocks[x]);
  fname += "}(";
  for (std::size_t i = 0; i < rep.factors.size(); ++i) {
    const Generator& g = (*b_)[sizes[i]].generator(rep.factors[i]);
    fdeg += g.degree;
    fweight += g.weight;
    fname += (i ? "," : "") + g.name;
  }
  fname += ")";

  Orbit orbit;
  orbit.rep = std::move(rep);
  orbit.start = basis.size();
  orbit.stab = &stab;
  const std::size_t k = stab.trivial ? at.dim() : stab.section.cols();
  orbit.local.assign(k, -1);
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t pivot = stab.trivial ? s : stab.section.column(s).front().first;
    const Generator& g = at.generator(pivot);
    if (!policy_.admits_weight(g.weight + fweight)) continue;
    orbit.local[s] = static_cast<std::int32_t>(orbit.kept.size());
    orbit.kept.push_back(static_cast<std::int32_t>(s));
    basis.push_back({(stab.trivial ? "" : "Σ") + g.name + fname, g.degree + fdeg, g.weight + fweight});
  }
  orbit.count = orbit.kept.size();
  for (std::size_t j = 0; j < orbit.count; ++j) ar.basis_orbit.push_back(static_cast<std::uint32_t>(ar.orbits.size()));
  ar.lookup.emplace(key_of(orbit.rep), ar.orbits.size());
  ar.orbits.push_back(std::move(orbit));
}

std::vector<Generator> Circle::enumerate(int r) {
  std::vector<Generator> basis;
  const SymSeq& a = *a_;
  const SymSeq& b = *b_;
  auto min_weight = [](const ChainComplex& c) {
    int w = 0;
    bool first = true;
    for (const auto& g : c.basis()) {
      w = first ? g.weight : std::min(w, g.weight);
      first = false;
    }
    return w;
  };
  auto budget_ok = [&](int used, int budget) { return !policy_.max_weight || used <= budget; };

  // Choose factors for blocks of the given sizes, then `empties` trailing
  // arity-0 factors in non-decreasing order.
  auto fill = [&](int t, const std::vector<std::uint8_t>& blocks, const std::vector<int>& sizes, int empties) {
    int budget = policy_.max_weight ? *policy_.max_weight - min_weight(a[t]) : 0;
    CircleTerm rep;
    rep.blocks = blocks;
    rep.factors.assign(static_cast<std::size_t>(t), 0);
    const int filled = t - empties;
    std::function<void(int, int)> go = [&](int i, int used) {
      if (!budget_ok(used, budget)) return;
      if (i == t) {
        add_orbit(r, rep, basis);
        return;
      }
      const ChainComplex& c = b[sizes[static_cast<std::size_t>(i)]];
      std::uint32_t from = 0;
      if (i > filled && !non_sigma_) from = rep.factors[static_cast<std::size_t>(i) - 1];
      for (std::uint32_t f = from; f < c.dim(); ++f) {
        rep.factors[static_cast<std::size_t>(i)] = f;
        go(i + 1, used + c.generator(f).weight);
      }
    };
    go(0, 0);
  };

  for (int t = 0; t <= a.max_arity(); ++t) {
    if (a.dim(t) == 0) continue;
    if (non_sigma_) {
      // Weak compositions of r into t consecutive blocks.
      std::vector<int> sizes(static_cast<std::size_t>(t), 0);
      std::function<void(int, int)> go = [&](int i, int left) {
        if (i == t) {
          if (left != 0) return;
          std::vector<std::uint8_t> blocks;
          for (int j = 0; j < t; ++j)
            for (int x = 0; x < sizes[static_cast<std::size_t>(j)]; ++x) blocks.push_back(static_cast<std::uint8_t>(j));
          for (int s : sizes)
            if (b.dim(s) == 0) return;
          fill(t, blocks, sizes, 0);
          return;
        }
        for (int s = 0; s <= left; ++s) {
          sizes[static_cast<std::size_t>(i)] = s;
          go(i + 1, left - s);
        }
      };
      go(0, r);
      continue;
    }
    for (int k = 0; k <= std::min(t, r); ++k) {
      const int empties = t - k;
      if (empties > 0 && b.dim(0) == 0) continue;
      if (k == 0 && r > 0) continue;
      std::vector<std::uint8_t> cur;
      set_partitions(r, k, cur, 0, [&]() {
        std::vector<int> sizes(static_cast<std::size_t>(t), 0);
        for (auto lbl : cur) ++sizes[lbl];
        for (int i = 0; i < k; ++i)
          if (b.dim(sizes[static_cast<std::size_t>(i)]) == 0) return;
        fill(t, cur, sizes, empties);
      });
    }
  }
  return basis;
}

void Circle::build_structure() {
  const int n_ar = policy_.max_arity;
  std::vector<ChainComplex> comps;
  std::vector<std::vector<Matrix>> trans(static_cast<std::size_t>(n_ar + 1));
  for (int r = 0; r <= n_ar; ++r) {
    std::vector<Generator> basis = enumerate(r);
    const std::size_t n = basis.size();
    std::vector<SparseVector> dcols(n);
    for (std::size_t j = 0; j < n; ++j) {
      SparseAccumulator acc;
      for (const auto& [term, c] : section(r, j)) {
        const int t = term.t();
        const ChainComplex& at = (*a_)[t];
        int sign_deg = at.generator(term.a).degree;
        CircleTerm tmp = term;
        for (const auto& [a2, x] : at.differential().column(term.a)) {
          tmp.a = static_cast<std::uint32_t>(a2);
          retract(tmp, c * x, acc);
        }
        tmp.a = term.a;
        std::vector<int> sizes = block_sizes(term);
        for (std::size_t i = 0; i < term.factors.size(); ++i) {
          const ChainComplex& bs = (*b_)[sizes[i]];
          const Rational ci = c * parity_sign(sign_deg);
          for (const auto& [f2, x] : bs.differential().column(term.factors[i])) {
            tmp.factors[i] = static_cast<std::uint32_t>(f2);
            retract(tmp, ci * x, acc);
          }
          tmp.factors[i] = term.factors[i];
          sign_deg += bs.generator(term.factors[i]).degree;
        }
      }
      dcols[j] = acc.take();
    }
    comps.emplace_back(std::move(basis), Matrix::from_columns(n, std::move(dcols)));
    if (non_sigma_ || r < 2) continue;
    for (int k = 0; k + 1 < r; ++k) {
      std::vector<SparseVector> cols(n);
      for (std::size_t j = 0; j < n; ++j) {
        SparseAccumulator acc;
        for (const auto& [term, c] : section(r, j)) {
          CircleTerm tmp = term;
          const auto bk = term.blocks[static_cast<std::size_t>(k)];
          const auto bk1 = term.blocks[static_cast<std::size_t>(k) + 1];
          if (bk != bk1) {
            std::swap(tmp.blocks[static_cast<std::size_t>(k)], tmp.blocks[static_cast<std::size_t>(k) + 1]);
            retract(tmp, c, acc);
            continue;
          }
          int p = 0;
          for (int x = 0; x < k; ++x) p += term.blocks[static_cast<std::size_t>(x)] == bk;
          const int s = block_sizes(term)[bk];
          const Matrix& sp = (*b_).transpositions(s)[static_cast<std::size_t>(p)];
          for (const auto& [f2, x] : sp.column(term.factors[bk])) {
            tmp.factors[bk] = static_cast<std::uint32_t>(f2);
            retract(tmp, c * x, acc);
          }
        }
        cols[j] = acc.take();
      }
      trans[static_cast<std::size_t>(r)].push_back(Matrix::from_columns(n, std::move(cols)));
    }
  }
  auto out = std::make_shared<SymSeq>(std::move(comps), std::move(trans), non_sigma_);
  // Arities beyond the bound are zero only if no product can reach them.
  int top_a = 0, top_b = 0;
  for (int n = 0; n <= a_->max_arity(); ++n)
    if (a_->dim(n) > 0) top_a = n;
  for (int n = 0; n <= b_->max_arity(); ++n)
    if (b_->dim(n) > 0) top_b = n;
  out->set_cut_off(a_->cut_off() || b_->cut_off() || top_a * top_b > policy_.max_arity);
  result_ = std::move(out);
}

void Circle::retract(const CircleTerm& term, const Rational& c, SparseAccumulator& out) const {
  if (c == 0) return;
  const int r = term.arity();
  if (r > policy_.max_arity) return;
  const Arity& ar = arities_[static_cast<std::size_t>(r)];
  CircleTerm canon = term;
  Permutation tau;
  const int sign = canonicalize(canon, tau);
  auto it = ar.lookup.find(key_of(canon));
  if (it == ar.lookup.end()) return;
  const Orbit& orbit = ar.orbits[it->second];
  if (orbit.count == 0) return;
  const int t = term.t();
  const Rational coeff = sign > 0 ? c : Rational(-c);
  auto emit = [&](const SparseVector& avec) {
    if (orbit.stab->trivial) {
      for (const auto& [ai, x] : avec) {
        const auto li = orbit.local[ai];
        if (li >= 0) out.add(orbit.start + static_cast<std::size_t>(li), coeff * x);
      }
      return;
    }
    for (const auto& [si, x] : orbit.stab->retraction.apply(avec)) {
      const auto li = orbit.local[si];
      if (li >= 0) out.add(orbit.start + static_cast<std::size_t>(li), coeff * x);
    }
  };
  if (is_identity(tau)) {
    emit(SparseVector::unit(term.a));
  } else {
    emit(a_->permutation_matrix(t, tau).column(term.a));
  }
}

SparseVector Circle::retract(const CircleTerm& term) const {
  SparseAccumulator acc;
  retract(term, 1, acc);
  return acc.take();
}

void Circle::retract_product(const SparseVector& a, const std::vector<std::uint8_t>& blocks,
                             const std::vector<SparseVector>& factors, const Rational& c, SparseAccumulator& out) const {
  CircleTerm term;
  term.blocks = blocks;
  term.factors.assign(factors.size(), 0);
  std::function<void(std::size_t, const Rational&)> go = [&](std::size_t i, const Rational& coeff) {
    if (i == factors.size()) {
      for (const auto& [ai, x] : a) {
        term.a = static_cast<std::uint32_t>(ai);
        retract(term, coeff * x, out);
      }
      return;
    }
    for (const auto& [f, x] : factors[i]) {
      term.factors[i] = static_cast<std::uint32_t>(f);
      go(i + 1, coeff * x);
    }
  };
  go(0, c);
}

TermVector Circle::section(int r, std::size_t j) const {
  const Arity& ar = arities_[static_cast<std::size_t>(r)];
  const Orbit& orbit = ar.orbits[ar.basis_orbit[j]];
  const auto s = static_cast<std::size_t>(orbit.kept[j - orbit.start]);
  TermVector out;
  if (orbit.stab->trivial) {
    CircleTerm term = orbit.rep;
    term.a = static_cast<std::uint32_t>(s);
    out.emplace_back(std::move(term), 1);
    return out;
  }
  for (const auto& [ai, x] : orbit.stab->section.column(s)) {
    CircleTerm term = orbit.rep;
    term.a = static_cast<std::uint32_t>(ai);
    out.emplace_back(std::move(term), x);
  }
  return out;
}

SymSeqMap circle_map(const Circle& source, const Circle& target, const SymSeqMap* f, const SymSeqMap* g) {
  SymSeqMap out;
  const int top = source.policy().max_arity;
  for (int r = 0; r <= top; ++r) {
    const std::size_t n = source.result().dim(r);
    std::vector<SparseVector> cols(n);
    for (std::size_t j = 0; j < n; ++j) {
      SparseAccumulator acc;
      for (const auto& [term, c] : source.section(r, j)) {
        const int t = term.t();
        SparseVector avec = f ? (*f)[t].column(term.a) : SparseVector::unit(term.a);
        std::vector<int> sizes = block_sizes(term);
        std::vector<SparseVector> fv;
        fv.reserve(term.factors.size());
        for (std::size_t i = 0; i < term.factors.size(); ++i)
          fv.push_back(g ? (*g)[sizes[i]].column(term.factors[i]) : SparseVector::unit(term.factors[i]));
        target.retract_product(avec, term.blocks, fv, c, acc);
      }
      cols[j] = acc.take();
    }
    out.components.push_back(Matrix::from_columns(target.result().dim(r), std::move(cols)));
  }
  return out;
}

void regroup_apply(const CircleTerm& term, const Rational& c, const Circle& bc, const TermProduct& m, const Circle& ec,
                   SparseAccumulator& out) {
  const int t = term.t();
  std::vector<int> sizes = block_sizes(term);
  std::vector<TermVector> secs(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) secs[static_cast<std::size_t>(i)] = bc.section(sizes[static_cast<std::size_t>(i)], term.factors[static_cast<std::size_t>(i)]);
  const std::vector<int> rank = ranks_in_blocks(term.blocks, t);
  std::vector<std::size_t> choice(static_cast<std::size_t>(t), 0);

  std::function<void(int, const Rational&)> go = [&](int i, const Rational& coeff) {
    if (i < t) {
      for (std::size_t k = 0; k < secs[static_cast<std::size_t>(i)].size(); ++k) {
        choice[static_cast<std::size_t>(i)] = k;
        go(i + 1, coeff * secs[static_cast<std::size_t>(i)][k].second);
      }
      return;
    }
    CircleTerm inner;
    inner.a = term.a;
    std::vector<int> offset(static_cast<std::size_t>(t) + 1, 0);
    std::vector<std::uint32_t> cs;
    int sign_exp = 0;
    int c_deg_before = 0;  // total degree of c's from earlier blocks
    for (int j = 0; j < t; ++j) {
      const CircleTerm& y = secs[static_cast<std::size_t>(j)][choice[static_cast<std::size_t>(j)]].first;
      const int u = y.t();
      offset[static_cast<std::size_t>(j) + 1] = offset[static_cast<std::size_t>(j)] + u;
      for (int x = 0; x < u; ++x) inner.blocks.push_back(static_cast<std::uint8_t>(j));
      inner.factors.push_back(y.a);
      const int bdeg = bc.left()[u].generator(y.a).degree;
      sign_exp += bdeg * c_deg_before;
      std::vector<int> ysizes = block_sizes(y);
      for (int x = 0; x < u; ++x) {
        cs.push_back(y.factors[static_cast<std::size_t>(x)]);
        c_deg_before += bc.right()[ysizes[static_cast<std::size_t>(x)]].generator(y.factors[static_cast<std::size_t>(x)]).degree;
      }
    }
    CircleTerm outer;
    outer.factors = std::move(cs);
    outer.blocks.resize(term.blocks.size());
    for (std::size_t x = 0; x < term.blocks.size(); ++x) {
      const int i = term.blocks[x];
      const CircleTerm& y = secs[static_cast<std::size_t>(i)][choice[static_cast<std::size_t>(i)]].first;
      outer.blocks[x] = static_cast<std::uint8_t>(offset[static_cast<std::size_t>(i)] + y.blocks[static_cast<std::size_t>(rank[x])]);
    }
    const Rational total = sign_exp % 2 == 0 ? coeff : Rational(-coeff);
    for (const auto& [e, x] : m(inner)) {
      outer.a = static_cast<std::uint32_t>(e);
      ec.retract(outer, total * x, out);
    }
  };
  go(0, c);
}

SymSeqMap compose_two_level(const Circle& outer, const Circle& bc, const TermProduct& m, const Circle& ec) {
  SymSeqMap out;
  for (int r = 0; r <= outer.policy().max_arity; ++r) {
    const std::size_t n = outer.result().dim(r);
    std::vector<SparseVector> cols(n);
    for (std::size_t j = 0; j < n; ++j) {
      SparseAccumulator acc;
      for (const auto& [term, c] : outer.section(r, j)) regroup_apply(term, c, bc, m, ec, acc);
      cols[j] = acc.take();
    }
    out.components.push_back(Matrix::from_columns(ec.result().dim(r), std::move(cols)));
  }
  return out;
}

SymSeqMap apply_product(const Circle& ab, const TermProduct& m, const SymSeq& e) {
  SymSeqMap out;
  for (int r = 0; r <= ab.policy().max_arity; ++r) {
    const std::size_t n = ab.result().dim(r);
    std::vector<SparseVector> cols(n);
    for (std::size_t j = 0; j < n; ++j) {
      SparseAccumulator acc;
      for (const auto& [term, c] : ab.section(r, j)) acc.add_scaled(m(term), c);
      cols[j] = acc.take();
    }
    out.components.push_back(Matrix::from_columns(e.dim(r), std::move(cols)));
  }
  return out;
}

namespace {

// (A∘B)∘C term -> A∘(B∘C), accumulating into out.
void assoc_forward_term(const CircleTerm& term, const Rational& c, const Circle& ab, const Circle& bc, const Circle& a_bc,
                        SparseAccumulator& out) {
  const int U = term.t();
  const int r = term.arity();
  std::vector<int> csizes = block_sizes(term);
  for (const auto& [inner, ci] : ab.section(U, term.a)) {
    const int t = inner.t();
    // Slots of block i in increasing order and the rank of each slot.
    std::vector<std::vector<int>> slots(static_cast<std::size_t>(t));
    std::vector<int> slot_rank(static_cast<std::size_t>(U));
    for (int s = 0; s < U; ++s) {
      auto& v = slots[inner.blocks[static_cast<std::size_t>(s)]];
      slot_rank[static_cast<std::size_t>(s)] = static_cast<int>(v.size());
      v.push_back(s);
    }
    std::vector<std::uint8_t> pi(static_cast<std::size_t>(r));
    std::vector<std::vector<std::uint8_t>> sub_blocks(static_cast<std::size_t>(t));
    for (int x = 0; x < r; ++x) {
      const int slot = term.blocks[static_cast<std::size_t>(x)];
      const int i = inner.blocks[static_cast<std::size_t>(slot)];
      pi[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(i);
      sub_blocks[static_cast<std::size_t>(i)].push_back(static_cast<std::uint8_t>(slot_rank[static_cast<std::size_t>(slot)]));
    }
    // Koszul sign of b_1..b_t c_1..c_U -> b_1 c_{U_1} b_2 c_{U_2} ...
    std::vector<int> degrees;
    std::vector<int> target_pos(static_cast<std::size_t>(t + U));
    std::vector<int> isizes = block_sizes(inner);
    for (int i = 0; i < t; ++i) degrees.push_back(ab.right()[isizes[static_cast<std::size_t>(i)]].generator(inner.factors[static_cast<std::size_t>(i)]).degree);
    for (int s = 0; s < U; ++s) degrees.push_back(bc.right()[csizes[static_cast<std::size_t>(s)]].generator(term.factors[static_cast<std::size_t>(s)]).degree);
    int pos = 0;
    for (int i = 0; i < t; ++i) {
      target_pos[static_cast<std::size_t>(i)] = pos++;
      for (int s : slots[static_cast<std::size_t>(i)]) target_pos[static_cast<std::size_t>(t + s)] = pos++;
    }
    const int sign = koszul_sign(target_pos, degrees);
    std::vector<SparseVector> ys(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
      CircleTerm y;
      y.a = inner.factors[static_cast<std::size_t>(i)];
      y.blocks = sub_blocks[static_cast<std::size_t>(i)];
      for (int s : slots[static_cast<std::size_t>(i)]) y.factors.push_back(term.factors[static_cast<std::size_t>(s)]);
      ys[static_cast<std::size_t>(i)] = bc.retract(y);
    }
    a_bc.retract_product(SparseVector::unit(inner.a), pi, ys, sign > 0 ? c * ci : Rational(-c * ci), out);
  }
}

}  // namespace

Associator canonical_assoc(const Circle& ab, const Circle& ab_c, const Circle& bc, const Circle& a_bc) {
  Associator out;
  const int top = ab_c.policy().max_arity;
  for (int r = 0; r <= top; ++r) {
    const std::size_t n = ab_c.result().dim(r);
    std::vector<SparseVector> cols(n);
    for (std::size_t j = 0; j < n; ++j) {
      SparseAccumulator acc;
      for (const auto& [term, c] : ab_c.section(r, j)) assoc_forward_term(term, c, ab, bc, a_bc, acc);
      cols[j] = acc.take();
    }
    out.forward.components.push_back(Matrix::from_columns(a_bc.result().dim(r), std::move(cols)));
  }
  TermProduct into_ab = [&](const CircleTerm& inner) { return ab.retract(inner); };
  out.backward = compose_two_level(a_bc, bc, into_ab, ab_c);
  return out;
}

SymSeqMap left_unitor(const Circle& ib) {
  TermProduct m = [&](const CircleTerm& term) {
    if (term.t() != 1) return SparseVector();
    return SparseVector::unit(term.factors[0]);
  };
  return apply_product(ib, m, ib.right());
}

SymSeqMap right_unitor(const Circle& ai) {
  TermProduct m = [&](const CircleTerm& term) {
    const int t = term.t();
    Permutation sigma(static_cast<std::size_t>(t));
    for (std::size_t x = 0; x < term.blocks.size(); ++x) sigma[term.blocks[x]] = static_cast<int>(x);
    return ai.left().act(t, sigma, SparseVector::unit(term.a));
  };
  return apply_product(ai, m, ai.left());
}

SymSeqMap left_unit_insertion(const Circle& oz, const SparseVector& unit) {
  SymSeqMap out;
  const SymSeq& z = oz.right();
  for (int r = 0; r <= oz.policy().max_arity; ++r) {
    std::vector<SparseVector> cols(z.dim(r));
    std::vector<std::uint8_t> blocks(static_cast<std::size_t>(r), 0);
    for (std::size_t j = 0; j < z.dim(r); ++j) {
      SparseAccumulator acc;
      oz.retract_product(unit, blocks, {SparseVector::unit(j)}, 1, acc);
      cols[j] = acc.take();
    }
    out.components.push_back(Matrix::from_columns(oz.result().dim(r), std::move(cols)));
  }
  return out;
}

SymSeqMap right_unit_insertion(const Circle& ao, const SparseVector& unit) {
  SymSeqMap out;
  const SymSeq& a = ao.left();
  for (int r = 0; r <= ao.policy().max_arity; ++r) {
    std::vector<SparseVector> cols(a.dim(r));
    std::vector<std::uint8_t> blocks(static_cast<std::size_t>(r));
    std::iota(blocks.begin(), blocks.end(), 0);
    std::vector<SparseVector> units(static_cast<std::size_t>(r), unit);
    for (std::size_t j = 0; j < a.dim(r); ++j) {
      SparseAccumulator acc;
      ao.retract_product(SparseVector::unit(j), blocks, units, 1, acc);
      cols[j] = acc.take();
    }
    out.components.push_back(Matrix::from_columns(ao.result().dim(r), std::move(cols)));
  }
  return out;
}

ChainComplex apply_to_object(const SymSeq& o, const ChainComplex& z, int max_weight) {
  SymSeq zhat = hat(z.with_weight(1), o.max_arity(), o.non_sigma());
  Circle c(o, zhat, TruncationPolicy{o.max_arity(), max_weight});
  return c.result()[0];
}

}  // namespace opbar
