#include "opbar/tensor.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace opbar {

namespace {

std::u32string key_of(const CircleTerm& t) {
  std::u32string k;
  for (auto b : t.blocks) k.push_back(static_cast<char32_t>(b));
  k.push_back(0xFFFFu);
  for (auto f : t.factors) k.push_back(static_cast<char32_t>(f));
  return k;
}

int parity_sign(long d) { return d % 2 == 0 ? 1 : -1; }

}  // namespace

TensorProduct::TensorProduct(std::vector<SymSeqPtr> factors, int max_arity, bool non_sigma)
    : factors_(std::move(factors)), non_sigma_(non_sigma) {
  if (max_arity < 0) throw std::invalid_argument("max_arity must be non-negative");
  for (const auto& f : factors_)
    if (f->non_sigma() != non_sigma_) throw std::invalid_argument("tensor product of Σ and non-Σ sequences");
  const int t = this->t();
  terms_.resize(static_cast<std::size_t>(max_arity + 1));
  lookup_.resize(static_cast<std::size_t>(max_arity + 1));
  std::vector<ChainComplex> comps;
  std::vector<std::vector<Matrix>> trans(static_cast<std::size_t>(max_arity + 1));

  for (int r = 0; r <= max_arity; ++r) {
    auto& terms = terms_[static_cast<std::size_t>(r)];
    std::vector<Generator> basis;
    std::vector<std::uint8_t> blocks(static_cast<std::size_t>(r), 0);
    // All maps [r] -> [t] (order preserving in non-Σ mode).
    std::function<void(int)> maps = [&](int x) {
      if (x == r) {
        CircleTerm term;
        term.blocks = blocks;
        term.factors.assign(static_cast<std::size_t>(t), 0);
        std::vector<int> sizes = block_sizes(term);
        std::function<void(int)> pick = [&](int i) {
          if (i == t) {
            Generator g{"", 0, 0};
            g.name = "{";
            for (int y = 0; y < r; ++y) g.name += (y ? "," : "") + std::to_string(term.blocks[static_cast<std::size_t>(y)]);
            g.name += "}(";
            for (int j = 0; j < t; ++j) {
              const Generator& h = (*factors_[static_cast<std::size_t>(j)])[sizes[static_cast<std::size_t>(j)]].generator(term.factors[static_cast<std::size_t>(j)]);
              g.degree += h.degree;
              g.weight += h.weight;
              g.name += (j ? "," : "") + h.name;
            }
            g.name += ")";
            lookup_[static_cast<std::size_t>(r)].emplace(key_of(term), terms.size());
            terms.push_back(term);
            basis.push_back(std::move(g));
            return;
          }
          const std::size_t n = factors_[static_cast<std::size_t>(i)]->dim(sizes[static_cast<std::size_t>(i)]);
          for (std::size_t f = 0; f < n; ++f) {
            term.factors[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(f);
            pick(i + 1);
          }
        };
        pick(0);
        return;
      }
      const int from = (non_sigma_ && x > 0) ? blocks[static_cast<std::size_t>(x) - 1] : 0;
      for (int b = from; b < t; ++b) {
        blocks[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(b);
        maps(x + 1);
      }
    };
    maps(0);

    const std::size_t n = terms.size();
    std::vector<SparseVector> dcols(n);
    for (std::size_t j = 0; j < n; ++j) {
      const CircleTerm& term = terms[j];
      std::vector<int> sizes = block_sizes(term);
      SparseAccumulator acc;
      int before = 0;
      CircleTerm tmp = term;
      for (int i = 0; i < t; ++i) {
        const ChainComplex& c = (*factors_[static_cast<std::size_t>(i)])[sizes[static_cast<std::size_t>(i)]];
        for (const auto& [f2, x] : c.differential().column(term.factors[static_cast<std::size_t>(i)])) {
          tmp.factors[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(f2);
          acc.add(*index(tmp), x * parity_sign(before));
        }
        tmp.factors[static_cast<std::size_t>(i)] = term.factors[static_cast<std::size_t>(i)];
        before += c.generator(term.factors[static_cast<std::size_t>(i)]).degree;
      }
      dcols[j] = acc.take();
    }
    comps.emplace_back(std::move(basis), Matrix::from_columns(n, std::move(dcols)));

    if (non_sigma_ || r < 2) continue;
    for (int k = 0; k + 1 < r; ++k) {
      std::vector<SparseVector> cols(n);
      for (std::size_t j = 0; j < n; ++j) {
        const CircleTerm& term = terms[j];
        CircleTerm tmp = term;
        const auto bk = term.blocks[static_cast<std::size_t>(k)];
        const auto bk1 = term.blocks[static_cast<std::size_t>(k) + 1];
        if (bk != bk1) {
          std::swap(tmp.blocks[static_cast<std::size_t>(k)], tmp.blocks[static_cast<std::size_t>(k) + 1]);
          cols[j] = SparseVector::unit(*index(tmp));
          continue;
        }
        int p = 0;
        for (int x = 0; x < k; ++x) p += term.blocks[static_cast<std::size_t>(x)] == bk;
        const int s = block_sizes(term)[bk];
        const Matrix& sp = factors_[bk]->transpositions(s)[static_cast<std::size_t>(p)];
        SparseAccumulator acc;
        for (const auto& [f2, x] : sp.column(term.factors[bk])) {
          tmp.factors[bk] = static_cast<std::uint32_t>(f2);
          acc.add(*index(tmp), x);
        }
        cols[j] = acc.take();
      }
      trans[static_cast<std::size_t>(r)].push_back(Matrix::from_columns(n, std::move(cols)));
    }
  }
  result_ = std::make_shared<SymSeq>(std::move(comps), std::move(trans), non_sigma_);
}

std::optional<std::size_t> TensorProduct::index(const CircleTerm& term) const {
  const auto r = static_cast<std::size_t>(term.arity());
  if (r >= lookup_.size()) return std::nullopt;
  auto it = lookup_[r].find(key_of(term));
  if (it == lookup_[r].end()) return std::nullopt;
  return it->second;
}

Matrix TensorProduct::block_transposition(int r, int k) const {
  if (factors_[static_cast<std::size_t>(k)] != factors_[static_cast<std::size_t>(k) + 1])
    throw std::logic_error("block transposition between different factors");
  const auto& terms = this->terms(r);
  Matrix m(terms.size(), terms.size());
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const CircleTerm& term = terms[j];
    std::vector<int> sizes = block_sizes(term);
    CircleTerm tmp = term;
    for (auto& b : tmp.blocks)
      if (b == k)
        b = static_cast<std::uint8_t>(k + 1);
      else if (b == k + 1)
        b = static_cast<std::uint8_t>(k);
    std::swap(tmp.factors[static_cast<std::size_t>(k)], tmp.factors[static_cast<std::size_t>(k) + 1]);
    const SymSeq& f = *factors_[static_cast<std::size_t>(k)];
    const int dk = f[sizes[static_cast<std::size_t>(k)]].generator(term.factors[static_cast<std::size_t>(k)]).degree;
    const int dk1 = f[sizes[static_cast<std::size_t>(k) + 1]].generator(term.factors[static_cast<std::size_t>(k) + 1]).degree;
    m.set_column(j, SparseVector::unit(*index(tmp), parity_sign(static_cast<long>(dk) * dk1)));
  }
  return m;
}

TensorPower tensor_power(const SymSeqPtr& b, int t, int max_arity) {
  if (t < 0) throw std::invalid_argument("negative tensor power");
  TensorPower out;
  out.product = std::make_shared<TensorProduct>(std::vector<SymSeqPtr>(static_cast<std::size_t>(t), b), max_arity, b->non_sigma());
  out.block_actions.resize(static_cast<std::size_t>(max_arity + 1));
  if (!b->non_sigma())
    for (int r = 0; r <= max_arity; ++r)
      for (int k = 0; k + 1 < t; ++k) out.block_actions[static_cast<std::size_t>(r)].push_back(out.product->block_transposition(r, k));
  return out;
}

Coinvariants coinvariants(const ChainComplex& c, const std::vector<Matrix>& transpositions, int t, bool non_sigma) {
  const std::size_t n = c.dim();
  if (non_sigma || t <= 1) return {c, Matrix::identity(n), Matrix::identity(n)};
  Matrix avg(n, n);
  for (const auto& sigma : all_permutations(t)) {
    Matrix m = Matrix::identity(n);
    for (int k : transposition_word(sigma)) m = transpositions[static_cast<std::size_t>(k)] * m;
    avg = avg + m;
  }
  avg = avg.scaled(Rational(1, factorial(t)));
  ProjectorImage img = projector_image(avg);
  std::vector<Generator> basis;
  for (std::size_t j = 0; j < img.section.cols(); ++j) {
    Generator g = c.generator(img.section.column(j).front().first);
    g.name = "[" + g.name + "]";
    basis.push_back(std::move(g));
  }
  Matrix d = img.retraction * c.differential() * img.section;
  return {ChainComplex(std::move(basis), std::move(d)), std::move(img.section), std::move(img.retraction)};
}

namespace {

struct HomBlock {
  int degree = 0;
  int weight = 0;
  std::vector<std::pair<std::size_t, std::size_t>> entries;  // (i, j) unknowns
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> position;
  Subspace solutions;
  std::size_t offset = 0;
};

}  // namespace

HomComplex equivariant_hom(const ChainComplex& p, const std::vector<Matrix>& p_action, const ChainComplex& q,
                           const std::vector<Matrix>& q_action) {
  if (p_action.size() != q_action.size()) throw std::invalid_argument("actions of different groups");
  std::map<std::pair<int, int>, HomBlock> blocks;
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t j = 0; j < p.dim(); ++j) {
      const int d = q.generator(i).degree - p.generator(j).degree;
      const int w = q.generator(i).weight - p.generator(j).weight;
      HomBlock& b = blocks[{d, w}];
      b.degree = d;
      b.weight = w;
      b.position.emplace(std::make_pair(i, j), b.entries.size());
      b.entries.emplace_back(i, j);
    }
  // Equivariance: f ρ_P(s) - ρ_Q(s) f = 0, one row per (s, i, j').
  std::vector<Generator> basis;
  std::size_t total = 0;
  for (auto& [key, b] : blocks) {
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<SparseVector::Entry>> rows;
    for (std::size_t s = 0; s < p_action.size(); ++s) {
      const Matrix pt = p_action[s].transpose();
      for (std::size_t u = 0; u < b.entries.size(); ++u) {
        const auto [i, j] = b.entries[u];
        // (f ρ_P)(i, j') gets f(i, j) ρ_P(j, j').
        for (const auto& [jp, x] : pt.column(j)) rows[{s, i, jp}].emplace_back(u, x);
        // (ρ_Q f)(i', j) gets ρ_Q(i', i) f(i, j).
        for (const auto& [ip, x] : q_action[s].column(i)) rows[{s, ip, j}].emplace_back(u, -x);
      }
    }
    std::vector<SparseVector> constraint_rows;
    for (auto& [k, r] : rows) {
      SparseVector v = SparseVector::from_unsorted(std::move(r));
      if (!v.empty()) constraint_rows.push_back(std::move(v));
    }
    Matrix constraints = Matrix::from_columns(b.entries.size(), std::move(constraint_rows)).transpose();
    if (constraints.rows() == 0) constraints = Matrix(0, b.entries.size());
    b.solutions = kernel_basis(constraints);
    b.offset = total;
    total += b.solutions.dim();
    for (std::size_t k = 0; k < b.solutions.dim(); ++k)
      basis.push_back({"f" + std::to_string(basis.size()), b.degree, b.weight});
  }
  // Differential and the flattened maps.
  std::vector<SparseVector> dcols(total);
  std::vector<SparseVector> maps(total);
  for (auto& [key, b] : blocks) {
    auto target = blocks.find({b.degree - 1, b.weight});
    for (std::size_t k = 0; k < b.solutions.dim(); ++k) {
      const SparseVector& sol = b.solutions.basis().column(k);
      std::vector<SparseVector::Entry> flat;
      // Build f as a matrix column by column.
      std::vector<std::vector<SparseVector::Entry>> fcols(p.dim());
      for (const auto& [u, x] : sol) {
        const auto [i, j] = b.entries[u];
        flat.emplace_back(i * p.dim() + j, x);
        fcols[j].emplace_back(i, x);
      }
      maps[b.offset + k] = SparseVector::from_unsorted(std::move(flat));
      if (target == blocks.end()) continue;
      std::vector<SparseVector> cols;
      for (auto& c : fcols) cols.push_back(SparseVector::from_unsorted(std::move(c)));
      Matrix f = Matrix::from_columns(q.dim(), std::move(cols));
      Matrix df = q.differential() * f - (f * p.differential()).scaled(parity_sign(b.degree));
      std::vector<SparseVector::Entry> coords;
      for (std::size_t j = 0; j < df.cols(); ++j)
        for (const auto& [i, x] : df.column(j)) coords.emplace_back(target->second.position.at({i, j}), x);
      SparseVector local = target->second.solutions.coordinates(SparseVector::from_unsorted(std::move(coords)));
      std::vector<SparseVector::Entry> shifted;
      for (const auto& [u, x] : local) shifted.emplace_back(target->second.offset + u, x);
      dcols[b.offset + k] = SparseVector::from_unsorted(std::move(shifted));
    }
  }
  HomComplex out;
  out.complex = ChainComplex(std::move(basis), Matrix::from_columns(total, std::move(dcols)));
  out.maps = Matrix::from_columns(p.dim() * q.dim(), std::move(maps));
  out.source_dim = p.dim();
  out.target_dim = q.dim();
  return out;
}

MappingData mapping_data(const SymSeqPtr& b, const SymSeq& c, int t_max) {
  const int n_ar = c.max_arity();
  MappingData out;
  std::vector<ChainComplex> comps;
  std::vector<std::vector<Matrix>> trans(static_cast<std::size_t>(t_max + 1));
  for (int t = 0; t <= t_max; ++t) {
    out.powers.push_back(tensor_power(b, t, n_ar));
    const TensorPower& tp = out.powers.back();
    const SymSeq& bt = tp.product->result();
    auto& pieces = out.pieces.emplace_back();
    std::size_t offset = 0;
    for (int r = 0; r <= n_ar; ++r) {
      MappingData::Piece p;
      p.hom = equivariant_hom(bt[r], b->non_sigma() ? std::vector<Matrix>{} : bt.transpositions(r), c[r],
                              c.non_sigma() ? std::vector<Matrix>{} : c.transpositions(r));
      p.offset = offset;
      offset += p.hom.complex.dim();
      p.span = span_of(p.hom.maps.rows(), p.hom.maps.columns());
      p.from_span = inverse(p.span.coordinates(p.hom.maps));
      pieces.push_back(std::move(p));
    }
    std::vector<Generator> basis;
    std::vector<Matrix> diffs;
    for (int r = 0; r <= n_ar; ++r) {
      for (auto g : pieces[static_cast<std::size_t>(r)].hom.complex.basis()) {
        g.name = "r" + std::to_string(r) + ":" + g.name;
        basis.push_back(std::move(g));
      }
      diffs.push_back(pieces[static_cast<std::size_t>(r)].hom.complex.differential());
    }
    comps.emplace_back(std::move(basis), Matrix::block_diagonal(diffs));
    if (b->non_sigma() || t < 2) continue;
    // (s_k·f) = f ∘ s_k on each arity summand.
    for (int k = 0; k + 1 < t; ++k) {
      std::vector<Matrix> blocks;
      for (int r = 0; r <= n_ar; ++r) {
        const MappingData::Piece& p = pieces[static_cast<std::size_t>(r)];
        const HomComplex& h = p.hom;
        const Matrix st = tp.block_actions[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)].transpose();
        std::vector<SparseVector> cols;
        for (std::size_t m = 0; m < h.maps.cols(); ++m) {
          std::vector<SparseVector::Entry> flat;
          for (const auto& [idx, x] : h.maps.column(m)) {
            const std::size_t i = idx / h.source_dim, j = idx % h.source_dim;
            // (f∘s)(i, j') = Σ_j f(i, j) s(j, j')
            for (const auto& [jp, sv] : st.column(j)) flat.emplace_back(i * h.source_dim + jp, x * sv);
          }
          cols.push_back(p.coordinates(SparseVector::from_unsorted(std::move(flat))));
        }
        blocks.push_back(Matrix::from_columns(h.maps.cols(), std::move(cols)));
      }
      trans[static_cast<std::size_t>(t)].push_back(Matrix::block_diagonal(blocks));
    }
  }
  out.seq = SymSeq(std::move(comps), std::move(trans), b->non_sigma());
  return out;
}

SymSeq mapping_sequence(const SymSeqPtr& b, const SymSeq& c, int t_max) { return mapping_data(b, c, t_max).seq; }

std::size_t hom_dim(const SymSeq& a, const SymSeq& b) {
  std::size_t total = 0;
  const int top = std::max(a.max_arity(), b.max_arity());
  for (int n = 0; n <= top; ++n) {
    const ChainComplex& p = a[n];
    const ChainComplex& q = b[n];
    if (p.dim() == 0 || q.dim() == 0) continue;
    std::vector<std::pair<std::size_t, std::size_t>> entries;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pos;
    for (std::size_t i = 0; i < q.dim(); ++i)
      for (std::size_t j = 0; j < p.dim(); ++j)
        if (q.generator(i).degree == p.generator(j).degree && q.generator(i).weight == p.generator(j).weight) {
          pos.emplace(std::make_pair(i, j), entries.size());
          entries.emplace_back(i, j);
        }
    if (entries.empty()) continue;
    // Constraint rows for f A - B f = 0 where (A, B) runs over the
    // differentials and the transposition matrices.
    std::vector<std::pair<const Matrix*, const Matrix*>> pairs{{&p.differential(), &q.differential()}};
    const bool equivariant = !a.non_sigma() && !b.non_sigma();
    if (equivariant)
      for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(n); ++k)
        pairs.emplace_back(&a.transpositions(n)[k], &b.transpositions(n)[k]);
    std::vector<SparseVector> rows;
    for (const auto& [pa, qa] : pairs) {
      std::map<std::pair<std::size_t, std::size_t>, std::vector<SparseVector::Entry>> acc;
      const Matrix pt = pa->transpose();
      for (std::size_t u = 0; u < entries.size(); ++u) {
        const auto [i, j] = entries[u];
        for (const auto& [jp, x] : pt.column(j)) acc[{i, jp}].emplace_back(u, x);
        for (const auto& [ip, x] : qa->column(i)) acc[{ip, j}].emplace_back(u, -x);
      }
      for (auto& [k, r] : acc) {
        SparseVector v = SparseVector::from_unsorted(std::move(r));
        if (!v.empty()) rows.push_back(std::move(v));
      }
    }
    const std::size_t rk = rows.empty() ? 0 : rank(Matrix::from_columns(entries.size(), std::move(rows)));
    total += entries.size() - rk;
  }
  return total;
}

}  // namespace opbar
