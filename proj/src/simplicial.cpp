#include "opbar/simplicial.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "opbar/parallel.hpp"
#include "opbar/permutation.hpp"

namespace opbar {

namespace {

int parity_sign(long d) { return d % 2 == 0 ? 1 : -1; }

std::string at(const char* what, int n, std::initializer_list<int> idx) {
  std::ostringstream s;
  s << what << " at level " << n;
  if (idx.size() > 0) {
    s << " (";
    bool first = true;
    for (int i : idx) s << (first ? "" : ", ") << i, first = false;
    s << ")";
  }
  return s.str();
}

bool shape(const Matrix& m, std::size_t rows, std::size_t cols) { return m.rows() == rows && m.cols() == cols; }

// (weight, degree) blocks of a complex, sorted.
std::vector<std::pair<int, int>> blocks_of(const ChainComplex& c) {
  std::set<std::pair<int, int>> s;
  for (const Generator& g : c.basis()) s.emplace(g.weight, g.degree);
  return {s.begin(), s.end()};
}

}  // namespace

int SimplicialChainComplex::min_internal_degree() const {
  bool any = false;
  int lo = 0;
  for (const ChainComplex& c : levels)
    if (!c.is_zero()) {
      lo = any ? std::min(lo, c.min_degree()) : c.min_degree();
      any = true;
    }
  return lo;
}

SimplicialChainComplex SimplicialChainComplex::truncated(int s) const {
  if (s < 0 || s > top()) throw std::invalid_argument("truncation level out of range");
  SimplicialChainComplex out;
  out.levels.assign(levels.begin(), levels.begin() + s + 1);
  out.faces.assign(faces.begin(), faces.begin() + s + 1);
  out.degeneracies.assign(degeneracies.begin(), degeneracies.begin() + s);
  out.infinite = infinite || s < top();
  return out;
}

Report check_simplicial_identities(const SimplicialChainComplex& x) {
  const int s = x.top();
  if (s < 0) return Report::failure("no levels");
  if (static_cast<int>(x.faces.size()) != s + 1 || static_cast<int>(x.degeneracies.size()) != s)
    return Report::failure("face or degeneracy table has the wrong number of levels");
  auto dim = [&](int n) { return x.levels[static_cast<std::size_t>(n)].dim(); };
  for (int n = 1; n <= s; ++n) {
    if (static_cast<int>(x.faces[static_cast<std::size_t>(n)].size()) != n + 1) return Report::failure(at("face count", n, {}));
    for (int i = 0; i <= n; ++i) {
      if (!shape(x.face(n, i), dim(n - 1), dim(n))) return Report::failure(at("shape of d", n, {i}));
      if (!is_chain_map(x.levels[static_cast<std::size_t>(n)], x.levels[static_cast<std::size_t>(n - 1)], x.face(n, i)))
        return Report::failure(at("d is not a chain map", n, {i}));
    }
  }
  for (int n = 0; n < s; ++n) {
    if (static_cast<int>(x.degeneracies[static_cast<std::size_t>(n)].size()) != n + 1)
      return Report::failure(at("degeneracy count", n, {}));
    for (int j = 0; j <= n; ++j) {
      if (!shape(x.degeneracy(n, j), dim(n + 1), dim(n))) return Report::failure(at("shape of s", n, {j}));
      if (!is_chain_map(x.levels[static_cast<std::size_t>(n)], x.levels[static_cast<std::size_t>(n + 1)], x.degeneracy(n, j)))
        return Report::failure(at("s is not a chain map", n, {j}));
    }
  }
  // d_i d_j = d_{j-1} d_i for i < j, on X_n.
  for (int n = 2; n <= s; ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        if (!(x.face(n - 1, i) * x.face(n, j) == x.face(n - 1, j - 1) * x.face(n, i)))
          return Report::failure(at("d_i d_j = d_{j-1} d_i", n, {i, j}));
  // s_i s_j = s_{j+1} s_i for i ≤ j, on X_n.
  for (int n = 0; n + 2 <= s; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        if (!(x.degeneracy(n + 1, i) * x.degeneracy(n, j) == x.degeneracy(n + 1, j + 1) * x.degeneracy(n, i)))
          return Report::failure(at("s_i s_j = s_{j+1} s_i", n, {i, j}));
  // d_i s_j on X_n.
  for (int n = 0; n + 1 <= s; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        const Matrix lhs = x.face(n + 1, i) * x.degeneracy(n, j);
        Matrix rhs;
        if (i < j) rhs = x.degeneracy(n - 1, j - 1) * x.face(n, i);
        else if (i == j || i == j + 1) rhs = Matrix::identity(dim(n));
        else rhs = x.degeneracy(n - 1, j) * x.face(n, i - 1);
        if (!(lhs == rhs)) return Report::failure(at("d_i s_j", n, {i, j}));
      }
  return {};
}

SimplicialChainComplex constant(const ChainComplex& z, int s) {
  SimplicialChainComplex x;
  x.levels.assign(static_cast<std::size_t>(s + 1), z);
  x.faces.resize(static_cast<std::size_t>(s + 1));
  x.degeneracies.resize(static_cast<std::size_t>(s));
  for (int n = 1; n <= s; ++n) x.faces[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n + 1), Matrix::identity(z.dim()));
  for (int n = 0; n < s; ++n)
    x.degeneracies[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n + 1), Matrix::identity(z.dim()));
  return x;
}

Bicomplex normalize(const SimplicialChainComplex& x) {
  const int s = x.top();
  Bicomplex b;
  b.normal.resize(static_cast<std::size_t>(s + 1));
  for (int p = 0; p <= s; ++p) {
    const ChainComplex& lp = x.levels[static_cast<std::size_t>(p)];
    if (p == 0) {
      b.normal[0] = Subspace::full(lp.dim());
      continue;
    }
    const ChainComplex& lq = x.levels[static_cast<std::size_t>(p - 1)];
    const auto blocks = blocks_of(lp);
    std::vector<std::vector<SparseVector>> vecs(blocks.size());
    std::vector<std::vector<std::size_t>> pivs(blocks.size());
    parallel_for(blocks.size(), [&](std::size_t k) {
      const auto [w, q] = blocks[k];
      const std::vector<std::size_t> cols = lp.indices(q, w);
      const std::vector<std::size_t> rows = lq.indices(q, w);
      std::vector<Matrix> stack;
      for (int i = 0; i < p; ++i) stack.push_back(x.face(p, i).submatrix(rows, cols));
      const Subspace ker = kernel_basis(Matrix::vstack(stack));
      for (std::size_t c = 0; c < ker.dim(); ++c) {
        std::vector<SparseVector::Entry> e;
        for (const auto& [i, v] : ker.basis().column(c)) e.emplace_back(cols[i], v);
        vecs[k].push_back(SparseVector::from_unsorted(std::move(e)));
        pivs[k].push_back(cols[ker.pivots()[c]]);
      }
    });
    std::vector<SparseVector> all;
    std::vector<std::size_t> pivots;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      for (auto& v : vecs[k]) all.push_back(std::move(v));
      pivots.insert(pivots.end(), pivs[k].begin(), pivs[k].end());
    }
    b.normal[static_cast<std::size_t>(p)] = Subspace(lp.dim(), Matrix::from_columns(lp.dim(), std::move(all)), std::move(pivots));
  }
  b.columns.resize(static_cast<std::size_t>(s + 1));
  b.horizontal.resize(static_cast<std::size_t>(s + 1));
  parallel_for(static_cast<std::size_t>(s + 1), [&](std::size_t pu) {
    const int p = static_cast<int>(pu);
    const ChainComplex& lp = x.levels[pu];
    const Subspace& np = b.normal[pu];
    std::vector<Generator> gens;
    std::vector<SparseVector> dcols;
    for (std::size_t k = 0; k < np.dim(); ++k) {
      gens.push_back(lp.generator(np.pivots()[k]));
      dcols.push_back(np.coordinates(lp.differential().apply(np.basis().column(k))));
    }
    b.columns[pu] = ChainComplex(std::move(gens), Matrix::from_columns(np.dim(), std::move(dcols)));
    if (p == 0) return;
    std::vector<SparseVector> hcols;
    const Subspace& nq = b.normal[pu - 1];
    for (std::size_t k = 0; k < np.dim(); ++k) {
      SparseVector v = nq.coordinates(x.face(p, p).apply(np.basis().column(k)));
      v.scale(parity_sign(p));
      hcols.push_back(std::move(v));
    }
    b.horizontal[pu] = Matrix::from_columns(nq.dim(), std::move(hcols));
  });
  return b;
}

void check_bicomplex(const Bicomplex& b) {
  for (std::size_t p = 1; p < b.columns.size(); ++p) {
    if (!(b.columns[p - 1].differential() * b.horizontal[p] == b.horizontal[p] * b.columns[p].differential()))
      throw std::logic_error("horizontal and vertical differentials do not commute at column " + std::to_string(p));
    if (p >= 2 && !(b.horizontal[p - 1] * b.horizontal[p]).is_zero())
      throw std::logic_error("horizontal differential does not square to zero at column " + std::to_string(p));
  }
}

ChainComplex total_complex(const Bicomplex& b, int max_p) {
  max_p = std::min(max_p, static_cast<int>(b.columns.size()) - 1);
  std::vector<std::size_t> offset(static_cast<std::size_t>(max_p + 2), 0);
  for (int p = 0; p <= max_p; ++p) offset[static_cast<std::size_t>(p + 1)] = offset[static_cast<std::size_t>(p)] + b.columns[static_cast<std::size_t>(p)].dim();
  const std::size_t total = offset.back();
  std::vector<Generator> gens;
  std::vector<SparseVector> cols;
  for (int p = 0; p <= max_p; ++p) {
    const ChainComplex& c = b.columns[static_cast<std::size_t>(p)];
    for (std::size_t k = 0; k < c.dim(); ++k) {
      Generator g = c.generator(k);
      g.name = std::to_string(p) + ":" + g.name;
      g.degree += p;
      gens.push_back(std::move(g));
      std::vector<SparseVector::Entry> e;
      const int sign = parity_sign(p);
      for (const auto& [i, x] : c.differential().column(k)) e.emplace_back(offset[static_cast<std::size_t>(p)] + i, x * sign);
      if (p >= 1)
        for (const auto& [i, x] : b.horizontal[static_cast<std::size_t>(p)].column(k))
          e.emplace_back(offset[static_cast<std::size_t>(p - 1)] + i, x);
      cols.push_back(SparseVector::from_unsorted(std::move(e)));
    }
  }
  return ChainComplex(std::move(gens), Matrix::from_columns(total, std::move(cols)));
}

Subspace degenerate_subobject(const SimplicialChainComplex& x, int n) {
  if (n < 1 || n > x.top()) throw std::invalid_argument("degenerate subobject needs 1 ≤ n ≤ S");
  std::vector<SparseVector> vecs;
  for (int j = 0; j < n; ++j)
    for (const auto& c : x.degeneracy(n - 1, j).columns()) vecs.push_back(c);
  return span_of(x.levels[static_cast<std::size_t>(n)].dim(), vecs);
}

DoldKanReport dold_kan_check(const SimplicialChainComplex& x, const Bicomplex& nb) {
  DoldKanReport rep;
  const int s = x.top();
  for (int n = 0; n <= s; ++n) {
    auto& counts = rep.counts.emplace_back();
    const ChainComplex& ln = x.levels[static_cast<std::size_t>(n)];
    // Columns of Ψ_n grouped by (weight, degree) block.
    std::map<std::pair<int, int>, std::vector<SparseVector>> cols;
    for (int k = 0; k <= n; ++k) {
      long count = 0;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != n - k) continue;
        ++count;
        const Subspace& nk = nb.normal[static_cast<std::size_t>(k)];
        for (std::size_t c = 0; c < nk.dim(); ++c) {
          SparseVector v = nk.basis().column(c);
          int level = k;
          for (int j = 0; j < n; ++j)
            if (mask & (1u << j)) v = x.degeneracy(level++, j).apply(v);
          const Generator& g = x.levels[static_cast<std::size_t>(k)].generator(nk.pivots()[c]);
          cols[{g.weight, g.degree}].push_back(std::move(v));
        }
      }
      counts.push_back(count);
    }
    std::size_t ncols = 0;
    for (const auto& [key, v] : cols) ncols += v.size();
    if (ncols != ln.dim() && rep.ok) {
      rep.ok = false;
      rep.message = "level " + std::to_string(n) + ": Ψ has " + std::to_string(ncols) + " columns, dim X_n = " + std::to_string(ln.dim());
    }
    std::vector<std::pair<std::pair<int, int>, std::vector<SparseVector>>> work(cols.begin(), cols.end());
    std::vector<long> defect(work.size(), 0);
    parallel_for(work.size(), [&](std::size_t k) {
      const auto [w, q] = work[k].first;
      const std::vector<std::size_t> rows = ln.indices(q, w);
      const Matrix m = Matrix::from_columns(ln.dim(), work[k].second).select_rows(rows);
      defect[k] = static_cast<long>(rows.size()) - static_cast<long>(rank(m));
      if (work[k].second.size() != rows.size()) defect[k] = std::max<long>(defect[k], 1);
    });
    for (std::size_t k = 0; k < work.size(); ++k)
      if (defect[k] != 0 && rep.ok) {
        rep.ok = false;
        rep.message = "level " + std::to_string(n) + ", weight " + std::to_string(work[k].first.first) + ", degree " +
                      std::to_string(work[k].first.second) + ": Ψ not an isomorphism, defect " + std::to_string(defect[k]);
      }
  }
  return rep;
}

DoldKanReport dold_kan_check(const SimplicialChainComplex& x) { return dold_kan_check(x, normalize(x)); }

QuotientComplex quotient(const ChainComplex& c, const std::vector<SparseVector>& sub) {
  const Subspace span = span_of(c.dim(), sub);
  std::vector<std::ptrdiff_t> row(c.dim(), -1);
  for (std::size_t r = 0; r < span.dim(); ++r) row[span.pivots()[r]] = static_cast<std::ptrdiff_t>(r);
  std::vector<std::size_t> keep;
  std::vector<std::ptrdiff_t> pos(c.dim(), -1);
  for (std::size_t j = 0; j < c.dim(); ++j)
    if (row[j] < 0) {
      pos[j] = static_cast<std::ptrdiff_t>(keep.size());
      keep.push_back(j);
    }
  auto project = [&](const SparseVector& v) {
    SparseAccumulator acc;
    for (const auto& [j, x] : v) {
      if (row[j] < 0) {
        acc.add(static_cast<std::size_t>(pos[j]), x);
        continue;
      }
      // e_j ≡ e_j - basis_r, which lives on the kept coordinates.
      for (const auto& [i, y] : span.basis().column(static_cast<std::size_t>(row[j])))
        if (i != j) acc.add(static_cast<std::size_t>(pos[i]), -x * y);
    }
    return acc.take();
  };
  std::vector<SparseVector> pcols;
  for (std::size_t j = 0; j < c.dim(); ++j) pcols.push_back(project(SparseVector::unit(j)));
  std::vector<Generator> gens;
  std::vector<SparseVector> dcols;
  for (std::size_t j : keep) {
    gens.push_back(c.generator(j));
    dcols.push_back(project(c.differential().column(j)));
  }
  return {ChainComplex(std::move(gens), Matrix::from_columns(keep.size(), std::move(dcols))),
          Matrix::from_columns(keep.size(), std::move(pcols))};
}

QuotientComplex pi0(const SimplicialChainComplex& x) {
  if (x.top() < 1) throw std::invalid_argument("π0 needs level 1");
  return quotient(x.levels[0], (x.face(1, 0) - x.face(1, 1)).columns());
}

namespace {

FiniteSimplicialSet monotone_maps(int z, int max_level, bool proper) {
  FiniteSimplicialSet k;
  std::vector<std::map<std::vector<int>, std::size_t>> index;
  for (int n = 0; n <= max_level; ++n) {
    auto& level = k.simplices.emplace_back();
    auto& idx = index.emplace_back();
    std::vector<int> cur(static_cast<std::size_t>(n + 1), 0);
    while (true) {
      const bool surjective = cur.front() == 0 && cur.back() == z &&
                              std::adjacent_find(cur.begin(), cur.end(), [](int a, int b) { return b > a + 1; }) == cur.end();
      if (!proper || !surjective) {
        idx.emplace(cur, level.size());
        level.push_back(cur);
      }
      // next non-decreasing sequence
      int i = n;
      while (i >= 0 && cur[static_cast<std::size_t>(i)] == z) --i;
      if (i < 0) break;
      const int v = cur[static_cast<std::size_t>(i)] + 1;
      for (int j = i; j <= n; ++j) cur[static_cast<std::size_t>(j)] = v;
    }
  }
  k.faces.resize(static_cast<std::size_t>(max_level + 1));
  k.degeneracies.resize(static_cast<std::size_t>(max_level));
  for (int n = 1; n <= max_level; ++n)
    for (int i = 0; i <= n; ++i) {
      auto& f = k.faces[static_cast<std::size_t>(n)].emplace_back();
      for (const auto& s : k.simplices[static_cast<std::size_t>(n)]) {
        std::vector<int> t = s;
        t.erase(t.begin() + i);
        f.push_back(index[static_cast<std::size_t>(n - 1)].at(t));
      }
    }
  for (int n = 0; n < max_level; ++n)
    for (int j = 0; j <= n; ++j) {
      auto& d = k.degeneracies[static_cast<std::size_t>(n)].emplace_back();
      for (const auto& s : k.simplices[static_cast<std::size_t>(n)]) {
        std::vector<int> t = s;
        t.insert(t.begin() + j, t[static_cast<std::size_t>(j)]);
        d.push_back(index[static_cast<std::size_t>(n + 1)].at(t));
      }
    }
  return k;
}

}  // namespace

FiniteSimplicialSet standard_simplex(int z, int max_level) { return monotone_maps(z, max_level, false); }
FiniteSimplicialSet boundary_simplex(int z, int max_level) { return monotone_maps(z, max_level, true); }

Report check_simplicial_set(const FiniteSimplicialSet& k) {
  auto face = [&](int n, int i, std::size_t s) { return k.faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)][s]; };
  auto deg = [&](int n, int j, std::size_t s) { return k.degeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)][s]; };
  const int top = k.top();
  for (int n = 2; n <= top; ++n)
    for (std::size_t s = 0; s < k.size(n); ++s)
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (face(n - 1, i, face(n, j, s)) != face(n - 1, j - 1, face(n, i, s))) return Report::failure(at("d_i d_j", n, {i, j}));
  for (int n = 0; n + 1 <= top; ++n)
    for (std::size_t s = 0; s < k.size(n); ++s)
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n + 1; ++i) {
          const std::size_t lhs = face(n + 1, i, deg(n, j, s));
          std::size_t rhs;
          if (i < j) rhs = deg(n - 1, j - 1, face(n, i, s));
          else if (i == j || i == j + 1) rhs = s;
          else rhs = deg(n - 1, j, face(n, i - 1, s));
          if (lhs != rhs) return Report::failure(at("d_i s_j", n, {i, j}));
        }
  return {};
}

namespace {

// Matrix sending summand k of ⊕ z to summand table[k].
Matrix summand_map(const std::vector<std::size_t>& table, std::size_t target_count, std::size_t dz) {
  std::vector<std::size_t> images;
  for (std::size_t k = 0; k < table.size(); ++k)
    for (std::size_t b = 0; b < dz; ++b) images.push_back(table[k] * dz + b);
  return Matrix::selection(target_count * dz, images);
}

ChainComplex copies(const ChainComplex& z, const std::vector<std::vector<int>>& simplices) {
  std::vector<Generator> gens;
  std::vector<Matrix> diffs;
  for (const auto& s : simplices) {
    std::string tag = "[";
    for (int v : s) tag += std::to_string(v);
    tag += "]";
    for (Generator g : z.basis()) {
      g.name = tag + g.name;
      gens.push_back(std::move(g));
    }
    diffs.push_back(z.differential());
  }
  return ChainComplex(std::move(gens), Matrix::block_diagonal(diffs));
}

}  // namespace

SimplicialChainComplex copower(const ChainComplex& z, const FiniteSimplicialSet& k) {
  const int s = k.top();
  const std::size_t dz = z.dim();
  SimplicialChainComplex x;
  for (int n = 0; n <= s; ++n) x.levels.push_back(copies(z, k.simplices[static_cast<std::size_t>(n)]));
  x.faces.resize(static_cast<std::size_t>(s + 1));
  x.degeneracies.resize(static_cast<std::size_t>(s));
  for (int n = 1; n <= s; ++n)
    for (int i = 0; i <= n; ++i)
      x.faces[static_cast<std::size_t>(n)].push_back(
          summand_map(k.faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)], k.size(n - 1), dz));
  for (int n = 0; n < s; ++n)
    for (int j = 0; j <= n; ++j)
      x.degeneracies[static_cast<std::size_t>(n)].push_back(
          summand_map(k.degeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)], k.size(n + 1), dz));
  return x;
}

Report check_simplicial_map(const SimplicialChainComplex& x, const SimplicialChainComplex& y, const SimplicialMap& f) {
  if (x.top() != y.top() || static_cast<int>(f.levels.size()) != x.top() + 1) return Report::failure("level count mismatch");
  for (int n = 0; n <= x.top(); ++n) {
    const Matrix& fn = f.levels[static_cast<std::size_t>(n)];
    if (!shape(fn, y.levels[static_cast<std::size_t>(n)].dim(), x.levels[static_cast<std::size_t>(n)].dim()))
      return Report::failure(at("shape of f", n, {}));
    if (!is_chain_map(x.levels[static_cast<std::size_t>(n)], y.levels[static_cast<std::size_t>(n)], fn))
      return Report::failure(at("f is not a chain map", n, {}));
    for (int i = 0; n >= 1 && i <= n; ++i)
      if (!(y.face(n, i) * fn == f.levels[static_cast<std::size_t>(n - 1)] * x.face(n, i)))
        return Report::failure(at("d_i f = f d_i", n, {i}));
    for (int j = 0; n < x.top() && j <= n; ++j)
      if (!(y.degeneracy(n, j) * fn == f.levels[static_cast<std::size_t>(n + 1)] * x.degeneracy(n, j)))
        return Report::failure(at("s_j f = f s_j", n, {j}));
  }
  return {};
}

SimplicialMap identity_map(const SimplicialChainComplex& x) {
  SimplicialMap f;
  for (const auto& l : x.levels) f.levels.push_back(Matrix::identity(l.dim()));
  return f;
}

bool verify_simplicial_homotopy(const SimplicialChainComplex& x, const SimplicialChainComplex& y,
                                const SimplicialHomotopy& h, const SimplicialMap& f, const SimplicialMap& g) {
  const int s = x.top();
  if (y.top() != s || static_cast<int>(h.components.size()) != s + 1 || static_cast<int>(f.levels.size()) != s + 1 ||
      static_cast<int>(g.levels.size()) != s + 1)
    throw std::invalid_argument("homotopy: level count mismatch");
  auto hc = [&](int n, int c) -> const Matrix& { return h.components[static_cast<std::size_t>(n)][static_cast<std::size_t>(c)]; };
  for (int n = 0; n <= s; ++n) {
    if (static_cast<int>(h.components[static_cast<std::size_t>(n)].size()) != n + 2)
      throw std::invalid_argument("homotopy: level " + std::to_string(n) + " needs n+2 components");
    for (int c = 0; c <= n + 1; ++c)
      if (!shape(hc(n, c), y.levels[static_cast<std::size_t>(n)].dim(), x.levels[static_cast<std::size_t>(n)].dim()))
        throw std::invalid_argument("homotopy: component shape at level " + std::to_string(n));
  }
  for (int n = 0; n <= s; ++n) {
    if (!(hc(n, n + 1) == f.levels[static_cast<std::size_t>(n)]) || !(hc(n, 0) == g.levels[static_cast<std::size_t>(n)])) return false;
    for (int c = 0; c <= n + 1; ++c) {
      if (!is_chain_map(x.levels[static_cast<std::size_t>(n)], y.levels[static_cast<std::size_t>(n)], hc(n, c))) return false;
      for (int i = 0; n >= 1 && i <= n; ++i)
        if (!(y.face(n, i) * hc(n, c) == hc(n - 1, c - (i < c ? 1 : 0)) * x.face(n, i))) return false;
      for (int j = 0; n < s && j <= n; ++j)
        if (!(y.degeneracy(n, j) * hc(n, c) == hc(n + 1, c + (j < c ? 1 : 0)) * x.degeneracy(n, j))) return false;
    }
  }
  return true;
}

std::optional<int> trustworthy_top(const SimplicialChainComplex& x) {
  if (!x.infinite) return std::nullopt;
  return x.top() - 1 + x.min_internal_degree();
}

Realization realization(const SimplicialChainComplex& x) {
  Realization r;
  r.bicomplex = normalize(x);
  check_bicomplex(r.bicomplex);
  r.complex = total_complex(r.bicomplex, x.top());
  r.trustworthy_top = trustworthy_top(x);
  return r;
}

Matrix realize_map(const SimplicialChainComplex& x, const Bicomplex& nx, const Bicomplex& ny, const SimplicialMap& f) {
  (void)x;
  std::size_t rows = 0, off = 0;
  for (const auto& c : ny.columns) rows += c.dim();
  std::vector<std::size_t> yoff;
  for (const auto& c : ny.columns) yoff.push_back(off), off += c.dim();
  std::vector<SparseVector> cols;
  for (std::size_t p = 0; p < nx.columns.size(); ++p)
    for (std::size_t k = 0; k < nx.normal[p].dim(); ++k) {
      const SparseVector v = ny.normal[p].coordinates(f.levels[p].apply(nx.normal[p].basis().column(k)));
      std::vector<SparseVector::Entry> e;
      for (const auto& [i, c] : v) e.emplace_back(yoff[p] + i, c);
      cols.push_back(SparseVector::from_unsorted(std::move(e)));
    }
  return Matrix::from_columns(rows, std::move(cols));
}

ChainComplex skeletal_truncation(const SimplicialChainComplex& x, int n) {
  if (n < 0 || n > x.top()) throw std::invalid_argument("skeleton index out of range");
  return total_complex(normalize(x), n);
}

ChainComplex unnormalized_total(const SimplicialChainComplex& x) {
  Bicomplex b;
  b.columns = x.levels;
  b.horizontal.resize(x.levels.size());
  for (int p = 1; p <= x.top(); ++p) {
    Matrix sum(x.levels[static_cast<std::size_t>(p - 1)].dim(), x.levels[static_cast<std::size_t>(p)].dim());
    for (int i = 0; i <= p; ++i) sum = sum + x.face(p, i).scaled(parity_sign(i));
    b.horizontal[static_cast<std::size_t>(p)] = std::move(sum);
  }
  return total_complex(b, x.top());
}

namespace gen {

namespace {

// Surjections [n] ->> [k] as value sequences, ordered by mask.
std::vector<std::vector<int>> surjections(int n) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> eta{0};
    for (int j = 0; j < n; ++j) eta.push_back(eta.back() + ((mask >> j) & 1u ? 1 : 0));
    out.push_back(std::move(eta));
  }
  return out;
}

SimplicialChainComplex direct_sum(const SimplicialChainComplex& a, const SimplicialChainComplex& b) {
  SimplicialChainComplex x;
  x.infinite = a.infinite || b.infinite;
  for (int n = 0; n <= a.top(); ++n) x.levels.push_back(opbar::direct_sum(a.levels[static_cast<std::size_t>(n)], b.levels[static_cast<std::size_t>(n)]));
  x.faces.resize(a.faces.size());
  x.degeneracies.resize(a.degeneracies.size());
  for (int n = 1; n <= a.top(); ++n)
    for (int i = 0; i <= n; ++i) {
      std::vector<Matrix> blocks{a.face(n, i), b.face(n, i)};
      x.faces[static_cast<std::size_t>(n)].push_back(Matrix::block_diagonal(blocks));
    }
  for (int n = 0; n < a.top(); ++n)
    for (int j = 0; j <= n; ++j) {
      std::vector<Matrix> blocks{a.degeneracy(n, j), b.degeneracy(n, j)};
      x.degeneracies[static_cast<std::size_t>(n)].push_back(Matrix::block_diagonal(blocks));
    }
  return x;
}

Matrix inclusion_first(std::size_t a, std::size_t b) {
  std::vector<std::size_t> images(a);
  for (std::size_t i = 0; i < a; ++i) images[i] = i;
  return Matrix::selection(a + b, images);
}

// Unit lower times unit upper triangular with small entries, block diagonal on
// the (weight, degree) blocks of c.
std::pair<Matrix, Matrix> random_basis_change(std::mt19937& rng, const ChainComplex& c) {
  std::uniform_int_distribution<int> entry(-2, 2);
  std::vector<std::vector<SparseVector::Entry>> cols(c.dim());
  for (const auto& [w, q] : blocks_of(c)) {
    const auto ids = c.indices(q, w);
    const std::size_t m = ids.size();
    std::vector<std::vector<Rational>> l(m, std::vector<Rational>(m)), u(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i) {
      l[i][i] = 1;
      u[i][i] = 1;
      for (std::size_t j = 0; j < i; ++j) l[i][j] = entry(rng);
      for (std::size_t j = i + 1; j < m; ++j) u[i][j] = entry(rng);
    }
    const Matrix block = Matrix::from_dense(l) * Matrix::from_dense(u);
    for (std::size_t j = 0; j < m; ++j)
      for (const auto& [i, x] : block.column(j)) cols[ids[j]].emplace_back(ids[i], x);
  }
  std::vector<SparseVector> sv;
  for (auto& col : cols) sv.push_back(SparseVector::from_unsorted(std::move(col)));
  Matrix p = Matrix::from_columns(c.dim(), std::move(sv));
  Matrix p_inv = inverse(p);
  return {std::move(p), std::move(p_inv)};
}

SimplicialChainComplex rebase_with(std::mt19937& rng, const SimplicialChainComplex& x, std::vector<Matrix>& p,
                                   std::vector<Matrix>& p_inv) {
  p.clear();
  p_inv.clear();
  for (const auto& l : x.levels) {
    auto [a, b] = random_basis_change(rng, l);
    p.push_back(std::move(a));
    p_inv.push_back(std::move(b));
  }
  SimplicialChainComplex y = x;
  for (int n = 0; n <= x.top(); ++n) {
    const auto u = static_cast<std::size_t>(n);
    y.levels[u] = ChainComplex(x.levels[u].basis(), p_inv[u] * x.levels[u].differential() * p[u]);
    for (int i = 0; n >= 1 && i <= n; ++i) y.faces[u][static_cast<std::size_t>(i)] = p_inv[u - 1] * x.face(n, i) * p[u];
    for (int j = 0; n < x.top() && j <= n; ++j) y.degeneracies[u][static_cast<std::size_t>(j)] = p_inv[u + 1] * x.degeneracy(n, j) * p[u];
  }
  return y;
}

// Random complex assembled from lines and acyclic pairs, then rebased.
ChainComplex random_pieces(std::mt19937& rng, int max_dim, int max_degree, bool acyclic) {
  std::uniform_int_distribution<int> count(0, max_dim);
  std::uniform_int_distribution<int> weight(0, 1);
  std::vector<Generator> gens;
  std::vector<std::pair<std::size_t, std::size_t>> arrows;
  for (int q = 0; q <= max_degree; ++q) {
    const int lines = acyclic ? 0 : count(rng) / 2;
    for (int i = 0; i < lines; ++i) gens.push_back({"h" + std::to_string(gens.size()), q, weight(rng)});
    if (q == 0) continue;
    const int pairs = (count(rng) + 1) / 2;
    for (int i = 0; i < pairs; ++i) {
      const int w = weight(rng);
      gens.push_back({"a" + std::to_string(gens.size()), q, w});
      gens.push_back({"b" + std::to_string(gens.size()), q - 1, w});
      arrows.emplace_back(gens.size() - 2, gens.size() - 1);
    }
  }
  // Order generators by degree so the complex looks like a generic input.
  std::vector<std::size_t> order(gens.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gens[a].degree < gens[b].degree; });
  std::vector<std::size_t> pos(gens.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  std::vector<Generator> sorted;
  for (std::size_t i : order) sorted.push_back(gens[i]);
  std::vector<SparseVector> cols(gens.size());
  for (const auto& [a, b] : arrows) cols[pos[a]] = SparseVector::unit(pos[b]);
  ChainComplex c(sorted, Matrix::from_columns(gens.size(), std::move(cols)));
  auto [p, pinv] = random_basis_change(rng, c);
  return ChainComplex(c.basis(), pinv * c.differential() * p);
}

// Γ(H ⊗ V) where H carries the simplicial direction.
SimplicialChainComplex gamma_of_tensor(const ChainComplex& h, const ChainComplex& v, int s) {
  std::vector<ChainComplex> n;
  std::vector<Matrix> dh(static_cast<std::size_t>(s + 1));
  for (int k = 0; k <= s; ++k) {
    std::vector<Generator> gens;
    const auto hk = h.indices(k);
    for (std::size_t a : hk)
      for (const Generator& g : v.basis())
        gens.push_back({h.generator(a).name + "." + g.name, g.degree, h.generator(a).weight + g.weight});
    std::vector<Matrix> diag(hk.size(), v.differential());
    n.emplace_back(std::move(gens), Matrix::block_diagonal(diag));
    if (k == 0) continue;
    const auto hq = h.indices(k - 1);
    const Matrix dk = h.differential().submatrix(hq, hk);
    dh[static_cast<std::size_t>(k)] = Matrix::kronecker(dk, Matrix::identity(v.dim()));
  }
  return dold_kan_inverse(n, dh, s);
}

}  // namespace

SimplicialChainComplex dold_kan_inverse(const std::vector<ChainComplex>& n, const std::vector<Matrix>& dh, int s) {
  auto nk = [&](int k) -> const ChainComplex& {
    static const ChainComplex zero;
    return k < static_cast<int>(n.size()) ? n[static_cast<std::size_t>(k)] : zero;
  };
  SimplicialChainComplex x;
  std::vector<std::vector<std::vector<int>>> surj;
  std::vector<std::vector<std::size_t>> offsets;
  std::vector<std::map<std::vector<int>, std::size_t>> index;
  for (int lvl = 0; lvl <= s; ++lvl) {
    surj.push_back(surjections(lvl));
    auto& off = offsets.emplace_back();
    auto& idx = index.emplace_back();
    std::vector<Generator> gens;
    std::vector<Matrix> diffs;
    for (std::size_t e = 0; e < surj.back().size(); ++e) {
      const auto& eta = surj.back()[e];
      idx.emplace(eta, e);
      off.push_back(gens.size());
      const ChainComplex& c = nk(eta.back());
      std::string tag = "<";
      for (int v : eta) tag += std::to_string(v);
      tag += ">";
      for (Generator g : c.basis()) {
        g.name = tag + g.name;
        gens.push_back(std::move(g));
      }
      diffs.push_back(c.differential());
    }
    off.push_back(gens.size());
    x.levels.emplace_back(std::move(gens), Matrix::block_diagonal(diffs));
  }
  x.faces.resize(static_cast<std::size_t>(s + 1));
  x.degeneracies.resize(static_cast<std::size_t>(s));
  for (int lvl = 1; lvl <= s; ++lvl)
    for (int i = 0; i <= lvl; ++i) {
      std::vector<std::vector<SparseVector::Entry>> cols(x.levels[static_cast<std::size_t>(lvl)].dim());
      for (std::size_t e = 0; e < surj[static_cast<std::size_t>(lvl)].size(); ++e) {
        const auto& eta = surj[static_cast<std::size_t>(lvl)][e];
        const int k = eta.back();
        std::vector<int> t = eta;
        t.erase(t.begin() + i);
        // Epi-mono factorization of η δ_i.
        int missing = -1;
        for (int v = 0; v <= k; ++v)
          if (std::find(t.begin(), t.end(), v) == t.end()) missing = v;
        const std::size_t src = offsets[static_cast<std::size_t>(lvl)][e];
        if (missing < 0) {
          const std::size_t dst = offsets[static_cast<std::size_t>(lvl - 1)][index[static_cast<std::size_t>(lvl - 1)].at(t)];
          for (std::size_t b = 0; b < nk(k).dim(); ++b) cols[src + b].emplace_back(dst + b, 1);
        } else if (missing == k) {
          const std::size_t dst = offsets[static_cast<std::size_t>(lvl - 1)][index[static_cast<std::size_t>(lvl - 1)].at(t)];
          const Matrix& d = dh[static_cast<std::size_t>(k)];
          for (std::size_t b = 0; b < nk(k).dim(); ++b)
            for (const auto& [r, val] : d.column(b)) cols[src + b].emplace_back(dst + r, val);
        }
      }
      std::vector<SparseVector> sv;
      for (auto& c : cols) sv.push_back(SparseVector::from_unsorted(std::move(c)));
      x.faces[static_cast<std::size_t>(lvl)].push_back(Matrix::from_columns(x.levels[static_cast<std::size_t>(lvl - 1)].dim(), std::move(sv)));
    }
  for (int lvl = 0; lvl < s; ++lvl)
    for (int j = 0; j <= lvl; ++j) {
      std::vector<std::size_t> images;
      for (std::size_t e = 0; e < surj[static_cast<std::size_t>(lvl)].size(); ++e) {
        std::vector<int> t = surj[static_cast<std::size_t>(lvl)][e];
        t.insert(t.begin() + j, t[static_cast<std::size_t>(j)]);
        const std::size_t dst = offsets[static_cast<std::size_t>(lvl + 1)][index[static_cast<std::size_t>(lvl + 1)].at(t)];
        for (std::size_t b = 0; b < nk(t.back()).dim(); ++b) images.push_back(dst + b);
      }
      x.degeneracies[static_cast<std::size_t>(lvl)].push_back(Matrix::selection(x.levels[static_cast<std::size_t>(lvl + 1)].dim(), images));
    }
  return x;
}

ChainComplex random_complex(std::mt19937& rng, int max_dim, int max_degree) {
  return random_pieces(rng, max_dim, max_degree, false);
}

SimplicialChainComplex random_simplicial(std::mt19937& rng, int s) {
  return rebase(rng, gamma_of_tensor(random_complex(rng, 2, s), random_complex(rng, 2, 2), s));
}

SimplicialChainComplex rebase(std::mt19937& rng, const SimplicialChainComplex& x) {
  std::vector<Matrix> p, pinv;
  return rebase_with(rng, x, p, pinv);
}

namespace {

GeneratedMap include_into_sum(std::mt19937& rng, const SimplicialChainComplex& x, const SimplicialChainComplex& extra) {
  GeneratedMap g;
  const SimplicialChainComplex sum = direct_sum(x, extra);
  std::vector<Matrix> p, pinv, q, qinv;
  g.source = rebase_with(rng, x, p, pinv);
  g.target = rebase_with(rng, sum, q, qinv);
  for (int n = 0; n <= x.top(); ++n) {
    const auto u = static_cast<std::size_t>(n);
    g.map.levels.push_back(qinv[u] * inclusion_first(x.levels[u].dim(), extra.levels[u].dim()) * p[u]);
  }
  return g;
}

}  // namespace

GeneratedMap random_quasi_iso(std::mt19937& rng, int s) {
  const SimplicialChainComplex x = gamma_of_tensor(random_complex(rng, 2, s), random_complex(rng, 2, 2), s);
  const SimplicialChainComplex a = gamma_of_tensor(random_complex(rng, 2, s), random_pieces(rng, 2, 2, true), s);
  return include_into_sum(rng, x, a);
}

GeneratedMap random_mono(std::mt19937& rng, int s) {
  const SimplicialChainComplex x = gamma_of_tensor(random_complex(rng, 2, s), random_complex(rng, 2, 2), s);
  const SimplicialChainComplex y = gamma_of_tensor(random_complex(rng, 2, s), random_complex(rng, 2, 2), s);
  return include_into_sum(rng, x, y);
}

Contraction simplex_contraction(const ChainComplex& z, int dim, int max_level) {
  const FiniteSimplicialSet k = standard_simplex(dim, max_level);
  const std::size_t dz = z.dim();
  Contraction c;
  for (int n = 0; n <= max_level; ++n) {
    const auto& simplices = k.simplices[static_cast<std::size_t>(n)];
    std::vector<std::size_t> to_point(simplices.size(), 0);
    c.retraction.levels.push_back(summand_map(to_point, 1, dz));
    // The constant simplex at vertex 0 comes first in the enumeration.
    c.section.levels.push_back(summand_map({0}, simplices.size(), dz));
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < simplices.size(); ++i) index.emplace(simplices[i], i);
    auto& comps = c.homotopy.components.emplace_back();
    for (int zeros = 0; zeros <= n + 1; ++zeros) {
      std::vector<std::size_t> table;
      for (const auto& s : simplices) {
        std::vector<int> t = s;
        for (int m = 0; m < zeros; ++m) t[static_cast<std::size_t>(m)] = 0;
        table.push_back(index.at(t));
      }
      comps.push_back(summand_map(table, simplices.size(), dz));
    }
  }
  return c;
}

}  // namespace gen

}  // namespace opbar
