// Brute-force oracle for the Quillen homology of the square-zero algebra on a
// single degree-0 generator over the truncated commutative and associative
// operads.
//
// This program deliberately shares no code with the library. It enumerates
// the simplicial bar construction directly as leveled rooted trees, uses the
// quotient (orbit) model for symmetric-group coinvariants, assembles the
// unnormalized alternating-face complex by hand and reads off Betti numbers
// with a private dense elimination routine. Its output is the golden file
// tests/golden/square_zero_qh.tsv.
//
// Level k of B(I, O, V) in weight n is spanned by trees whose leaves all sit at
// depth k, whose internal vertices have between 1 and max_arity children, and
// which carry n leaves. Children are ordered for Ass (regular representation)
// and unordered for Com (trivial representation).
//
//   d_0      removes the root if it has exactly one child, else 0
//   d_i      merges depth i-1 vertices with their children (0 < i < k)
//   d_k      removes the bottom vertex layer if every bottom vertex is unary,
//            else 0 (the square-zero action kills all products)

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

struct Tree {
  std::vector<Tree> children;  // empty for a leaf
};

bool g_planar = true;
int g_max_arity = 4;

std::string encode(const Tree& t) {
  if (t.children.empty()) return "x";
  std::vector<std::string> parts;
  for (const auto& c : t.children) parts.push_back(encode(c));
  if (!g_planar) std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  return out + ")";
}

int leaves(const Tree& t) {
  if (t.children.empty()) return 1;
  int n = 0;
  for (const auto& c : t.children) n += leaves(c);
  return n;
}

// All compositions (ordered) of n into `parts` positive pieces.
void compositions(int n, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (n == 0) out.push_back(cur);
    return;
  }
  for (int first = 1; first <= n - (parts - 1); ++first) {
    cur.push_back(first);
    compositions(n - first, parts - 1, cur, out);
    cur.pop_back();
  }
}

// Trees of the given depth with exactly n leaves (one representative per
// class; classes are identified by their encoding).
std::vector<Tree> trees(int depth, int n) {
  if (depth == 0) {
    if (n == 1) return {Tree{}};
    return {};
  }
  std::map<std::string, Tree> found;
  for (int arity = 1; arity <= std::min(g_max_arity, n); ++arity) {
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(n, arity, cur, comps);
    for (const auto& comp : comps) {
      // cartesian product over children
      std::vector<std::vector<Tree>> options;
      bool empty = false;
      for (int c : comp) {
        options.push_back(trees(depth - 1, c));
        if (options.back().empty()) empty = true;
      }
      if (empty) continue;
      std::vector<size_t> idx(comp.size(), 0);
      while (true) {
        Tree t;
        for (size_t i = 0; i < comp.size(); ++i) t.children.push_back(options[i][idx[i]]);
        found.emplace(encode(t), t);
        size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == options[pos].size()) {
          idx[pos] = 0;
          ++pos;
        }
        if (pos == idx.size()) break;
      }
    }
  }
  std::vector<Tree> out;
  for (auto& [key, t] : found) out.push_back(t);
  return out;
}

// Merge the vertices at depth `level` with their children.
Tree merge_at(const Tree& t, int level) {
  if (level == 0) {
    Tree out;
    for (const auto& c : t.children)
      for (const auto& g : c.children) out.children.push_back(g);
    return out;
  }
  Tree out;
  for (const auto& c : t.children) out.children.push_back(merge_at(c, level - 1));
  return out;
}

// Remove the layer of vertices at depth `level` when all of them are unary.
std::optional<Tree> drop_unary_layer(const Tree& t, int level) {
  if (level == 0) {
    if (t.children.size() != 1) return std::nullopt;
    return t.children.front();
  }
  Tree out;
  for (const auto& c : t.children) {
    auto sub = drop_unary_layer(c, level - 1);
    if (!sub) return std::nullopt;
    out.children.push_back(*sub);
  }
  return out;
}

std::optional<Tree> face(const Tree& t, int depth, int i) {
  if (i == 0) return drop_unary_layer(t, 0);
  if (i == depth) return drop_unary_layer(t, depth - 1);
  return merge_at(t, i - 1);
}

using Dense = std::vector<std::vector<mpq_class>>;

int dense_rank(Dense m) {
  int rank = 0;
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[rank][c];
      for (int k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int main(int argc, char** argv) {
  const int max_weight = 4;
  const int max_degree = 2;
  const int levels = 4;
  std::cout << "# operad\tweight\tdegree\tbetti\n";
  for (std::string operad : {"ass", "com"}) {
    g_planar = operad == "ass";
    for (int n = 1; n <= max_weight; ++n) {
      std::vector<std::vector<Tree>> basis;
      std::vector<std::map<std::string, int>> index;
      for (int k = 0; k <= levels; ++k) {
        basis.push_back(trees(k, n));
        std::map<std::string, int> idx;
        for (size_t j = 0; j < basis.back().size(); ++j) idx[encode(basis.back()[j])] = static_cast<int>(j);
        index.push_back(idx);
      }
      // boundary[k] : C_k -> C_{k-1}
      std::vector<Dense> boundary(levels + 1);
      for (int k = 1; k <= levels; ++k) {
        Dense m(basis[k - 1].size(), std::vector<mpq_class>(basis[k].size(), 0));
        for (size_t j = 0; j < basis[k].size(); ++j)
          for (int i = 0; i <= k; ++i) {
            auto img = face(basis[k][j], k, i);
            if (!img) continue;
            int row = index[k - 1].at(encode(*img));
            m[row][j] += (i % 2 == 0) ? 1 : -1;
          }
        boundary[k] = m;
      }
      for (int d = 0; d <= max_degree; ++d) {
        int dim = static_cast<int>(basis[d].size());
        int rank_out = d == 0 ? 0 : dense_rank(boundary[d]);
        int rank_in = dense_rank(boundary[d + 1]);
        std::cout << operad << '\t' << n << '\t' << d << '\t' << (dim - rank_out - rank_in) << '\n';
      }
    }
  }
  (void)argc;
  (void)argv;
  return EXIT_SUCCESS;
}
