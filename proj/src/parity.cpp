#include "arbogray/parity.hpp"

#include <algorithm>
#include <sstream>

namespace arbogray {

ArcWeighting assign_arc_weights(const DiGraph& g) {
  ArcWeighting w;
  std::vector<std::vector<ArcId>> in_arcs(g.n());
  for (const Arc& a : g.arcs())
    if (a.head != g.root()) in_arcs[a.head].push_back(a.id);
  for (VertexId v = 0; v < g.n(); ++v) {
    if (v == g.root()) continue;
    auto& arcs = in_arcs[v];
    if (arcs.size() > 2)
      throw PreconditionError("vertex " + std::to_string(v) +
                              " has indegree " + std::to_string(arcs.size()) +
                              " > 2");
    std::sort(arcs.begin(), arcs.end());
    if (arcs.size() >= 1) w.weight[arcs[0]] = +1;
    if (arcs.size() == 2) w.weight[arcs[1]] = -1;
  }
  return w;
}

int tree_weight(const DiGraph& g, const Arborescence& A,
                const ArcWeighting& w) {
  int prod = 1;
  for (VertexId v = 0; v < g.n(); ++v) {
    ArcId a = A.parent[v];
    if (a == kNoArc) continue;
    auto it = w.weight.find(a);
    if (it == w.weight.end())
      throw PreconditionError("arc " + std::to_string(a) + " has no weight");
    prod *= it->second;
  }
  return prod;
}

std::pair<long long, long long> bipartition_classes(
    const DiGraph& g, const OracleBudget& budget) {
  ArcWeighting w = assign_arc_weights(g);
  long long plus = 0, minus = 0;
  for (const Arborescence& A : enumerate_arborescences(g, budget)) {
    if (tree_weight(g, A, w) > 0)
      ++plus;
    else
      ++minus;
  }
  return {plus, minus};
}

SignedLaplacian signed_laplacian(const DiGraph& g, const ArcWeighting& w) {
  SignedLaplacian L;
  std::vector<int> col_of(g.n(), -1);
  for (VertexId v = 0; v < g.n(); ++v)
    if (v != g.root()) {
      col_of[v] = L.dim++;
      L.vertex_of_col.push_back(v);
    }
  L.m.assign(L.dim, std::vector<int>(L.dim, 0));
  for (const Arc& a : g.arcs()) {
    if (a.head == g.root()) continue;
    auto it = w.weight.find(a.id);
    if (it == w.weight.end())
      throw PreconditionError("arc " + std::to_string(a.id) +
                              " has no weight");
    int weight = it->second;
    // Column of the head: the diagonal entry balances the column to zero
    // over the full matrix, so it accumulates +weight; the tail row (when
    // not the root) gets -weight.
    L.m[col_of[a.head]][col_of[a.head]] += weight;
    if (a.tail != g.root()) L.m[col_of[a.tail]][col_of[a.head]] -= weight;
  }
  for (int j = 0; j < L.dim; ++j) {
    int nz = 0;
    int sum = 0;
    for (int i = 0; i < L.dim; ++i) {
      int e = L.m[i][j];
      if (e < -1 || e > 1)
        throw PreconditionError("signed Laplacian entry out of {-1,0,1}");
      if (e != 0) ++nz, sum += e;
    }
    if (nz > 2)
      throw PreconditionError("signed Laplacian column with >2 nonzeros");
    if (nz == 2 && sum != 0)
      throw PreconditionError(
          "signed Laplacian column nonzeros must have opposite signs");
  }
  return L;
}

namespace {

int expand(const std::vector<std::vector<int>>& m, std::vector<char>& row_on,
           std::vector<char>& col_on, int active) {
  if (active == 0) return 1;  // empty matrix, empty product
  int dim = static_cast<int>(m.size());
  // Find a column with zero or one nonzero among active rows.
  for (int j = 0; j < dim; ++j) {
    if (!col_on[j]) continue;
    int nz = 0, row = -1;
    for (int i = 0; i < dim; ++i) {
      if (!row_on[i]) continue;
      if (m[i][j] != 0) {
        ++nz;
        row = i;
      }
    }
    if (nz == 0) return 0;
    if (nz == 1) {
      // det = entry * (-1)^(i+j) over ACTIVE index positions * minor
      int i_pos = 0, j_pos = 0;
      for (int i = 0; i < row; ++i)
        if (row_on[i]) ++i_pos;
      for (int jj = 0; jj < j; ++jj)
        if (col_on[jj]) ++j_pos;
      int sign = ((i_pos + j_pos) % 2 == 0) ? 1 : -1;
      row_on[row] = 0;
      col_on[j] = 0;
      int minor = expand(m, row_on, col_on, active - 1);
      row_on[row] = 1;
      col_on[j] = 1;
      return sign * m[row][j] * minor;
    }
  }
  // Every active column has exactly two nonzeros of opposite signs: the
  // active rows sum to zero, so the determinant vanishes.
  return 0;
}

}  // namespace

int determinant_by_expansion(const SignedLaplacian& L) {
  for (int j = 0; j < L.dim; ++j) {
    int nz = 0;
    for (int i = 0; i < L.dim; ++i)
      if (L.m[i][j] != 0) ++nz;
    if (nz > 2)
      throw PreconditionError("determinant_by_expansion: column " +
                              std::to_string(j) + " has >2 nonzeros");
  }
  std::vector<char> row_on(L.dim, 1), col_on(L.dim, 1);
  int det = expand(L.m, row_on, col_on, L.dim);
  if (det < -1 || det > 1)
    throw InternalInconsistencyError(
        "column expansion produced a determinant outside {-1,0,1}");
  return det;
}

std::optional<ArcId> check_degree_one(const DiGraph& g,
                                      const Arborescence& A) {
  auto flips = legal_flips(g, A);
  if (flips.size() != 1) return std::nullopt;
  ArcId uv = flips[0].added;
  DiGraph rest = g.delete_arc(uv);
  if (!is_built_on(rest, A))
    throw InternalInconsistencyError(
        "arborescence has a single legal flip with arc " +
        std::to_string(uv) +
        " but the graph minus that arc is not built on it");
  return uv;
}

std::string parity_report(const DiGraph& g, const OracleBudget& budget) {
  std::ostringstream out;
  ArcWeighting w = assign_arc_weights(g);  // throws on indegree >= 3
  auto [plus, minus] = bipartition_classes(g, budget);
  long long total = plus + minus;
  out << "arborescences: " << total << '\n';
  out << "sign classes: +" << plus << " / -" << minus << '\n';
  SignedLaplacian L = signed_laplacian(g, w);
  int det = determinant_by_expansion(L);
  out << "expansion determinant: " << det << '\n';
  out << "weights:";
  for (const auto& [arc, weight] : w.weight)
    out << ' ' << arc << (weight > 0 ? ":+1" : ":-1");
  out << '\n';
  out << "flip graph is bipartite (indegree <= 2 everywhere)\n";
  if (total % 2 != 0)
    out << "Hamiltonian cycle impossible (bipartite, odd order)\n";
  else
    out << "parity does not exclude a Hamiltonian cycle (even order)\n";
  return out.str();
}

}  // namespace arbogray
