#include "arbogray/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace arbogray {

namespace {

// Lexicographic order on sorted arc-id lists — the canonical node order.
bool arb_less(const Arborescence& a, const Arborescence& b) {
  return a.sorted_arc_ids() < b.sorted_arc_ids();
}

void enumerate_rec(const DiGraph& g, std::vector<VertexId>& order, size_t pos,
                   Arborescence& cur, std::vector<Arborescence>& out,
                   const std::vector<std::vector<ArcId>>& in_arcs,
                   long long cap) {
  if (pos == order.size()) {
    out.push_back(cur);
    if (static_cast<long long>(out.size()) > cap)
      throw BudgetError("arborescence enumeration exceeded budget of " +
                        std::to_string(cap));
    return;
  }
  VertexId v = order[pos];
  for (ArcId a : in_arcs[v]) {
    VertexId tail = g.arc(a).tail;
    // Follow assigned parents from the tail; adding a->v closes a cycle
    // exactly when that walk reaches v.
    VertexId cur_v = tail;
    bool cycle = false;
    while (cur_v != g.root() && cur.parent[cur_v] != kNoArc) {
      if (cur_v == v) {
        cycle = true;
        break;
      }
      cur_v = g.arc(cur.parent[cur_v]).tail;
    }
    if (cur_v == v) cycle = true;
    if (cycle) continue;
    cur.parent[v] = a;
    enumerate_rec(g, order, pos + 1, cur, out, in_arcs, cap);
    cur.parent[v] = kNoArc;
  }
}

}  // namespace

std::vector<Arborescence> enumerate_arborescences(const DiGraph& g,
                                                  const OracleBudget& budget) {
  std::vector<std::vector<ArcId>> in_arcs(g.n());
  for (const Arc& a : g.arcs()) in_arcs[a.head].push_back(a.id);
  std::vector<VertexId> order;
  for (VertexId v = 0; v < g.n(); ++v)
    if (v != g.root()) order.push_back(v);
  Arborescence cur;
  cur.parent.assign(g.n(), kNoArc);
  std::vector<Arborescence> out;
  enumerate_rec(g, order, 0, cur, out, in_arcs, budget.max_arborescences);
  std::sort(out.begin(), out.end(), arb_less);
  return out;
}

long long count_arborescences_matrix_tree(const DiGraph& g) {
  // Reduced in-degree Laplacian over the non-root vertices: L[v][v] counts
  // arcs into v, L[u][v] = -(number of arcs u->v).  Its determinant counts
  // the arborescences oriented away from the root.
  int n = g.n();
  std::vector<VertexId> idx(n, -1);
  std::vector<VertexId> verts;
  for (VertexId v = 0; v < n; ++v)
    if (v != g.root()) {
      idx[v] = static_cast<int>(verts.size());
      verts.push_back(v);
    }
  int d = static_cast<int>(verts.size());
  if (d == 0) return 1;
  std::vector<std::vector<__int128>> m(d, std::vector<__int128>(d, 0));
  for (const Arc& a : g.arcs()) {
    if (a.head == g.root()) continue;
    m[idx[a.head]][idx[a.head]] += 1;
    if (a.tail != g.root()) m[idx[a.tail]][idx[a.head]] -= 1;
  }
  // Bareiss fraction-free elimination; divisions are exact.
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < d; ++k) {
    int pivot = -1;
    for (int i = k; i < d; ++i)
      if (m[i][k] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < d; ++i)
      for (int j = k + 1; j < d; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  __int128 det = sign * m[d - 1][d - 1];
  return static_cast<long long>(det);
}

FlipGraph build_flip_graph(const DiGraph& g, const OracleBudget& budget) {
  FlipGraph fg;
  fg.nodes = enumerate_arborescences(g, budget);
  int n = static_cast<int>(fg.nodes.size());
  fg.adj.assign(n, {});
  std::map<std::vector<ArcId>, int> index;
  for (int i = 0; i < n; ++i) index[fg.nodes[i].sorted_arc_ids()] = i;
  for (int i = 0; i < n; ++i) {
    for (const Flip& f : legal_flips(g, fg.nodes[i])) {
      Arborescence nb = fg.nodes[i];
      nb.parent[f.pivot] = f.added;
      auto it = index.find(nb.sorted_arc_ids());
      if (it == index.end())
        throw InternalInconsistencyError(
            "flip result missing from enumeration");
      int j = it->second;
      if (i < j) {
        fg.adj[i].push_back(j);
        fg.adj[j].push_back(i);
        fg.edge_flips[{i, j}] = f;
      }
    }
  }
  for (auto& lst : fg.adj) std::sort(lst.begin(), lst.end());
  return fg;
}

namespace {

struct HamSearch {
  const FlipGraph& fg;
  int n;
  long long expansions = 0;
  long long cap;
  std::vector<char> visited;
  std::vector<int> path;

  HamSearch(const FlipGraph& f, long long c)
      : fg(f), n(static_cast<int>(f.nodes.size())), cap(c),
        visited(n, 0) {}

  // Unvisited region must stay connected through the current head, and no
  // unvisited vertex may lose all its remaining connections.
  bool prune(int head, int goal_adjacent) {
    int unvisited = 0;
    for (int v = 0; v < n; ++v)
      if (!visited[v]) ++unvisited;
    if (unvisited == 0) return false;
    // connectivity of unvisited + head
    std::vector<char> seen(n, 0);
    std::vector<int> stack{head};
    seen[head] = 1;
    int reached = 0;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : fg.adj[u])
        if (!visited[w] && !seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
    }
    if (reached < unvisited) return true;
    // Degree pruning.  The rest of the route is a Hamiltonian path of the
    // unvisited subgraph entered from head (and, for cycles, leaving to the
    // goal).  A vertex with too few remaining connections cannot be routed.
    int tight = 0;            // unvisited with degree <= 1 (forced endpoints)
    int tight_not_entry = 0;  // of those, not enterable from head
    for (int v = 0; v < n; ++v) {
      if (visited[v]) continue;
      int deg = 0;
      bool adj_head = false;
      for (int w : fg.adj[v]) {
        if (w == head) adj_head = true;
        if (!visited[w]) ++deg;
      }
      if (goal_adjacent >= 0) {
        bool adj_goal = std::binary_search(fg.adj[v].begin(), fg.adj[v].end(),
                                           goal_adjacent);
        if (deg + (adj_head ? 1 : 0) + (adj_goal ? 1 : 0) < 2) return true;
      } else {
        if (deg == 0 && !adj_head) return true;
        if (deg <= 1) {
          ++tight;
          if (!adj_head) ++tight_not_entry;
        }
      }
    }
    if (goal_adjacent < 0 && (tight > 2 || tight_not_entry > 1)) return true;
    return false;
  }

  // goal_adjacent >= 0 means: complete a cycle by ending adjacent to it.
  bool dfs(int head, int goal_adjacent) {
    if (static_cast<int>(path.size()) == n) {
      if (goal_adjacent < 0) return true;
      return std::binary_search(fg.adj[head].begin(), fg.adj[head].end(),
                                goal_adjacent);
    }
    if (++expansions > cap)
      throw BudgetError("Hamiltonian search exceeded budget of " +
                        std::to_string(cap));
    if (prune(head, goal_adjacent)) return false;
    for (int w : fg.adj[head]) {
      if (visited[w]) continue;
      visited[w] = 1;
      path.push_back(w);
      if (dfs(w, goal_adjacent)) return true;
      path.pop_back();
      visited[w] = 0;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> find_hamiltonian_path_bruteforce(
    const FlipGraph& fg, const OracleBudget& budget) {
  int n = static_cast<int>(fg.nodes.size());
  if (n == 0) return std::vector<int>{};
  if (n == 1) return std::vector<int>{0};
  HamSearch s(fg, budget.max_search_nodes);
  for (int start = 0; start < n; ++start) {
    std::fill(s.visited.begin(), s.visited.end(), 0);
    s.path.clear();
    s.visited[start] = 1;
    s.path.push_back(start);
    if (s.dfs(start, -1)) return s.path;
  }
  return std::nullopt;
}

std::optional<std::vector<int>> find_hamiltonian_cycle_bruteforce(
    const FlipGraph& fg, const OracleBudget& budget) {
  int n = static_cast<int>(fg.nodes.size());
  if (n < 3) return std::nullopt;
  HamSearch s(fg, budget.max_search_nodes);
  s.visited[0] = 1;
  s.path.push_back(0);
  if (s.dfs(0, 0)) return s.path;
  return std::nullopt;
}

namespace {

VerifyReport verify_impl(const DiGraph& g,
                         const std::vector<std::vector<ArcId>>& steps) {
  VerifyReport rep;
  rep.expected_count = count_arborescences_matrix_tree(g);
  rep.actual_count = static_cast<long long>(steps.size());

  // (a) each element is a valid arborescence
  rep.valid_arborescences = true;
  std::vector<Arborescence> seq;
  for (size_t i = 0; i < steps.size(); ++i) {
    auto arb = arb_from_arc_ids(g, steps[i]);
    if (!arb || !is_arborescence(g, *arb)) {
      rep.valid_arborescences = false;
      if (rep.detail.empty())
        rep.detail = "step " + std::to_string(i) + " is not an arborescence";
      seq.clear();
      break;
    }
    seq.push_back(*arb);
  }

  // (b) no duplicates
  rep.no_duplicates = true;
  {
    std::vector<std::vector<ArcId>> sorted;
    sorted.reserve(steps.size());
    for (const auto& s : steps) {
      auto ids = s;
      std::sort(ids.begin(), ids.end());
      sorted.push_back(std::move(ids));
    }
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
      rep.no_duplicates = false;
      if (rep.detail.empty()) rep.detail = "sequence repeats an arborescence";
    }
  }

  // (c) covers all
  rep.covers_all = (rep.actual_count == rep.expected_count);
  if (!rep.covers_all && rep.detail.empty())
    rep.detail = "length " + std::to_string(rep.actual_count) +
                 " != arborescence count " +
                 std::to_string(rep.expected_count);

  // (d) consecutive elements differ in exactly one arc each way
  // (e) the exchanged arcs share their head
  rep.single_arc_steps = true;
  rep.pivot_property = true;
  for (size_t i = 0; i + 1 < steps.size(); ++i) {
    std::vector<ArcId> a = steps[i], b = steps[i + 1];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<ArcId> removed, added;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(removed));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                        std::back_inserter(added));
    if (removed.size() != 1 || added.size() != 1) {
      rep.single_arc_steps = false;
      if (rep.detail.empty())
        rep.detail = "step " + std::to_string(i) + " -> " +
                     std::to_string(i + 1) + " exchanges " +
                     std::to_string(removed.size()) + "/" +
                     std::to_string(added.size()) + " arcs";
      continue;
    }
    if (!g.has_arc(removed[0]) || !g.has_arc(added[0]) ||
        g.arc(removed[0]).head != g.arc(added[0]).head) {
      rep.pivot_property = false;
      if (rep.detail.empty())
        rep.detail = "step " + std::to_string(i) + " -> " +
                     std::to_string(i + 1) +
                     " exchanges arcs with different heads";
    }
  }
  return rep;
}

}  // namespace

VerifyReport verify_gray_code(const DiGraph& g,
                              const std::vector<std::vector<ArcId>>& steps) {
  return verify_impl(g, steps);
}

VerifyReport verify_gray_code(const DiGraph& g,
                              const std::vector<Arborescence>& seq) {
  std::vector<std::vector<ArcId>> steps;
  steps.reserve(seq.size());
  for (const auto& a : seq) steps.push_back(a.sorted_arc_ids());
  return verify_impl(g, steps);
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  auto line = [&](char tag, const char* name, bool ok) {
    out << "check (" << tag << ") " << name << ": "
        << (ok ? "PASS" : "FAIL") << '\n';
  };
  line('a', "valid arborescences", valid_arborescences);
  line('b', "no duplicates", no_duplicates);
  line('c', "covers all arborescences", covers_all);
  line('d', "single-arc steps", single_arc_steps);
  line('e', "pivot property", pivot_property);
  out << "length " << actual_count << ", expected " << expected_count << '\n';
  if (!detail.empty()) out << "detail: " << detail << '\n';
  out << (pass() ? "RESULT: PASS" : "RESULT: FAIL") << '\n';
  return out.str();
}

std::string flip_graph_to_dot(const DiGraph& g, const FlipGraph& fg,
                              std::string* legend_out) {
  (void)g;
  std::ostringstream dot;
  dot << "graph flipgraph {\n  node [shape=box, fontsize=10];\n";
  std::ostringstream legend;
  for (size_t i = 0; i < fg.nodes.size(); ++i) {
    std::string full = arb_to_line(fg.nodes[i]);
    std::string label = full.size() > 40 ? full.substr(0, 40) + "..." : full;
    dot << "  n" << i << " [label=\"" << label << "\"];\n";
    legend << i << ": " << full << '\n';
  }
  for (const auto& [key, flip] : fg.edge_flips) {
    dot << "  n" << key.first << " -- n" << key.second << " [label=\""
        << flip.pivot << "\"];\n";
  }
  dot << "}\n";
  if (legend_out) *legend_out = legend.str();
  return dot.str();
}

}  // namespace arbogray
