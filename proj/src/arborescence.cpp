#include "arbogray/arborescence.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace arbogray {

std::vector<ArcId> Arborescence::sorted_arc_ids() const {
  std::vector<ArcId> ids;
  ids.reserve(parent.size());
  for (ArcId a : parent)
    if (a != kNoArc) ids.push_back(a);
  std::sort(ids.begin(), ids.end());
  return ids;
}

bool Arborescence::contains(ArcId a) const {
  if (a == kNoArc) return false;
  return std::find(parent.begin(), parent.end(), a) != parent.end();
}

bool is_arborescence(const DiGraph& g, const Arborescence& cand) {
  if (static_cast<int>(cand.parent.size()) != g.n()) return false;
  VertexId r = g.root();
  for (VertexId v = 0; v < g.n(); ++v) {
    if (v == r) {
      if (cand.parent[v] != kNoArc) return false;
      continue;
    }
    ArcId a = cand.parent[v];
    if (a == kNoArc || !g.has_arc(a)) return false;
    if (g.arc(a).head != v) return false;
  }
  // Walk up from every vertex; each must reach the root without a cycle.
  for (VertexId v = 0; v < g.n(); ++v) {
    VertexId cur = v;
    int hops = 0;
    while (cur != r) {
      cur = g.arc(cand.parent[cur]).tail;
      if (++hops > g.n()) return false;  // cycle
    }
  }
  return true;
}

std::vector<VertexId> descendants(const DiGraph& g, const Arborescence& A,
                                  VertexId u) {
  // Children lists of the tree, then DFS below u.
  std::vector<std::vector<VertexId>> children(g.n());
  for (VertexId v = 0; v < g.n(); ++v)
    if (A.parent[v] != kNoArc) children[g.arc(A.parent[v]).tail].push_back(v);
  std::vector<VertexId> res;
  std::vector<VertexId> stack{u};
  while (!stack.empty()) {
    VertexId w = stack.back();
    stack.pop_back();
    res.push_back(w);
    for (VertexId c : children[w]) stack.push_back(c);
  }
  std::sort(res.begin(), res.end());
  return res;
}

std::vector<Flip> legal_flips(const DiGraph& g, const Arborescence& A) {
  // in_subtree[v][u] would be quadratic to store; compute the subtree of
  // each head on demand and cache it.
  std::vector<std::vector<char>> subtree_of(g.n());
  auto in_subtree = [&](VertexId head, VertexId who) -> bool {
    if (subtree_of[head].empty()) {
      subtree_of[head].assign(g.n(), 0);
      for (VertexId d : descendants(g, A, head)) subtree_of[head][d] = 1;
    }
    return subtree_of[head][who] != 0;
  };
  std::vector<Flip> res;
  VertexId r = g.root();
  for (const Arc& arc : g.arcs()) {
    if (arc.head == r) continue;                 // never enters a tree
    if (A.parent[arc.head] == arc.id) continue;  // already in A
    if (in_subtree(arc.head, arc.tail)) continue;
    res.push_back(Flip{A.parent[arc.head], arc.id, arc.head});
  }
  return res;
}

Arborescence apply_flip(const DiGraph& g, const Arborescence& A,
                        const Flip& f) {
  const Arc& added = g.arc(f.added);
  if (added.head != f.pivot)
    throw PreconditionError("flip: added arc does not enter the pivot");
  if (f.pivot == g.root())
    throw PreconditionError("flip: pivot cannot be the root");
  if (A.parent[f.pivot] != f.removed)
    throw PreconditionError("flip: removed arc is not the pivot's parent");
  if (f.removed == f.added)
    throw PreconditionError("flip: removed and added arcs coincide");
  auto sub = descendants(g, A, f.pivot);
  if (std::binary_search(sub.begin(), sub.end(), added.tail))
    throw PreconditionError(
        "flip: added arc's tail is a descendant of the pivot");
  Arborescence B = A;
  B.parent[f.pivot] = f.added;
  return B;
}

Flip flip_between(const DiGraph& g, const Arborescence& A,
                  const Arborescence& B) {
  VertexId where = -1;
  for (VertexId v = 0; v < g.n(); ++v) {
    if (A.parent[v] == B.parent[v]) continue;
    if (where != -1)
      throw PreconditionError("flip_between: trees differ at two vertices");
    where = v;
  }
  if (where == -1)
    throw PreconditionError("flip_between: trees are identical");
  return Flip{A.parent[where], B.parent[where], where};
}

Arborescence complete_subtree(const DiGraph& g,
                              const std::map<VertexId, ArcId>& partial) {
  VertexId r = g.root();
  Arborescence A;
  A.parent.assign(g.n(), kNoArc);
  std::vector<char> covered(g.n(), 0);
  covered[r] = 1;
  for (const auto& [v, a] : partial) {
    if (v == r) throw PreconditionError("complete_subtree: root has a parent");
    if (!g.has_arc(a) || g.arc(a).head != v)
      throw PreconditionError("complete_subtree: arc does not enter vertex " +
                              std::to_string(v));
    A.parent[v] = a;
  }
  // The partial map may be any forest: parent chains must be acyclic, but a
  // chain is allowed to end at a vertex that has no parent yet (the completion
  // will connect it to the root).
  for (const auto& [v, a] : partial) {
    VertexId cur = v;
    int hops = 0;
    while (cur != r && A.parent[cur] != kNoArc) {
      cur = g.arc(A.parent[cur]).tail;
      if (++hops > g.n())
        throw PreconditionError("complete_subtree: partial map has a cycle");
    }
    (void)a;
  }
  // Breadth-first distances from the root in the full graph; used to pick the
  // closest vertex to attach next.
  std::vector<int> dist(g.n(), -1);
  {
    std::queue<VertexId> q;
    dist[r] = 0;
    q.push(r);
    std::vector<std::vector<VertexId>> adj(g.n());
    for (const Arc& a : g.arcs()) adj[a.tail].push_back(a.head);
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (VertexId w : adj[u])
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
    }
  }
  // Repeatedly attach the closest parentless vertex by an arc leaving the
  // current root component (ties broken by smallest ArcId).  Arcs are only
  // ever added from the root component to a parentless vertex, so no parent
  // chain can become cyclic; once every vertex has a parent, every chain
  // terminates at the root.
  int remaining = 0;
  for (VertexId v = 0; v < g.n(); ++v)
    if (v != r && A.parent[v] == kNoArc) ++remaining;
  while (remaining > 0) {
    // Recompute the root component under the current (partial) map.
    std::fill(covered.begin(), covered.end(), 0);
    covered[r] = 1;
    for (bool grew = true; grew;) {
      grew = false;
      for (VertexId v = 0; v < g.n(); ++v) {
        if (covered[v] || A.parent[v] == kNoArc) continue;
        if (covered[g.arc(A.parent[v]).tail]) {
          covered[v] = 1;
          grew = true;
        }
      }
    }
    ArcId pick = kNoArc;
    VertexId picked = static_cast<VertexId>(-1);
    int best = -1;
    for (const Arc& a : g.arcs()) {
      if (a.head == r || A.parent[a.head] != kNoArc) continue;
      if (!covered[a.tail] || dist[a.head] < 0) continue;
      if (pick == kNoArc || dist[a.head] < best ||
          (dist[a.head] == best && a.id < pick)) {
        pick = a.id;
        picked = a.head;
        best = dist[a.head];
      }
    }
    if (pick == kNoArc)
      throw PreconditionError(
          "complete_subtree: no completion exists (no arc reaches a "
          "parentless vertex from the root component)");
    A.parent[picked] = pick;
    --remaining;
  }
  return A;
}

std::string arb_to_line(const Arborescence& A) {
  auto ids = A.sorted_arc_ids();
  if (ids.empty()) return "-";
  std::ostringstream out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) out << ' ';
    out << ids[i];
  }
  return out.str();
}

std::optional<Arborescence> arb_from_arc_ids(const DiGraph& g,
                                             const std::vector<ArcId>& ids) {
  Arborescence A;
  A.parent.assign(g.n(), kNoArc);
  for (ArcId a : ids) {
    if (!g.has_arc(a)) return std::nullopt;
    VertexId head = g.arc(a).head;
    if (head == g.root()) return std::nullopt;
    if (A.parent[head] != kNoArc) return std::nullopt;
    A.parent[head] = a;
  }
  for (VertexId v = 0; v < g.n(); ++v)
    if (v != g.root() && A.parent[v] == kNoArc) return std::nullopt;
  return A;
}

DiGraph arborescence_subgraph(const DiGraph& g, const Arborescence& A) {
  std::vector<Arc> arcs;
  for (ArcId a : A.sorted_arc_ids()) arcs.push_back(g.arc(a));
  return DiGraph(g.n(), g.root(), std::move(arcs), g.next_arc_id(), {});
}

bool is_built_on(const DiGraph& h, const Arborescence& A) {
  return is_built_on(h, arborescence_subgraph(h, A));
}

}  // namespace arbogray
