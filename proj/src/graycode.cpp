#include "arbogray/graycode.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "arbogray/errors.hpp"
#include "arbogray/instances.hpp"
#include "arbogray/oracle.hpp"
#include "json.hpp"

namespace arbogray {

namespace {

// Builds the flips of a step sequence by diffing consecutive elements.
// A non-adjacent pair means the construction itself went wrong, so the
// failure is reported as an internal inconsistency, not a precondition.
GrayPath finish_path(const DiGraph& g, std::vector<Arborescence> steps,
                     std::vector<std::string> provenance) {
  GrayPath p;
  p.steps = std::move(steps);
  p.provenance = std::move(provenance);
  if (!p.steps.empty()) p.flips.reserve(p.steps.size() - 1);
  for (std::size_t i = 0; i + 1 < p.steps.size(); ++i) {
    try {
      p.flips.push_back(flip_between(g, p.steps[i], p.steps[i + 1]));
    } catch (const PreconditionError& ex) {
      throw InternalInconsistencyError(
          "constructed sequence breaks between steps " + std::to_string(i) +
              " and " + std::to_string(i + 1) + ": " + ex.what(),
          p.provenance);
    }
  }
  return p;
}

}  // namespace

std::vector<std::pair<int, int>> ladder_ham_path(int n, int i, int side,
                                                 int j) {
  if (n < 2) throw PreconditionError("ladder path needs at least two levels");
  if (i < 1 || i > n || j < 1 || j > n)
    throw PreconditionError("ladder path levels out of range");
  if (i == j)
    throw PreconditionError("ladder path start and target levels must differ");
  if (side != 0 && side != 1)
    throw PreconditionError("ladder side must be 0 or 1");

  const int d = (j > i) ? 1 : -1;
  std::vector<std::pair<int, int>> out;
  out.reserve(2 * static_cast<std::size_t>(n));

  // Sweep away from the target to the near boundary, cross, come back.
  const int b_behind = (d == 1) ? 1 : n;
  for (int lev = i;; lev -= d) {
    out.push_back({lev, side});
    if (lev == b_behind) break;
  }
  for (int lev = b_behind;; lev += d) {
    out.push_back({lev, 1 - side});
    if (lev == i) break;
  }
  int cur = 1 - side;

  // Zigzag through the strictly-between levels, both sides per level.
  for (int lev = i + d; lev != j; lev += d) {
    out.push_back({lev, cur});
    out.push_back({lev, 1 - cur});
    cur = 1 - cur;
  }

  // Level j, then the far levels and back, ending at level j again.
  const int b_beyond = (d == 1) ? n : 1;
  for (int lev = j;; lev += d) {
    out.push_back({lev, cur});
    if (lev == b_beyond) break;
  }
  for (int lev = b_beyond;; lev -= d) {
    out.push_back({lev, 1 - cur});
    if (lev == j) break;
  }
  return out;
}

std::vector<std::uint32_t> hypercube_ham_path_from(int d,
                                                   std::uint32_t start) {
  if (d < 0 || d > 25)
    throw PreconditionError("hypercube dimension out of range");
  const std::uint32_t size = 1u << d;
  if (start >= size)
    throw PreconditionError("hypercube start outside the cube");
  std::vector<std::uint32_t> out;
  out.reserve(size);
  for (std::uint32_t k = 0; k < size; ++k)
    out.push_back((k ^ (k >> 1)) ^ start);
  return out;
}

std::vector<std::uint32_t> hypercube_ham_cycle_through_edge(int d,
                                                            std::uint32_t u,
                                                            std::uint32_t v) {
  if (d < 2 || d > 25)
    throw PreconditionError("hypercube cycle needs dimension >= 2");
  const std::uint32_t size = 1u << d;
  if (u >= size || v >= size)
    throw PreconditionError("hypercube vertices outside the cube");
  const std::uint32_t diff = u ^ v;
  if (std::popcount(diff) != 1)
    throw PreconditionError("hypercube cycle endpoints must be adjacent");
  const int b = std::countr_zero(diff);
  std::vector<std::uint32_t> out;
  out.reserve(size);
  for (std::uint32_t k = 0; k < size; ++k) {
    std::uint32_t y = k ^ (k >> 1);
    if (b != 0) {
      const std::uint32_t lo = y & 1u;
      const std::uint32_t hi = (y >> b) & 1u;
      if (lo != hi) y ^= (1u | (1u << b));
    }
    out.push_back(y ^ u);
  }
  return out;
}

RootCollapse collapse_root_arc(const DiGraph& g, ArcId a) {
  const Arc& ca = g.arc(a);
  if (ca.tail != g.root())
    throw PreconditionError("contracted arc must leave the root");
  const VertexId r = g.root();
  const VertexId x = ca.head;

  RootCollapse col{DiGraph(1, 0), x, a, {}, {}, {}, {}};
  col.old_to_new.assign(g.n(), -1);
  col.old_to_new[r] = 0;
  col.old_to_new[x] = 0;
  col.new_to_old.push_back(r);
  for (VertexId old = 0; old < g.n(); ++old) {
    if (old == r || old == x) continue;
    col.old_to_new[old] = static_cast<VertexId>(col.new_to_old.size());
    col.new_to_old.push_back(old);
  }

  // Per head, the arcs leaving r and x; at most one of each (deduplicate
  // parallel arcs before collapsing).
  std::map<VertexId, std::pair<ArcId, ArcId>> root_out;
  std::vector<Arc> kept;
  for (const Arc& arc : g.arcs()) {
    const bool tail_in = (arc.tail == r || arc.tail == x);
    const bool head_in = (arc.head == r || arc.head == x);
    if (tail_in && head_in) continue;  // collapsed away, including a itself
    if (tail_in) {
      auto [it, inserted] =
          root_out.try_emplace(arc.head, std::make_pair(kNoArc, kNoArc));
      ArcId& slot = (arc.tail == r) ? it->second.first : it->second.second;
      (void)inserted;
      if (slot != kNoArc)
        throw PreconditionError(
            "duplicate parallel arcs at the merged root; deduplicate first");
      slot = arc.id;
    } else {
      kept.push_back(
          {arc.id, col.old_to_new[arc.tail], col.old_to_new[arc.head]});
      col.arc_image[arc.id] = arc.id;
    }
  }
  for (const auto& [z, pr] : root_out) {
    ArcId cid;
    if (pr.first != kNoArc && pr.second != kNoArc)
      cid = std::min(pr.first, pr.second);
    else
      cid = (pr.first != kNoArc) ? pr.first : pr.second;
    kept.push_back({cid, 0, col.old_to_new[z]});
    col.sides[cid] = pr;
    if (pr.first != kNoArc) col.arc_image[pr.first] = cid;
    if (pr.second != kNoArc) col.arc_image[pr.second] = cid;
  }
  std::sort(kept.begin(), kept.end(),
            [](const Arc& l, const Arc& rr) { return l.id < rr.id; });

  std::map<ArcId, ArcId> lineage;
  for (const Arc& arc : kept) {
    auto it = g.lineage().find(arc.id);
    if (it != g.lineage().end()) lineage[arc.id] = it->second;
  }
  col.graph =
      DiGraph(g.n() - 1, 0, std::move(kept), g.next_arc_id(), std::move(lineage));
  return col;
}

Arborescence project_arborescence(const RootCollapse& col,
                                  const Arborescence& A) {
  const int old_n = static_cast<int>(col.old_to_new.size());
  if (static_cast<int>(A.parent.size()) != old_n)
    throw PreconditionError("arborescence size does not match the collapse");
  if (A.parent[col.x] != col.contracted_arc)
    throw PreconditionError(
        "arborescence does not contain the contracted arc");
  Arborescence out;
  out.parent.assign(col.new_to_old.size(), kNoArc);
  for (std::size_t z = 1; z < col.new_to_old.size(); ++z) {
    const ArcId p = A.parent[col.new_to_old[z]];
    auto it = col.arc_image.find(p);
    if (it == col.arc_image.end())
      throw PreconditionError("arborescence uses an arc lost by the collapse");
    out.parent[z] = it->second;
  }
  return out;
}

namespace {

// Resolution of a collapsed arborescence back in the base graph: the head
// of the contracted arc hangs from it, and every merged-root child parented
// by a two-sided arc class picks the side named by bits (0 = old root side,
// absent = old root side).
Arborescence resolve_fiber(const RootCollapse& col, const Arborescence& T,
                           const std::map<VertexId, int>& bits) {
  const int old_n = static_cast<int>(col.old_to_new.size());
  if (T.parent.size() != col.new_to_old.size())
    throw PreconditionError("collapsed arborescence has the wrong size");
  Arborescence A;
  A.parent.assign(old_n, kNoArc);
  A.parent[col.x] = col.contracted_arc;
  for (std::size_t z = 1; z < col.new_to_old.size(); ++z) {
    const VertexId old = col.new_to_old[z];
    const ArcId c = T.parent[z];
    if (c == kNoArc || !col.graph.has_arc(c))
      throw PreconditionError("collapsed step uses an unknown arc");
    auto it = col.sides.find(c);
    if (it == col.sides.end()) {
      A.parent[old] = c;
      continue;
    }
    const auto [from_r, from_x] = it->second;
    if (from_r == kNoArc) {
      A.parent[old] = from_x;
    } else if (from_x == kNoArc) {
      A.parent[old] = from_r;
    } else {
      const auto bi = bits.find(old);
      const int b = (bi == bits.end()) ? 0 : bi->second;
      A.parent[old] = b ? from_x : from_r;
    }
  }
  return A;
}

// The free coordinates of a collapsed arborescence: merged-root children
// whose parent class realizes both tails.  Ordered by old vertex id.
std::vector<std::pair<VertexId, ArcId>> fiber_coords(const RootCollapse& col,
                                                     const Arborescence& T) {
  std::vector<std::pair<VertexId, ArcId>> m;
  for (std::size_t z = 1; z < col.new_to_old.size(); ++z) {
    const ArcId c = T.parent[z];
    auto it = col.sides.find(c);
    if (it != col.sides.end() && it->second.first != kNoArc &&
        it->second.second != kNoArc)
      m.push_back({col.new_to_old[z], c});
  }
  return m;  // new ids ascend with old ids, so this is already sorted
}

}  // namespace

GrayPath lift_contraction_path(const DiGraph& g, ArcId a,
                               const GrayPath& contracted,
                               const Arborescence& start) {
  const RootCollapse col = collapse_root_arc(g, a);
  std::vector<std::string> prov;
  if (contracted.steps.empty())
    throw PreconditionError(
        "collapsed path is empty: no first step for the start to project to");
  if (!start.contains(a))
    throw PreconditionError("start must contain the contracted arc");
  if (!(project_arborescence(col, start) == contracted.steps[0]))
    throw PreconditionError("start does not project to the first step");

  // Current side assignment per fiber coordinate (old vertex id).
  std::map<VertexId, int> bits;
  {
    const auto m0 = fiber_coords(col, contracted.steps[0]);
    for (const auto& [z, c] : m0) {
      const auto [from_r, from_x] = col.sides.at(c);
      if (start.parent[z] == from_r)
        bits[z] = 0;
      else if (start.parent[z] == from_x)
        bits[z] = 1;
      else
        throw PreconditionError("start is not in the first fiber");
    }
  }

  std::vector<Arborescence> out;
  for (std::size_t k = 0; k < contracted.steps.size(); ++k) {
    const Arborescence& t = contracted.steps[k];
    const auto m = fiber_coords(col, t);
    const int d = static_cast<int>(m.size());
    if (d > 0)
      prov.push_back("fiber of dimension " + std::to_string(d) +
                     " at collapsed step " + std::to_string(k));
    std::uint32_t s0 = 0;
    for (int i = 0; i < d; ++i) {
      auto bi = bits.find(m[i].first);
      if (bi == bits.end())
        throw InternalInconsistencyError(
            "fiber coordinate appeared without a carried side", prov);
      if (bi->second) s0 |= (1u << i);
    }
    const auto seq = hypercube_ham_path_from(d, s0);
    for (const std::uint32_t code : seq) {
      std::map<VertexId, int> bb;
      for (int i = 0; i < d; ++i) bb[m[i].first] = (code >> i) & 1;
      out.push_back(resolve_fiber(col, t, bb));
    }
    for (int i = 0; i < d; ++i) bits[m[i].first] = (seq.back() >> i) & 1;

    if (k + 1 < contracted.steps.size()) {
      const Arborescence& t2 = contracted.steps[k + 1];
      if (t2.parent.size() != t.parent.size())
        throw PreconditionError("collapsed steps of unequal size");
      int zstar = -1;
      for (std::size_t z = 1; z < t.parent.size(); ++z) {
        if (t.parent[z] != t2.parent[z]) {
          if (zstar != -1)
            throw PreconditionError("collapsed sequence is not a Gray path");
          zstar = static_cast<int>(z);
        }
      }
      if (zstar == -1)
        throw PreconditionError("collapsed sequence repeats a step");
      const ArcId added = t2.parent[zstar];
      const VertexId zo = col.new_to_old[zstar];
      auto it = col.sides.find(added);
      if (it != col.sides.end() && it->second.first == kNoArc)
        bits[zo] = 1;  // only the merged-head side exists
      else
        bits[zo] = 0;  // prefer the old root side whenever it exists
    }
  }
  return finish_path(g, std::move(out), std::move(prov));
}

GrayPath lift_duplication_path(const DiGraph& gp, ArcId e, ArcId e_copy,
                               const GrayPath& base) {
  const Arc& ae = gp.arc(e);
  const Arc& ac = gp.arc(e_copy);
  if (e == e_copy || ae.tail != ac.tail || ae.head != ac.head)
    throw PreconditionError("duplication lift needs two parallel arcs");
  const VertexId head = ae.head;

  std::vector<Arborescence> out;
  out.reserve(base.steps.size() * 2);
  int enter = 0;  // side at which the current run of e-carriers is entered
  for (std::size_t i = 0; i < base.steps.size(); ++i) {
    const Arborescence& A = base.steps[i];
    if (static_cast<int>(A.parent.size()) != gp.n())
      throw PreconditionError("base step has the wrong vertex count");
    if (A.contains(e_copy))
      throw PreconditionError("base path already uses the duplicate arc");
    if (!A.contains(e)) {
      out.push_back(A);
      continue;
    }
    if (i == 0 || !base.steps[i - 1].contains(e))
      enter = 0;  // a run is only enterable from outside on the e side
    Arborescence first = A;
    Arborescence second = A;
    if (enter == 1)
      first.parent[head] = e_copy;
    else
      second.parent[head] = e_copy;
    out.push_back(std::move(first));
    out.push_back(std::move(second));
    enter = 1 - enter;
  }
  return finish_path(
      gp, std::move(out),
      {"duplication lift of arc " + std::to_string(e_copy) + " over arc " +
       std::to_string(e)});
}

std::pair<VertexId, VertexId> choose_pivot_pair(const DiGraph& g) {
  const VertexId r = g.root();
  const std::vector<VertexId> outs = g.out_neighbors(r);
  if (outs.size() < 2)
    throw PreconditionError("pivot pair needs two root out-neighbours");
  std::set<VertexId> out_set(outs.begin(), outs.end());

  VertexId best_u = -1, best_v = -1;
  std::size_t best_score = 0;
  for (const VertexId u : outs) {
    const std::vector<VertexId> heads = g.out_neighbors(u);
    const std::size_t score = heads.size();
    for (const VertexId v : heads) {
      if (v == u || v == r || !out_set.count(v)) continue;
      if (best_u == -1 || score > best_score) {
        best_u = u;
        best_v = v;
        best_score = score;
      }
      // outs ascend and heads ascend, so the first maximizer already has
      // the smallest (u, v); later equal scores never replace it.
    }
  }
  if (best_u == -1)
    throw PreconditionError(
        "no arc joins two root out-neighbours (support is not a clique)");
  return {best_u, best_v};
}

TypePartition partition_types(const DiGraph& g,
                              const std::vector<Arborescence>& arbs, ArcId e,
                              ArcId f, ArcId g_arc) {
  const Arc& ea = g.arc(e);
  const Arc& fa = g.arc(f);
  const Arc& ga = g.arc(g_arc);
  if (ea.tail != g.root() || fa.tail != g.root() || ga.tail != ea.head ||
      ga.head != fa.head)
    throw PreconditionError("type partition arcs are inconsistent");
  TypePartition tp;
  tp.e = e;
  tp.f = f;
  tp.g = g_arc;
  for (const Arborescence& a : arbs) {
    if (!a.contains(e))
      tp.t_minus_e.push_back(a);
    else if (a.contains(f))
      tp.t_ef.push_back(a);
    else if (a.contains(g_arc))
      tp.t_eg.push_back(a);
    else
      tp.t_fg.push_back(a);
  }
  return tp;
}

namespace {

// Counts simple paths from the root to every vertex by exhaustive DFS,
// stopping a counter at 2 (only "exactly one" matters).  Bounded.
std::vector<int> simple_path_counts(const DiGraph& g) {
  std::vector<int> count(g.n(), 0);
  std::vector<char> onpath(g.n(), 0);
  long long budget = 200000;
  auto dfs = [&](auto&& self, VertexId cur) -> void {
    if (--budget < 0)
      throw BudgetError("path enumeration exceeded its budget");
    for (const ArcId a : g.out_arcs(cur)) {
      const VertexId t = g.arc(a).head;
      if (onpath[t]) continue;
      if (count[t] < 2) ++count[t];
      onpath[t] = 1;
      self(self, t);
      onpath[t] = 0;
    }
  };
  onpath[g.root()] = 1;
  count[g.root()] = 1;
  dfs(dfs, g.root());
  return count;
}

}  // namespace

FlipCliqueStructure detect_flip_clique_structure(const DiGraph& g,
                                                 VertexId v) {
  FlipCliqueStructure res;
  const VertexId w = g.root();
  if (v < 0 || v >= g.n() || v == w)
    throw PreconditionError("flip-clique vertex must be a non-root vertex");
  ArcId wv = kNoArc;
  for (const ArcId a : g.out_arcs(w)) {
    if (g.arc(a).head != v) continue;
    if (wv != kNoArc)
      throw PreconditionError(
          "parallel root arcs to the target; deduplicate first");
    wv = a;
  }
  if (wv == kNoArc)
    throw PreconditionError("no root arc to the target vertex");

  const DiGraph d = g.delete_arc(wv);
  const std::vector<Arborescence> arbs = enumerate_arborescences(d);
  if (arbs.empty()) {
    res.detail = "graph minus the root arc has no arborescence";
    return res;
  }

  // The defining test: flipping the root arc in must land every
  // arborescence of the reduced graph on one single tree.
  std::optional<Arborescence> target;
  for (const Arborescence& a : arbs) {
    Arborescence flipped = apply_flip(g, a, {a.parent[v], wv, v});
    if (!target) {
      target = std::move(flipped);
    } else if (!(*target == flipped)) {
      res.detail = "two arborescences flip the root arc to different trees";
      return res;
    }
  }
  res.applicable = true;

  if (!g.is_clique_support_minus_root()) {
    res.detail =
        "support minus the root is not a clique; structural classification "
        "skipped";
    return res;
  }

  auto fail = [&](const std::string& why) -> FlipCliqueStructure {
    throw InternalInconsistencyError(
        "rigid-structure classification failed: " + why, {});
  };

  // BFS layers of the reduced graph.
  std::vector<int> depth(d.n(), -1);
  depth[w] = 0;
  std::vector<VertexId> queue{w};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const VertexId cur = queue[qi];
    for (const VertexId t : d.out_neighbors(cur)) {
      if (depth[t] != -1) continue;
      depth[t] = depth[cur] + 1;
      queue.push_back(t);
    }
  }
  for (int z = 0; z < d.n(); ++z)
    if (depth[z] == -1) return fail("a vertex is unreachable despite an arborescence");

  std::map<int, std::vector<VertexId>> layers;
  for (int z = 0; z < d.n(); ++z)
    if (z != w) layers[depth[z]].push_back(z);

  // Unique root paths for every vertex but v.
  const std::vector<int> paths = simple_path_counts(d);
  for (int z = 0; z < d.n(); ++z) {
    if (z == w || z == v) continue;
    if (paths[z] != 1) return fail("a vertex off the apex has several root paths");
  }
  const int k = depth[v];
  res.k = k;
  if (k < 2) return fail("the apex sits next to the root");

  bool all_single = true;
  for (const auto& [lev, vs] : layers)
    if (vs.size() != 1) all_single = false;

  std::ostringstream det;
  if (all_single) {
    // Path family: the reduced graph is built on one directed path and the
    // apex is the k-th vertex of that path.
    res.family = 'L';
    res.n = g.n() - 1;
    if (static_cast<int>(layers.size()) != res.n)
      return fail("path family with a layer gap");
    if (arbs.size() != 1) return fail("path family with several arborescences");
    if (!is_built_on(d, arbs[0]))
      return fail("extra arcs do not all run toward ancestors");
    det << "L(" << res.k << "," << res.n << "): chain";
    for (const auto& [lev, vs] : layers) det << ' ' << vs[0];
  } else {
    // Apex family: one layer holds the apex next to a chain vertex; the
    // chain is unique and the apex takes arcs from a suffix of it.
    res.family = 'M';
    res.n = g.n() - 2;
    std::vector<VertexId> chain(res.n + 1, -1);
    chain[0] = w;
    for (const auto& [lev, vs] : layers) {
      if (lev == 0) continue;
      std::vector<VertexId> others;
      for (const VertexId z : vs)
        if (z != v) others.push_back(z);
      if (others.size() != 1 || (vs.size() == 2 && lev != k) ||
          vs.size() > 2)
        return fail("layers do not form a chain plus one apex");
      if (lev > res.n) return fail("layer depth exceeds the chain length");
      chain[lev] = others[0];
    }
    for (int lev = 1; lev <= res.n; ++lev)
      if (chain[lev] == -1) return fail("a chain layer is missing");
    // The apex must take arcs from exactly the chain suffix k-1..n and
    // send arcs only to the root or the chain prefix.
    std::set<VertexId> in_tails;
    for (const ArcId a : d.in_arcs(v)) in_tails.insert(d.arc(a).tail);
    for (int lev = 1; lev <= res.n; ++lev) {
      const bool expected = (lev >= k - 1);
      if (expected && !in_tails.count(chain[lev]))
        return fail("apex misses an arc from the chain suffix");
      if (!expected && in_tails.count(chain[lev]))
        return fail("apex takes an arc from the chain prefix");
    }
    for (const VertexId t : d.out_neighbors(v)) {
      if (t == w) continue;
      if (depth[t] >= k && t != v) return fail("apex sends an arc forward");
    }
    det << "M(" << res.k << "," << res.n << "): chain";
    for (int lev = 1; lev <= res.n; ++lev) det << ' ' << chain[lev];
    det << " apex " << v;
  }
  res.detail = det.str();
  return res;
}

// ---------------------------------------------------------------------------
// The main recursion.
// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxDepth = 200;

std::vector<ArcId> key_of(const Arborescence& a) { return a.sorted_arc_ids(); }

void merge_child(std::vector<std::string>& prov, const std::string& label,
                 const std::vector<std::string>& child) {
  prov.push_back(label);
  for (const std::string& line : child) prov.push_back("  " + line);
}

GrayPath gcc_recurse(const DiGraph& g, int depth);

// The four-piece assembly for a root with at least two out-neighbours.
std::vector<Arborescence> assemble_pieces(
    const DiGraph& g2, std::vector<std::string>& prov,
    std::vector<Arborescence> pme, std::vector<Arborescence> pz,
    const Ladder& lad, const RootCollapse& col_e, ArcId e, ArcId f,
    ArcId g_arc, VertexId u, VertexId v) {
  const int p = static_cast<int>(pme.size());
  const int q = static_cast<int>(pz.size());
  const int n_lad = static_cast<int>(lad.levels.size());

  std::map<std::vector<ArcId>, std::pair<int, int>> ladpos;
  for (int i = 0; i < n_lad; ++i) {
    ladpos[key_of(lad.levels[i].first)] = {i + 1, 0};
    ladpos[key_of(lad.levels[i].second)] = {i + 1, 1};
  }
  std::map<std::vector<ArcId>, int> zpos;
  for (int i = 0; i < q; ++i) zpos[key_of(pz[i])] = i;

  auto lad_node = [&](int lev, int side) -> const Arborescence& {
    return side == 0 ? lad.levels[lev - 1].first : lad.levels[lev - 1].second;
  };
  auto lad_arbs = [&](const std::vector<std::pair<int, int>>& w) {
    std::vector<Arborescence> out;
    out.reserve(w.size());
    for (const auto& [lev, side] : w) out.push_back(lad_node(lev, side));
    return out;
  };
  // The ladder's boundary Hamiltonian cycle: down the left column, across
  // the far rung, back up the right column, across the near rung.
  auto boundary_cycle = [&]() {
    std::vector<Arborescence> cyc;
    cyc.reserve(2 * static_cast<std::size_t>(n_lad));
    for (int lev = 1; lev <= n_lad; ++lev) cyc.push_back(lad_node(lev, 0));
    for (int lev = n_lad; lev >= 1; --lev) cyc.push_back(lad_node(lev, 1));
    return cyc;
  };
  auto rotate_at = [&](std::vector<Arborescence> cyc,
                       const Arborescence& at) {
    const auto k = key_of(at);
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (key_of(cyc[i]) == k) {
        std::rotate(cyc.begin(), cyc.begin() + static_cast<long>(i),
                    cyc.end());
        return cyc;
      }
    }
    throw InternalInconsistencyError(
        "expected arborescence missing from the assembled cycle", prov);
  };
  auto concat = [](std::vector<Arborescence> a,
                   const std::vector<Arborescence>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  auto tilde = [&](const Arborescence& b) {
    return apply_flip(g2, b, {b.parent[u], e, u});
  };
  auto fprime = [&](const Arborescence& a) {
    return apply_flip(g2, a, {a.parent[v], f, v});
  };

  if (p == 0 && q == 0) {
    prov.push_back("all arborescences use both root arcs: ladder only");
    if (n_lad == 1)
      return {lad.levels[0].first, lad.levels[0].second};
    return lad_arbs(ladder_ham_path(n_lad, 1, 0, n_lad));
  }

  if (q == 0) {
    prov.push_back(
        "no arborescence avoids both rung arcs: deletion path, then the "
        "ladder boundary cycle");
    const Arborescence b2t = tilde(pme.back());
    if (!ladpos.count(key_of(b2t)))
      throw InternalInconsistencyError(
          "deletion extremity flip should land on the ladder", prov);
    return concat(std::move(pme), rotate_at(boundary_cycle(), b2t));
  }

  if (p == 0) {
    prov.push_back(
        "every arborescence uses the first root arc: contraction path, then "
        "the ladder boundary cycle");
    const Arborescence a2p = fprime(pz.back());
    if (!ladpos.count(key_of(a2p)))
      throw InternalInconsistencyError(
          "contraction extremity flip should land on the ladder", prov);
    return concat(std::move(pz), rotate_at(boundary_cycle(), a2p));
  }

  // Both the deletion path and the contraction path are non-empty.
  auto level_of_fprime = [&](const Arborescence& a) {
    const auto it = ladpos.find(key_of(fprime(a)));
    if (it == ladpos.end() || it->second.second != 0)
      throw InternalInconsistencyError(
          "flipping the contraction extremity misses the left column", prov);
    return it->second.first;
  };

  int l1 = level_of_fprime(pz.front());
  int l2 = level_of_fprime(pz.back());

  if (l1 == l2 && q > 0) {
    // The two extremities meet the same ladder level, so the contraction
    // path closes into a cycle; reopen it at a level-changing pair if any.
    bool reopened = false;
    for (int i = 0; i < q; ++i) {
      const int li = level_of_fprime(pz[i]);
      const int lj = level_of_fprime(pz[(i + 1) % q]);
      if (li != lj) {
        std::rotate(pz.begin(), pz.begin() + ((i + 1) % q), pz.end());
        prov.push_back("reopened the contraction cycle at position " +
                       std::to_string(i));
        l1 = level_of_fprime(pz.front());
        l2 = level_of_fprime(pz.back());
        reopened = true;
        break;
      }
    }
    if (!reopened) l2 = l1;  // constant level: fall through to the rigid cases
  }

  if (l1 != l2) {
    // Easy case: the ladder path between the two met levels closes the
    // contraction path into a cycle through everything but the deletions.
    prov.push_back("easy case: contraction extremities meet distinct levels " +
                   std::to_string(l1) + " and " + std::to_string(l2));
    const auto w = lad_arbs(ladder_ham_path(n_lad, l1, 0, l2));
    std::vector<Arborescence> cyc = pz;
    cyc.insert(cyc.end(), w.rbegin(), w.rend());
    const Arborescence bt = tilde(pme.back());
    return concat(std::move(pme), rotate_at(std::move(cyc), bt));
  }

  // The flip into the left column is the same tree for the whole
  // contraction path; that set is a clique and the rung pair is fixed.
  const Arborescence ap = fprime(pz.front());
  Arborescence app = ap;
  app.parent[v] = g_arc;
  const int la = ladpos.at(key_of(ap)).first;
  const auto kap = key_of(ap);
  const auto kapp = key_of(app);
  prov.push_back("contraction flips are constant at level " +
                 std::to_string(la));

  auto d3a = [&](std::vector<Arborescence> ord, const Arborescence& bt) {
    prov.push_back("deletion extremity lands in the contraction set");
    std::vector<Arborescence> zseq{bt};
    const auto kb = key_of(bt);
    for (const Arborescence& z : pz)
      if (key_of(z) != kb) zseq.push_back(z);
    std::vector<Arborescence> w;
    if (n_lad == 1) {
      w = {ap, app};
    } else {
      const int j = (la == n_lad) ? 1 : n_lad;
      w = lad_arbs(ladder_ham_path(n_lad, la, 0, j));
    }
    return concat(concat(std::move(ord), zseq), w);
  };
  auto d3b = [&](std::vector<Arborescence> ord, int lb, int sb) {
    prov.push_back("deletion extremity lands on the ladder off the rung");
    const auto w = lad_arbs(ladder_ham_path(n_lad, lb, sb, la));
    return concat(concat(std::move(ord), w), pz);
  };
  auto dispatch = [&](std::vector<Arborescence> ord)
      -> std::optional<std::vector<Arborescence>> {
    const Arborescence bt_last = tilde(ord.back());
    const Arborescence bt_first = tilde(ord.front());
    if (zpos.count(key_of(bt_last))) return d3a(std::move(ord), bt_last);
    if (zpos.count(key_of(bt_first))) {
      std::reverse(ord.begin(), ord.end());
      return d3a(std::move(ord), bt_first);
    }
    const auto kl = key_of(bt_last);
    if (auto it = ladpos.find(kl);
        it != ladpos.end() && kl != kap && kl != kapp)
      return d3b(std::move(ord), it->second.first, it->second.second);
    const auto kf = key_of(bt_first);
    if (auto it = ladpos.find(kf);
        it != ladpos.end() && kf != kap && kf != kapp) {
      std::reverse(ord.begin(), ord.end());
      return d3b(std::move(ord), it->second.first, it->second.second);
    }
    return std::nullopt;  // both extremities flip onto the fixed rung pair
  };

  if (auto res = dispatch(pme)) return *res;

  const Arborescence b1t = tilde(pme.front());
  const Arborescence b2t = tilde(pme.back());
  if (!(b1t == b2t))
    throw InternalInconsistencyError(
        "deletion extremities flip onto the two distinct rung ends", prov);

  // The deletion path closes into a cycle; reopen at a flip-changing pair.
  for (int i = 0; i < p; ++i) {
    if (!(tilde(pme[i]) == tilde(pme[(i + 1) % p]))) {
      std::vector<Arborescence> reopened = pme;
      std::rotate(reopened.begin(), reopened.begin() + ((i + 1) % p),
                  reopened.end());
      prov.push_back("reopened the deletion cycle at position " +
                     std::to_string(i));
      if (auto res = dispatch(std::move(reopened))) return *res;
      throw InternalInconsistencyError(
          "reopened deletion extremities still flip onto both rung ends",
          prov);
    }
  }

  // Terminal rigid case: every deletion flips onto the same tree, which
  // must be the left rung end, and both reduced graphs carry the rigid
  // path-or-apex structure; the ladder degenerates to an edge or a square.
  if (!(b1t == ap))
    throw InternalInconsistencyError(
        "constant deletion flip misses the left rung end", prov);
  FlipCliqueStructure det1 = detect_flip_clique_structure(g2, u);
  if (!det1.applicable || (det1.family != 'L' && det1.family != 'M'))
    throw InternalInconsistencyError(
        "rigid structure missing at the root: " + det1.detail, prov);
  FlipCliqueStructure det2 =
      detect_flip_clique_structure(col_e.graph, col_e.old_to_new[v]);
  if (!det2.applicable || (det2.family != 'L' && det2.family != 'M'))
    throw InternalInconsistencyError(
        "rigid structure missing after contraction: " + det2.detail, prov);
  prov.push_back("terminal rigid case: root structure " + det1.detail +
                 "; contracted structure " + det2.detail);
  if (n_lad > 2)
    throw InternalInconsistencyError(
        "terminal rigid case with more than two ladder levels", prov);

  std::vector<Arborescence> mid;
  if (n_lad == 1) {
    mid = {ap, app};
  } else {
    const int other = 3 - la;
    mid = {lad_node(la, 0), lad_node(other, 0), lad_node(other, 1),
           lad_node(la, 1)};
  }
  return concat(concat(std::move(pme), mid), pz);
}

std::vector<Arborescence> gcc_core(const DiGraph& g2,
                                   std::vector<std::string>& prov,
                                   int depth) {
  const VertexId r = g2.root();
  const std::vector<VertexId> outs = g2.out_neighbors(r);
  if (outs.empty())
    throw InternalInconsistencyError(
        "arborescences exist but the root has no out-arc", prov);

  if (outs.size() == 1) {
    const ArcId a = g2.out_arcs(r)[0];
    prov.push_back("single root out-arc: collapse and lift");
    GrayPath sub = gcc_recurse(collapse_root_arc(g2, a).graph, depth + 1);
    merge_child(prov, "recurse on the collapsed graph:", sub.provenance);
    if (sub.steps.empty())
      throw InternalInconsistencyError("collapse lost all arborescences",
                                       prov);
    const RootCollapse col = collapse_root_arc(g2, a);
    const Arborescence start = resolve_fiber(col, sub.steps[0], {});
    GrayPath lifted = lift_contraction_path(g2, a, sub, start);
    merge_child(prov, "lift through the collapse:", lifted.provenance);
    return std::move(lifted.steps);
  }

  const auto [u, v] = choose_pivot_pair(g2);
  prov.push_back("pivot pair (" + std::to_string(u) + ", " +
                 std::to_string(v) + ")");
  auto arc_between = [&](VertexId t, VertexId h) {
    ArcId found = kNoArc;
    for (const ArcId a : g2.out_arcs(t))
      if (g2.arc(a).head == h) found = a;
    if (found == kNoArc)
      throw InternalInconsistencyError("expected arc is missing", prov);
    return found;
  };
  const ArcId e = arc_between(r, u);
  const ArcId f = arc_between(r, v);
  const ArcId g_arc = arc_between(u, v);

  // Piece 1: everything that avoids e.
  GrayPath pme = gcc_recurse(g2.delete_arc(e), depth + 1);
  merge_child(prov, "recurse without the first root arc:", pme.provenance);

  // Piece 2: the ladder over arborescences with e and f (left column),
  // mirrored into e-and-g (right column).  Build the left column by
  // collapsing e and then f out of the graph without g.
  const DiGraph d = g2.delete_arc(g_arc);
  const RootCollapse col_ed = collapse_root_arc(d, e);
  const ArcId f_img = col_ed.arc_image.at(f);
  const RootCollapse col_lad = collapse_root_arc(col_ed.graph, f_img);
  GrayPath ph = gcc_recurse(col_lad.graph, depth + 1);
  merge_child(prov, "recurse on the double collapse:", ph.provenance);
  if (ph.steps.empty())
    throw InternalInconsistencyError(
        "left column cannot be empty while arborescences exist", prov);
  GrayPath qq = lift_contraction_path(
      col_ed.graph, f_img, ph, resolve_fiber(col_lad, ph.steps[0], {}));
  merge_child(prov, "lift the inner collapse:", qq.provenance);
  GrayPath left = lift_contraction_path(
      d, e, qq, resolve_fiber(col_ed, qq.steps[0], {}));
  merge_child(prov, "lift the outer collapse:", left.provenance);

  Ladder lad;
  lad.left_arc = f;
  lad.right_arc = g_arc;
  lad.rung_vertex = v;
  for (Arborescence& a : left.steps) {
    Arborescence mirror = a;
    mirror.parent[v] = g_arc;
    lad.levels.push_back({std::move(a), std::move(mirror)});
  }
  prov.push_back("ladder with " + std::to_string(lad.levels.size()) +
                 " levels");

  // Piece 3: arborescences with e but neither f nor g, via the collapse
  // of e with the merged root arc to v removed.
  const RootCollapse col_e = collapse_root_arc(g2, e);
  const ArcId gamma = col_e.arc_image.at(f);
  GrayPath pzc = gcc_recurse(col_e.graph.delete_arc(gamma), depth + 1);
  merge_child(prov, "recurse on the collapse without the rung:",
              pzc.provenance);
  std::vector<Arborescence> pz;
  if (!pzc.steps.empty()) {
    GrayPath lifted = lift_contraction_path(
        g2, e, pzc, resolve_fiber(col_e, pzc.steps[0], {}));
    merge_child(prov, "lift the rungless collapse:", lifted.provenance);
    pz = std::move(lifted.steps);
  }

  const long long total = count_arborescences_matrix_tree(g2);
  if (static_cast<long long>(pme.steps.size()) +
          static_cast<long long>(pz.size()) +
          2LL * static_cast<long long>(lad.levels.size()) !=
      total)
    throw InternalInconsistencyError("type sizes do not sum to the count",
                                     prov);

  return assemble_pieces(g2, prov, std::move(pme.steps), std::move(pz), lad,
                         col_e, e, f, g_arc, u, v);
}

GrayPath gcc_recurse(const DiGraph& g, int depth) {
  if (depth > kMaxDepth)
    throw InternalInconsistencyError("recursion depth cap exceeded", {});
  std::vector<std::string> prov;

  const long long cnt = count_arborescences_matrix_tree(g);
  if (cnt == 0) return finish_path(g, {}, {"no arborescences: empty path"});
  if (g.n() == 1) {
    Arborescence a;
    a.parent = {kNoArc};
    return finish_path(g, {a}, {"single vertex"});
  }
  if (!g.is_clique_support_minus_root())
    throw InternalInconsistencyError(
        "recursion reached a graph whose support minus the root is not a "
        "clique",
        prov);

  // Arcs into the root never sit in an arborescence: drop them.
  DiGraph g1 = g;
  {
    std::vector<ArcId> into_root;
    for (const Arc& a : g1.arcs())
      if (a.head == g1.root()) into_root.push_back(a.id);
    for (const ArcId a : into_root) g1 = g1.delete_arc(a);
    if (!into_root.empty())
      prov.push_back("dropped " + std::to_string(into_root.size()) +
                     " arcs into the root");
  }

  // Deduplicate parallel arcs; solve the simple graph; re-lift in reverse.
  std::vector<std::pair<ArcId, ArcId>> removals;  // (removed, kept)
  {
    std::map<std::pair<VertexId, VertexId>, ArcId> kept_of;
    for (const Arc& a : g1.arcs()) {
      auto [it, inserted] = kept_of.try_emplace({a.tail, a.head}, a.id);
      if (!inserted) removals.push_back({a.id, it->second});
    }
  }
  DiGraph g2 = g1;
  for (const auto& [removed, kept] : removals) g2 = g2.delete_arc(removed);
  if (!removals.empty())
    prov.push_back("set aside " + std::to_string(removals.size()) +
                   " duplicate arcs");

  std::vector<Arborescence> steps = gcc_core(g2, prov, depth);

  for (std::size_t i = removals.size(); i-- > 0;) {
    DiGraph gi = g1;
    for (std::size_t j = 0; j < i; ++j) gi = gi.delete_arc(removals[j].first);
    GrayPath base;
    base.steps = std::move(steps);
    GrayPath lifted = lift_duplication_path(gi, removals[i].second,
                                            removals[i].first, base);
    steps = std::move(lifted.steps);
    prov.push_back("re-lifted duplicate arc " +
                   std::to_string(removals[i].first));
  }

  GrayPath res = finish_path(g, std::move(steps), std::move(prov));
  const VerifyReport rep = verify_gray_code(g, res.steps);
  if (!rep.pass())
    throw InternalInconsistencyError("self-check failed: " + rep.detail,
                                     res.provenance);
  return res;
}

}  // namespace

GrayPath gray_code_clique_support(const DiGraph& g) {
  if (!g.is_clique_support_minus_root())
    throw PreconditionError("support minus the root must be a clique");
  return gcc_recurse(g, 0);
}

GrayPath spanning_tree_pivot_gray_code(int n, DiGraph* bidirected_out) {
  if (n < 1) throw PreconditionError("need at least one vertex");
  DiGraph g = make_bidirected_complete(n);
  GrayPath p = gray_code_clique_support(g);
  if (bidirected_out) *bidirected_out = g;
  return p;
}

std::vector<std::vector<std::pair<VertexId, VertexId>>> tree_edge_sets(
    const DiGraph& g, const GrayPath& path) {
  std::vector<std::vector<std::pair<VertexId, VertexId>>> out;
  out.reserve(path.steps.size());
  for (const Arborescence& a : path.steps) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const ArcId id : a.sorted_arc_ids()) {
      const Arc& arc = g.arc(id);
      edges.push_back(
          {std::min(arc.tail, arc.head), std::max(arc.tail, arc.head)});
    }
    std::sort(edges.begin(), edges.end());
    out.push_back(std::move(edges));
  }
  return out;
}

std::string gray_path_to_json(const DiGraph& g, const GrayPath& p) {
  (void)g;
  nlohmann::json j;
  j["n_steps"] = p.steps.size();
  nlohmann::json steps = nlohmann::json::array();
  for (const Arborescence& a : p.steps) steps.push_back(a.sorted_arc_ids());
  j["steps"] = std::move(steps);
  nlohmann::json flips = nlohmann::json::array();
  for (const Flip& f : p.flips)
    flips.push_back(
        {{"removed", f.removed}, {"added", f.added}, {"pivot", f.pivot}});
  j["flips"] = std::move(flips);
  j["provenance"] = p.provenance;
  return j.dump(2) + "\n";
}

std::string gray_path_to_delta_text(const DiGraph& g, const GrayPath& p) {
  (void)g;
  if (p.steps.empty()) return "";
  std::ostringstream out;
  out << arb_to_line(p.steps[0]) << '\n';
  for (const Flip& f : p.flips)
    out << '-' << f.removed << " +" << f.added << '\n';
  return out.str();
}

std::vector<std::vector<ArcId>> gray_path_steps_from_json(
    const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw ParseError(std::string("invalid JSON: ") + ex.what());
  }
  if (!j.is_object() || !j.contains("steps") || !j["steps"].is_array())
    throw ParseError("JSON path must be an object with a steps array");
  std::vector<std::vector<ArcId>> out;
  for (const auto& step : j["steps"]) {
    if (!step.is_array()) throw ParseError("each step must be an array");
    std::vector<ArcId> ids;
    for (const auto& id : step) {
      if (!id.is_number_integer())
        throw ParseError("arc ids must be integers");
      ids.push_back(id.get<ArcId>());
    }
    out.push_back(std::move(ids));
  }
  return out;
}

}  // namespace arbogray
