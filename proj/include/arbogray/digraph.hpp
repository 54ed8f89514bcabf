#ifndef ARBOGRAY_DIGRAPH_HPP
#define ARBOGRAY_DIGRAPH_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arbogray/errors.hpp"

namespace arbogray {

using VertexId = int;
using ArcId = int;
inline constexpr ArcId kNoArc = -1;

struct Arc {
  ArcId id;
  VertexId tail;
  VertexId head;
};

class DiGraph {
 public:
  // Empty graph on n vertices (0..n-1) with the given root.
  DiGraph(int n, VertexId root);

  // Low-level constructor from parts; validates ranges, id uniqueness and
  // ascending order, and the absence of self-loops.  Used by transformations
  // that must preserve arc ids.
  DiGraph(int n, VertexId root, std::vector<Arc> arcs, ArcId next_arc_id,
          std::map<ArcId, ArcId> lineage);

  // Text format: first line "n m root", then m lines "tail head"
  // (0-indexed).  Lines starting with '#' are comments.  Duplicate arc
  // lines are allowed and produce parallel arcs.
  static DiGraph parse(const std::string& text);
  std::string to_text() const;

  int n() const { return n_; }
  VertexId root() const { return root_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  // Arcs in ascending id order.
  const std::vector<Arc>& arcs() const { return arcs_; }
  bool has_arc(ArcId a) const;
  const Arc& arc(ArcId a) const;  // throws PreconditionError if unknown
  ArcId next_arc_id() const { return next_arc_id_; }
  // Map from each arc id to the id it originated from in the graph this one
  // was derived from; empty for graphs built from scratch.
  const std::map<ArcId, ArcId>& lineage() const { return lineage_; }

  // Builder: appends an arc with a fresh id; rejects self-loops and
  // out-of-range endpoints.  Graphs are treated as immutable once shared.
  ArcId add_arc(VertexId tail, VertexId head);

  std::vector<ArcId> out_arcs(VertexId v) const;
  std::vector<ArcId> in_arcs(VertexId v) const;
  // Distinct out-neighbours, sorted ascending.
  std::vector<VertexId> out_neighbors(VertexId v) const;

  // Set of unordered endpoint pairs {u,v} having at least one arc.
  std::set<std::pair<VertexId, VertexId>> support() const;
  // True iff the support of the graph minus the root covers all pairs of
  // the remaining n-1 vertices.
  bool is_clique_support_minus_root() const;

  // vertex -> reachable-from-s flag, following arc directions.
  std::vector<char> reachable_from(VertexId s) const;
  // D(u) = {u} plus every vertex all of whose paths from the root pass
  // through u.  Requires every vertex reachable from the root.
  std::vector<VertexId> descendants(VertexId u) const;

  DiGraph delete_arc(ArcId a) const;
  // Replace arc u->w by u->z and z->w through a fresh vertex z (id n).
  DiGraph subdivide_arc(ArcId a) const;
  // Add a parallel copy of a; returns the new graph and the copy's id.
  std::pair<DiGraph, ArcId> duplicate_arc(ArcId a) const;

  struct Contraction;
  // Contract a root arc r->x, merging r and x into the new root (id 0).
  // Parallel arcs arising from the merge are kept distinct.
  Contraction contract_root_arc(ArcId a) const;

  bool operator==(const DiGraph& other) const;

 private:
  int n_;
  VertexId root_;
  std::vector<Arc> arcs_;  // ascending id
  ArcId next_arc_id_;
  std::map<ArcId, ArcId> lineage_;

  void check_vertex(VertexId v, const char* what) const;
};

struct DiGraph::Contraction {
  DiGraph graph;
  // original ArcId -> image ArcId for every surviving arc (identity on ids).
  std::map<ArcId, ArcId> arc_map;
  // original VertexId -> new VertexId;  root and x both map to 0.
  std::vector<VertexId> vertex_map;
};

// True iff E(g) is a subset of E(h) (same ids, same endpoints) and every
// extra arc u->v of h has u a descendant of v in g.  Both graphs must share
// the vertex set and root; g must reach every vertex from the root.
bool is_built_on(const DiGraph& h, const DiGraph& g);

}  // namespace arbogray

#endif  // ARBOGRAY_DIGRAPH_HPP
