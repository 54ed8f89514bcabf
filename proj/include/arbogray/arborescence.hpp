#ifndef ARBOGRAY_ARBORESCENCE_HPP
#define ARBOGRAY_ARBORESCENCE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arbogray/digraph.hpp"

namespace arbogray {

// Spanning tree directed away from the root, stored as the map from each
// non-root vertex to its unique incoming arc.  parent[root] == kNoArc.
// Equality is parent-map equality over arc ids, so parallel arcs give
// distinct arborescences.
struct Arborescence {
  std::vector<ArcId> parent;

  bool operator==(const Arborescence&) const = default;
  // Arc ids of the tree, ascending — the serialization order.
  std::vector<ArcId> sorted_arc_ids() const;
  bool contains(ArcId a) const;
};

// One Gray-code step: the removed and added arcs share their head, the pivot.
struct Flip {
  ArcId removed = kNoArc;
  ArcId added = kNoArc;
  VertexId pivot = -1;

  bool operator==(const Flip&) const = default;
};

// True iff cand maps every non-root vertex to an arc of g heading into it
// and the resulting tree spans g from the root.  Malformed input yields
// false, never an exception.
bool is_arborescence(const DiGraph& g, const Arborescence& cand);

// D_A(u): u together with its subtree in the arborescence.
std::vector<VertexId> descendants(const DiGraph& g, const Arborescence& A,
                                  VertexId u);

// All flips applicable to A: one per arc u->v of g outside A whose tail u is
// not a descendant of v in A (flipping such an arc in cannot create a cycle,
// and the tail stays reachable from the root without passing v).
std::vector<Flip> legal_flips(const DiGraph& g, const Arborescence& A);

// Applies a legal flip; throws PreconditionError on an illegal one.
Arborescence apply_flip(const DiGraph& g, const Arborescence& A,
                        const Flip& f);

// The Flip turning A into B; requires the two to differ at exactly one
// vertex (throws PreconditionError otherwise).
Flip flip_between(const DiGraph& g, const Arborescence& A,
                  const Arborescence& B);

// Extends a partial parent map (a directed subtree containing the root
// component) into a full arborescence.  Repeatedly adds the smallest-ArcId
// arc from the covered set into a closest uncovered vertex (breadth-first
// layering).  Throws PreconditionError when g has no arborescence or the
// partial map is not a root-connected subtree.
Arborescence complete_subtree(const DiGraph& g,
                              const std::map<VertexId, ArcId>& partial);

// Serialization used by golden files and DOT labels: sorted arc ids,
// space-separated; "-" for the empty tree of a single-vertex graph.
std::string arb_to_line(const Arborescence& A);

// Rebuilds a parent map from a set of arc ids; nullopt when the ids do not
// form a function from non-root vertices to incoming arcs (the caller
// decides whether that is an error).
std::optional<Arborescence> arb_from_arc_ids(const DiGraph& g,
                                             const std::vector<ArcId>& ids);

// The tree as a subgraph of g (same ids), for built-on checks.
DiGraph arborescence_subgraph(const DiGraph& g, const Arborescence& A);

// is_built_on against an arborescence of h.
bool is_built_on(const DiGraph& h, const Arborescence& A);

}  // namespace arbogray

#endif  // ARBOGRAY_ARBORESCENCE_HPP
