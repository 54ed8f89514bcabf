#ifndef ARBOGRAY_GRAYCODE_HPP
#define ARBOGRAY_GRAYCODE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "arbogray/arborescence.hpp"
#include "arbogray/digraph.hpp"

namespace arbogray {

// Ordered pivot Gray code: consecutive arborescences differ by one flip.
// provenance records the recursion's decisions (chosen pivot pair, case
// labels, fiber dimensions) for diagnosis.
struct GrayPath {
  std::vector<Arborescence> steps;
  std::vector<Flip> flips;  // flips[i] turns steps[i] into steps[i+1]
  std::vector<std::string> provenance;
};

// Two parallel Gray paths (columns) joined level by level by the same
// arc exchange (the rung).
struct Ladder {
  std::vector<std::pair<Arborescence, Arborescence>> levels;
  ArcId left_arc = kNoArc;   // parent of the rung vertex in every left node
  ArcId right_arc = kNoArc;  // ... in every right node
  VertexId rung_vertex = -1;
};

// The four-way split of all arborescences by containment of e = r->u,
// f = r->v and g = u->v.
struct TypePartition {
  ArcId e = kNoArc, f = kNoArc, g = kNoArc;
  std::vector<Arborescence> t_minus_e;  // without e
  std::vector<Arborescence> t_ef;       // with e and f
  std::vector<Arborescence> t_eg;       // with e and g
  std::vector<Arborescence> t_fg;       // with e, with neither f nor g
};

// --- abstract primitives ---------------------------------------------------

// Hamiltonian path of the 2 x n ladder graph (levels 1..n, sides 0=left,
// 1=right) starting at (i, side) and ending at level j != i.  The side of
// the endpoint is not selectable: it is forced by the parity of j - i.
// Returned as (level, side) pairs.
std::vector<std::pair<int, int>> ladder_ham_path(int n, int i, int side,
                                                 int j);

// Hamiltonian cycle of the d-dimensional hypercube containing the edge
// (u, v); d >= 2, u and v adjacent.  Reflected Gray code transported by a
// coordinate permutation and a translation.
std::vector<std::uint32_t> hypercube_ham_cycle_through_edge(int d,
                                                            std::uint32_t u,
                                                            std::uint32_t v);

// Hamiltonian path of the d-dimensional hypercube starting at start;
// d = 0 yields the single empty vertex.
std::vector<std::uint32_t> hypercube_ham_path_from(int d,
                                                   std::uint32_t start);

// --- contraction with merged parallels (internal form) ---------------------

// Contraction of a root arc a = r->x that additionally drops arcs into the
// merged root and merges each parallel class of root-out arcs down to its
// smallest id, so the result has no parallel arcs at the root.  This is the
// form whose arborescences the fibers are hypercubes over.
struct RootCollapse {
  DiGraph graph;                      // root 0 = merged vertex
  VertexId x = -1;                    // head of the contracted arc
  ArcId contracted_arc = kNoArc;      // a
  std::vector<VertexId> old_to_new;   // r and x map to 0
  std::vector<VertexId> new_to_old;   // new vertex -> old (0 -> old root)
  std::map<ArcId, ArcId> arc_image;   // surviving old arc -> image id
  // image root-out arc -> (old arc from r, old arc from x); kNoArc when
  // that side is absent.  Every image arc with tail 0 has an entry.
  std::map<ArcId, std::pair<ArcId, ArcId>> sides;
};

// Requires: a leaves the root; no duplicate (tail, head) pairs among arcs
// leaving r or x (deduplicate first).
RootCollapse collapse_root_arc(const DiGraph& g, ArcId a);

// Image of an arborescence of g containing a under the collapse.
Arborescence project_arborescence(const RootCollapse& col,
                                  const Arborescence& A);

// --- path lifting -----------------------------------------------------------

// Lifts a Gray path on the collapsed graph to a Gray path on g covering
// exactly the arborescences that contain a and project into the given path.
// Each collapsed node's fiber is a hypercube over the shared out-neighbours
// parented from the merged root; fibers are traversed by Gray paths and
// crossings realize the collapsed flip with tail r or x.  start must lie in
// the first fiber.
GrayPath lift_contraction_path(const DiGraph& g, ArcId a,
                               const GrayPath& contracted,
                               const Arborescence& start);

// Lifts a Gray path of g = gp minus e_copy to one of gp visiting, for each
// base node containing e, both the node and its e->e_copy mirror.
GrayPath lift_duplication_path(const DiGraph& gp, ArcId e, ArcId e_copy,
                               const GrayPath& base);

// --- main construction ------------------------------------------------------

// Among pairs (u,v) of root out-neighbours with an arc u->v, picks one
// maximizing |N+(u)|, ties by (u, v).  Requires >= 2 root out-neighbours
// and clique support minus the root.
std::pair<VertexId, VertexId> choose_pivot_pair(const DiGraph& g);

TypePartition partition_types(const DiGraph& g,
                              const std::vector<Arborescence>& arbs, ArcId e,
                              ArcId f, ArcId g_arc);

// Classification of the rigid structures that appear when flipping the
// root arc into v always produces the same arborescence: either the graph
// minus that arc is built on a directed path with v = v_k (family L), or on
// a path plus the apex v with in-arcs from a suffix of the path (family M).
struct FlipCliqueStructure {
  bool applicable = false;
  char family = '?';  // 'L' or 'M'
  int k = 0;
  int n = 0;
  std::string detail;  // reason when not applicable
};

FlipCliqueStructure detect_flip_clique_structure(const DiGraph& g,
                                                 VertexId v);

// Pivot Gray code over all arborescences of g (empty when none exist).
// Requires clique support minus the root.  The result always passes
// verify_gray_code; a proof-guaranteed-impossible configuration raises
// InternalInconsistencyError with the provenance trace.
GrayPath gray_code_clique_support(const DiGraph& g);

// Pivot Gray code over the spanning trees of the complete graph K_n:
// the construction on the bidirected K_n, orientation forgotten.  Returns
// the path on the bidirected graph; tree_edge_sets gives the undirected
// view.
GrayPath spanning_tree_pivot_gray_code(int n, DiGraph* bidirected_out = nullptr);

// Undirected edges {min,max} per step, for the spanning-tree view.
std::vector<std::vector<std::pair<VertexId, VertexId>>> tree_edge_sets(
    const DiGraph& g, const GrayPath& path);

// --- serialization ----------------------------------------------------------

std::string gray_path_to_json(const DiGraph& g, const GrayPath& p);
// First arborescence in full, then one "-a +b" line per step.
std::string gray_path_to_delta_text(const DiGraph& g, const GrayPath& p);
// Parses the JSON form back into arc-id step lists (for verify).
std::vector<std::vector<ArcId>> gray_path_steps_from_json(
    const std::string& text);

}  // namespace arbogray

#endif  // ARBOGRAY_GRAYCODE_HPP
