// Tests for the Gray-code construction layer: the abstract ladder and
// hypercube walks, root-arc collapse, the two path-lifting operations,
// pivot-pair selection, the type partition, rigid-structure detection, and
// the main recursive construction with its serializers.
#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "arbogray/arborescence.hpp"
#include "arbogray/digraph.hpp"
#include "arbogray/errors.hpp"
#include "arbogray/graycode.hpp"
#include "arbogray/instances.hpp"
#include "arbogray/oracle.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace arbogray;
using testutil::arb_of;
using testutil::random_digraph;

namespace {

// The two rigid families, built arc by arc.
//
// Chain with all backedges, v at the end of the chain (family L, k = n):
// vertices 0=w, 1..4 the chain, target v = 3... see make_l34 below for the
// exact instance used: chain 1,2,3,4 with v=3 of depth 3.
DiGraph make_l34() {
  DiGraph g(5, 0);
  g.add_arc(0, 1);  // 0: w -> v1
  g.add_arc(1, 2);  // 1: chain
  g.add_arc(2, 3);  // 2: chain
  g.add_arc(3, 4);  // 3: chain
  g.add_arc(3, 1);  // 4: backedge
  g.add_arc(4, 1);  // 5: backedge
  g.add_arc(4, 2);  // 6: backedge
  g.add_arc(0, 3);  // 7: the root arc into v
  return g;
}

// Chain plus an apex vertex fed by the suffix of the chain (family M).
DiGraph make_m34() {
  DiGraph g(6, 0);
  g.add_arc(0, 1);  // 0: w -> v1
  g.add_arc(1, 2);  // 1: chain
  g.add_arc(2, 3);  // 2: chain
  g.add_arc(3, 4);  // 3: chain
  g.add_arc(3, 1);  // 4: backedge
  g.add_arc(4, 1);  // 5: backedge
  g.add_arc(4, 2);  // 6: backedge
  g.add_arc(2, 5);  // 7: into the apex (depth k-1 = 2 feeds it)
  g.add_arc(3, 5);  // 8: into the apex
  g.add_arc(4, 5);  // 9: into the apex
  g.add_arc(5, 1);  // 10: backedge from the apex
  g.add_arc(0, 5);  // 11: the root arc into v = apex
  return g;
}

bool ladder_adjacent(std::pair<int, int> a, std::pair<int, int> b) {
  if (a.first == b.first) return a.second != b.second;
  if (a.second == b.second) return std::abs(a.first - b.first) == 1;
  return false;
}

// Builds a Gray path for an arbitrary graph from the oracle's Hamiltonian
// path over its flip graph; empty optional when the flip graph has none.
std::optional<GrayPath> oracle_gray_path(const DiGraph& g) {
  FlipGraph fg = build_flip_graph(g);
  if (fg.nodes.empty()) return std::nullopt;
  auto order = find_hamiltonian_path_bruteforce(fg);
  if (!order) return std::nullopt;
  GrayPath p;
  for (int idx : *order) p.steps.push_back(fg.nodes[idx]);
  for (size_t i = 0; i + 1 < p.steps.size(); ++i)
    p.flips.push_back(flip_between(g, p.steps[i], p.steps[i + 1]));
  return p;
}

}  // namespace

// --- ladder ------------------------------------------------------------

TEST_CASE("ladder walk, frozen example") {
  std::vector<std::pair<int, int>> want{
      {3, 0}, {2, 0}, {1, 0}, {1, 1}, {2, 1}, {3, 1}, {4, 1}, {4, 0}, {5, 0},
      {5, 1}, {6, 1}, {6, 0}, {7, 0}, {8, 0}, {9, 0}, {9, 1}, {8, 1}, {7, 1}};
  CHECK(ladder_ham_path(9, 3, 0, 7) == want);
}

TEST_CASE("ladder walk, exhaustive small cases") {
  for (int n = 2; n <= 8; ++n)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        for (int side = 0; side <= 1; ++side) {
          std::vector<std::pair<int, int>> w = ladder_ham_path(n, i, side, j);
          REQUIRE(w.size() == 2u * n);
          std::set<std::pair<int, int>> seen(w.begin(), w.end());
          CHECK(seen.size() == 2u * n);  // Hamiltonian
          CHECK(w.front() == std::pair<int, int>{i, side});
          CHECK(w.back().first == j);
          int want_side = (std::abs(j - i) % 2 == 0) ? 1 - side : side;
          CHECK(w.back().second == want_side);
          for (size_t t = 0; t + 1 < w.size(); ++t)
            CHECK(ladder_adjacent(w[t], w[t + 1]));
        }
      }
}

TEST_CASE("ladder walk rejects bad arguments") {
  CHECK_THROWS_AS(ladder_ham_path(1, 1, 0, 1), PreconditionError);
  CHECK_THROWS_AS(ladder_ham_path(4, 2, 0, 2), PreconditionError);  // i == j
  CHECK_THROWS_AS(ladder_ham_path(4, 0, 0, 2), PreconditionError);
  CHECK_THROWS_AS(ladder_ham_path(4, 1, 0, 5), PreconditionError);
  CHECK_THROWS_AS(ladder_ham_path(4, 1, 2, 3), PreconditionError);  // side
}

// --- hypercube ----------------------------------------------------------

TEST_CASE("hypercube path from a given corner") {
  CHECK(hypercube_ham_path_from(0, 0) == std::vector<std::uint32_t>{0});
  CHECK(hypercube_ham_path_from(1, 1) == std::vector<std::uint32_t>{1, 0});
  for (int d = 2; d <= 4; ++d) {
    for (std::uint32_t start = 0; start < (1u << d); ++start) {
      std::vector<std::uint32_t> w = hypercube_ham_path_from(d, start);
      REQUIRE(w.size() == (1u << d));
      CHECK(w.front() == start);
      std::set<std::uint32_t> seen(w.begin(), w.end());
      CHECK(seen.size() == w.size());
      for (std::uint32_t x : w) CHECK(x < (1u << d));
      for (size_t t = 0; t + 1 < w.size(); ++t)
        CHECK(std::popcount(w[t] ^ w[t + 1]) == 1);
    }
  }
  CHECK_THROWS_AS(hypercube_ham_path_from(2, 4), PreconditionError);
  CHECK_THROWS_AS(hypercube_ham_path_from(-1, 0), PreconditionError);
  CHECK_THROWS_AS(hypercube_ham_path_from(26, 0), PreconditionError);
}

TEST_CASE("hypercube cycle through a prescribed edge") {
  CHECK(hypercube_ham_cycle_through_edge(2, 0, 1) ==
        std::vector<std::uint32_t>{0, 1, 3, 2});
  for (int d = 2; d <= 4; ++d)
    for (std::uint32_t u = 0; u < (1u << d); ++u)
      for (int b = 0; b < d; ++b) {
        std::uint32_t v = u ^ (1u << b);
        std::vector<std::uint32_t> w = hypercube_ham_cycle_through_edge(d, u, v);
        REQUIRE(w.size() == (1u << d));
        CHECK(w[0] == u);
        CHECK(w[1] == v);
        std::set<std::uint32_t> seen(w.begin(), w.end());
        CHECK(seen.size() == w.size());
        for (size_t t = 0; t < w.size(); ++t)
          CHECK(std::popcount(w[t] ^ w[(t + 1) % w.size()]) == 1);
      }
  CHECK_THROWS_AS(hypercube_ham_cycle_through_edge(2, 0, 3), PreconditionError);
  CHECK_THROWS_AS(hypercube_ham_cycle_through_edge(2, 1, 1), PreconditionError);
  CHECK_THROWS_AS(hypercube_ham_cycle_through_edge(1, 0, 1), PreconditionError);
  CHECK_THROWS_AS(hypercube_ham_cycle_through_edge(2, 5, 4), PreconditionError);
}

// --- collapse ------------------------------------------------------------

TEST_CASE("collapse merges parallel root classes, contraction keeps them") {
  DiGraph i3 = make_intro_3vertex();  // arcs 0=r->u 1=u->v 2=r->v

  // Plain contraction keeps both arcs into v as parallels.
  CHECK(i3.contract_root_arc(0).graph.to_text() == "2 2 0\n0 1\n0 1\n");

  // The collapse merges them into one class arc, remembering both sides.
  RootCollapse col = collapse_root_arc(i3, 0);
  CHECK(col.graph.to_text() == "2 1 0\n0 1\n");
  CHECK(col.x == 1);
  CHECK(col.contracted_arc == 0);
  CHECK(col.old_to_new == std::vector<VertexId>{0, 0, 1});
  CHECK(col.new_to_old == std::vector<VertexId>{0, 2});
  std::map<ArcId, ArcId> want_img{{1, 1}, {2, 1}};
  CHECK(col.arc_image == want_img);
  REQUIRE(col.sides.count(1) == 1);
  CHECK(col.sides.at(1) == std::pair<ArcId, ArcId>{2, 1});

  CHECK_THROWS_AS(collapse_root_arc(i3, 1), PreconditionError);  // not at root
  CHECK_THROWS_AS(collapse_root_arc(i3, 9), PreconditionError);

  // Duplicate (tail, head) pairs at the root must be deduplicated first.
  DiGraph dup(3, 0);
  dup.add_arc(0, 1);
  dup.add_arc(0, 2);
  dup.add_arc(0, 2);
  CHECK_THROWS_AS(collapse_root_arc(dup, 0), PreconditionError);
}

TEST_CASE("projection sends both sides of a class to the same image") {
  DiGraph i3 = make_intro_3vertex();
  RootCollapse col = collapse_root_arc(i3, 0);
  Arborescence via_u = arb_of(i3, {0, 1});
  Arborescence via_r = arb_of(i3, {0, 2});
  CHECK(arb_to_line(project_arborescence(col, via_u)) == "1");
  CHECK(arb_to_line(project_arborescence(col, via_r)) == "1");
  // Projection requires the contracted arc.
  DiGraph k3 = make_bidirected_complete(3);
  RootCollapse colk = collapse_root_arc(k3, 0);
  for (const Arborescence& A : enumerate_arborescences(k3)) {
    if (!A.contains(0)) continue;
    CHECK(is_arborescence(colk.graph, project_arborescence(colk, A)));
  }
}

// --- lifting -------------------------------------------------------------

TEST_CASE("contraction lift, smallest example") {
  DiGraph i3 = make_intro_3vertex();
  RootCollapse col = collapse_root_arc(i3, 0);
  GrayPath contracted;
  contracted.steps = enumerate_arborescences(col.graph);  // single node
  REQUIRE(contracted.steps.size() == 1);

  Arborescence start = arb_of(i3, {0, 1});
  GrayPath lifted = lift_contraction_path(i3, 0, contracted, start);
  REQUIRE(lifted.steps.size() == 2);
  CHECK(arb_to_line(lifted.steps[0]) == "0 1");
  CHECK(arb_to_line(lifted.steps[1]) == "0 2");
  REQUIRE(lifted.flips.size() == 1);
  CHECK(lifted.flips[0].pivot == 2);
  // The fiber over the lone contracted node is a 1-dimensional hypercube.
  bool mentioned = false;
  for (const std::string& line : lifted.provenance)
    if (line.find("fiber of dimension 1") != std::string::npos)
      mentioned = true;
  CHECK(mentioned);

  // Starting from the other side reverses the fiber walk.
  GrayPath other = lift_contraction_path(i3, 0, contracted,
                                         arb_of(i3, {0, 2}));
  CHECK(arb_to_line(other.steps[0]) == "0 2");
  CHECK(arb_to_line(other.steps[1]) == "0 1");
}

TEST_CASE("contraction lift covers exactly the fiber of the given path") {
  int tested = 0;
  for (std::uint64_t seed = 1; seed <= 120 && tested < 50; ++seed) {
    DiGraph g = random_digraph(4 + static_cast<int>(seed % 2), seed * 97 + 3);
    // Pick a root out-arc whose collapse precondition holds.
    ArcId a = kNoArc;
    for (const Arc& arc : g.arcs())
      if (arc.tail == g.root()) {
        a = arc.id;
        break;
      }
    if (a == kNoArc) continue;
    std::optional<RootCollapse> maybe_col;
    try {
      maybe_col = collapse_root_arc(g, a);
    } catch (const PreconditionError&) {
      continue;
    }
    const RootCollapse& col = *maybe_col;
    auto contracted = oracle_gray_path(col.graph);
    if (!contracted || contracted->steps.empty()) continue;

    // Start: any arborescence with the arc that projects onto step 0.
    std::vector<Arborescence> with_a;
    for (const Arborescence& A : enumerate_arborescences(g))
      if (A.contains(a)) with_a.push_back(A);
    Arborescence start;
    bool found = false;
    for (const Arborescence& A : with_a)
      if (project_arborescence(col, A) == contracted->steps.front()) {
        start = A;
        found = true;
        break;
      }
    REQUIRE(found);  // fibers are never empty

    GrayPath lifted = lift_contraction_path(g, a, *contracted, start);
    ++tested;

    // It is a Gray walk over a subset: check everything except coverage of
    // the whole graph (the lift only covers arborescences containing a).
    VerifyReport rep = verify_gray_code(g, lifted.steps);
    CHECK(rep.valid_arborescences);
    CHECK(rep.no_duplicates);
    CHECK(rep.single_arc_steps);
    CHECK(rep.pivot_property);

    // Set equality with the fiber of the contracted path.
    std::set<std::vector<ArcId>> want;
    for (const Arborescence& A : with_a) want.insert(A.sorted_arc_ids());
    std::set<std::vector<ArcId>> got;
    for (const Arborescence& A : lifted.steps) got.insert(A.sorted_arc_ids());
    CHECK(got == want);

    // Projections reproduce the contracted steps as contiguous runs.
    std::vector<std::vector<ArcId>> proj_runs;
    for (const Arborescence& A : lifted.steps) {
      std::vector<ArcId> p =
          project_arborescence(col, A).sorted_arc_ids();
      if (proj_runs.empty() || proj_runs.back() != p) proj_runs.push_back(p);
    }
    REQUIRE(proj_runs.size() == contracted->steps.size());
    for (size_t k = 0; k < proj_runs.size(); ++k)
      CHECK(proj_runs[k] == contracted->steps[k].sorted_arc_ids());
  }
  CHECK(tested == 50);
}

TEST_CASE("contraction lift rejects inconsistent inputs") {
  DiGraph i3 = make_intro_3vertex();
  RootCollapse col = collapse_root_arc(i3, 0);
  GrayPath contracted;
  contracted.steps = enumerate_arborescences(col.graph);

  // Start lacking the contracted arc.
  CHECK_THROWS_AS(
      lift_contraction_path(i3, 0, contracted, Arborescence{}),
      PreconditionError);

  // Empty contracted path.
  GrayPath empty;
  CHECK_THROWS_AS(lift_contraction_path(i3, 0, empty, arb_of(i3, {0, 1})),
                  PreconditionError);
}

TEST_CASE("duplication lift, smallest example") {
  DiGraph g(2, 0);
  ArcId e = g.add_arc(0, 1);
  auto [gp, e_copy] = g.duplicate_arc(e);
  GrayPath base;
  base.steps = enumerate_arborescences(g);  // the single tree {e}
  REQUIRE(base.steps.size() == 1);
  GrayPath lifted = lift_duplication_path(gp, e, e_copy, base);
  REQUIRE(lifted.steps.size() == 2);
  CHECK(arb_to_line(lifted.steps[0]) == "0");
  CHECK(arb_to_line(lifted.steps[1]) == "1");
  CHECK(verify_gray_code(gp, lifted.steps).pass());
}

TEST_CASE("duplication lift doubles exactly the carriers") {
  int tested = 0;
  for (std::uint64_t seed = 1; seed <= 120 && tested < 50; ++seed) {
    DiGraph g = random_digraph(4 + static_cast<int>(seed % 2), seed * 61 + 9);
    if (g.arc_count() == 0) continue;
    auto base = oracle_gray_path(g);
    if (!base || base->steps.empty()) continue;
    ArcId e = g.arcs()[seed % g.arcs().size()].id;
    auto [gp, e_copy] = g.duplicate_arc(e);
    GrayPath lifted = lift_duplication_path(gp, e, e_copy, *base);
    ++tested;

    size_t carriers = 0;
    for (const Arborescence& A : base->steps)
      if (A.contains(e)) ++carriers;
    CHECK(lifted.steps.size() == base->steps.size() + carriers);

    // A full Gray code of g lifts to a full Gray code of gp.
    CHECK(verify_gray_code(gp, lifted.steps).pass());
  }
  CHECK(tested == 50);
}

TEST_CASE("duplication lift rejects non-parallel arcs") {
  DiGraph i3 = make_intro_3vertex();
  GrayPath base;
  base.steps = enumerate_arborescences(i3);
  // Arcs 0 and 1 are not parallel.
  CHECK_THROWS_AS(lift_duplication_path(i3, 0, 1, base), PreconditionError);
}

// --- pivot pair and types -------------------------------------------------

TEST_CASE("pivot pair selection") {
  CHECK(choose_pivot_pair(make_fig_bipartite7()) ==
        std::pair<VertexId, VertexId>{1, 2});
  CHECK(choose_pivot_pair(make_intro_3vertex()) ==
        std::pair<VertexId, VertexId>{1, 2});
  CHECK(choose_pivot_pair(make_bidirected_complete(4)) ==
        std::pair<VertexId, VertexId>{1, 2});

  // Fewer than two root out-neighbours is refused.
  DiGraph one_out(3, 0);
  one_out.add_arc(0, 1);
  one_out.add_arc(1, 2);
  one_out.add_arc(2, 1);
  CHECK_THROWS_AS(choose_pivot_pair(one_out), PreconditionError);
}

TEST_CASE("type partition of the tournament example") {
  DiGraph b7 = make_fig_bipartite7();
  std::vector<Arborescence> arbs = enumerate_arborescences(b7);
  // e = r->1 (arc 0), f = r->2 (arc 1), g = 1->2 (arc 3).
  TypePartition tp = partition_types(b7, arbs, 0, 1, 3);
  CHECK(tp.t_minus_e.size() == 3);
  CHECK(tp.t_ef.size() == 2);
  CHECK(tp.t_eg.size() == 2);
  CHECK(tp.t_fg.size() == 0);
  CHECK(tp.t_minus_e.size() + tp.t_ef.size() + tp.t_eg.size() +
            tp.t_fg.size() ==
        arbs.size());
  for (const Arborescence& A : tp.t_minus_e) CHECK_FALSE(A.contains(0));
  for (const Arborescence& A : tp.t_ef) {
    CHECK(A.contains(0));
    CHECK(A.contains(1));
  }
  for (const Arborescence& A : tp.t_eg) {
    CHECK(A.contains(0));
    CHECK(A.contains(3));
  }
}

// --- rigid structure detection ---------------------------------------------

TEST_CASE("family L is recognized") {
  DiGraph l = make_l34();
  FlipCliqueStructure s = detect_flip_clique_structure(l, 3);
  CHECK(s.applicable);
  CHECK(s.family == 'L');
  CHECK(s.k == 3);
  CHECK(s.n == 4);
  CHECK(s.detail == "L(3,4): chain 1 2 3 4");
}

TEST_CASE("family M is recognized") {
  DiGraph m = make_m34();
  FlipCliqueStructure s = detect_flip_clique_structure(m, 5);
  CHECK(s.applicable);
  CHECK(s.family == 'M');
  CHECK(s.k == 3);
  CHECK(s.n == 4);
  CHECK(s.detail == "M(3,4): chain 1 2 3 4 apex 5");
}

TEST_CASE("detection is negative when flips disagree") {
  FlipCliqueStructure s =
      detect_flip_clique_structure(make_bidirected_complete(4), 1);
  CHECK_FALSE(s.applicable);
  CHECK(s.detail ==
        "two arborescences flip the root arc to different trees");
}

TEST_CASE("detection is negative without arborescences") {
  // Removing r->x in the diamond leaves x unreachable.
  FlipCliqueStructure s =
      detect_flip_clique_structure(make_fig_contraction(), 1);
  CHECK_FALSE(s.applicable);
  CHECK(s.detail == "graph minus the root arc has no arborescence");
}

TEST_CASE("detection without clique support skips classification") {
  DiGraph l = make_l34();
  DiGraph g(6, 0);
  for (const Arc& a : l.arcs()) g.add_arc(a.tail, a.head);
  g.add_arc(0, 5);  // extra leaf keeps the premise, breaks the clique
  FlipCliqueStructure s = detect_flip_clique_structure(g, 3);
  CHECK(s.applicable);
  CHECK(s.family == '?');
  CHECK(s.detail ==
        "support minus the root is not a clique; structural classification "
        "skipped");
}

TEST_CASE("detection preconditions") {
  DiGraph l = make_l34();
  // Vertex without a root arc.
  CHECK_THROWS_AS(detect_flip_clique_structure(l, 2), PreconditionError);
  // Parallel root arcs into v are ambiguous.
  auto [lp, copy] = l.duplicate_arc(7);
  (void)copy;
  CHECK_THROWS_AS(detect_flip_clique_structure(lp, 3), PreconditionError);
}

// --- main construction -----------------------------------------------------

TEST_CASE("Gray code on the smallest instances") {
  // Single vertex: one empty arborescence.
  GrayPath p1 = gray_code_clique_support(DiGraph(1, 0));
  REQUIRE(p1.steps.size() == 1);
  CHECK(arb_to_line(p1.steps[0]) == "-");

  // Clique support but no arborescence: empty path.
  DiGraph no_arb(3, 0);
  no_arb.add_arc(1, 2);
  no_arb.add_arc(2, 1);
  CHECK(gray_code_clique_support(no_arb).steps.empty());

  // The three-vertex example: both arborescences, one flip.
  DiGraph i3 = make_intro_3vertex();
  GrayPath p3 = gray_code_clique_support(i3);
  REQUIRE(p3.steps.size() == 2);
  CHECK(verify_gray_code(i3, p3.steps).pass());

  // Bidirected triangle: three spanning trees.
  DiGraph k3 = make_bidirected_complete(3);
  GrayPath pk3 = gray_code_clique_support(k3);
  CHECK(pk3.steps.size() == 3);
  CHECK(verify_gray_code(k3, pk3.steps).pass());
}

TEST_CASE("Gray code on the built-in instances") {
  DiGraph b7 = make_fig_bipartite7();
  GrayPath p = gray_code_clique_support(b7);
  CHECK(p.steps.size() == 7);
  CHECK(verify_gray_code(b7, p.steps).pass());

  DiGraph k5 = make_bidirected_complete(5);
  GrayPath pk5 = gray_code_clique_support(k5);
  CHECK(pk5.steps.size() == 125);
  CHECK(verify_gray_code(k5, pk5.steps).pass());

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    DiGraph t = make_random_tournament(6, seed * 11 + 1);
    GrayPath pt = gray_code_clique_support(t);
    CHECK(verify_gray_code(t, pt.steps).pass());
  }
}

TEST_CASE("Gray code refuses non-clique support") {
  CHECK_THROWS_AS(gray_code_clique_support(make_fig_graph13()),
                  PreconditionError);
  CHECK_THROWS_AS(gray_code_clique_support(make_bidirected_cycle(5)),
                  PreconditionError);
}

TEST_CASE("Gray code provenance records the recursion") {
  GrayPath p = gray_code_clique_support(make_bidirected_complete(4));
  CHECK(!p.provenance.empty());
  bool has_fiber = false;
  for (const std::string& line : p.provenance)
    if (line.find("fiber") != std::string::npos) has_fiber = true;
  CHECK(has_fiber);
}

TEST_CASE("spanning tree Gray code with the strong exchange property") {
  CHECK(spanning_tree_pivot_gray_code(1).steps.size() == 1);
  CHECK(spanning_tree_pivot_gray_code(2).steps.size() == 1);
  CHECK(spanning_tree_pivot_gray_code(3).steps.size() == 3);
  CHECK(spanning_tree_pivot_gray_code(4).steps.size() == 16);

  DiGraph k5(1, 0);
  GrayPath p = spanning_tree_pivot_gray_code(5, &k5);
  REQUIRE(p.steps.size() == 125);
  CHECK(verify_gray_code(k5, p.steps).pass());

  // Forgetting the orientation yields every labelled tree on 5 vertices
  // exactly once, consecutive trees exchanging one edge at a shared
  // endpoint.
  std::vector<std::vector<std::pair<VertexId, VertexId>>> trees =
      tree_edge_sets(k5, p);
  REQUIRE(trees.size() == 125);
  std::set<std::vector<std::pair<VertexId, VertexId>>> uniq(trees.begin(),
                                                            trees.end());
  CHECK(uniq.size() == 125);  // 5^3 labelled trees, each once
  for (size_t i = 0; i + 1 < trees.size(); ++i) {
    std::set<std::pair<VertexId, VertexId>> a(trees[i].begin(),
                                              trees[i].end());
    std::set<std::pair<VertexId, VertexId>> b(trees[i + 1].begin(),
                                              trees[i + 1].end());
    std::vector<std::pair<VertexId, VertexId>> out, in;
    for (const auto& e : a)
      if (!b.count(e)) out.push_back(e);
    for (const auto& e : b)
      if (!a.count(e)) in.push_back(e);
    REQUIRE(out.size() == 1);
    REQUIRE(in.size() == 1);
    bool shared = out[0].first == in[0].first ||
                  out[0].first == in[0].second ||
                  out[0].second == in[0].first ||
                  out[0].second == in[0].second;
    CHECK(shared);
  }

  CHECK_THROWS_AS(spanning_tree_pivot_gray_code(0), PreconditionError);
}

// --- serialization -----------------------------------------------------------

TEST_CASE("JSON round trip") {
  DiGraph b7 = make_fig_bipartite7();
  GrayPath p = gray_code_clique_support(b7);
  std::string json = gray_path_to_json(b7, p);
  CHECK(json.find("\"n_steps\": 7") != std::string::npos);
  CHECK(json.find("\"steps\"") != std::string::npos);
  CHECK(json.find("\"flips\"") != std::string::npos);
  CHECK(json.find("\"provenance\"") != std::string::npos);

  std::vector<std::vector<ArcId>> steps = gray_path_steps_from_json(json);
  REQUIRE(steps.size() == p.steps.size());
  for (size_t i = 0; i < steps.size(); ++i)
    CHECK(steps[i] == p.steps[i].sorted_arc_ids());
  CHECK(verify_gray_code(b7, steps).pass());
}

TEST_CASE("JSON parsing rejects malformed documents") {
  CHECK_THROWS_AS(gray_path_steps_from_json("not json"), ParseError);
  CHECK_THROWS_AS(gray_path_steps_from_json("[1,2,3]"), ParseError);
  CHECK_THROWS_AS(gray_path_steps_from_json("{}"), ParseError);
  CHECK_THROWS_AS(gray_path_steps_from_json("{\"steps\": 3}"), ParseError);
  CHECK_THROWS_AS(gray_path_steps_from_json("{\"steps\": [3]}"), ParseError);
  CHECK_THROWS_AS(gray_path_steps_from_json("{\"steps\": [[\"a\"]]}"),
                  ParseError);
}

TEST_CASE("delta text lists the first tree and then one flip per line") {
  DiGraph i3 = make_intro_3vertex();
  GrayPath p = gray_code_clique_support(i3);
  std::string delta = gray_path_to_delta_text(i3, p);
  std::vector<std::string> lines;
  std::string cur;
  for (char c : delta) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == arb_to_line(p.steps[0]));
  CHECK(lines[1].size() > 3);
  CHECK(lines[1][0] == '-');
  CHECK(lines[1].find(" +") != std::string::npos);

  // Empty path serializes to nothing.
  GrayPath empty;
  CHECK(gray_path_to_delta_text(i3, empty).empty());
}
