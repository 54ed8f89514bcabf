#ifndef ARBOGRAY_INSTANCES_HPP
#define ARBOGRAY_INSTANCES_HPP

#include <cstdint>
#include <string>

#include "arbogray/digraph.hpp"

namespace arbogray {

// Built-in instance generators.  All graphs are rooted at vertex 0.
DiGraph make_bidirected_cycle(int n);
DiGraph make_bidirected_complete(int n);
// 5 vertices, 8 arcs, 13 arborescences; flip graph bipartite 7/6.
DiGraph make_fig_graph13();
// Tournament on 4 vertices with 7 arborescences.
DiGraph make_fig_bipartite7();
// 5 vertices, 8 arcs; flip graph has 6 nodes, one of degree 1, and is
// non-bipartite (contains a triangle).
DiGraph make_fig_flip_g1();
// 4 vertices r,x,y,z with arcs r->x, r->y, x->z, y->z.
DiGraph make_fig_contraction();
// 3 vertices with arcs r->u, u->v, r->v.
DiGraph make_intro_3vertex();
// Orients each pair of {0..n-1} by a seeded coin; deterministic per seed.
DiGraph make_random_tournament(int n, std::uint64_t seed);

// Parses an instance specification:
//   bidirected-cycle:N         (also name(N) form)
//   bidirected-complete:N
//   fig-graph13 | fig-bipartite7 | fig-flipG1 | fig-contraction |
//   intro-3vertex
//   random-tournament:N:SEED
//   file:PATH, or any other string treated as a path to a graph file
// Throws ParseError for malformed specs or unreadable files.
DiGraph parse_instance_spec(const std::string& spec);

}  // namespace arbogray

#endif  // ARBOGRAY_INSTANCES_HPP
