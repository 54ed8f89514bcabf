#ifndef ARBOGRAY_ORACLE_HPP
#define ARBOGRAY_ORACLE_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arbogray/arborescence.hpp"
#include "arbogray/digraph.hpp"

namespace arbogray {

struct OracleBudget {
  long long max_arborescences = 20000;  // enumeration cap
  long long max_search_nodes = 5000;    // Hamiltonian search cap (graph nodes)
};

// Undirected graph over all arborescences of a (DiGraph, root) pair;
// adjacent iff they differ in exactly one parent arc.
struct FlipGraph {
  std::vector<Arborescence> nodes;      // canonically sorted
  std::vector<std::vector<int>> adj;    // sorted neighbour indices
  std::map<std::pair<int, int>, Flip> edge_flips;  // key (i,j) with i<j;
                                                   // flip oriented i -> j
  int degree(int i) const { return static_cast<int>(adj[i].size()); }
};

// All arborescences, sorted lexicographically on their sorted ArcId lists.
// Empty when none exist.  Throws BudgetError past the cap.
std::vector<Arborescence> enumerate_arborescences(
    const DiGraph& g, const OracleBudget& budget = {});

// Exact count via the determinant of the reduced in-degree Laplacian
// (root row and column removed), fraction-free elimination.
long long count_arborescences_matrix_tree(const DiGraph& g);

FlipGraph build_flip_graph(const DiGraph& g, const OracleBudget& budget = {});

// Exhaustive backtracking with connectivity and degree-one pruning.
// The budget counts search-tree expansions.
std::optional<std::vector<int>> find_hamiltonian_path_bruteforce(
    const FlipGraph& fg, const OracleBudget& budget = {});
std::optional<std::vector<int>> find_hamiltonian_cycle_bruteforce(
    const FlipGraph& fg, const OracleBudget& budget = {});

// Per-check verification report for a claimed Gray code.
struct VerifyReport {
  bool valid_arborescences = false;  // (a) every element is an arborescence
  bool no_duplicates = false;        // (b)
  bool covers_all = false;           // (c) length == matrix-tree count
  bool single_arc_steps = false;     // (d) consecutive differ in one arc
  bool pivot_property = false;       // (e) removed/added arcs share a head
  long long expected_count = 0;
  long long actual_count = 0;
  std::string detail;  // first failure, human-readable

  bool pass() const {
    return valid_arborescences && no_duplicates && covers_all &&
           single_arc_steps && pivot_property;
  }
  std::string to_text() const;
};

// Verifies a sequence given as arc-id sets (the serialized form).
VerifyReport verify_gray_code(const DiGraph& g,
                              const std::vector<std::vector<ArcId>>& steps);
VerifyReport verify_gray_code(const DiGraph& g,
                              const std::vector<Arborescence>& seq);

// DOT rendering; node labels are the serialized arborescences truncated to
// 40 characters, edge labels the pivot vertex.  The legend maps node index
// to the full serialization.
std::string flip_graph_to_dot(const DiGraph& g, const FlipGraph& fg,
                              std::string* legend_out = nullptr);

}  // namespace arbogray

#endif  // ARBOGRAY_ORACLE_HPP
