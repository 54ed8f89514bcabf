#ifndef ARBOGRAY_PARITY_HPP
#define ARBOGRAY_PARITY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arbogray/arborescence.hpp"
#include "arbogray/digraph.hpp"
#include "arbogray/oracle.hpp"

namespace arbogray {

// +/-1 weights on the arcs not entering the root.  A vertex with two
// incoming arcs gets opposite weights on them; a single incoming arc gets
// +1.  Only defined for graphs with non-root indegree <= 2.
struct ArcWeighting {
  std::map<ArcId, int> weight;
};

// Deterministic weighting: the lower ArcId of a two-arc vertex gets +1.
// Throws PreconditionError naming the vertex when some non-root vertex has
// indegree >= 3.
ArcWeighting assign_arc_weights(const DiGraph& g);

// Product of the weights of A's arcs; +1 or -1.
int tree_weight(const DiGraph& g, const Arborescence& A,
                const ArcWeighting& w);

// Sizes of the two sign classes over all arborescences, (plus, minus).
// Flip-graph edges always join opposite classes, so the classes witness
// bipartiteness; their sizes differ by at most one.
std::pair<long long, long long> bipartition_classes(
    const DiGraph& g, const OracleBudget& budget = {});

// Signed reduced Laplacian: entry (i,j) = -w(arc i->j) summed over arcs,
// diagonal makes every full-matrix column sum zero; root row and column
// removed.  Every column has at most two nonzeros; two nonzeros have
// opposite signs.
struct SignedLaplacian {
  int dim = 0;
  std::vector<std::vector<int>> m;      // dim x dim, entries in {-1,0,+1}
  std::vector<VertexId> vertex_of_col;  // column index -> vertex id
};

SignedLaplacian signed_laplacian(const DiGraph& g, const ArcWeighting& w);

// Evaluates det by the combinatorial column expansion: a zero column gives
// 0; a single-nonzero column is expanded and the procedure recurses; a
// matrix whose every column holds both a +1 and a -1 gives 0.  The result
// is always in {-1, 0, +1}.
int determinant_by_expansion(const SignedLaplacian& L);

// When A has exactly one legal flip, returns its arc and checks the
// structural certificate: the graph minus that arc is built on A.  A failed
// certificate would contradict the degree-one characterization and raises
// InternalInconsistencyError.  Returns nullopt when A has != 1 legal flips.
std::optional<ArcId> check_degree_one(const DiGraph& g,
                                      const Arborescence& A);

// Text report for the CLI: class sizes, expansion determinant, weighting
// table, and the parity verdict on Hamiltonian cycles.
std::string parity_report(const DiGraph& g, const OracleBudget& budget = {});

}  // namespace arbogray

#endif  // ARBOGRAY_PARITY_HPP
