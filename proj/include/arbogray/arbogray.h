/* C interface to the arborescence Gray-code library.
 *
 * Every function returning int yields one of the AG_* status codes below.
 * Strings handed out through char** are heap-allocated; release them with
 * ag_free_string.  Graph handles are opaque; release with ag_graph_free.
 * On any failure, ag_last_error_message() returns a thread-local message
 * describing the most recent error on the calling thread.
 */
#ifndef ARBOGRAY_H
#define ARBOGRAY_H

#ifdef __cplusplus
extern "C" {
#endif

#define AG_OK 0         /* success */
#define AG_EMALFORMED 1 /* unreadable or syntactically invalid input */
#define AG_EREFUSED 2   /* input violates a documented precondition */
#define AG_EBUDGET 3    /* exhaustive search exceeded its budget */
#define AG_EINTERNAL 4  /* construction contradicted its own guarantees */

typedef struct ag_graph ag_graph;

/* Builds a graph from an instance spec: a named generator such as
 * "bidirected-complete:4", "bidirected-cycle:5", "random-tournament:6:12345",
 * a built-in instance name, a file path, or "file:PATH".  The file format
 * matches ag_graph_text. */
int ag_instance_open(const char* spec, ag_graph** out);

void ag_graph_free(ag_graph* g);

/* The graph in its text format (header line "n m root", then "tail head"
 * per arc in arc-id order). */
int ag_graph_text(const ag_graph* g, char** out);
int ag_graph_n(const ag_graph* g);
int ag_graph_root(const ag_graph* g);
int ag_graph_arc_count(const ag_graph* g);

/* All arborescences, one line each: the sorted arc ids, space-separated.
 * budget_arbs <= 0 keeps the default cap. */
int ag_enumerate_text(const ag_graph* g, long long budget_arbs, char** out);

/* Exact arborescence count (matrix-tree). */
int ag_count_arborescences(const ag_graph* g, long long* out);

/* The flip graph in Graphviz DOT, with the legend (node index ->
 * arborescence) in *legend_out when legend_out is non-null. */
int ag_flipgraph_dot(const ag_graph* g, long long budget_arbs, char** out,
                     char** legend_out);

/* The pivot Gray code over all arborescences, as JSON.  Requires the
 * support minus the root to be a clique (AG_EREFUSED otherwise). */
int ag_graycode_json(const ag_graph* g, char** out);

/* Verifies a JSON path (as produced by ag_graycode_json) against the
 * graph.  *report_out receives the check-by-check report; *pass_out is 1
 * iff every check passed. */
int ag_verify_json(const ag_graph* g, const char* json, int* pass_out,
                   char** report_out);

/* The bipartiteness / class-imbalance / degree-one report for the flip
 * graph, computed without enumerating arborescences. */
int ag_parity_report(const ag_graph* g, char** out);

/* Brute-force Hamiltonian path (want_cycle = 0) or cycle (1) search in
 * the flip graph.  *found_out is 1 with the step list in *out when one
 * exists, 0 with a short explanation in *out when none does. */
int ag_hamsearch(const ag_graph* g, int want_cycle, long long budget_arbs,
                 long long budget_nodes, int* found_out, char** out);

void ag_free_string(char* s);

/* Thread-local message for the most recent failure on this thread. */
const char* ag_last_error_message(void);

#ifdef __cplusplus
}
#endif

#endif /* ARBOGRAY_H */
