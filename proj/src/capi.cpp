#include "arbogray/arbogray.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "arbogray/digraph.hpp"
#include "arbogray/errors.hpp"
#include "arbogray/graycode.hpp"
#include "arbogray/instances.hpp"
#include "arbogray/oracle.hpp"
#include "arbogray/parity.hpp"

using namespace arbogray;

struct ag_graph {
  DiGraph g;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs the body, translating the library's error taxonomy to status codes.
template <typename F>
int guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const Error& ex) {
    g_last_error = ex.what();
    if (const auto* ii = dynamic_cast<const InternalInconsistencyError*>(&ex)) {
      std::ostringstream os;
      os << ex.what();
      for (const std::string& line : ii->provenance())
        os << "\n  " << line;
      g_last_error = os.str();
    }
    return static_cast<int>(ex.code());
  } catch (const std::exception& ex) {
    g_last_error = ex.what();
    return AG_EINTERNAL;
  }
}

OracleBudget budget_from(long long arbs, long long nodes) {
  OracleBudget b;
  if (arbs > 0) b.max_arborescences = arbs;
  if (nodes > 0) b.max_search_nodes = nodes;
  return b;
}

}  // namespace

extern "C" {

int ag_instance_open(const char* spec, ag_graph** out) {
  return guarded([&]() {
    if (!spec || !out) throw PreconditionError("null argument");
    *out = new ag_graph{parse_instance_spec(spec)};
    return AG_OK;
  });
}

void ag_graph_free(ag_graph* g) { delete g; }

int ag_graph_text(const ag_graph* g, char** out) {
  return guarded([&]() {
    if (!g || !out) throw PreconditionError("null argument");
    *out = dup_string(g->g.to_text());
    return AG_OK;
  });
}

int ag_graph_n(const ag_graph* g) { return g ? g->g.n() : -1; }
int ag_graph_root(const ag_graph* g) { return g ? g->g.root() : -1; }
int ag_graph_arc_count(const ag_graph* g) {
  return g ? static_cast<int>(g->g.arcs().size()) : -1;
}

int ag_enumerate_text(const ag_graph* g, long long budget_arbs, char** out) {
  return guarded([&]() {
    if (!g || !out) throw PreconditionError("null argument");
    const auto arbs =
        enumerate_arborescences(g->g, budget_from(budget_arbs, 0));
    std::ostringstream os;
    os << arbs.size() << " arborescence(s)\n";
    for (const Arborescence& a : arbs) os << arb_to_line(a) << '\n';
    *out = dup_string(os.str());
    return AG_OK;
  });
}

int ag_count_arborescences(const ag_graph* g, long long* out) {
  return guarded([&]() {
    if (!g || !out) throw PreconditionError("null argument");
    *out = count_arborescences_matrix_tree(g->g);
    return AG_OK;
  });
}

int ag_flipgraph_dot(const ag_graph* g, long long budget_arbs, char** out,
                     char** legend_out) {
  return guarded([&]() {
    if (!g || !out) throw PreconditionError("null argument");
    const FlipGraph fg = build_flip_graph(g->g, budget_from(budget_arbs, 0));
    std::string legend;
    *out = dup_string(flip_graph_to_dot(g->g, fg, &legend));
    if (legend_out) *legend_out = dup_string(legend);
    return AG_OK;
  });
}

int ag_graycode_json(const ag_graph* g, char** out) {
  return guarded([&]() {
    if (!g || !out) throw PreconditionError("null argument");
    const GrayPath p = gray_code_clique_support(g->g);
    *out = dup_string(gray_path_to_json(g->g, p));
    return AG_OK;
  });
}

int ag_verify_json(const ag_graph* g, const char* json, int* pass_out,
                   char** report_out) {
  return guarded([&]() {
    if (!g || !json || !pass_out || !report_out)
      throw PreconditionError("null argument");
    const auto steps = gray_path_steps_from_json(json);
    const VerifyReport rep = verify_gray_code(g->g, steps);
    *pass_out = rep.pass() ? 1 : 0;
    *report_out = dup_string(rep.to_text());
    return AG_OK;
  });
}

int ag_parity_report(const ag_graph* g, char** out) {
  return guarded([&]() {
    if (!g || !out) throw PreconditionError("null argument");
    *out = dup_string(parity_report(g->g));
    return AG_OK;
  });
}

int ag_hamsearch(const ag_graph* g, int want_cycle, long long budget_arbs,
                 long long budget_nodes, int* found_out, char** out) {
  return guarded([&]() {
    if (!g || !found_out || !out) throw PreconditionError("null argument");
    const OracleBudget budget = budget_from(budget_arbs, budget_nodes);
    const FlipGraph fg = build_flip_graph(g->g, budget);
    const auto order = want_cycle
                           ? find_hamiltonian_cycle_bruteforce(fg, budget)
                           : find_hamiltonian_path_bruteforce(fg, budget);
    std::ostringstream os;
    if (order) {
      *found_out = 1;
      os << (want_cycle ? "cycle" : "path") << " through " << fg.nodes.size()
         << " arborescence(s)\n";
      for (const int i : *order) os << arb_to_line(fg.nodes[i]) << '\n';
    } else {
      *found_out = 0;
      os << "none: exhaustive search found no Hamiltonian "
         << (want_cycle ? "cycle" : "path") << " in the flip graph ("
         << fg.nodes.size() << " arborescences)\n";
    }
    *out = dup_string(os.str());
    return AG_OK;
  });
}

void ag_free_string(char* s) { std::free(s); }

const char* ag_last_error_message(void) { return g_last_error.c_str(); }

}  // extern "C"
