// Tests for the C interface: status codes, string ownership, and parity
// with the underlying operations.
#include <cstring>
#include <string>

#include "arbogray/arbogray.h"
#include "doctest.h"

namespace {

// Scoped helpers so every test releases what it allocates.
struct Graph {
  ag_graph* g = nullptr;
  ~Graph() { ag_graph_free(g); }
};

struct Str {
  char* s = nullptr;
  ~Str() { ag_free_string(s); }
  std::string view() const { return s ? std::string(s) : std::string(); }
};

}  // namespace

TEST_CASE("open built-in instances and inspect them") {
  Graph g;
  REQUIRE(ag_instance_open("intro-3vertex", &g.g) == AG_OK);
  CHECK(ag_graph_n(g.g) == 3);
  CHECK(ag_graph_root(g.g) == 0);
  CHECK(ag_graph_arc_count(g.g) == 3);
  Str text;
  REQUIRE(ag_graph_text(g.g, &text.s) == AG_OK);
  CHECK(text.view() == "3 3 0\n0 1\n1 2\n0 2\n");
}

TEST_CASE("open failures set the error message") {
  ag_graph* out = nullptr;
  CHECK(ag_instance_open("no-such-instance", &out) == AG_EMALFORMED);
  CHECK(out == nullptr);
  CHECK(std::strlen(ag_last_error_message()) > 0);
  CHECK(ag_instance_open("bidirected-cycle:not-a-number", &out) ==
        AG_EMALFORMED);
  CHECK(ag_instance_open(nullptr, &out) == AG_EREFUSED);
  CHECK(ag_instance_open("intro-3vertex", nullptr) == AG_EREFUSED);
}

TEST_CASE("enumeration and counting through the C layer") {
  Graph g;
  REQUIRE(ag_instance_open("intro-3vertex", &g.g) == AG_OK);
  Str listing;
  REQUIRE(ag_enumerate_text(g.g, 0, &listing.s) == AG_OK);
  CHECK(listing.view() == "2 arborescence(s)\n0 1\n0 2\n");
  long long count = -1;
  REQUIRE(ag_count_arborescences(g.g, &count) == AG_OK);
  CHECK(count == 2);

  // Budget of one cannot hold two arborescences.
  Str small;
  CHECK(ag_enumerate_text(g.g, 1, &small.s) == AG_EBUDGET);
  CHECK(small.s == nullptr);
  CHECK(std::strlen(ag_last_error_message()) > 0);
}

TEST_CASE("Gray code and verification round trip") {
  Graph g;
  REQUIRE(ag_instance_open("fig-bipartite7", &g.g) == AG_OK);
  Str json;
  REQUIRE(ag_graycode_json(g.g, &json.s) == AG_OK);
  CHECK(json.view().find("\"n_steps\": 7") != std::string::npos);

  int pass = 0;
  Str report;
  REQUIRE(ag_verify_json(g.g, json.s, &pass, &report.s) == AG_OK);
  CHECK(pass == 1);
  CHECK(report.view().find("RESULT: PASS") != std::string::npos);

  // A tampered path still verifies cleanly as a report, but fails.
  Str bad_report;
  int bad_pass = 1;
  std::string twice =
      "{\"steps\": [[0, 1, 2], [0, 1, 2]]}";
  REQUIRE(ag_verify_json(g.g, twice.c_str(), &bad_pass, &bad_report.s) ==
          AG_OK);
  CHECK(bad_pass == 0);
  CHECK(bad_report.view().find("RESULT: FAIL") != std::string::npos);

  // Unreadable JSON is malformed input.
  int p2 = 0;
  Str r2;
  CHECK(ag_verify_json(g.g, "{nope", &p2, &r2.s) == AG_EMALFORMED);
}

TEST_CASE("Gray code refusal carries AG_EREFUSED") {
  Graph g;
  REQUIRE(ag_instance_open("fig-graph13", &g.g) == AG_OK);
  Str json;
  CHECK(ag_graycode_json(g.g, &json.s) == AG_EREFUSED);
  CHECK(json.s == nullptr);
  CHECK(std::string(ag_last_error_message()).find("clique") !=
        std::string::npos);
}

TEST_CASE("parity report through the C layer") {
  Graph g;
  REQUIRE(ag_instance_open("fig-graph13", &g.g) == AG_OK);
  Str rep;
  REQUIRE(ag_parity_report(g.g, &rep.s) == AG_OK);
  CHECK(rep.view().find("sign classes: +7 / -6") != std::string::npos);

  // Indegree three refuses the weighting.
  Graph k4;
  REQUIRE(ag_instance_open("bidirected-complete:4", &k4.g) == AG_OK);
  Str rep2;
  CHECK(ag_parity_report(k4.g, &rep2.s) == AG_EREFUSED);
}

TEST_CASE("Hamiltonian search through the C layer") {
  Graph g;
  REQUIRE(ag_instance_open("fig-graph13", &g.g) == AG_OK);
  int found = -1;
  Str out;
  REQUIRE(ag_hamsearch(g.g, /*want_cycle=*/1, 0, 0, &found, &out.s) == AG_OK);
  CHECK(found == 0);
  CHECK(out.view().find("none") != std::string::npos);

  int found_path = -1;
  Str out2;
  REQUIRE(ag_hamsearch(g.g, /*want_cycle=*/0, 0, 0, &found_path, &out2.s) ==
          AG_OK);
  CHECK(found_path == 1);

  // Tiny node budget trips AG_EBUDGET.
  int f3 = -1;
  Str out3;
  CHECK(ag_hamsearch(g.g, 0, 0, 3, &f3, &out3.s) == AG_EBUDGET);
}

TEST_CASE("DOT rendering through the C layer") {
  Graph g;
  REQUIRE(ag_instance_open("intro-3vertex", &g.g) == AG_OK);
  Str dot, legend;
  REQUIRE(ag_flipgraph_dot(g.g, 0, &dot.s, &legend.s) == AG_OK);
  CHECK(dot.view().rfind("graph", 0) == 0);
  CHECK(legend.view().find("0 1") != std::string::npos);
}

TEST_CASE("null argument handling") {
  CHECK(ag_graph_n(nullptr) == -1);
  CHECK(ag_graph_root(nullptr) == -1);
  CHECK(ag_graph_arc_count(nullptr) == -1);
  Graph g;
  REQUIRE(ag_instance_open("intro-3vertex", &g.g) == AG_OK);
  CHECK(ag_graph_text(g.g, nullptr) == AG_EREFUSED);
  CHECK(ag_graycode_json(nullptr, nullptr) == AG_EREFUSED);
  ag_free_string(nullptr);  // must be a no-op
  ag_graph_free(nullptr);   // must be a no-op
}
