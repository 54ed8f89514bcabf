// Command-line front end.  Talks to the library exclusively through the C
// interface so the shared library's ABI is exercised end to end.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "arbogray/arbogray.h"

namespace {

long long env_budget() {
  const char* s = std::getenv("ARBOGRAY_BUDGET");
  if (!s || !*s) return 0;
  try {
    return std::stoll(s);
  } catch (...) {
    return 0;
  }
}

// Prints the library's message for a failed call and returns its code.
int fail(int code) {
  std::cerr << "error: " << ag_last_error_message() << '\n';
  return code;
}

struct GraphHandle {
  ag_graph* g = nullptr;
  ~GraphHandle() { ag_graph_free(g); }
};

struct StringHandle {
  char* s = nullptr;
  ~StringHandle() { ag_free_string(s); }
};

int open_instance(const std::string& spec, GraphHandle& h) {
  return ag_instance_open(spec.c_str(), &h.g);
}

bool write_file(const std::string& path, const char* content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

int cmd_enumerate(const std::string& spec) {
  GraphHandle h;
  if (int rc = open_instance(spec, h)) return fail(rc);
  StringHandle text;
  if (int rc = ag_enumerate_text(h.g, env_budget(), &text.s)) return fail(rc);
  std::cout << text.s;
  return 0;
}

int cmd_flipgraph(const std::string& spec, const std::string& dot_path) {
  GraphHandle h;
  if (int rc = open_instance(spec, h)) return fail(rc);
  StringHandle dot, legend;
  if (int rc = ag_flipgraph_dot(h.g, env_budget(), &dot.s, &legend.s))
    return fail(rc);
  if (dot_path == "-") {
    std::cout << dot.s;
    return 0;
  }
  if (!write_file(dot_path, dot.s) ||
      !write_file(dot_path + ".legend", legend.s)) {
    std::cerr << "error: cannot write '" << dot_path << "'\n";
    return 1;
  }
  std::cout << "wrote " << dot_path << " and " << dot_path << ".legend\n";
  return 0;
}

int run_hamsearch(ag_graph* g, bool cycle) {
  const long long b = env_budget();
  int found = 0;
  StringHandle text;
  if (int rc = ag_hamsearch(g, cycle ? 1 : 0, b, b, &found, &text.s))
    return fail(rc);
  std::cout << text.s;
  return 0;
}

int cmd_graycode(const std::string& spec, const std::string& json_path,
                 bool fallback, bool oracle) {
  GraphHandle h;
  if (int rc = open_instance(spec, h)) return fail(rc);

  if (oracle) return run_hamsearch(h.g, false);

  StringHandle json;
  int rc = ag_graycode_json(h.g, &json.s);
  if (rc == AG_EINTERNAL && fallback) {
    // The construction contradicted itself.  Emit everything needed to
    // reproduce and study the instance, then fall back to brute force.
    std::cerr << "counterexample bundle\n";
    std::cerr << "====================\n";
    std::cerr << "construction error:\n" << ag_last_error_message() << '\n';
    StringHandle text;
    if (ag_graph_text(h.g, &text.s) == AG_OK)
      std::cerr << "instance:\n" << text.s;
    std::cerr << "brute-force search follows on stdout\n";
    const long long b = env_budget();
    int found = 0;
    StringHandle search;
    if (int rc2 = ag_hamsearch(h.g, 0, b, b, &found, &search.s))
      return fail(rc2);
    std::cout << search.s;
    return found ? 0 : AG_EINTERNAL;
  }
  if (rc) return fail(rc);
  if (json_path.empty() || json_path == "-") {
    std::cout << json.s;
  } else if (write_file(json_path, json.s)) {
    std::cout << "wrote " << json_path << '\n';
  } else {
    std::cerr << "error: cannot write '" << json_path << "'\n";
    return 1;
  }
  return 0;
}

int cmd_verify(const std::string& spec, const std::string& path) {
  GraphHandle h;
  if (int rc = open_instance(spec, h)) return fail(rc);
  std::string json;
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    json = buf.str();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read '" << path << "'\n";
      return 1;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    json = buf.str();
  }
  int pass = 0;
  StringHandle report;
  if (int rc = ag_verify_json(h.g, json.c_str(), &pass, &report.s))
    return fail(rc);
  std::cout << report.s;
  return pass ? 0 : 1;
}

int cmd_parity(const std::string& spec) {
  GraphHandle h;
  if (int rc = open_instance(spec, h)) return fail(rc);
  StringHandle report;
  if (int rc = ag_parity_report(h.g, &report.s)) return fail(rc);
  std::cout << report.s;
  return 0;
}

int cmd_hamsearch(const std::string& spec, bool cycle) {
  GraphHandle h;
  if (int rc = open_instance(spec, h)) return fail(rc);
  return run_hamsearch(h.g, cycle);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Pivot Gray codes on arborescences, with flip-graph analysis and a "
      "brute-force oracle"};
  app.require_subcommand(1);

  std::string spec, dot_path = "-", json_path, verify_path;
  bool cycle = false, fallback = false, oracle = false;

  auto* enumerate =
      app.add_subcommand("enumerate", "Count and list all arborescences");
  enumerate->add_option("instance", spec, "Instance spec or file")->required();

  auto* flipgraph =
      app.add_subcommand("flipgraph", "Emit the flip graph as Graphviz DOT");
  flipgraph->add_option("instance", spec)->required();
  flipgraph->add_option("--dot", dot_path,
                        "Output file ('-' for stdout; legend goes to "
                        "FILE.legend)");

  auto* graycode = app.add_subcommand(
      "graycode", "Construct the pivot Gray code over all arborescences");
  graycode->add_option("instance", spec)->required();
  graycode->add_option("--json", json_path, "Write the JSON path here");
  graycode->add_flag("--fallback-bruteforce", fallback,
                     "On internal inconsistency, dump a counterexample "
                     "bundle and search by brute force");
  graycode->add_flag("--oracle", oracle,
                     "Skip the construction; brute-force search instead");

  auto* verify = app.add_subcommand(
      "verify", "Check a JSON path against an instance (exit 0 iff valid)");
  verify->add_option("instance", spec)->required();
  verify->add_option("path", verify_path, "JSON file or '-' for stdin")
      ->required();

  auto* parity = app.add_subcommand(
      "parity", "Bipartiteness, class sizes and cycle-impossibility report");
  parity->add_option("instance", spec)->required();

  auto* hamsearch = app.add_subcommand(
      "hamsearch", "Brute-force Hamiltonian search in the flip graph");
  hamsearch->add_option("instance", spec)->required();
  hamsearch->add_flag("--cycle", cycle, "Search for a cycle instead of a path");

  CLI11_PARSE(app, argc, argv);

  if (enumerate->parsed()) return cmd_enumerate(spec);
  if (flipgraph->parsed()) return cmd_flipgraph(spec, dot_path);
  if (graycode->parsed())
    return cmd_graycode(spec, json_path, fallback, oracle);
  if (verify->parsed()) return cmd_verify(spec, verify_path);
  if (parity->parsed()) return cmd_parity(spec);
  if (hamsearch->parsed()) return cmd_hamsearch(spec, cycle);
  return 0;
}
