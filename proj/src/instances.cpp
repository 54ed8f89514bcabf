#include "arbogray/instances.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <vector>

namespace arbogray {

DiGraph make_bidirected_cycle(int n) {
  if (n < 3)
    throw PreconditionError("bidirected cycle needs at least 3 vertices");
  DiGraph g(n, 0);
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    g.add_arc(i, j);
    g.add_arc(j, i);
  }
  return g;
}

DiGraph make_bidirected_complete(int n) {
  if (n < 1) throw PreconditionError("vertex count must be >= 1");
  DiGraph g(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      g.add_arc(i, j);
      g.add_arc(j, i);
    }
  return g;
}

DiGraph make_fig_graph13() {
  DiGraph g(5, 0);
  g.add_arc(0, 1);
  g.add_arc(0, 2);
  g.add_arc(0, 3);
  g.add_arc(1, 2);
  g.add_arc(2, 3);
  g.add_arc(3, 4);
  g.add_arc(2, 4);
  g.add_arc(4, 1);
  return g;
}

DiGraph make_fig_bipartite7() {
  DiGraph g(4, 0);
  g.add_arc(0, 1);
  g.add_arc(0, 2);
  g.add_arc(0, 3);
  g.add_arc(1, 2);
  g.add_arc(2, 3);
  g.add_arc(3, 1);
  return g;
}

DiGraph make_fig_flip_g1() {
  DiGraph g(5, 0);
  g.add_arc(0, 1);
  g.add_arc(0, 4);
  g.add_arc(1, 2);
  g.add_arc(2, 3);
  g.add_arc(3, 4);
  g.add_arc(3, 1);
  g.add_arc(4, 2);
  g.add_arc(1, 4);
  return g;
}

DiGraph make_fig_contraction() {
  DiGraph g(4, 0);
  g.add_arc(0, 1);
  g.add_arc(0, 2);
  g.add_arc(1, 3);
  g.add_arc(2, 3);
  return g;
}

DiGraph make_intro_3vertex() {
  DiGraph g(3, 0);
  g.add_arc(0, 1);
  g.add_arc(1, 2);
  g.add_arc(0, 2);
  return g;
}

DiGraph make_random_tournament(int n, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("vertex count must be >= 1");
  std::mt19937_64 rng(seed);
  DiGraph g(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (rng() & 1u)
        g.add_arc(i, j);
      else
        g.add_arc(j, i);
    }
  return g;
}

namespace {

// Splits "name:a:b" or "name(a,b)" into name + integer arguments.
bool split_spec(const std::string& spec, std::string& name,
                std::vector<long long>& args) {
  std::string body;
  size_t paren = spec.find('(');
  if (paren != std::string::npos && spec.back() == ')') {
    name = spec.substr(0, paren);
    body = spec.substr(paren + 1, spec.size() - paren - 2);
  } else {
    size_t colon = spec.find(':');
    if (colon == std::string::npos) {
      name = spec;
      return true;
    }
    name = spec.substr(0, colon);
    body = spec.substr(colon + 1);
  }
  std::string token;
  std::istringstream in(body);
  char delim = body.find(',') != std::string::npos ? ',' : ':';
  while (std::getline(in, token, delim)) {
    if (token.empty()) return false;
    try {
      size_t used = 0;
      long long v = std::stoll(token, &used);
      if (used != token.size()) return false;
      args.push_back(v);
    } catch (const std::exception&) {
      return false;
    }
  }
  return true;
}

}  // namespace

DiGraph parse_instance_spec(const std::string& spec) {
  std::string name;
  std::vector<long long> args;
  bool ok = split_spec(spec, name, args);
  auto need = [&](size_t k) {
    if (!ok || args.size() != k)
      throw ParseError("instance '" + spec + "': expected " +
                       std::to_string(k) + " numeric argument(s)");
  };
  if (name == "bidirected-cycle") {
    need(1);
    return make_bidirected_cycle(static_cast<int>(args[0]));
  }
  if (name == "bidirected-complete") {
    need(1);
    return make_bidirected_complete(static_cast<int>(args[0]));
  }
  if (name == "fig-graph13") {
    need(0);
    return make_fig_graph13();
  }
  if (name == "fig-bipartite7") {
    need(0);
    return make_fig_bipartite7();
  }
  if (name == "fig-flipG1") {
    need(0);
    return make_fig_flip_g1();
  }
  if (name == "fig-contraction") {
    need(0);
    return make_fig_contraction();
  }
  if (name == "intro-3vertex") {
    need(0);
    return make_intro_3vertex();
  }
  if (name == "random-tournament") {
    need(2);
    return make_random_tournament(static_cast<int>(args[0]),
                                  static_cast<std::uint64_t>(args[1]));
  }
  // Anything else is a file path, optionally prefixed by "file:".
  std::string path = spec;
  if (name == "file") {
    size_t colon = spec.find(':');
    path = (colon == std::string::npos) ? "" : spec.substr(colon + 1);
  }
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return DiGraph::parse(buf.str());
}

}  // namespace arbogray
