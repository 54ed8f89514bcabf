#include "arbogray/digraph.hpp"

#include <algorithm>
#include <sstream>

namespace arbogray {

DiGraph::DiGraph(int n, VertexId root)
    : n_(n), root_(root), next_arc_id_(0) {
  if (n < 1) throw PreconditionError("graph needs at least one vertex");
  if (root < 0 || root >= n)
    throw PreconditionError("root " + std::to_string(root) +
                            " out of range [0," + std::to_string(n) + ")");
}

DiGraph::DiGraph(int n, VertexId root, std::vector<Arc> arcs,
                 ArcId next_arc_id, std::map<ArcId, ArcId> lineage)
    : DiGraph(n, root) {
  arcs_ = std::move(arcs);
  lineage_ = std::move(lineage);
  next_arc_id_ = next_arc_id;
  ArcId prev = kNoArc;
  for (const Arc& a : arcs_) {
    check_vertex(a.tail, "arc tail");
    check_vertex(a.head, "arc head");
    if (a.tail == a.head) throw PreconditionError("self-loop forbidden");
    if (a.id <= prev) throw PreconditionError("arc ids must be ascending");
    if (a.id >= next_arc_id)
      throw PreconditionError("arc id beyond next_arc_id");
    prev = a.id;
  }
}

void DiGraph::check_vertex(VertexId v, const char* what) const {
  if (v < 0 || v >= n_)
    throw PreconditionError(std::string(what) + " " + std::to_string(v) +
                            " out of range [0," + std::to_string(n_) + ")");
}

DiGraph DiGraph::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n = -1, m = -1;
  VertexId root = -1;
  int arcs_read = 0;
  DiGraph g(1, 0);
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    size_t first = trimmed.find_first_not_of(" \t");
    if (first == std::string::npos) continue;  // blank line
    if (trimmed[first] == '#') continue;       // comment
    std::istringstream ls(line);
    if (!header_seen) {
      if (!(ls >> n >> m >> root))
        throw ParseError(lineno, "expected header 'n m root'");
      std::string extra;
      if (ls >> extra) throw ParseError(lineno, "trailing tokens in header");
      if (n < 1) throw ParseError(lineno, "vertex count must be >= 1");
      if (m < 0) throw ParseError(lineno, "arc count must be >= 0");
      if (root < 0 || root >= n)
        throw ParseError(lineno, "root " + std::to_string(root) +
                                     " out of range [0," + std::to_string(n) +
                                     ")");
      g = DiGraph(n, root);
      header_seen = true;
      continue;
    }
    VertexId tail, head;
    if (!(ls >> tail >> head))
      throw ParseError(lineno, "expected 'tail head'");
    std::string extra;
    if (ls >> extra) throw ParseError(lineno, "trailing tokens in arc line");
    if (arcs_read >= m) throw ParseError(lineno, "more arcs than declared");
    if (tail < 0 || tail >= n)
      throw ParseError(lineno,
                       "tail " + std::to_string(tail) + " out of range [0," +
                           std::to_string(n) + ")");
    if (head < 0 || head >= n)
      throw ParseError(lineno,
                       "head " + std::to_string(head) + " out of range [0," +
                           std::to_string(n) + ")");
    if (tail == head)
      throw ParseError(lineno, "self-loop " + std::to_string(tail) + " -> " +
                                   std::to_string(head) + " rejected");
    g.add_arc(tail, head);
    ++arcs_read;
  }
  if (!header_seen) throw ParseError(lineno, "empty input, expected header");
  if (arcs_read != m)
    throw ParseError(lineno, "declared " + std::to_string(m) + " arcs, got " +
                                 std::to_string(arcs_read));
  return g;
}

std::string DiGraph::to_text() const {
  std::ostringstream out;
  out << n_ << ' ' << arcs_.size() << ' ' << root_ << '\n';
  for (const Arc& a : arcs_) out << a.tail << ' ' << a.head << '\n';
  return out.str();
}

bool DiGraph::has_arc(ArcId a) const {
  auto it = std::lower_bound(
      arcs_.begin(), arcs_.end(), a,
      [](const Arc& arc, ArcId id) { return arc.id < id; });
  return it != arcs_.end() && it->id == a;
}

const Arc& DiGraph::arc(ArcId a) const {
  auto it = std::lower_bound(
      arcs_.begin(), arcs_.end(), a,
      [](const Arc& arc, ArcId id) { return arc.id < id; });
  if (it == arcs_.end() || it->id != a)
    throw PreconditionError("unknown arc id " + std::to_string(a));
  return *it;
}

ArcId DiGraph::add_arc(VertexId tail, VertexId head) {
  check_vertex(tail, "arc tail");
  check_vertex(head, "arc head");
  if (tail == head) throw PreconditionError("self-loop forbidden");
  ArcId id = next_arc_id_++;
  arcs_.push_back(Arc{id, tail, head});
  return id;
}

std::vector<ArcId> DiGraph::out_arcs(VertexId v) const {
  check_vertex(v, "vertex");
  std::vector<ArcId> res;
  for (const Arc& a : arcs_)
    if (a.tail == v) res.push_back(a.id);
  return res;
}

std::vector<ArcId> DiGraph::in_arcs(VertexId v) const {
  check_vertex(v, "vertex");
  std::vector<ArcId> res;
  for (const Arc& a : arcs_)
    if (a.head == v) res.push_back(a.id);
  return res;
}

std::vector<VertexId> DiGraph::out_neighbors(VertexId v) const {
  check_vertex(v, "vertex");
  std::set<VertexId> seen;
  for (const Arc& a : arcs_)
    if (a.tail == v) seen.insert(a.head);
  return std::vector<VertexId>(seen.begin(), seen.end());
}

std::set<std::pair<VertexId, VertexId>> DiGraph::support() const {
  std::set<std::pair<VertexId, VertexId>> res;
  for (const Arc& a : arcs_)
    res.insert({std::min(a.tail, a.head), std::max(a.tail, a.head)});
  return res;
}

bool DiGraph::is_clique_support_minus_root() const {
  auto sup = support();
  for (VertexId u = 0; u < n_; ++u) {
    if (u == root_) continue;
    for (VertexId v = u + 1; v < n_; ++v) {
      if (v == root_) continue;
      if (!sup.count({u, v})) return false;
    }
  }
  return true;
}

std::vector<char> DiGraph::reachable_from(VertexId s) const {
  check_vertex(s, "vertex");
  std::vector<char> seen(n_, 0);
  std::vector<VertexId> stack{s};
  seen[s] = 1;
  // adjacency on the fly; graphs are desk scale
  std::vector<std::vector<VertexId>> adj(n_);
  for (const Arc& a : arcs_) adj[a.tail].push_back(a.head);
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    for (VertexId w : adj[u])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return seen;
}

std::vector<VertexId> DiGraph::descendants(VertexId u) const {
  check_vertex(u, "vertex");
  auto all = reachable_from(root_);
  for (VertexId v = 0; v < n_; ++v)
    if (!all[v])
      throw PreconditionError("descendants requires every vertex reachable "
                              "from the root; vertex " +
                              std::to_string(v) + " is not");
  if (u == root_) {
    std::vector<VertexId> res(n_);
    for (VertexId v = 0; v < n_; ++v) res[v] = v;
    return res;
  }
  // v is in D(u) iff removing u disconnects v from the root (or v == u).
  std::vector<char> seen(n_, 0);
  std::vector<std::vector<VertexId>> adj(n_);
  for (const Arc& a : arcs_)
    if (a.tail != u && a.head != u) adj[a.tail].push_back(a.head);
  std::vector<VertexId> stack{root_};
  seen[root_] = 1;
  while (!stack.empty()) {
    VertexId w = stack.back();
    stack.pop_back();
    for (VertexId z : adj[w])
      if (!seen[z]) {
        seen[z] = 1;
        stack.push_back(z);
      }
  }
  std::vector<VertexId> res;
  for (VertexId v = 0; v < n_; ++v)
    if (v == u || !seen[v]) res.push_back(v);
  return res;
}

DiGraph DiGraph::delete_arc(ArcId a) const {
  arc(a);  // validates existence
  std::vector<Arc> arcs;
  arcs.reserve(arcs_.size() - 1);
  std::map<ArcId, ArcId> lin;
  for (const Arc& x : arcs_)
    if (x.id != a) {
      arcs.push_back(x);
      auto it = lineage_.find(x.id);
      lin[x.id] = (it != lineage_.end()) ? it->second : x.id;
    }
  return DiGraph(n_, root_, std::move(arcs), next_arc_id_, std::move(lin));
}

DiGraph DiGraph::subdivide_arc(ArcId a) const {
  const Arc& old = arc(a);
  VertexId mid = n_;
  std::vector<Arc> arcs;
  std::map<ArcId, ArcId> lin;
  for (const Arc& x : arcs_)
    if (x.id != a) {
      arcs.push_back(x);
      auto it = lineage_.find(x.id);
      lin[x.id] = (it != lineage_.end()) ? it->second : x.id;
    }
  DiGraph g(n_ + 1, root_, std::move(arcs), next_arc_id_, std::move(lin));
  ArcId first = g.add_arc(old.tail, mid);
  ArcId second = g.add_arc(mid, old.head);
  auto it = lineage_.find(a);
  ArcId origin = (it != lineage_.end()) ? it->second : a;
  g.lineage_[first] = origin;
  g.lineage_[second] = origin;
  return g;
}

std::pair<DiGraph, ArcId> DiGraph::duplicate_arc(ArcId a) const {
  const Arc& old = arc(a);
  DiGraph g = *this;
  ArcId copy = g.add_arc(old.tail, old.head);
  auto it = lineage_.find(a);
  g.lineage_[copy] = (it != lineage_.end()) ? it->second : a;
  return {std::move(g), copy};
}

DiGraph::Contraction DiGraph::contract_root_arc(ArcId a) const {
  const Arc& ra = arc(a);
  if (ra.tail != root_)
    throw PreconditionError("arc " + std::to_string(a) +
                            " does not leave the root");
  VertexId x = ra.head;
  // Merged vertex becomes the new root with id 0; the others keep their
  // relative order.
  std::vector<VertexId> vmap(n_, -1);
  vmap[root_] = 0;
  vmap[x] = 0;
  VertexId next = 1;
  for (VertexId v = 0; v < n_; ++v)
    if (v != root_ && v != x) vmap[v] = next++;
  std::vector<Arc> arcs;
  std::map<ArcId, ArcId> arc_map;
  std::map<ArcId, ArcId> lin;
  for (const Arc& arc0 : arcs_) {
    bool tail_merged = (arc0.tail == root_ || arc0.tail == x);
    bool head_merged = (arc0.head == root_ || arc0.head == x);
    if (tail_merged && head_merged) continue;  // contracted or self-loop
    Arc img{arc0.id, vmap[arc0.tail], vmap[arc0.head]};
    arcs.push_back(img);
    arc_map[arc0.id] = arc0.id;
    auto it = lineage_.find(arc0.id);
    lin[arc0.id] = (it != lineage_.end()) ? it->second : arc0.id;
  }
  Contraction res{DiGraph(n_ - 1, 0, std::move(arcs), next_arc_id_,
                          std::move(lin)),
                  std::move(arc_map), std::move(vmap)};
  return res;
}

bool DiGraph::operator==(const DiGraph& other) const {
  if (n_ != other.n_ || root_ != other.root_ ||
      arcs_.size() != other.arcs_.size())
    return false;
  for (size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    const Arc& b = other.arcs_[i];
    if (a.id != b.id || a.tail != b.tail || a.head != b.head) return false;
  }
  return true;
}

bool is_built_on(const DiGraph& h, const DiGraph& g) {
  if (h.n() != g.n() || h.root() != g.root())
    throw PreconditionError("is_built_on: vertex set or root mismatch");
  for (const Arc& a : g.arcs()) {
    if (!h.has_arc(a.id)) return false;
    const Arc& b = h.arc(a.id);
    if (b.tail != a.tail || b.head != a.head) return false;
  }
  // Every extra arc u->v of h must have u a descendant of v in g.
  std::vector<std::vector<char>> desc(g.n(), std::vector<char>(g.n(), 0));
  std::vector<char> computed(g.n(), 0);
  for (const Arc& a : h.arcs()) {
    if (g.has_arc(a.id)) continue;
    VertexId u = a.tail, v = a.head;
    if (!computed[v]) {
      for (VertexId d : g.descendants(v)) desc[v][d] = 1;
      computed[v] = 1;
    }
    if (!desc[v][u]) return false;
  }
  return true;
}

}  // namespace arbogray
