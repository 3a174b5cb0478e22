#include "curvekit/graph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <nlohmann/json.hpp>

namespace curvekit {

// ---------------------------------------------------------------------------
// Graph

void Graph::grow(std::size_t n) {
  std::vector<unsigned char> next(n * n, 0);
  const std::size_t old = labels_.size();
  for (std::size_t u = 0; u < old; ++u)
    for (std::size_t v = 0; v < old; ++v) next[u * n + v] = adj_[u * old + v];
  adj_ = std::move(next);
}

std::size_t Graph::add_vertex(const std::string& label) {
  if (index_.count(label)) throw std::invalid_argument("duplicate vertex '" + label + "'");
  const std::size_t id = labels_.size();
  grow(id + 1);
  labels_.push_back(label);
  index_.emplace(label, id);
  return id;
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  const std::size_t n = labels_.size();
  if (u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("self-loop at '" + labels_[u] + "'");
  if (adj_[u * n + v])
    throw std::invalid_argument("duplicate edge '" + labels_[u] + "'-'" + labels_[v] + "'");
  adj_[u * n + v] = adj_[v * n + u] = 1;
  ++edge_count_;
}

void Graph::add_edge(const std::string& u, const std::string& v) {
  auto a = index_of(u), b = index_of(v);
  if (!a) throw std::invalid_argument("undeclared vertex '" + u + "'");
  if (!b) throw std::invalid_argument("undeclared vertex '" + v + "'");
  add_edge(*a, *b);
}

std::optional<std::size_t> Graph::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> Graph::neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < size(); ++u)
    if (adjacent(v, u)) out.push_back(u);
  return out;
}

std::size_t Graph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (std::size_t u = 0; u < size(); ++u) d += adjacent(v, u);
  return d;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < size(); ++u)
    for (std::size_t v = u + 1; v < size(); ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

Graph Graph::induced(const std::vector<std::size_t>& vertices) const {
  Graph h;
  for (auto v : vertices) h.add_vertex(labels_.at(v));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (adjacent(vertices[i], vertices[j])) h.add_edge(i, j);
  return h;
}

// ---------------------------------------------------------------------------
// Parsing and export

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Graph parse_adjacency_list(std::string_view text) {
  struct Line {
    std::string label;
    std::vector<std::string> neighbors;
    std::size_t number;
  };
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'label: neighbours'", number);
    Line parsed{trim(std::string_view(line).substr(0, colon)), {}, number};
    if (parsed.label.empty()) throw ParseError("empty vertex label", number);
    std::string rest = line.substr(colon + 1);
    if (!trim(rest).empty()) {
      std::stringstream ss(rest);
      std::string item;
      while (std::getline(ss, item, ',')) {
        std::string nb = trim(item);
        if (nb.empty()) throw ParseError("empty neighbour label", number);
        if (std::find(parsed.neighbors.begin(), parsed.neighbors.end(), nb) != parsed.neighbors.end())
          throw ParseError("duplicate edge '" + parsed.label + "'-'" + nb + "'", number);
        parsed.neighbors.push_back(nb);
      }
    }
    lines.push_back(std::move(parsed));
    if (end == text.size()) break;
  }

  Graph g;
  for (const auto& l : lines) {
    if (g.index_of(l.label)) throw ParseError("vertex '" + l.label + "' declared twice", l.number);
    g.add_vertex(l.label);
  }
  for (const auto& l : lines) {
    const std::size_t u = *g.index_of(l.label);
    for (const auto& nb : l.neighbors) {
      auto v = g.index_of(nb);
      if (!v) throw ParseError("undeclared vertex '" + nb + "'", l.number);
      if (*v == u) throw ParseError("self-loop at '" + nb + "'", l.number);
      // An edge may be listed from both endpoints; it is added once.
      if (!g.adjacent(u, *v)) g.add_edge(u, *v);
    }
  }
  return g;
}

Graph parse_edge_list_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
  if (!doc.is_object() || !doc.contains("vertices"))
    throw ParseError("JSON graph needs a \"vertices\" array", 0);
  auto label_of = [](const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw ParseError("vertex labels must be strings or integers", 0);
  };
  Graph g;
  for (const auto& v : doc.at("vertices")) {
    std::string l = label_of(v);
    if (g.index_of(l)) throw ParseError("vertex '" + l + "' declared twice", 0);
    g.add_vertex(l);
  }
  if (doc.contains("edges")) {
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("edges must be [u, v] pairs", 0);
      try {
        g.add_edge(label_of(e[0]), label_of(e[1]));
      } catch (const std::invalid_argument& err) {
        throw ParseError(err.what(), 0);
      }
    }
  }
  return g;
}

Graph parse_graph(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return parse_edge_list_json(text);
    break;
  }
  return parse_adjacency_list(text);
}

std::string to_adjacency_list(const Graph& g) {
  std::string out;
  for (std::size_t v = 0; v < g.size(); ++v) {
    out += g.label(v) + ":";
    bool first = true;
    for (auto u : g.neighbors(v)) {
      out += first ? " " : ", ";
      out += g.label(u);
      first = false;
    }
    out += "\n";
  }
  return out;
}

std::string to_edge_list_json(const Graph& g) {
  nlohmann::json doc;
  doc["vertices"] = g.labels();
  doc["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges()) doc["edges"].push_back({g.label(u), g.label(v)});
  return doc.dump();
}

std::string to_dot(const Graph& g, std::string_view name) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + "\"";
  };
  std::string out = "graph " + std::string(name) + " {\n";
  for (std::size_t v = 0; v < g.size(); ++v) out += "  " + quote(g.label(v)) + ";\n";
  for (auto [u, v] : g.edges()) out += "  " + quote(g.label(u)) + " -- " + quote(g.label(v)) + ";\n";
  return out + "}\n";
}

// ---------------------------------------------------------------------------
// Components

std::vector<std::vector<std::size_t>> component_indices(const Graph& g) {
  std::vector<int> comp(g.size(), -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> members;
    std::deque<std::size_t> queue{s};
    comp[s] = static_cast<int>(out.size());
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      members.push_back(v);
      for (std::size_t u = 0; u < g.size(); ++u)
        if (g.adjacent(v, u) && comp[u] < 0) {
          comp[u] = comp[s];
          queue.push_back(u);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

std::vector<Graph> connected_components(const Graph& g) {
  std::vector<Graph> out;
  for (const auto& c : component_indices(g)) out.push_back(g.induced(c));
  return out;
}

// ---------------------------------------------------------------------------
// Chordality

namespace {

std::vector<std::size_t> shortest_path(const Graph& g, std::size_t from, std::size_t to,
                                       const std::vector<bool>& blocked) {
  std::vector<std::size_t> prev(g.size(), g.size());
  std::vector<bool> seen(g.size(), false);
  std::deque<std::size_t> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (std::size_t u = 0; u < g.size(); ++u) {
      if (!g.adjacent(v, u) || seen[u] || blocked[u]) continue;
      seen[u] = true;
      prev[u] = v;
      queue.push_back(u);
    }
  }
  if (!seen[to]) return {};
  std::vector<std::size_t> path{to};
  while (path.back() != from) path.push_back(prev[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

// A chordless cycle through some vertex v with non-adjacent neighbours x, y:
// the shortest x-y path avoiding N[v] \ {x, y} closes an induced cycle.
std::vector<std::size_t> find_chordless_cycle(const Graph& g, const std::vector<bool>& alive) {
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!alive[v]) continue;
    std::vector<std::size_t> nb;
    for (auto u : g.neighbors(v))
      if (alive[u]) nb.push_back(u);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        const auto x = nb[i], y = nb[j];
        if (g.adjacent(x, y)) continue;
        std::vector<bool> blocked(g.size(), false);
        for (std::size_t w = 0; w < g.size(); ++w) blocked[w] = !alive[w];
        blocked[v] = true;
        for (auto w : nb)
          if (w != x && w != y) blocked[w] = true;
        auto path = shortest_path(g, x, y, blocked);
        if (path.empty()) continue;
        std::vector<std::size_t> cycle{v};
        cycle.insert(cycle.end(), path.begin(), path.end());
        return cycle;
      }
  }
  return {};
}

bool is_simplicial(const Graph& g, std::size_t v, const std::vector<bool>& alive) {
  std::vector<std::size_t> nb;
  for (auto u : g.neighbors(v))
    if (alive[u]) nb.push_back(u);
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j)
      if (!g.adjacent(nb[i], nb[j])) return false;
  return true;
}

}  // namespace

ChordalResult is_chordal(const Graph& g) {
  ChordalResult result;
  std::vector<bool> alive(g.size(), true);
  for (std::size_t step = 0; step < g.size(); ++step) {
    std::optional<std::size_t> pick;
    for (std::size_t v = 0; v < g.size() && !pick; ++v)
      if (alive[v] && is_simplicial(g, v, alive)) pick = v;
    if (!pick) {
      result.chordal = false;
      result.elimination_order.clear();
      ForbiddenWitness w;
      w.kind = ForbiddenWitness::Kind::ChordlessCycle;
      for (auto v : find_chordless_cycle(g, alive)) w.vertices.push_back(g.label(v));
      result.witness = std::move(w);
      return result;
    }
    alive[*pick] = false;
    result.elimination_order.push_back(*pick);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Outerplanarity

namespace {

using PlanarGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;

bool outerplanar_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  if (n >= 2 && edges.size() > 2 * n - 3) return false;
  // Outerplanar iff planar after adding an apex adjacent to every vertex.
  PlanarGraph pg(n + 1);
  for (auto [u, v] : edges) boost::add_edge(u, v, pg);
  for (std::size_t v = 0; v < n; ++v) boost::add_edge(v, n, pg);
  return boost::boyer_myrvold_planarity_test(pg);
}

}  // namespace

OuterplanarResult is_outerplanar(const Graph& g, bool want_witness) {
  OuterplanarResult result;
  auto edges = g.edges();
  if (outerplanar_edges(g.size(), edges)) return result;
  result.outerplanar = false;
  if (!want_witness) return result;

  // Delete edges while the remainder stays non-outerplanar; what survives is
  // an edge-minimal non-outerplanar subgraph, i.e. a K4 or K2,3 subdivision.
  for (std::size_t i = 0; i < edges.size();) {
    auto trial = edges;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (!outerplanar_edges(g.size(), trial))
      edges = std::move(trial);
    else
      ++i;
  }
  std::vector<std::size_t> deg(g.size(), 0);
  for (auto [u, v] : edges) ++deg[u], ++deg[v];
  ForbiddenWitness w;
  w.kind = ForbiddenWitness::Kind::NonOuterplanarMinor;
  std::vector<std::size_t> branch, inner;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (deg[v] >= 3) branch.push_back(v);
    else if (deg[v] == 2) inner.push_back(v);
  }
  w.minor = branch.size() == 4 ? ForbiddenWitness::Minor::K4 : ForbiddenWitness::Minor::K23;
  for (auto v : branch) w.vertices.push_back(g.label(v));
  for (auto v : inner) w.vertices.push_back(g.label(v));
  for (auto [u, v] : edges) w.edges.emplace_back(g.label(u), g.label(v));
  result.witness = std::move(w);
  return result;
}

// ---------------------------------------------------------------------------
// Witness verification

namespace {

bool verify_cycle_witness(const Graph& g, const ForbiddenWitness& w) {
  const auto& vs = w.vertices;
  if (vs.size() < 4) return false;
  std::vector<std::size_t> idx;
  for (const auto& l : vs) {
    auto i = g.index_of(l);
    if (!i) return false;
    if (std::find(idx.begin(), idx.end(), *i) != idx.end()) return false;
    idx.push_back(*i);
  }
  const std::size_t k = idx.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const bool consecutive = (j == i + 1) || (i == 0 && j == k - 1);
      if (g.adjacent(idx[i], idx[j]) != consecutive) return false;
    }
  return true;
}

// Contract the degree-2 paths of the edge set and compare the resulting
// multigraph on the branch vertices with K4 or K2,3.
bool verify_minor_witness(const Graph& g, const ForbiddenWitness& w) {
  std::map<std::size_t, std::vector<std::size_t>> adj;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [a, b] : w.edges) {
    auto u = g.index_of(a), v = g.index_of(b);
    if (!u || !v || *u == *v || !g.adjacent(*u, *v)) return false;
    auto key = std::minmax(*u, *v);
    if (!seen.insert(key).second) return false;
    adj[*u].push_back(*v);
    adj[*v].push_back(*u);
  }
  std::vector<std::size_t> branch;
  for (const auto& [v, nb] : adj) {
    if (nb.size() == 3) branch.push_back(v);
    else if (nb.size() != 2) return false;
  }
  const bool k4 = w.minor == ForbiddenWitness::Minor::K4;
  if (branch.size() != (k4 ? 4u : 2u)) return false;
  std::map<std::pair<std::size_t, std::size_t>, int> multiplicity;
  std::set<std::size_t> visited_inner;
  for (auto b : branch) {
    for (auto first : adj[b]) {
      std::size_t prev = b, cur = first;
      while (adj[cur].size() == 2) {
        visited_inner.insert(cur);
        auto next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
        if (cur == b && adj[cur].size() == 2) return false;
      }
      if (cur == b) return false;
      ++multiplicity[std::minmax(b, cur)];
    }
  }
  std::size_t inner_count = 0;
  for (const auto& [v, nb] : adj) inner_count += nb.size() == 2;
  if (visited_inner.size() != inner_count) return false;  // stray cycles
  // Each path was walked from both ends.
  if (k4) {
    if (multiplicity.size() != 6) return false;
    for (const auto& [pair, m] : multiplicity)
      if (m != 2) return false;
    return true;
  }
  // K2,3 with the path between the two degree-3 vertices: three paths.
  return multiplicity.size() == 1 && multiplicity.begin()->second == 6 &&
         !seen.count(std::minmax(branch[0], branch[1]));
}

}  // namespace

bool verify_witness(const Graph& g, const ForbiddenWitness& w) {
  if (w.kind == ForbiddenWitness::Kind::ChordlessCycle) return verify_cycle_witness(g, w);
  return verify_minor_witness(g, w);
}

std::string witness_kind_name(const ForbiddenWitness& w) {
  return w.kind == ForbiddenWitness::Kind::ChordlessCycle ? "chordless-cycle" : "non-outerplanar-minor";
}

// ---------------------------------------------------------------------------
// Cliques

std::vector<std::size_t> maximum_clique(const Graph& g) {
  std::vector<std::size_t> best, current;
  std::function<void(std::vector<std::size_t>)> expand = [&](std::vector<std::size_t> candidates) {
    if (current.size() + candidates.size() <= best.size()) return;
    if (candidates.empty()) {
      best = current;
      return;
    }
    while (!candidates.empty()) {
      if (current.size() + candidates.size() <= best.size()) return;
      auto v = candidates.front();
      candidates.erase(candidates.begin());
      std::vector<std::size_t> next;
      for (auto u : candidates)
        if (g.adjacent(u, v)) next.push_back(u);
      current.push_back(v);
      expand(next);
      current.pop_back();
    }
  };
  std::vector<std::size_t> all(g.size());
  std::iota(all.begin(), all.end(), 0);
  expand(all);
  return best;
}

namespace {

CliqueCover greedy_clique_cover(const Graph& g) {
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return g.degree(a) > g.degree(b); });
  CliqueCover cover;
  for (auto v : order) {
    bool placed = false;
    for (auto& part : cover.parts) {
      if (std::all_of(part.begin(), part.end(), [&](auto u) { return g.adjacent(u, v); })) {
        part.push_back(v);
        placed = true;
        break;
      }
    }
    if (!placed) cover.parts.push_back({v});
  }
  for (auto& p : cover.parts) std::sort(p.begin(), p.end());
  return cover;
}

}  // namespace

CliqueCover clique_cover(const Graph& g) {
  if (g.size() > kExactCliqueCoverLimit) return greedy_clique_cover(g);
  // Colouring of the complement by branch and bound, vertices in index order.
  CliqueCover best = greedy_clique_cover(g);
  std::vector<std::vector<std::size_t>> parts;
  std::function<void(std::size_t)> place = [&](std::size_t v) {
    if (parts.size() >= best.size()) return;
    if (v == g.size()) {
      best.parts = parts;
      return;
    }
    // index access: the recursion grows `parts`
    const std::size_t count = parts.size();
    for (std::size_t k = 0; k < count; ++k) {
      if (std::all_of(parts[k].begin(), parts[k].end(), [&](auto u) { return g.adjacent(u, v); })) {
        parts[k].push_back(v);
        place(v + 1);
        parts[k].pop_back();
      }
    }
    parts.push_back({v});
    place(v + 1);
    parts.pop_back();
  };
  place(0);
  best.exact = true;
  return best;
}

// ---------------------------------------------------------------------------
// Induced matching

bool is_induced_embedding(const Graph& pattern, const Graph& host, const VertexMap& m) {
  if (m.size() != pattern.size()) return false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] >= host.size()) return false;
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (m[i] == m[j]) return false;
      if (pattern.adjacent(i, j) != host.adjacent(m[i], m[j])) return false;
    }
  }
  return true;
}

std::optional<VertexMap> induced_match(const Graph& pattern, const Graph& host) {
  const std::size_t n = pattern.size();
  if (n > host.size()) return std::nullopt;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    const auto da = pattern.degree(a), db = pattern.degree(b);
    if (da != db) return da > db;
    return pattern.label(a) < pattern.label(b);
  });
  std::vector<std::size_t> host_degree(host.size());
  for (std::size_t v = 0; v < host.size(); ++v) host_degree[v] = host.degree(v);

  VertexMap map(n, host.size());
  std::vector<bool> used(host.size(), false);
  std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
    if (depth == n) return true;
    const auto p = order[depth];
    const auto need = pattern.degree(p);
    // Candidates: neighbours of an already-mapped pattern neighbour if any.
    std::optional<std::size_t> anchor;
    for (std::size_t k = 0; k < depth && !anchor; ++k)
      if (pattern.adjacent(p, order[k])) anchor = map[order[k]];
    auto try_host = [&](std::size_t h) {
      if (used[h] || host_degree[h] < need) return false;
      for (std::size_t k = 0; k < depth; ++k) {
        const auto q = order[k];
        if (pattern.adjacent(p, q) != host.adjacent(h, map[q])) return false;
      }
      map[p] = h;
      used[h] = true;
      if (extend(depth + 1)) return true;
      used[h] = false;
      return false;
    };
    for (std::size_t h = 0; h < host.size(); ++h) {
      if (anchor && !host.adjacent(*anchor, h)) continue;
      if (try_host(h)) return true;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return map;
}

}  // namespace curvekit

namespace curvekit {

std::string witness_to_json(const ForbiddenWitness& w) {
  nlohmann::ordered_json doc;
  doc["kind"] = w.kind == ForbiddenWitness::Kind::ChordlessCycle ? "chordless-cycle" : "non-outerplanar-minor";
  if (w.kind == ForbiddenWitness::Kind::NonOuterplanarMinor)
    doc["minor"] = w.minor == ForbiddenWitness::Minor::K4 ? "K4" : "K2,3";
  doc["vertices"] = w.vertices;
  if (!w.edges.empty()) {
    auto edges = nlohmann::ordered_json::array();
    for (const auto& [a, b] : w.edges) edges.push_back({a, b});
    doc["edges"] = edges;
  }
  return doc.dump();
}

}  // namespace curvekit
