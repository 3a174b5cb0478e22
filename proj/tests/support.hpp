#pragma once

// Enumeration helpers and brute-force oracles shared by the test binaries.
// Nothing here calls into the library's own algorithms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "curvekit/graph.hpp"

namespace testkit {

/// Edge mask over pairs (i<j) of n vertices, bit index by lexicographic pair order.
inline std::vector<std::pair<int, int>> pair_list(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

inline curvekit::Graph from_mask(int n, std::uint32_t mask) {
  curvekit::Graph g;
  for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  const auto pairs = pair_list(n);
  for (std::size_t b = 0; b < pairs.size(); ++b)
    if (mask >> b & 1u) g.add_edge(static_cast<std::size_t>(pairs[b].first), static_cast<std::size_t>(pairs[b].second));
  return g;
}

/// One representative mask per isomorphism class on exactly n vertices
/// (minimum mask over all relabelings).
inline std::vector<std::uint32_t> iso_classes(int n) {
  const auto pairs = pair_list(n);
  std::vector<std::vector<int>> index(n, std::vector<int>(n, -1));
  for (std::size_t b = 0; b < pairs.size(); ++b) {
    index[pairs[b].first][pairs[b].second] = static_cast<int>(b);
    index[pairs[b].second][pairs[b].first] = static_cast<int>(b);
  }
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  // For each permutation, where each bit goes.
  std::vector<std::vector<int>> image(perms.size(), std::vector<int>(pairs.size()));
  for (std::size_t k = 0; k < perms.size(); ++k)
    for (std::size_t b = 0; b < pairs.size(); ++b)
      image[k][b] = index[perms[k][pairs[b].first]][perms[k][pairs[b].second]];

  std::set<std::uint32_t> reps;
  std::vector<char> seen(std::size_t{1} << pairs.size(), 0);
  for (std::uint32_t m = 0; m < (1u << pairs.size()); ++m) {
    if (seen[m]) continue;
    std::uint32_t best = m;
    for (const auto& img : image) {
      std::uint32_t t = 0;
      for (std::size_t b = 0; b < pairs.size(); ++b)
        if (m >> b & 1u) t |= 1u << img[b];
      seen[t] = 1;
      best = std::min(best, t);
    }
    reps.insert(best);
  }
  return {reps.begin(), reps.end()};
}

/// All isomorphism classes on 1..max_n vertices.
inline std::vector<curvekit::Graph> all_small_graphs(int max_n) {
  std::vector<curvekit::Graph> out;
  for (int n = 1; n <= max_n; ++n)
    for (auto m : iso_classes(n)) out.push_back(from_mask(n, m));
  return out;
}

inline curvekit::Graph cycle(int n) {
  curvekit::Graph g;
  for (int i = 0; i < n; ++i) g.add_vertex(std::string(1, static_cast<char>('a' + i)));
  for (int i = 0; i < n; ++i) g.add_edge(static_cast<std::size_t>(i), static_cast<std::size_t>((i + 1) % n));
  return g;
}

inline curvekit::Graph complete(int n) {
  curvekit::Graph g;
  for (int i = 0; i < n; ++i) g.add_vertex(std::string(1, static_cast<char>('a' + i)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return g;
}

inline curvekit::Graph path(int n) {
  curvekit::Graph g;
  for (int i = 0; i < n; ++i) g.add_vertex(std::string(1, static_cast<char>('a' + i)));
  for (int i = 0; i + 1 < n; ++i) g.add_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1));
  return g;
}

// ---------------------------------------------------------------- oracles

/// Induced subgraph on `subset` (bitmask) is a single cycle.
inline bool induces_cycle(const curvekit::Graph& g, std::uint32_t subset) {
  std::vector<std::size_t> vs;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (subset >> v & 1u) vs.push_back(v);
  if (vs.size() < 3) return false;
  for (auto v : vs) {
    int d = 0;
    for (auto u : vs) d += g.adjacent(u, v) ? 1 : 0;
    if (d != 2) return false;
  }
  // connected?
  std::uint32_t reached = 1u << vs[0], frontier = reached;
  while (frontier) {
    std::uint32_t next = 0;
    for (auto v : vs)
      if (frontier >> v & 1u)
        for (auto u : vs)
          if (g.adjacent(u, v) && !(reached >> u & 1u)) next |= 1u << u;
    reached |= next;
    frontier = next;
  }
  return reached == subset;
}

/// Chordal iff no vertex subset of size >= 4 induces a cycle.
inline bool brute_chordal(const curvekit::Graph& g) {
  for (std::uint32_t s = 0; s < (1u << g.size()); ++s)
    if (__builtin_popcount(s) >= 4 && induces_cycle(g, s)) return false;
  return true;
}

/// Outerplanar iff some cyclic vertex order draws every edge as a chord of a
/// circle with no two chords crossing.
inline bool brute_outerplanar(const curvekit::Graph& g) {
  const std::size_t n = g.size();
  if (n <= 3) return true;
  const auto edges = g.edges();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> pos(n);
  // Fix the first vertex to quotient out rotations.
  do {
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    bool ok = true;
    for (std::size_t a = 0; a < edges.size() && ok; ++a)
      for (std::size_t b = a + 1; b < edges.size() && ok; ++b) {
        auto [x1, y1] = std::minmax(pos[edges[a].first], pos[edges[a].second]);
        auto [x2, y2] = std::minmax(pos[edges[b].first], pos[edges[b].second]);
        if ((x1 < x2 && x2 < y1 && y1 < y2) || (x2 < x1 && x1 < y2 && y2 < y1)) ok = false;
      }
    if (ok) return true;
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return false;
}

/// Minimum number of cliques partitioning the vertices (subset DP).
inline std::size_t brute_clique_cover(const curvekit::Graph& g) {
  const std::size_t n = g.size();
  if (n == 0) return 0;
  const std::uint32_t full = (1u << n) - 1;
  std::vector<char> is_clique(full + 1, 1);
  for (std::uint32_t s = 1; s <= full; ++s) {
    const int low = __builtin_ctz(s);
    const std::uint32_t rest = s & (s - 1);
    if (!is_clique[rest]) {
      is_clique[s] = 0;
      continue;
    }
    for (std::size_t v = 0; v < n; ++v)
      if ((rest >> v & 1u) && !g.adjacent(static_cast<std::size_t>(low), v)) {
        is_clique[s] = 0;
        break;
      }
  }
  std::vector<int> best(full + 1, 1 << 20);
  best[0] = 0;
  for (std::uint32_t s = 1; s <= full; ++s) {
    const std::uint32_t low = s & (~s + 1);
    const std::uint32_t rest = s ^ low;
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint32_t part = sub | low;
      if (is_clique[part]) best[s] = std::min(best[s], best[s ^ part] + 1);
      if (sub == 0) break;
    }
  }
  return static_cast<std::size_t>(best[full]);
}

/// Brute-force induced embedding search over all injections.
inline bool brute_induced_exists(const curvekit::Graph& pattern, const curvekit::Graph& host) {
  const std::size_t k = pattern.size(), n = host.size();
  if (k > n) return false;
  std::vector<std::size_t> map(k);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == k) return true;
    for (std::size_t h = 0; h < n; ++h) {
      if (used[h]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = pattern.adjacent(i, j) == host.adjacent(h, map[j]);
      if (!ok) continue;
      used[h] = 1;
      map[i] = h;
      if (go(i + 1)) return true;
      used[h] = 0;
    }
    return false;
  };
  return go(0);
}

/// Farey graph distance by BFS over slopes of height <= bound plus 1/0.
inline long long brute_farey_distance(long long p1, long long q1, long long p2, long long q2, long long bound) {
  std::vector<std::pair<long long, long long>> nodes{{1, 0}};
  for (long long q = 1; q <= bound; ++q)
    for (long long p = -bound; p <= bound; ++p)
      if (std::gcd(p, q) == 1) nodes.emplace_back(p, q);
  auto find = [&](long long p, long long q) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].first == p && nodes[i].second == q) return i;
    return nodes.size();
  };
  const std::size_t s = find(p1, q1), t = find(p2, q2);
  if (s == nodes.size() || t == nodes.size()) return -1;
  std::vector<long long> dist(nodes.size(), -1);
  std::vector<std::size_t> queue{s};
  dist[s] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const auto u = queue[h];
    if (u == t) return dist[u];
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      if (dist[v] >= 0) continue;
      const long long det = nodes[u].first * nodes[v].second - nodes[u].second * nodes[v].first;
      if (det == 1 || det == -1) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return -1;
}

/// Every set partition of {0..n-1}, as block labels.
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> label(n, 0);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t blocks) {
    if (i == n) {
      f(label);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      label[i] = b;
      go(i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) {
    f(label);
    return;
  }
  go(0, 0);
}

}  // namespace testkit
