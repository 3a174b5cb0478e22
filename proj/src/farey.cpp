#include "curvekit/farey.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include <boost/integer/common_factor.hpp>
#include <nlohmann/json.hpp>

namespace curvekit {

// ---------------------------------------------------------------------------
// Slope

Slope::Slope(BigInt p, BigInt q) {
  if (p == 0 && q == 0) throw std::invalid_argument("0/0 is not a slope");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  BigInt g = boost::multiprecision::gcd(abs(p), q);
  p /= g;
  q /= g;
  if (q == 0) p = 1;
  p_ = std::move(p);
  q_ = std::move(q);
}

std::string Slope::str() const { return p_.str() + "/" + q_.str(); }

Slope Slope::parse(const std::string& text) {
  if (text == "inf" || text == "oo" || text == "infinity") return infinity();
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Slope(BigInt(text), BigInt(1));
    return Slope(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("bad slope '" + text + "'");
  }
}

std::strong_ordering operator<=>(const Slope& a, const Slope& b) {
  if (a.is_infinity() || b.is_infinity()) {
    if (a.is_infinity() && b.is_infinity()) return std::strong_ordering::equal;
    return a.is_infinity() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  BigInt lhs = a.p() * b.q(), rhs = b.p() * a.q();
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

BigInt determinant(const Slope& s, const Slope& t) { return s.p() * t.q() - s.q() * t.p(); }

// ---------------------------------------------------------------------------
// SurfaceSig

SurfaceSig::SurfaceSig(int genus, int punctures) : g_(genus), n_(punctures) {
  if (genus < 0 || punctures < 0) throw std::invalid_argument("genus and punctures must be >= 0");
  if (genus == 0 && punctures <= 3)
    throw std::invalid_argument("S_{0," + std::to_string(punctures) + "} has an empty curve graph");
}

int SurfaceSig::threshold() const noexcept {
  if (g_ == 1 && n_ <= 1) return 1;
  if (g_ == 0 && n_ == 4) return 2;
  return 0;
}

bool SurfaceSig::is_farey() const noexcept { return (g_ == 1 && n_ <= 1) || (g_ == 0 && n_ == 4); }

std::string SurfaceSig::str() const {
  return "S_{" + std::to_string(g_) + "," + std::to_string(n_) + "}";
}

// ---------------------------------------------------------------------------
// Farey primitives

bool farey_adjacent(const Slope& s, const Slope& t) {
  if (s == t) throw std::invalid_argument("farey_adjacent: equal slopes " + s.str());
  return abs(determinant(s, t)) == 1;
}

BigInt slope_intersection(const Slope& s, const Slope& t, const SurfaceSig& sig) {
  if (!sig.is_farey())
    throw std::invalid_argument(sig.str() +
                                " is not a Farey surface; use curve diagrams for intersection numbers");
  BigInt d = abs(determinant(s, t));
  return sig.threshold() == 2 ? 2 * d : d;
}

Slope mediant(const Slope& s, const Slope& t) {
  if (s == t || !farey_adjacent(s, t))
    throw std::invalid_argument("mediant: " + s.str() + " and " + t.str() + " are not Farey neighbours");
  return Slope(s.p() + t.p(), s.q() + t.q());
}

FareyCheck is_farey_embeddable(const Graph& g) {
  for (const auto& comp : component_indices(g)) {
    Graph h = g.induced(comp);
    auto chordal = is_chordal(h);
    if (!chordal.chordal) return {false, chordal.witness};
    auto outer = is_outerplanar(h);
    if (!outer.outerplanar) return {false, outer.witness};
  }
  return {};
}

bool verify_certificate(const Graph& g, const SlopeCertificate& cert) {
  if (!cert.surface.is_farey())
    throw std::invalid_argument("slope certificates only exist on Farey surfaces");
  std::vector<const Slope*> slopes;
  for (const auto& label : g.labels()) {
    auto it = cert.assignment.find(label);
    if (it == cert.assignment.end()) throw std::invalid_argument("certificate misses vertex '" + label + "'");
    slopes.push_back(&it->second);
  }
  const BigInt threshold = cert.surface.threshold();
  for (std::size_t i = 0; i < slopes.size(); ++i)
    for (std::size_t j = i + 1; j < slopes.size(); ++j) {
      if (*slopes[i] == *slopes[j]) return false;
      const BigInt iota = slope_intersection(*slopes[i], *slopes[j], cert.surface);
      if (g.adjacent(i, j) ? iota != threshold : iota <= threshold) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Constructive embedding
//
// Slopes are handled as primitive integer vectors up to sign. The Farey
// neighbours of a vector v form a bi-infinite fan u_j = b + j*v where
// det(v, b) = 1; consecutive fan members are adjacent and the only edges
// between vertices on either side of a fan edge pass through its endpoints.
// Blocks hanging off a vertex are placed at fan indices at least two apart
// from everything already adjacent to it, which keeps them mutually
// non-adjacent.

namespace {

struct Vec {
  BigInt x, y;
};

BigInt det(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }
Vec add(const Vec& a, const Vec& b) { return {a.x + b.x, a.y + b.y}; }
Vec sub(const Vec& a, const Vec& b) { return {a.x - b.x, a.y - b.y}; }
Vec scale(const Vec& a, const BigInt& k) { return {a.x * k, a.y * k}; }
Vec neg(const Vec& a) { return {-a.x, -a.y}; }
Slope to_slope(const Vec& v) { return Slope(v.x, v.y); }
bool same_slope(const Vec& a, const Vec& b) { return det(a, b) == 0; }

struct Fan {
  Vec center, base;  // det(center, base) == 1

  Vec member(const BigInt& j) const { return add(base, scale(center, j)); }
  BigInt index_of(Vec u) const {
    if (det(center, u) == -1) u = neg(u);
    if (det(center, u) != 1) throw std::logic_error("fan: not a neighbour");
    Vec d = sub(u, base);
    return center.x != 0 ? BigInt(d.x / center.x) : BigInt(d.y / center.y);
  }
};

Fan make_fan(const Vec& center, Vec base) {
  if (det(center, base) == -1) base = neg(base);
  return {center, base};
}

struct Placement {
  std::size_t graph_size;
  std::vector<std::optional<Vec>> at;
  std::vector<std::optional<Fan>> fan;
  std::vector<BigInt> lo, hi;       // occupied fan-index hull per vertex
  std::vector<bool> has_hull;

  explicit Placement(std::size_t n) : graph_size(n), at(n), fan(n), lo(n), hi(n), has_hull(n, false) {}

  void occupy(std::size_t v, const BigInt& index) {
    if (!has_hull[v]) {
      lo[v] = hi[v] = index;
      has_hull[v] = true;
    } else {
      lo[v] = std::min(lo[v], index);
      hi[v] = std::max(hi[v], index);
    }
  }
  void ensure_fan(std::size_t v, const Vec& base) {
    if (!fan[v]) fan[v] = make_fan(*at[v], base);
  }
};

// Triangulated-polygon block: its triangles and the order in which to add
// vertices starting from a boundary edge at `root`.
struct Block {
  std::vector<std::size_t> vertices;
  std::vector<std::array<std::size_t, 3>> triangles;
};

std::vector<Block> blocks_of(const Graph& g, const std::vector<std::size_t>& comp) {
  // Biconnected components by Hopcroft-Tarjan on the component.
  const std::size_t n = g.size();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  std::vector<Block> out;
  int timer = 0;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t v, std::size_t parent) {
    disc[v] = low[v] = timer++;
    for (auto u : g.neighbors(v)) {
      if (u == parent) continue;
      if (disc[u] < 0) {
        stack.emplace_back(v, u);
        dfs(u, v);
        low[v] = std::min(low[v], low[u]);
        if (low[u] >= disc[v]) {
          std::set<std::size_t> members;
          while (true) {
            auto e = stack.back();
            stack.pop_back();
            members.insert(e.first);
            members.insert(e.second);
            if (e == std::make_pair(v, u)) break;
          }
          Block b;
          b.vertices.assign(members.begin(), members.end());
          out.push_back(std::move(b));
        }
      } else if (disc[u] < disc[v]) {
        stack.emplace_back(v, u);
        low[v] = std::min(low[v], disc[u]);
      }
    }
  };
  if (!comp.empty()) dfs(comp.front(), n);
  for (auto& b : out) {
    const auto& vs = b.vertices;
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        for (std::size_t k = j + 1; k < vs.size(); ++k)
          if (g.adjacent(vs[i], vs[j]) && g.adjacent(vs[j], vs[k]) && g.adjacent(vs[i], vs[k]))
            b.triangles.push_back({vs[i], vs[j], vs[k]});
  }
  return out;
}

class Embedder {
 public:
  Embedder(const Graph& g) : g_(g), place_(g.size()) {}

  // Places one connected component. `root_at` is the root's slope vector,
  // `root_fan_base` the base of its fan, `reserved` an index range of the
  // root's fan that must stay free of the component.
  void place_component(const std::vector<std::size_t>& comp, const Vec& root_at, const Vec& root_fan_base,
                       std::optional<std::pair<BigInt, BigInt>> reserved) {
    blocks_ = blocks_of(g_, comp);
    block_done_.assign(blocks_.size(), false);
    const auto root = comp.front();
    place_.at[root] = root_at;
    place_.ensure_fan(root, root_fan_base);
    if (reserved) {
      place_.occupy(root, reserved->first);
      place_.occupy(root, reserved->second);
    }
    grow_from(root);
  }

  const Placement& placement() const { return place_; }

 private:
  // Index for a new pendant vertex (upwards) or a new polygon (downwards).
  BigInt fresh_up(std::size_t v) const { return place_.has_hull[v] ? BigInt(place_.hi[v] + 2) : BigInt(0); }
  BigInt fresh_down(std::size_t v) const { return place_.has_hull[v] ? BigInt(place_.lo[v] - 2) : BigInt(0); }

  void grow_from(std::size_t v) {
    std::vector<std::size_t> children;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (block_done_[b]) continue;
      const auto& vs = blocks_[b].vertices;
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) continue;
      block_done_[b] = true;
      if (vs.size() == 2)
        place_bridge(v, vs[0] == v ? vs[1] : vs[0]);
      else
        place_polygon(v, blocks_[b]);
      for (auto u : vs)
        if (u != v) children.push_back(u);
    }
    for (auto u : children) grow_from(u);
  }

  void record_neighbor(std::size_t v, std::size_t u) {
    place_.ensure_fan(v, *place_.at[u]);
    place_.occupy(v, place_.fan[v]->index_of(*place_.at[u]));
  }

  void place_bridge(std::size_t v, std::size_t w) {
    const Fan& fan = *place_.fan[v];
    place_.at[w] = fan.member(fresh_up(v));
    record_neighbor(v, w);
    record_neighbor(w, v);
  }

  void place_polygon(std::size_t v, const Block& block) {
    // Seed along a boundary edge (v, t) of the polygon: one in a single triangle.
    auto in_triangles = [&](std::size_t a, std::size_t b) {
      std::vector<std::size_t> apexes;
      for (const auto& tri : block.triangles) {
        bool has_a = std::find(tri.begin(), tri.end(), a) != tri.end();
        bool has_b = std::find(tri.begin(), tri.end(), b) != tri.end();
        if (has_a && has_b)
          for (auto c : tri)
            if (c != a && c != b) apexes.push_back(c);
      }
      return apexes;
    };
    std::optional<std::size_t> seed;
    for (auto t : block.vertices)
      if (t != v && g_.adjacent(v, t) && in_triangles(v, t).size() == 1) {
        seed = t;
        break;
      }
    if (!seed) throw std::logic_error("polygon block without boundary edge");
    const Fan& fan = *place_.fan[v];
    const BigInt j0 = fresh_down(v);
    place_.at[*seed] = fan.member(j0);
    const auto first_apex = in_triangles(v, *seed).front();
    place_.at[first_apex] = fan.member(j0 - 1);

    // Spread through triangles sharing an edge with a placed triangle; the
    // new apex sits on the free side of the shared Farey edge.
    std::vector<bool> tri_done(block.triangles.size(), false);
    for (std::size_t k = 0; k < block.triangles.size(); ++k) {
      const auto& tri = block.triangles[k];
      if (std::find(tri.begin(), tri.end(), v) != tri.end() &&
          std::find(tri.begin(), tri.end(), *seed) != tri.end())
        tri_done[k] = true;
    }
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t k = 0; k < block.triangles.size(); ++k) {
        if (tri_done[k]) continue;
        const auto& tri = block.triangles[k];
        std::vector<std::size_t> placed, missing;
        for (auto c : tri) (place_.at[c] ? placed : missing).push_back(c);
        if (missing.size() != 1) continue;
        const auto a = placed[0], b = placed[1];
        const Vec& va = *place_.at[a];
        const Vec& vb = *place_.at[b];
        std::optional<Vec> used;
        for (auto c : in_triangles(a, b))
          if (c != missing[0] && place_.at[c]) used = *place_.at[c];
        Vec sum = add(va, vb), diff = sub(va, vb);
        place_.at[missing[0]] = (used && same_slope(*used, sum)) ? diff : sum;
        tri_done[k] = true;
        progress = true;
      }
    }
    for (auto a : block.vertices)
      for (auto b : block.vertices)
        if (a != b && g_.adjacent(a, b)) record_neighbor(a, b);
  }

  const Graph& g_;
  Placement place_;
  std::vector<Block> blocks_;
  std::vector<bool> block_done_;
};

}  // namespace

SlopeCertificate farey_embed(const Graph& g, const SurfaceSig& sig) {
  if (!sig.is_farey()) throw std::invalid_argument(sig.str() + " is not a Farey surface");
  auto check = is_farey_embeddable(g);
  if (!check.embeddable) throw NotEmbeddable(*check.witness);

  SlopeCertificate cert;
  cert.surface = sig;
  auto comps = component_indices(g);
  Embedder embedder(g);
  if (comps.size() == 1 && g.size() == 1) {
    cert.assignment.emplace(g.label(0), Slope::infinity());
    return cert;
  }
  if (comps.size() == 1) {
    embedder.place_component(comps[0], Vec{0, 1}, Vec{-1, 0}, std::nullopt);
  } else {
    // Component k lives strictly inside (k, k+1), rooted at k + 1/2 whose fan
    // indices 0 and -1 are the interval endpoints.
    for (std::size_t k = 0; k < comps.size(); ++k) {
      const BigInt kk = static_cast<long long>(k);
      embedder.place_component(comps[k], Vec{2 * kk + 1, 2}, Vec{kk, 1},
                               std::make_pair(BigInt(-1), BigInt(0)));
    }
  }
  for (std::size_t v = 0; v < g.size(); ++v)
    cert.assignment.emplace(g.label(v), to_slope(*embedder.placement().at[v]));
  if (verify_certificate(g, cert)) return cert;

  // The construction should always verify; fall back to search if not.
  for (long long bound = 4; bound <= 4096; bound *= 2)
    if (auto found = bounded_search(g, bound, sig)) return *found;
  throw std::logic_error("farey_embed: construction and fallback search both failed");
}

// ---------------------------------------------------------------------------
// Bounded search

std::vector<std::pair<long long, long long>> bounded_slopes(long long bound) {
  std::vector<std::pair<long long, long long>> out;
  for (long long q = 0; q <= bound; ++q)
    for (long long p = -bound; p <= bound; ++p) {
      if (q == 0 && p != 1) continue;
      if (std::gcd(p < 0 ? -p : p, q) != 1) continue;
      out.emplace_back(p, q);
    }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const long long wa = (a.first < 0 ? -a.first : a.first) + a.second;
    const long long wb = (b.first < 0 ? -b.first : b.first) + b.second;
    if (wa != wb) return wa < wb;
    return a < b;
  });
  return out;
}

std::optional<SlopeCertificate> bounded_search(const Graph& g, long long bound, const SurfaceSig& sig) {
  if (!sig.is_farey()) throw std::invalid_argument(sig.str() + " is not a Farey surface");
  if (bound < 1) throw std::invalid_argument("bounded_search: bound must be positive");
  const auto slopes = bounded_slopes(bound);
  const std::size_t m = slopes.size();
  auto adjacent = [&](std::size_t a, std::size_t b) {
    const __int128 d = static_cast<__int128>(slopes[a].first) * slopes[b].second -
                       static_cast<__int128>(slopes[a].second) * slopes[b].first;
    return d == 1 || d == -1;
  };
  std::vector<std::vector<std::size_t>> nbrs(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b && adjacent(a, b)) nbrs[a].push_back(b);

  auto search = [&](const std::vector<std::size_t>& vertices) -> std::optional<std::vector<std::size_t>> {
    // Order: BFS within components so that later vertices have placed neighbours.
    std::vector<std::size_t> order;
    std::vector<bool> taken(g.size(), false);
    for (auto s : vertices) {
      if (taken[s]) continue;
      std::deque<std::size_t> queue{s};
      taken[s] = true;
      while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (auto u : vertices)
          if (!taken[u] && g.adjacent(u, v)) {
            taken[u] = true;
            queue.push_back(u);
          }
      }
    }
    std::vector<std::size_t> assign(g.size(), m);
    std::vector<bool> used(m, false);
    std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
      if (depth == order.size()) return true;
      const auto v = order[depth];
      std::optional<std::size_t> anchor;
      for (std::size_t k = 0; k < depth && !anchor; ++k)
        if (g.adjacent(v, order[k])) anchor = assign[order[k]];
      auto attempt = [&](std::size_t s) {
        if (used[s]) return false;
        for (std::size_t k = 0; k < depth; ++k) {
          const auto u = order[k];
          if (g.adjacent(u, v) != adjacent(s, assign[u])) return false;
        }
        assign[v] = s;
        used[s] = true;
        if (extend(depth + 1)) return true;
        used[s] = false;
        return false;
      };
      if (anchor) {
        for (auto s : nbrs[*anchor])
          if (attempt(s)) return true;
      } else {
        for (std::size_t s = 0; s < m; ++s)
          if (attempt(s)) return true;
      }
      return false;
    };
    if (!extend(0)) return std::nullopt;
    return assign;
  };

  // Each component must embed on its own; check that first.
  auto comps = component_indices(g);
  if (comps.size() > 1)
    for (const auto& c : comps)
      if (!search(c)) return std::nullopt;
  std::vector<std::size_t> all(g.size());
  std::iota(all.begin(), all.end(), 0);
  auto found = search(all);
  if (!found) return std::nullopt;
  SlopeCertificate cert;
  cert.surface = sig;
  cert.method = "bounded-search(" + std::to_string(bound) + ")";
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto& [p, q] = slopes[(*found)[v]];
    cert.assignment.emplace(g.label(v), Slope(p, q));
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Serialization

std::string certificate_to_json(const SlopeCertificate& cert) {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["surface"] = {cert.surface.genus(), cert.surface.punctures()};
  doc["method"] = cert.method;
  nlohmann::ordered_json assignment = nlohmann::ordered_json::object();
  for (const auto& [label, s] : cert.assignment) {
    // Integers beyond 64 bits are written as decimal strings.
    auto num = [](const BigInt& x) -> nlohmann::ordered_json {
      if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return static_cast<long long>(x);
      return x.str();
    };
    assignment[label] = {num(s.p()), num(s.q())};
  }
  doc["assignment"] = assignment;
  return doc.dump();
}

SlopeCertificate certificate_from_json(const std::string& text) {
  auto doc = nlohmann::json::parse(text);
  SlopeCertificate cert;
  cert.surface = SurfaceSig(doc.at("surface").at(0).get<int>(), doc.at("surface").at(1).get<int>());
  if (doc.contains("method")) cert.method = doc["method"].get<std::string>();
  auto big = [](const nlohmann::json& x) {
    return x.is_string() ? BigInt(x.get<std::string>()) : BigInt(x.get<long long>());
  };
  for (const auto& [label, pq] : doc.at("assignment").items())
    cert.assignment.emplace(label, Slope(big(pq.at(0)), big(pq.at(1))));
  return cert;
}

}  // namespace curvekit
