#include "curvekit/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "curvekit/parallel.hpp"

namespace curvekit {

using ojson = nlohmann::ordered_json;

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- schedule

std::vector<ScheduleStep> parse_schedule(const std::string& text) {
  std::vector<ScheduleStep> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("schedule entry '" + item + "' is not L:B");
    try {
      std::size_t used = 0;
      ScheduleStep s;
      s.L = std::stoi(item.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument(item);
      const std::string b = item.substr(colon + 1);
      s.B = std::stoll(b, &used);
      if (used != b.size()) throw std::invalid_argument(item);
      if (s.L < 0 || s.B < 0) throw std::invalid_argument(item);
      out.push_back(s);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("schedule entry '" + item + "' is not L:B with non-negative integers");
    }
  }
  if (out.empty()) throw std::invalid_argument("empty schedule");
  return out;
}

std::vector<ScheduleStep> default_schedule() { return {{0, 4}, {1, 4}, {2, 4}}; }

// ---------------------------------------------------------------- certificates

bool verify_curve_certificate(const Graph& g, const CurveCertificate& cert) {
  // Rebuild every curve on a fresh model from its word alone.
  const auto model = make_model(cert.surface);
  const int t = cert.surface.threshold();
  std::vector<CurveDiagram> curves;
  std::set<Word> classes;
  for (std::size_t v = 0; v < g.size(); ++v) {
    auto it = cert.assignment.find(g.label(v));
    if (it == cert.assignment.end()) throw std::invalid_argument("certificate misses vertex " + g.label(v));
    CurveDiagram c(model, it->second.word());
    if (self_intersection(c) != 0 || !is_essential(c)) return false;
    if (!classes.insert(c.canonical()).second) return false;
    curves.push_back(std::move(c));
  }
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = u + 1; v < g.size(); ++v) {
      const long long i = geometric_intersection(curves[u], curves[v]);
      if (g.adjacent(u, v) ? i != t : i <= t) return false;
    }
  return true;
}

// ---------------------------------------------------------------- atlas

std::vector<CurveDiagram> seed_curves(const ModelPtr& model) {
  std::vector<CurveDiagram> out;
  std::set<Word> seen;
  auto keep = [&](CurveDiagram c) {
    if (c.empty() || self_intersection(c) != 0 || !is_essential(c)) return;
    if (seen.insert(c.canonical()).second) out.push_back(std::move(c));
  };
  const int n = model->punctures();
  if (model->genus() == 0) {
    // Puncture sets S with |S| in {2,3}; when S holds the outer puncture n,
    // use its complement among the petals.
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      const int size = __builtin_popcount(mask);
      if (size < 2 || size > 3 || n - size < 2) continue;
      const unsigned petals = (mask >> (n - 1)) & 1u ? ~mask & ((1u << (n - 1)) - 1) : mask;
      Word w;
      for (int i = 0; i < n - 1; ++i)
        if (petals >> i & 1u) w.push_back(i + 1);
      keep(CurveDiagram(model, w));
    }
  } else {
    const int r = model->rank();
    for (int x = -r; x <= r; ++x) {
      if (x == 0) continue;
      keep(CurveDiagram(model, {x}));
      for (int y = -r; y <= r; ++y)
        if (y != 0 && y != -x) keep(CurveDiagram(model, {x, y}));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const CurveDiagram& a, const CurveDiagram& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.canonical() < b.canonical();
  });
  return out;
}

Atlas generate_atlas(const SurfaceSig& sig, int L, long long B) {
  if (L < 0 || B < 0) throw std::invalid_argument("generate_atlas: L and B must be non-negative");
  Atlas atlas;
  atlas.model = make_model(sig);
  if (!atlas.model->supports_intersection())
    throw std::invalid_argument("generate_atlas: intersection numbers unavailable on " + sig.str());
  const auto seeds = seed_curves(atlas.model);
  atlas.seed_count = seeds.size();
  std::set<Word> seen;
  for (const auto& s : seeds) {
    seen.insert(s.canonical());
    atlas.curves.push_back(s);
    atlas.depth.push_back(0);
  }
  std::vector<std::size_t> frontier(seeds.size());
  for (std::size_t i = 0; i < frontier.size(); ++i) frontier[i] = i;

  for (int level = 1; level <= L && !frontier.empty(); ++level) {
    const std::size_t jobs = frontier.size() * seeds.size() * 2;
    std::vector<std::optional<CurveDiagram>> made(jobs);
    std::vector<char> over_budget(jobs, 0);
    parallel_for(jobs, [&](std::size_t job) {
      const std::size_t c = frontier[job / (2 * seeds.size())];
      const std::size_t s = (job / 2) % seeds.size();
      const long long power = job % 2 == 0 ? 1 : -1;
      try {
        CurveDiagram t = dehn_twist(atlas.curves[c], seeds[s], power);
        if (t.empty() || !is_essential(t)) return;
        for (const auto& seed : seeds)
          if (geometric_intersection(t, seed) > B) return;
        made[job] = std::move(t);
      } catch (const BudgetError&) {
        over_budget[job] = 1;
      }
    });
    std::vector<std::size_t> next;
    for (std::size_t job = 0; job < jobs; ++job) {
      atlas.skipped += static_cast<std::size_t>(over_budget[job]);
      if (!made[job] || !seen.insert(made[job]->canonical()).second) continue;
      next.push_back(atlas.curves.size());
      atlas.curves.push_back(std::move(*made[job]));
      atlas.depth.push_back(level);
    }
    frontier = std::move(next);
  }

  const std::size_t n = atlas.curves.size();
  atlas.pairwise.assign(n, std::vector<long long>(n, 0));
  atlas.self.assign(n, 0);
  parallel_for(n, [&](std::size_t u) {
    atlas.self[u] = self_intersection(atlas.curves[u]);
    for (std::size_t v = u + 1; v < n; ++v) atlas.pairwise[u][v] = geometric_intersection(atlas.curves[u], atlas.curves[v]);
  });
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) atlas.pairwise[v][u] = atlas.pairwise[u][v];
  return atlas;
}

Graph intersection_graph(const Atlas& atlas, const SurfaceSig& sig) {
  Graph g;
  const long long t = sig.threshold();
  for (std::size_t k = 0; k < atlas.curves.size(); ++k) g.add_vertex(std::to_string(k));
  for (std::size_t u = 0; u < atlas.curves.size(); ++u)
    for (std::size_t v = u + 1; v < atlas.curves.size(); ++v)
      if (atlas.pairwise[u][v] == t) g.add_edge(u, v);
  return g;
}

namespace {

ojson word_json(const CurveDiagram& c) {
  auto w = ojson::array();
  for (Letter l : c.word()) w.push_back(c.model()->letter_name(l));
  return w;
}

}  // namespace

std::string atlas_to_json(const Atlas& atlas, const SurfaceSig& sig) {
  ojson doc;
  doc["schema"] = 1;
  doc["surface"] = {sig.genus(), sig.punctures()};
  doc["seed_count"] = atlas.seed_count;
  doc["skipped"] = atlas.skipped;
  auto curves = ojson::array();
  for (std::size_t k = 0; k < atlas.curves.size(); ++k)
    curves.push_back({{"id", k}, {"depth", atlas.depth[k]}, {"word", word_json(atlas.curves[k])}, {"self", atlas.self[k]}});
  doc["curves"] = curves;
  doc["pairwise"] = atlas.pairwise;
  return doc.dump();
}

// ---------------------------------------------------------------- decide

DecisionOutcome decide_farey_surface(const Graph& g, const SurfaceSig& sig) {
  if (!sig.is_farey()) throw std::invalid_argument("decide_farey_surface: " + sig.str() + " is not a Farey surface");
  DecisionOutcome out;
  out.surface = sig;
  const auto cover = clique_cover(g);
  out.clique_cover_size = cover.size();
  out.clique_granularity = static_cast<long long>(sig.complexity()) * static_cast<long long>(cover.size());
  auto check = is_farey_embeddable(g);
  if (!check.embeddable) {
    out.verdict = Verdict::No;
    out.witness = check.witness;
    return out;
  }
  auto cert = farey_embed(g, sig);
  if (!verify_certificate(g, cert)) throw std::logic_error("decide_farey_surface: certificate failed verification");
  out.verdict = Verdict::Yes;
  out.slope_certificate = std::move(cert);
  return out;
}

std::optional<CliqueBound> quick_no(const Graph& g, const SurfaceSig& sig) {
  if (g.size() > kExactCliqueCoverLimit) return std::nullopt;
  const auto clique = maximum_clique(g);
  if (static_cast<long long>(clique.size()) <= sig.complexity()) return std::nullopt;
  CliqueBound b;
  b.complexity = sig.complexity();
  for (auto v : clique) b.vertices.push_back(g.label(v));
  return b;
}

DecisionOutcome decide(const Graph& g, const SurfaceSig& sig, const std::vector<ScheduleStep>& schedule) {
  if (sig.is_farey()) return decide_farey_surface(g, sig);
  DecisionOutcome out;
  out.surface = sig;
  const auto cover = clique_cover(g);
  out.clique_cover_size = cover.size();
  out.clique_granularity = static_cast<long long>(sig.complexity()) * static_cast<long long>(cover.size());
  if (auto bound = quick_no(g, sig)) {
    out.verdict = Verdict::No;
    out.clique_bound = std::move(bound);
    return out;
  }
  if (g.empty()) {
    out.verdict = Verdict::Yes;
    out.curve_certificate = CurveCertificate{sig, {}};
    return out;
  }
  const auto model = make_model(sig);
  if (!model->supports_intersection()) {
    out.note = "intersection numbers are not implemented for closed surfaces of genus >= 2";
    return out;
  }
  for (const auto& step : schedule) {
    const Atlas atlas = generate_atlas(sig, step.L, step.B);
    out.budget_used = step;
    out.atlas_size = atlas.curves.size();
    const Graph host = intersection_graph(atlas, sig);
    auto match = induced_match(g, host);
    if (!match) continue;
    CurveCertificate cert{sig, {}};
    for (std::size_t v = 0; v < g.size(); ++v) cert.assignment.emplace(g.label(v), atlas.curves[(*match)[v]]);
    if (!verify_curve_certificate(g, cert)) throw std::logic_error("decide: atlas certificate failed verification");
    out.verdict = Verdict::Yes;
    out.curve_certificate = std::move(cert);
    return out;
  }
  out.note = "no embedding within the schedule; larger budgets may still find one";
  return out;
}

std::string outcome_to_json(const DecisionOutcome& o) {
  ojson doc;
  doc["schema"] = 1;
  doc["verdict"] = verdict_name(o.verdict);
  doc["surface"] = {o.surface.genus(), o.surface.punctures()};
  if (o.slope_certificate) doc["certificate"] = ojson::parse(certificate_to_json(*o.slope_certificate));
  if (o.curve_certificate) {
    ojson cert;
    cert["surface"] = {o.curve_certificate->surface.genus(), o.curve_certificate->surface.punctures()};
    ojson assignment = ojson::object();
    for (const auto& [label, c] : o.curve_certificate->assignment) assignment[label] = word_json(c);
    cert["assignment"] = assignment;
    doc["certificate"] = cert;
  }
  if (o.witness) doc["witness"] = ojson::parse(witness_to_json(*o.witness));
  if (o.clique_bound)
    doc["witness"] = {{"kind", "clique-bound"}, {"vertices", o.clique_bound->vertices}, {"complexity", o.clique_bound->complexity}};
  if (o.budget_used) doc["budget"] = {{"L", o.budget_used->L}, {"B", o.budget_used->B}};
  doc["complexity"] = o.surface.complexity();
  doc["clique_cover"] = o.clique_cover_size;
  doc["clique_granularity"] = o.clique_granularity;
  if (o.atlas_size) doc["atlas_size"] = o.atlas_size;
  if (!o.note.empty()) doc["note"] = o.note;
  return doc.dump();
}

// ---------------------------------------------------------------- annulus

namespace {
constexpr double kCliqueTolerance = 1e-9;
}

void validate(const AnnulusArcSystem& sys) {
  std::vector<int> hits(sys.slopes.size(), 0);
  for (const auto& c : sys.cliques)
    for (auto i : c) {
      if (i >= sys.slopes.size()) throw std::invalid_argument("annulus system: clique index out of range");
      ++hits[i];
    }
  for (int h : hits)
    if (h != 1) throw std::invalid_argument("annulus system: cliques must partition the arcs");
  for (const auto& c : sys.cliques)
    for (auto i : c)
      for (auto j : c)
        if (std::abs(sys.slopes[i] - sys.slopes[j]) > 1.0 + kCliqueTolerance)
          throw std::invalid_argument("annulus system: clique spans more than 1");
}

double max_slope_gap(const std::vector<double>& slopes) {
  if (slopes.empty()) return 0;
  const auto [lo, hi] = std::minmax_element(slopes.begin(), slopes.end());
  return *hi - *lo;
}

AnnulusArcSystem annulus_reembed(const AnnulusArcSystem& sys) {
  validate(sys);
  const double limit = 3.0 * static_cast<double>(sys.N()) + 1.0;
  if (max_slope_gap(sys.slopes) <= limit) return sys;
  std::vector<double> sorted = sys.slopes;
  std::sort(sorted.begin(), sorted.end());
  double best = 2.0, top = 0;
  bool found = false;
  for (std::size_t k = 1; k < sorted.size(); ++k)
    if (sorted[k] - sorted[k - 1] > best) {
      best = sorted[k] - sorted[k - 1];
      top = sorted[k];
      found = true;
    }
  if (!found) return sys;
  AnnulusArcSystem out = sys;
  // Everything above the empty window moves down by one; integer shifts
  // keep fractional parts.
  for (auto& s : out.slopes)
    if (s >= top) s -= 1.0;
  return out;
}

std::vector<AnnulusArcSystem> annulus_reembed_trace(const AnnulusArcSystem& sys) {
  std::vector<AnnulusArcSystem> trace{sys};
  while (true) {
    auto next = annulus_reembed(trace.back());
    if (next.slopes == trace.back().slopes) return trace;
    trace.push_back(std::move(next));
  }
}

std::string annulus_to_json(const AnnulusArcSystem& sys) {
  ojson doc;
  doc["schema"] = 1;
  doc["slopes"] = sys.slopes;
  doc["cliques"] = sys.cliques;
  doc["N"] = sys.N();
  doc["max_gap"] = max_slope_gap(sys.slopes);
  return doc.dump();
}

AnnulusArcSystem annulus_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  AnnulusArcSystem sys;
  sys.slopes = doc.at("slopes").get<std::vector<double>>();
  if (doc.contains("cliques")) {
    sys.cliques = doc["cliques"].get<std::vector<std::vector<std::size_t>>>();
  } else {
    // default: greedy grouping of sorted slopes into windows of width 1
    std::vector<std::size_t> idx(sys.slopes.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return sys.slopes[a] < sys.slopes[b]; });
    for (auto i : idx) {
      if (sys.cliques.empty() || sys.slopes[i] - sys.slopes[sys.cliques.back().front()] > 1.0) sys.cliques.push_back({});
      sys.cliques.back().push_back(i);
    }
  }
  validate(sys);
  return sys;
}

// ---------------------------------------------------------------- clusters

double part_diameter(const std::vector<std::size_t>& part, const Metric& d) {
  double D = 0;
  for (std::size_t a = 0; a < part.size(); ++a)
    for (std::size_t b = a + 1; b < part.size(); ++b) D = std::max(D, d(part[a], part[b]));
  return D;
}

double part_distance(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b, const Metric& d) {
  double best = std::numeric_limits<double>::infinity();
  for (auto x : a)
    for (auto y : b) best = std::min(best, d(x, y));
  return best;
}

double cluster_proof_bound(std::size_t count, const GapFunction& g) {
  double D = 0;
  for (std::size_t k = 1; k < count; ++k) D = g(D) + 2 * D;
  return D;
}

ClusterPartition cluster_partition(std::size_t count, const Metric& d, const GapFunction& g) {
  ClusterPartition out;
  for (std::size_t i = 0; i < count; ++i) out.parts.push_back({i});
  while (true) {
    double D = 0;
    for (const auto& p : out.parts) D = std::max(D, part_diameter(p, d));
    out.D = D;
    double closest = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < out.parts.size(); ++i)
      for (std::size_t j = i + 1; j < out.parts.size(); ++j) {
        const double dist = part_distance(out.parts[i], out.parts[j], d);
        if (dist < closest) {
          closest = dist;
          bi = i;
          bj = j;
        }
      }
    out.separation = closest;
    if (closest > g(D)) break;
    auto& target = out.parts[bi];
    target.insert(target.end(), out.parts[bj].begin(), out.parts[bj].end());
    std::sort(target.begin(), target.end());
    out.parts.erase(out.parts.begin() + static_cast<long long>(bj));
  }
  out.proof_bound = cluster_proof_bound(count, g);
  return out;
}

ClusterPartition cluster_partition(const std::vector<double>& points, const GapFunction& g) {
  return cluster_partition(points.size(), [&](std::size_t i, std::size_t j) { return std::abs(points[i] - points[j]); }, g);
}

std::string cluster_to_json(const ClusterPartition& c) {
  ojson doc;
  doc["schema"] = 1;
  doc["parts"] = c.parts;
  doc["D"] = c.D;
  if (std::isfinite(c.separation))
    doc["separation"] = c.separation;
  else
    doc["separation"] = nullptr;
  doc["proof_bound"] = c.proof_bound;
  return doc.dump();
}

}  // namespace curvekit
