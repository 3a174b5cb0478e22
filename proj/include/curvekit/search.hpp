#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvekit/curves.hpp"
#include "curvekit/farey.hpp"
#include "curvekit/graph.hpp"

namespace curvekit {

enum class Verdict { Yes, No, Unknown };
std::string verdict_name(Verdict v);

/// Vertex label -> curve on a general surface.
struct CurveCertificate {
  SurfaceSig surface{0, 5};
  std::map<std::string, CurveDiagram> assignment;
};

/// Adjacency iff intersection equals the threshold, non-adjacency iff it
/// exceeds it; curves must be embedded, essential and pairwise distinct.
bool verify_curve_certificate(const Graph& g, const CurveCertificate& cert);

/// A clique larger than the maximal multicurve size.
struct CliqueBound {
  std::vector<std::string> vertices;
  int complexity = 0;
};

struct ScheduleStep {
  int L = 0;        // twist word length
  long long B = 0;  // intersection budget against the seeds
};
std::vector<ScheduleStep> parse_schedule(const std::string& text);  // "L1:B1,L2:B2"
std::vector<ScheduleStep> default_schedule();

struct DecisionOutcome {
  Verdict verdict = Verdict::Unknown;
  SurfaceSig surface{1, 1};
  std::optional<SlopeCertificate> slope_certificate;
  std::optional<CurveCertificate> curve_certificate;
  std::optional<ForbiddenWitness> witness;
  std::optional<CliqueBound> clique_bound;
  std::optional<ScheduleStep> budget_used;
  std::size_t clique_cover_size = 0;
  long long clique_granularity = 0;  // complexity * clique cover size
  std::size_t atlas_size = 0;
  std::string note;
};

DecisionOutcome decide_farey_surface(const Graph& g, const SurfaceSig& sig);
std::optional<CliqueBound> quick_no(const Graph& g, const SurfaceSig& sig);
DecisionOutcome decide(const Graph& g, const SurfaceSig& sig, const std::vector<ScheduleStep>& schedule);

std::string outcome_to_json(const DecisionOutcome& o);

struct Atlas {
  ModelPtr model;
  std::vector<CurveDiagram> curves;
  std::vector<int> depth;  // twist word length that first produced the curve
  std::vector<std::vector<long long>> pairwise;
  std::vector<long long> self;
  std::size_t seed_count = 0;
  std::size_t skipped = 0;  // twists dropped for exceeding the diagram cap
};

/// Standard curves on the model: for (0,n) every curve around two or three
/// punctures, otherwise the short embedded essential words.
std::vector<CurveDiagram> seed_curves(const ModelPtr& model);

/// Seeds plus images under twist words of length <= L in the seed twists,
/// keeping curves that meet every seed at most B times.
Atlas generate_atlas(const SurfaceSig& sig, int L, long long B);

/// Vertices "k" for curve k; adjacency iff intersection equals the threshold.
Graph intersection_graph(const Atlas& atlas, const SurfaceSig& sig);

std::string atlas_to_json(const Atlas& atlas, const SurfaceSig& sig);

// ---------------------------------------------------------------- annulus

struct AnnulusArcSystem {
  std::vector<double> slopes;
  std::vector<std::vector<std::size_t>> cliques;
  std::size_t N() const noexcept { return cliques.size(); }
};

/// Throws unless cliques partition the indices and every clique spans <= 1.
void validate(const AnnulusArcSystem& sys);
double max_slope_gap(const std::vector<double>& slopes);  // max |s - s'|

/// One move: when the spread exceeds 3N+1, pick the widest gap longer than 2
/// between consecutive slopes and lower everything above it by 1.
AnnulusArcSystem annulus_reembed(const AnnulusArcSystem& sys);
/// Applies the move until nothing changes; returns every state visited.
std::vector<AnnulusArcSystem> annulus_reembed_trace(const AnnulusArcSystem& sys);

std::string annulus_to_json(const AnnulusArcSystem& sys);
AnnulusArcSystem annulus_from_json(const std::string& text);

// ---------------------------------------------------------------- clusters

struct ClusterPartition {
  std::vector<std::vector<std::size_t>> parts;
  double D = 0;
  /// Smallest distance between distinct parts (infinity for one part).
  double separation = 0;
  /// D_0 = 0, D_{k+1} = g(D_k) + 2 D_k, iterated N-1 times.
  double proof_bound = 0;
};

using Metric = std::function<double(std::size_t, std::size_t)>;
using GapFunction = std::function<double(double)>;

ClusterPartition cluster_partition(std::size_t count, const Metric& d, const GapFunction& g);
ClusterPartition cluster_partition(const std::vector<double>& points, const GapFunction& g);
double cluster_proof_bound(std::size_t count, const GapFunction& g);
double part_diameter(const std::vector<std::size_t>& part, const Metric& d);
double part_distance(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b, const Metric& d);

std::string cluster_to_json(const ClusterPartition& c);

}  // namespace curvekit
