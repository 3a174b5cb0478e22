#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace curvekit {

/// Hyperbolic geodesic in the upper half-plane, given by its two endpoints
/// on the real line. +infinity is allowed as an endpoint.
class Geodesic {
 public:
  Geodesic(double a, double b);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }  // may be +infinity
  bool has_infinite_end() const noexcept { return hi_ == std::numeric_limits<double>::infinity(); }

 private:
  double lo_, hi_;
};

/// Radius of the embedded collar around a closed geodesic of length `length`.
double collar_radius(double length);

/// The same radius recovered from the right triangle cut out by the axis and
/// the geodesic joining x and e^length * x (tangency picture).
double collar_radius_from_triangle(double length);

/// True iff the endpoints interleave. Shared endpoints are an error.
bool geodesics_cross(const Geodesic& a, const Geodesic& b);

/// Hyperbolic distance from `a` to the axis (0, infinity); 0 when they cross.
double geodesic_axis_distance(const Geodesic& a);

/// Annulus cover: deck map z -> e^length z with axis (0, infinity).
struct AnnulusModel {
  double length = 1.0;
  double multiplier() const;
  double radius() const { return collar_radius(length); }
};

/// Whether the deck translates of `g` are pairwise disjoint and `g` has
/// finite, non-zero endpoints.
bool admissible(const AnnulusModel& m, const Geodesic& g);

/// |{ i : g^i(beta) crosses alpha }|
long long annular_projection_distance(const AnnulusModel& m, const Geodesic& alpha, const Geodesic& beta);
/// |{ i : g^i(beta) crosses alpha inside the r-neighbourhood of the axis }|
long long collar_restricted_distance(const AnnulusModel& m, const Geodesic& alpha, const Geodesic& beta);

/// Interleaving comparisons treat endpoints closer than this as tied.
inline constexpr double kTieSlack = 1e-12;

struct CollarSample {
  double alpha_lo, alpha_hi, beta_lo, beta_hi;
  long long projection, restricted;
};

struct CollarSummary {
  double r = 0;
  double tangency_max_residual = 0;
  long long lemma2_max_gap = 0;
  long long lemma2_min_gap = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<CollarSample> rows;
};

/// Random admissible pair for the unit-length annulus model.
std::pair<Geodesic, Geodesic> sample_admissible_pair(const AnnulusModel& m, std::uint64_t seed);

CollarSummary run_collar_test(std::size_t samples, std::uint64_t seed, bool keep_rows = false);

}  // namespace curvekit
