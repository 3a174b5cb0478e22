#include "curvekit/collar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "curvekit/rng.hpp"

namespace curvekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool near(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= kTieSlack * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// strictly inside (lo, hi), ties excluded
bool inside(double x, double lo, double hi) {
  return x > lo && x < hi && !near(x, lo) && !near(x, hi);
}

}  // namespace

Geodesic::Geodesic(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) throw std::invalid_argument("geodesic endpoint is NaN");
  if (a == b) throw std::invalid_argument("geodesic endpoints must be distinct");
  if (a == -kInf || b == -kInf) throw std::invalid_argument("use +infinity for the point at infinity");
  lo_ = std::min(a, b);
  hi_ = std::max(a, b);
}

double collar_radius(double length) {
  if (!(length > 0)) throw std::invalid_argument("collar_radius: length must be positive");
  return std::asinh(1.0 / std::sinh(length / 2.0));
}

double collar_radius_from_triangle(double length) {
  if (!(length > 0)) throw std::invalid_argument("collar_radius: length must be positive");
  // Geodesic joining 1 and e^length: semicircle centre c, radius R. The ray
  // from the origin tangent to it makes angle theta with the real axis,
  // sin(theta) = R / c, and the collar radius is asinh(cot theta).
  const double lambda = std::exp(length);
  const double c = (lambda + 1.0) / 2.0, radius = (lambda - 1.0) / 2.0;
  const double theta = std::asin(radius / c);
  return std::asinh(std::cos(theta) / std::sin(theta));
}

bool geodesics_cross(const Geodesic& a, const Geodesic& b) {
  auto shares = [](double x, double y) { return x == y || (std::isfinite(x) && std::isfinite(y) && near(x, y)); };
  if (shares(a.lo(), b.lo()) || shares(a.lo(), b.hi()) || shares(a.hi(), b.lo()) || shares(a.hi(), b.hi()))
    throw std::invalid_argument("geodesics_cross: shared endpoint (asymptotic geodesics)");
  const bool lo_in = inside(b.lo(), a.lo(), a.hi());
  const bool hi_in = inside(b.hi(), a.lo(), a.hi());
  return lo_in != hi_in;
}

double geodesic_axis_distance(const Geodesic& a) {
  if (a.has_infinite_end() || a.lo() == 0.0 || a.hi() == 0.0)
    throw std::invalid_argument("geodesic_axis_distance: geodesic is asymptotic to the axis");
  if (a.lo() < 0.0 && a.hi() > 0.0) return 0.0;
  const double u = std::abs(a.lo()), v = std::abs(a.hi());
  // Closest point is where a ray from the origin is tangent to the semicircle.
  return std::asinh(2.0 * std::sqrt(u * v) / std::abs(v - u));
}

double AnnulusModel::multiplier() const {
  if (!(length > 0)) throw std::invalid_argument("annulus core length must be positive");
  return std::exp(length);
}

bool admissible(const AnnulusModel& m, const Geodesic& g) {
  if (g.has_infinite_end() || g.lo() == 0.0 || g.hi() == 0.0) return false;
  if (g.lo() < 0.0 && g.hi() > 0.0) return true;  // translates are nested
  const double u = std::min(std::abs(g.lo()), std::abs(g.hi()));
  const double v = std::max(std::abs(g.lo()), std::abs(g.hi()));
  return v <= m.multiplier() * u * (1.0 + kTieSlack);
}

namespace {

void require(const AnnulusModel& m, const Geodesic& alpha, const Geodesic& beta) {
  if (alpha.has_infinite_end() || alpha.lo() == 0.0 || alpha.hi() == 0.0)
    throw std::invalid_argument("alpha must have finite non-zero endpoints");
  if (!admissible(m, beta)) throw std::invalid_argument("beta is not admissible: its translates meet");
}

// Calls f(i, translate) for every translate that can meet alpha.
template <typename F>
void for_each_relevant_translate(const AnnulusModel& m, const Geodesic& alpha, const Geodesic& beta, F f) {
  const double ell = m.length;
  const double a_min = std::min(std::abs(alpha.lo()), std::abs(alpha.hi()));
  const double a_max = std::max(std::abs(alpha.lo()), std::abs(alpha.hi()));
  const double b_min = std::min(std::abs(beta.lo()), std::abs(beta.hi()));
  const double b_max = std::max(std::abs(beta.lo()), std::abs(beta.hi()));
  // Outside this window every translate has both endpoints strictly inside
  // (-a_min, a_min) or strictly outside [-a_max, a_max].
  const long long first = static_cast<long long>(std::floor(std::log(a_min / b_max) / ell)) - 2;
  const long long last = static_cast<long long>(std::ceil(std::log(a_max / b_min) / ell)) + 2;
  for (long long i = first; i <= last; ++i) {
    const double s = std::exp(ell * static_cast<double>(i));
    f(i, Geodesic(beta.lo() * s, beta.hi() * s));
  }
}

bool crosses_loose(const Geodesic& a, const Geodesic& b) {
  return inside(b.lo(), a.lo(), a.hi()) != inside(b.hi(), a.lo(), a.hi()) &&
         !near(b.lo(), a.lo()) && !near(b.lo(), a.hi()) && !near(b.hi(), a.lo()) && !near(b.hi(), a.hi());
}

// Intersection point of two crossing semicircles.
std::pair<double, double> crossing_point(const Geodesic& a, const Geodesic& b) {
  const double c1 = (a.lo() + a.hi()) / 2.0, r1 = (a.hi() - a.lo()) / 2.0;
  const double c2 = (b.lo() + b.hi()) / 2.0, r2 = (b.hi() - b.lo()) / 2.0;
  const double x = (r1 * r1 - r2 * r2 - c1 * c1 + c2 * c2) / (2.0 * (c2 - c1));
  const double y2 = r1 * r1 - (x - c1) * (x - c1);
  return {x, std::sqrt(std::max(y2, 0.0))};
}

}  // namespace

long long annular_projection_distance(const AnnulusModel& m, const Geodesic& alpha, const Geodesic& beta) {
  require(m, alpha, beta);
  long long count = 0;
  for_each_relevant_translate(m, alpha, beta, [&](long long, const Geodesic& t) { count += crosses_loose(alpha, t); });
  return count;
}

long long collar_restricted_distance(const AnnulusModel& m, const Geodesic& alpha, const Geodesic& beta) {
  require(m, alpha, beta);
  const double r = m.radius();
  long long count = 0;
  for_each_relevant_translate(m, alpha, beta, [&](long long, const Geodesic& t) {
    if (!crosses_loose(alpha, t)) return;
    const auto [x, y] = crossing_point(alpha, t);
    if (std::asinh(std::abs(x) / y) <= r + kTieSlack) ++count;
  });
  return count;
}

std::pair<Geodesic, Geodesic> sample_admissible_pair(const AnnulusModel& m, std::uint64_t seed) {
  SplitMix64 rng(seed);
  auto one = [&]() {
    while (true) {
      if (rng.uniform() < 0.5) {
        // crosses the axis
        const double u = -std::exp(8.0 * rng.uniform() - 4.0);
        const double v = std::exp(8.0 * rng.uniform() - 4.0);
        return Geodesic(u, v);
      }
      const double u = std::exp(6.0 * rng.uniform() - 3.0);
      const double t = rng.uniform();
      if (t < 1e-6 || t > 1.0 - 1e-6) continue;  // keep away from the tangency tie
      const double v = u * std::exp(m.length * t);
      const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      return Geodesic(sign * u, sign * v);
    }
  };
  while (true) {
    Geodesic a = one(), b = one();
    // Reject configurations with endpoint ratios too close to a deck power.
    bool tie = false;
    for (double x : {a.lo(), a.hi()})
      for (double y : {b.lo(), b.hi()}) {
        if ((x < 0) != (y < 0)) continue;
        const double k = std::log(std::abs(x / y)) / m.length;
        if (std::abs(k - std::round(k)) < 1e-9) tie = true;
      }
    if (!tie) return {a, b};
  }
}

CollarSummary run_collar_test(std::size_t samples, std::uint64_t seed, bool keep_rows) {
  CollarSummary s;
  s.seed = seed;
  s.samples = samples;
  const AnnulusModel model{1.0};
  s.r = model.radius();
  SplitMix64 xs(derive_seed(seed, ~std::uint64_t{0}));
  for (int i = 0; i < 100; ++i) {
    const double x = std::exp(10.0 * xs.uniform() - 5.0);
    const double d = geodesic_axis_distance(Geodesic(x, std::exp(1.0) * x));
    s.tangency_max_residual = std::max(s.tangency_max_residual, std::abs(d - s.r));
  }
  s.lemma2_min_gap = samples ? std::numeric_limits<long long>::max() : 0;
  for (std::size_t i = 0; i < samples; ++i) {
    auto [a, b] = sample_admissible_pair(model, derive_seed(seed, i));
    const long long proj = annular_projection_distance(model, a, b);
    const long long rest = collar_restricted_distance(model, a, b);
    s.lemma2_max_gap = std::max(s.lemma2_max_gap, proj - rest);
    s.lemma2_min_gap = std::min(s.lemma2_min_gap, proj - rest);
    if (keep_rows) s.rows.push_back({a.lo(), a.hi(), b.lo(), b.hi(), proj, rest});
  }
  return s;
}

}  // namespace curvekit
