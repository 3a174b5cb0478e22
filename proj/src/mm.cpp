#include "curvekit/mm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "curvekit/rng.hpp"

namespace curvekit {

std::vector<BigInt> continued_fraction(const Slope& s) {
  if (s.is_infinity()) throw std::invalid_argument("continued_fraction: 1/0 has no expansion");
  BigInt p = s.p(), q = s.q();
  std::vector<BigInt> out;
  // floor division for the leading term
  BigInt a0 = p / q;
  if (p < 0 && a0 * q != p) a0 -= 1;
  out.push_back(a0);
  p -= a0 * q;
  while (p != 0) {
    // now 0 < p < q: expand q/p
    BigInt a = q / p;
    BigInt r = q - a * p;
    out.push_back(a);
    q = p;
    p = r;
  }
  return out;
}

Slope Unimodular::apply(const Slope& s) const { return Slope(a * s.p() + b * s.q(), c * s.p() + d * s.q()); }

Unimodular to_infinity(const Slope& s) {
  // extended Euclid: x p + y q = 1
  BigInt old_r = s.p(), r = s.q(), old_x = 1, x = 0, old_y = 0, y = 1;
  while (r != 0) {
    BigInt quot = old_r / r;
    BigInt t = old_r - quot * r;
    old_r = r;
    r = t;
    t = old_x - quot * x;
    old_x = x;
    x = t;
    t = old_y - quot * y;
    old_y = y;
    y = t;
  }
  if (old_r < 0) {
    old_x = -old_x;
    old_y = -old_y;
  }
  return Unimodular{old_x, old_y, -s.q(), s.p()};
}

long long farey_distance(const Slope& s, const Slope& t) {
  if (s == t) return 0;
  const Slope x = to_infinity(s).apply(t);
  const auto cf = continued_fraction(x);
  // Geodesics stay in the ladder of triangles crossed by the hyperbolic
  // geodesic from 1/0 to x. Convergent c_{k+1} is adjacent to c_k and is
  // a_{k+1} steps along the fan of c_k from c_{k-1}.
  long long before = 0, current = 1;  // d(c_{-1} = 1/0), d(c_0)
  for (std::size_t i = 1; i < cf.size(); ++i) {
    long long next = current + 1;
    if (cf[i] < next - before) next = before + static_cast<long long>(cf[i]);
    before = current;
    current = next;
  }
  return current;
}

double log0(double x) { return x <= 0 ? 0.0 : std::log(x); }

MMReport mm_estimate(const Slope& alpha, const Slope& beta, long long k) {
  if (alpha == beta) throw std::invalid_argument("mm_estimate: alpha == beta");
  if (k < 1) throw std::invalid_argument("mm_estimate: cutoff k must be positive");
  MMReport r;
  r.k = k;
  r.intersection = abs(determinant(alpha, beta));
  r.lhs = log0(r.intersection.convert_to<double>());
  r.distance = farey_distance(alpha, beta);
  r.farey_term = r.distance < k ? 0 : r.distance;
  const Slope image = to_infinity(alpha).apply(beta);
  const auto cf = continued_fraction(image);
  double sum = static_cast<double>(r.farey_term);
  for (std::size_t i = 1; i < cf.size(); ++i) {
    const double term = log0(cutoff(cf[i].convert_to<double>(), k));
    r.annular_terms.push_back(term);
    sum += term;
  }
  r.rhs = sum;
  return r;
}

CalibrationResult calibrate_c(const std::vector<std::pair<Slope, Slope>>& sample, long long k) {
  if (sample.empty()) throw std::invalid_argument("calibrate_c: empty sample");
  CalibrationResult result;
  result.sample_count = sample.size();
  result.witness = sample.front();
  double best = 1.0;
  for (const auto& pair : sample) {
    const auto r = mm_estimate(pair.first, pair.second, k);
    // smallest C with lhs <= C rhs + C and rhs <= C lhs + C
    const double need = std::max(r.lhs / (r.rhs + 1.0), r.rhs / (r.lhs + 1.0));
    if (need > best) {
      best = need;
      result.witness = pair;
    }
  }
  result.c_emp = best;
  return result;
}

std::vector<std::pair<Slope, Slope>> sample_slope_pairs(std::size_t count, long long max_q,
                                                        std::uint64_t seed) {
  if (max_q < 1) throw std::invalid_argument("sample_slope_pairs: max_q must be positive");
  std::vector<std::pair<Slope, Slope>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SplitMix64 rng(derive_seed(seed, i));
    auto draw = [&]() {
      while (true) {
        const long long q = 1 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(max_q)));
        const long long p =
            static_cast<long long>(rng.below(static_cast<std::uint64_t>(2 * max_q + 1))) - max_q;
        if (std::gcd(p < 0 ? -p : p, q) == 1) return Slope(p, q);
      }
    };
    Slope a = draw(), b = draw();
    while (b == a) b = draw();
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

}  // namespace curvekit
