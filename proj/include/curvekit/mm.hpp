#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "curvekit/farey.hpp"

namespace curvekit {

/// Regular continued fraction [a0; a1, ..., am] of a finite slope, with a0 =
/// floor(p/q) (any sign), a1.. >= 1 and am >= 2 when m >= 1.
std::vector<BigInt> continued_fraction(const Slope& s);

/// Graph distance between two slopes in the Farey graph.
long long farey_distance(const Slope& s, const Slope& t);

/// 2x2 integer matrix acting on slopes by (p, q) -> (a p + b q, c p + d q).
struct Unimodular {
  BigInt a, b, c, d;
  Slope apply(const Slope& s) const;
  BigInt det() const { return a * d - b * c; }
};
/// A determinant-one matrix sending `s` to 1/0.
Unimodular to_infinity(const Slope& s);

/// [[n]]_k: 0 below the cutoff, n otherwise.
inline double cutoff(double n, long long k) { return n < static_cast<double>(k) ? 0.0 : n; }
/// Logarithm with log(0) = 0.
double log0(double x);

/// Both sides of the distance formula on the torus curve graph. Only Y = S
/// contributes to the non-annular sum there; annular terms are the
/// continued-fraction coefficients a1..am of beta after sending alpha to 1/0.
struct MMReport {
  double lhs = 0;           // log iota(alpha, beta)
  long long farey_term = 0; // [[d_S(alpha, beta)]]_k
  std::vector<double> annular_terms;  // log [[a_i]]_k
  double rhs = 0;
  long long k = 1;
  BigInt intersection = 0;
  long long distance = 0;
};
MMReport mm_estimate(const Slope& alpha, const Slope& beta, long long k);

struct CalibrationResult {
  double c_emp = 1.0;
  std::size_t sample_count = 0;
  std::pair<Slope, Slope> witness;
};
CalibrationResult calibrate_c(const std::vector<std::pair<Slope, Slope>>& sample, long long k);

/// Deterministic sample of distinct reduced pairs p/q with 1 <= q <= max_q
/// and |p| <= max_q.
std::vector<std::pair<Slope, Slope>> sample_slope_pairs(std::size_t count, long long max_q,
                                                        std::uint64_t seed);

}  // namespace curvekit
