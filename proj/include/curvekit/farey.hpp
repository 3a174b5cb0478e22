#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "curvekit/graph.hpp"

namespace curvekit {

using BigInt = boost::multiprecision::cpp_int;

/// Reduced rational p/q, with 1/0 standing for infinity. Stored canonically:
/// gcd(|p|, q) = 1, q >= 0, and q = 0 forces p = 1.
class Slope {
 public:
  Slope() : p_(1), q_(0) {}
  Slope(BigInt p, BigInt q);
  Slope(long long p, long long q) : Slope(BigInt(p), BigInt(q)) {}

  static Slope infinity() { return {}; }

  const BigInt& p() const noexcept { return p_; }
  const BigInt& q() const noexcept { return q_; }
  bool is_infinity() const noexcept { return q_ == 0; }

  std::string str() const;
  static Slope parse(const std::string& text);  // "p/q" or "inf"

  friend bool operator==(const Slope&, const Slope&) = default;
  /// Total order by value on the extended line with infinity last.
  friend std::strong_ordering operator<=>(const Slope& a, const Slope& b);

 private:
  BigInt p_, q_;
};

/// p_s * q_t - q_s * p_t
BigInt determinant(const Slope& s, const Slope& t);

/// Pair (g, n) describing S_{g,n}.
class SurfaceSig {
 public:
  SurfaceSig(int genus, int punctures);

  int genus() const noexcept { return g_; }
  int punctures() const noexcept { return n_; }
  int complexity() const noexcept { return 3 * g_ - 3 + n_; }
  /// Minimum intersection number realised by adjacent curves: 1 on the
  /// torus and once-punctured torus, 2 on the four-punctured sphere, 0 otherwise.
  int threshold() const noexcept;
  bool is_farey() const noexcept;
  std::string str() const;

  friend bool operator==(const SurfaceSig&, const SurfaceSig&) = default;

 private:
  int g_, n_;
};

bool farey_adjacent(const Slope& s, const Slope& t);
/// Geometric intersection number of the two slopes on a Farey surface.
BigInt slope_intersection(const Slope& s, const Slope& t, const SurfaceSig& sig);
Slope mediant(const Slope& s, const Slope& t);

struct FareyCheck {
  bool embeddable = true;
  std::optional<ForbiddenWitness> witness;
};
FareyCheck is_farey_embeddable(const Graph& g);

/// Vertex label -> slope assignment on a Farey surface.
struct SlopeCertificate {
  SurfaceSig surface{1, 1};
  std::map<std::string, Slope> assignment;
  /// "constructive" or "bounded-search(Q)".
  std::string method = "constructive";
};

bool verify_certificate(const Graph& g, const SlopeCertificate& cert);

/// Raised when the recognizer rejects the input.
class NotEmbeddable : public std::runtime_error {
 public:
  explicit NotEmbeddable(ForbiddenWitness w)
      : std::runtime_error("graph is not an induced subgraph of the Farey graph: " +
                           witness_kind_name(w)),
        witness(std::move(w)) {}
  ForbiddenWitness witness;
};

SlopeCertificate farey_embed(const Graph& g, const SurfaceSig& sig = SurfaceSig(1, 1));

/// Exhaustive search over slopes with max(|p|, q) <= bound.
std::optional<SlopeCertificate> bounded_search(const Graph& g, long long bound,
                                               const SurfaceSig& sig = SurfaceSig(1, 1));
/// The slopes searched by bounded_search, in enumeration order.
std::vector<std::pair<long long, long long>> bounded_slopes(long long bound);

std::string certificate_to_json(const SlopeCertificate& cert);
SlopeCertificate certificate_from_json(const std::string& text);

}  // namespace curvekit
