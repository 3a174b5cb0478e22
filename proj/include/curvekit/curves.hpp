#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvekit/farey.hpp"

namespace curvekit {

/// Raised when a diagram would exceed kMaxCrossingEvents.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxCrossingEvents = 100000;

/// Letter of a crossing word: +(e+1) leaves the polygon through side (e,+)
/// and re-enters through its partner (e,-); -(e+1) is the reverse.
using Letter = int;
using Word = std::vector<Letter>;

/// Polygon with paired sides. The polygon vertices are punctures (or, for
/// closed surfaces, a single regular point). Seen from the centre of the
/// polygon this is a one-vertex ribbon graph: side (e,s) is half-edge 2e+s'.
class PolygonModel {
 public:
  int genus() const noexcept { return genus_; }
  int punctures() const noexcept { return punctures_; }
  /// Number of side pairs.
  int rank() const noexcept { return static_cast<int>(names_.size()); }
  int side_count() const noexcept { return 2 * rank(); }
  /// Closed surfaces have no puncture at the polygon vertex.
  bool closed() const noexcept { return closed_; }
  /// Intersection numbers are exact only when the vertex is a puncture, or
  /// for the torus, whose simple curves behave as on the punctured torus.
  bool supports_intersection() const noexcept { return !closed_ || genus_ == 1; }

  const std::string& side_name(int pair) const { return names_.at(pair); }
  /// Half-edges in counter-clockwise order.
  const std::vector<int>& cyclic_order() const noexcept { return order_; }
  int position(int half_edge) const { return pos_.at(half_edge); }
  /// Face (puncture) boundary words, one per face of the ribbon graph.
  const std::vector<Word>& peripheral_words() const noexcept { return faces_; }

  std::string descriptor() const;  // "g,n"
  bool operator==(const PolygonModel& o) const {
    return genus_ == o.genus_ && punctures_ == o.punctures_ && order_ == o.order_;
  }

  /// x strictly inside the counter-clockwise arc from a to b.
  bool ccw_between(int a, int x, int b) const;

  std::string letter_name(Letter l) const;
  Letter parse_letter(const std::string& s) const;

 private:
  friend std::shared_ptr<const PolygonModel> make_model(const SurfaceSig& sig);
  int genus_ = 0, punctures_ = 0;
  bool closed_ = false;
  std::vector<std::string> names_;
  std::vector<int> order_, pos_;
  std::vector<Word> faces_;
};

using ModelPtr = std::shared_ptr<const PolygonModel>;

/// Canonical model: handles a_i b_i a_i^-1 b_i^-1 then one petal per extra
/// puncture. (1,0) shares the (1,1) square; (0,n) is a disk with n-1 petals.
ModelPtr make_model(const SurfaceSig& sig);

inline int out_half(Letter l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }
inline int in_half(Letter l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 0 : 1); }

/// Closed curve on a model, stored as a cyclically reduced crossing word.
class CurveDiagram {
 public:
  CurveDiagram(ModelPtr model, Word word);

  const ModelPtr& model() const noexcept { return model_; }
  const Word& word() const noexcept { return word_; }
  std::size_t length() const noexcept { return word_.size(); }
  bool empty() const noexcept { return word_.empty(); }

  /// Crossing events as (side index in cyclic order, rank along that side).
  struct Event {
    int side;
    int rank;
  };
  std::vector<Event> events() const;

  /// Minimal rotation of the word or its inverse: the free homotopy class of
  /// the unoriented curve.
  Word canonical() const;
  std::string str() const;
  bool operator==(const CurveDiagram& o) const;

 private:
  ModelPtr model_;
  Word word_;
};

Word inverse(const Word& w);
/// Free cyclic reduction (bigons between the curve and a side).
Word cyclic_reduce(Word w);
/// Same result by cancelling in a random order, for confluence checks.
Word cyclic_reduce_random(Word w, std::uint64_t seed);

CurveDiagram make_curve(ModelPtr model, const std::string& word);
CurveDiagram make_torus_curve(ModelPtr torus, long long p, long long q);

long long geometric_intersection(const CurveDiagram& a, const CurveDiagram& b);
long long self_intersection(const CurveDiagram& c);

/// tau_along^power (c). `along` must be embedded.
CurveDiagram dehn_twist(const CurveDiagram& c, const CurveDiagram& along, long long power);

/// False for null-homotopic and peripheral curves. Requires an embedded curve.
bool is_essential(const CurveDiagram& c);

/// Exponent sum per side pair.
std::vector<long long> abelianization(const CurveDiagram& c);

std::string diagram_to_json(const CurveDiagram& c);
CurveDiagram diagram_from_json(const std::string& text);

}  // namespace curvekit
