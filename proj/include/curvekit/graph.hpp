#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace curvekit {

/// Raised for malformed graph documents. Carries the 1-based line number
/// when the failure can be attributed to one line (0 otherwise).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Finite simple undirected graph with string labels.
///
/// Vertices are kept in insertion order and addressed by dense indices;
/// the adjacency matrix is stored explicitly because every graph this
/// library handles is small (patterns, certificates, atlases of at most a
/// few thousand curves).
class Graph {
 public:
  Graph() = default;

  /// Adds a vertex and returns its index. Duplicate labels are rejected.
  std::size_t add_vertex(const std::string& label);
  /// Adds an edge between existing vertices. Self-loops and duplicates throw.
  void add_edge(std::size_t u, std::size_t v);
  void add_edge(const std::string& u, const std::string& v);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool empty() const noexcept { return labels_.empty(); }

  const std::string& label(std::size_t v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  bool adjacent(std::size_t u, std::size_t v) const { return adj_[u * labels_.size() + v] != 0; }
  std::vector<std::size_t> neighbors(std::size_t v) const;
  std::size_t degree(std::size_t v) const;
  /// Edges as index pairs (u < v), sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  /// Subgraph induced on `vertices`, in the given order.
  Graph induced(const std::vector<std::size_t>& vertices) const;

  bool operator==(const Graph& other) const = default;

 private:
  void grow(std::size_t n);

  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> index_;
  std::vector<unsigned char> adj_;
  std::size_t edge_count_ = 0;
};

/// Parses the adjacency-list format: one `label: n1, n2, ...` line per
/// vertex, `#` starts a comment. Neighbours may be listed on either or both
/// endpoints; listing the same edge twice on one line, or on both lines of
/// a pair more than once each, is a duplicate-edge error.
Graph parse_adjacency_list(std::string_view text);

/// Parses `{"vertices":[...],"edges":[[u,v],...]}`.
Graph parse_edge_list_json(std::string_view text);

/// Dispatches on the first non-blank character (`{` selects JSON).
Graph parse_graph(std::string_view text);

std::string to_adjacency_list(const Graph& g);
std::string to_edge_list_json(const Graph& g);
std::string to_dot(const Graph& g, std::string_view name = "G");

/// Vertex-disjoint induced subgraphs, ordered by smallest member index.
std::vector<Graph> connected_components(const Graph& g);
/// Same, as index sets of `g`.
std::vector<std::vector<std::size_t>> component_indices(const Graph& g);

/// Rejection certificate for the Farey characterization.
struct ForbiddenWitness {
  enum class Kind { ChordlessCycle, NonOuterplanarMinor };
  enum class Minor { None, K4, K23 };

  Kind kind = Kind::ChordlessCycle;
  Minor minor = Minor::None;
  /// Chordless cycle: the cycle in order. Minor: branch vertices first, then
  /// the remaining subdivision vertices in label order.
  std::vector<std::string> vertices;
  /// Minor witnesses only: the edges of the subdivision.
  std::vector<std::pair<std::string, std::string>> edges;
};

/// Checks that a witness really certifies what it names inside `g`.
bool verify_witness(const Graph& g, const ForbiddenWitness& w);

struct ChordalResult {
  bool chordal = true;
  std::vector<std::size_t> elimination_order;  // perfect elimination order when chordal
  std::optional<ForbiddenWitness> witness;
};
ChordalResult is_chordal(const Graph& g);

struct OuterplanarResult {
  bool outerplanar = true;
  std::optional<ForbiddenWitness> witness;
};
/// Exact test; when `want_witness` is false the (slower) subdivision
/// extraction is skipped.
OuterplanarResult is_outerplanar(const Graph& g, bool want_witness = true);

struct CliqueCover {
  std::vector<std::vector<std::size_t>> parts;
  bool exact = false;  // true when N is proven minimum
  std::size_t size() const noexcept { return parts.size(); }
};
inline constexpr std::size_t kExactCliqueCoverLimit = 12;
CliqueCover clique_cover(const Graph& g);

/// Largest clique (exact branch and bound).
std::vector<std::size_t> maximum_clique(const Graph& g);

/// Induced embedding of `pattern` into `host`: mapping[i] is the host
/// vertex of pattern vertex i.
using VertexMap = std::vector<std::size_t>;
std::optional<VertexMap> induced_match(const Graph& pattern, const Graph& host);
bool is_induced_embedding(const Graph& pattern, const Graph& host, const VertexMap& m);

std::string witness_kind_name(const ForbiddenWitness& w);
/// `{"kind":"chordless-cycle","vertices":[...]}` and the minor variant.
std::string witness_to_json(const ForbiddenWitness& w);

}  // namespace curvekit
