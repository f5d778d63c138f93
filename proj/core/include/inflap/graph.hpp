#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace inflap {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Errc {
  duplicate_node_id,
  duplicate_edge,
  self_loop,
  nonpositive_weight,
  dangling_edge_endpoint,
  disconnected_interior,
  domain_mismatch,
  invalid_exponent,
  invalid_argument,
  unreachable,
  k_too_large,
  zero_function,
  constant_function,
  zero_init,
  center_on_boundary,
  malformed_certificate,
  unverified_certificate,
  precondition_failed,
  unknown_fixture,
  parse_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

struct Violation {
  Errc code;
  std::string detail;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Shared tolerance convention: a quantity x matches a reference r when
/// |x - r| <= rel * scale + abs, where scale is the natural magnitude of the
/// comparison (documented per check).
struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  double at_scale(double scale) const { return abs + rel * scale; }
};

/// Raw graph description as it appears in the external JSON schema,
/// prior to validation.
struct GraphData {
  struct Node {
    std::string id;
    bool boundary = false;
  };
  struct Edge {
    std::string u, v;
    double weight = 0.0;
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

/// Real-valued function on the interior nodes of a graph. Boundary values
/// are implicitly zero (Dirichlet reduction); operators taking a Graph
/// extend by zero on boundary-incident edges.
class NodeFunction {
 public:
  NodeFunction() = default;
  explicit NodeFunction(std::vector<double> values) : values_(std::move(values)) {}
  static NodeFunction zeros(int n) { return NodeFunction(std::vector<double>(n, 0.0)); }

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }
  double& operator[](int i) { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& raw() { return values_; }

  bool is_zero(double abs_tol = 0.0) const;

 private:
  std::vector<double> values_;
};

/// Real-valued function on directed edges; both orientations of every edge
/// are stored explicitly. Slot 2e holds the value on (edge[e].u, edge[e].v),
/// slot 2e+1 the value on the reversed orientation.
class EdgeFunction {
 public:
  EdgeFunction() = default;
  EdgeFunction(int edge_count, bool antisymmetric)
      : values_(2 * static_cast<std::size_t>(edge_count), 0.0), antisymmetric_(antisymmetric) {}

  int edge_count() const { return static_cast<int>(values_.size() / 2); }
  bool antisymmetric() const { return antisymmetric_; }

  double forward(int e) const { return values_[2 * static_cast<std::size_t>(e)]; }
  double backward(int e) const { return values_[2 * static_cast<std::size_t>(e) + 1]; }
  void set(int e, double fwd, double bwd) {
    values_[2 * static_cast<std::size_t>(e)] = fwd;
    values_[2 * static_cast<std::size_t>(e) + 1] = bwd;
  }
  void set_antisymmetric(int e, double fwd) { set(e, fwd, -fwd); }

  std::span<const double> values() const { return values_; }
  std::vector<double>& raw() { return values_; }

 private:
  std::vector<double> values_;
  bool antisymmetric_ = false;
};

/// Immutable weighted undirected graph with a designated Dirichlet boundary
/// node set. Interior nodes occupy indices [0, interior_count()), boundary
/// nodes follow; each group is sorted by id, which fixes a deterministic
/// ordering for serialization and tie-breaking.
///
/// Weights are reciprocal edge lengths; shortest-path metrics are computed
/// by Dijkstra over lengths 1/w, cached lazily under a mutex, so a fully
/// constructed Graph is safe to share across threads.
class Graph {
 public:
  struct Edge {
    int u, v;  // canonical order: u < v
    double weight;
  };
  struct Adjacency {
    int to;
    double weight;
    int edge;
  };

  int node_count() const { return static_cast<int>(ids_.size()); }
  int interior_count() const { return interior_count_; }
  int boundary_count() const { return node_count() - interior_count_; }
  bool has_boundary() const { return boundary_count() > 0; }
  bool is_boundary(int node) const { return node >= interior_count_; }

  const std::string& id(int node) const { return ids_[node]; }
  int index(const std::string& id) const;
  std::optional<int> find(const std::string& id) const;

  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Adjacency> neighbors(int node) const;
  int edge_between(int u, int v) const;  // -1 when absent

  /// Value of f extended by zero onto the boundary.
  double value_or_zero(const NodeFunction& f, int node) const {
    return node < interior_count_ ? f[node] : 0.0;
  }

  std::span<const double> distances_from(int node) const;
  double distance(int u, int v) const;  // +inf when unreachable
  std::span<const double> boundary_distances() const;
  double boundary_distance(int interior_node) const;
  NodeFunction boundary_distance_function() const;
  void precompute_distances() const;

  Graph();  // the empty graph
  Graph(const Graph& other);
  Graph& operator=(const Graph& other);
  Graph(Graph&&) noexcept;
  Graph& operator=(Graph&&) noexcept;
  ~Graph();

 private:
  friend Graph assemble_graph(const GraphData&, bool);

  std::vector<std::string> ids_;
  int interior_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<Adjacency> adjacency_;
  std::vector<int> adjacency_offsets_;

  struct MetricCache;
  mutable std::unique_ptr<MetricCache> cache_;
};

/// Structural checks for a raw description; empty result means valid.
std::vector<Violation> validate(const GraphData& raw);

/// Validates and builds. Throws ValidationError carrying every violation.
Graph validate_graph(const GraphData& raw);

/// Builds a graph whose structural invariants are known to hold, optionally
/// skipping the interior-connectivity requirement (the nodal splitting
/// construction produces intentionally disconnected interiors).
Graph assemble_graph(const GraphData& raw, bool require_connected_interior);

/// Shortest-path distance; throws Errc::unreachable when no path exists.
double shortest_distance(const Graph& g, int u, int v);
double shortest_distance(const Graph& g, const std::string& u, const std::string& v);

}  // namespace inflap
