#include "inflap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <set>
#include <sstream>

namespace inflap {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::duplicate_node_id: return "DuplicateNodeId";
    case Errc::duplicate_edge: return "DuplicateEdge";
    case Errc::self_loop: return "SelfLoop";
    case Errc::nonpositive_weight: return "NonpositiveWeight";
    case Errc::dangling_edge_endpoint: return "DanglingEdgeEndpoint";
    case Errc::disconnected_interior: return "DisconnectedInterior";
    case Errc::domain_mismatch: return "DomainMismatch";
    case Errc::invalid_exponent: return "InvalidExponent";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::unreachable: return "Unreachable";
    case Errc::k_too_large: return "KTooLarge";
    case Errc::zero_function: return "ZeroFunction";
    case Errc::constant_function: return "ConstantFunction";
    case Errc::zero_init: return "ZeroInit";
    case Errc::center_on_boundary: return "CenterOnBoundary";
    case Errc::malformed_certificate: return "MalformedCertificate";
    case Errc::unverified_certificate: return "UnverifiedCertificate";
    case Errc::precondition_failed: return "PreconditionFailed";
    case Errc::unknown_fixture: return "UnknownFixture";
    case Errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << "graph validation failed:";
  for (const auto& v : violations) out << " [" << errc_name(v.code) << "] " << v.detail << ";";
  return out.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(violations.empty() ? Errc::invalid_argument : violations.front().code,
            join_violations(violations)),
      violations_(std::move(violations)) {}

bool NodeFunction::is_zero(double abs_tol) const {
  for (double v : values_)
    if (std::abs(v) > abs_tol) return false;
  return true;
}

struct Graph::MetricCache {
  std::mutex mutex;
  std::vector<std::unique_ptr<std::vector<double>>> rows;
  std::unique_ptr<std::vector<double>> boundary;
};

std::vector<Violation> validate(const GraphData& raw) {
  std::vector<Violation> out;
  std::map<std::string, bool> seen;  // id -> boundary flag
  for (const auto& n : raw.nodes) {
    if (!seen.emplace(n.id, n.boundary).second)
      out.push_back({Errc::duplicate_node_id, "node id '" + n.id + "' declared twice"});
  }
  std::set<std::pair<std::string, std::string>> edge_keys;
  for (const auto& e : raw.edges) {
    if (e.u == e.v) {
      out.push_back({Errc::self_loop, "self-loop at '" + e.u + "'"});
      continue;
    }
    for (const auto& endpoint : {e.u, e.v}) {
      if (!seen.count(endpoint))
        out.push_back({Errc::dangling_edge_endpoint, "edge endpoint '" + endpoint + "' is not a declared node"});
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      out.push_back({Errc::nonpositive_weight,
                     "edge (" + e.u + "," + e.v + ") has weight " + std::to_string(e.weight)});
    auto key = std::minmax(e.u, e.v);
    if (!edge_keys.insert(key).second)
      out.push_back({Errc::duplicate_edge, "edge {" + key.first + "," + key.second + "} declared twice"});
  }
  if (!out.empty()) return out;

  // Connectivity of the interior-induced subgraph, by traversal.
  std::vector<std::string> interior;
  for (const auto& n : raw.nodes)
    if (!n.boundary) interior.push_back(n.id);
  if (interior.size() > 1) {
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& e : raw.edges) {
      if (!seen[e.u] && !seen[e.v]) {  // both interior
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
      }
    }
    std::set<std::string> visited{interior.front()};
    std::vector<std::string> stack{interior.front()};
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      for (const auto& next : adj[cur])
        if (visited.insert(next).second) stack.push_back(next);
    }
    if (visited.size() != interior.size())
      out.push_back({Errc::disconnected_interior,
                     "interior-induced subgraph has " + std::to_string(interior.size() - visited.size()) +
                         " node(s) unreachable from '" + interior.front() + "'"});
  }
  return out;
}

Graph assemble_graph(const GraphData& raw, bool require_connected_interior) {
  auto violations = validate(raw);
  if (!require_connected_interior) {
    std::erase_if(violations, [](const Violation& v) { return v.code == Errc::disconnected_interior; });
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));

  Graph g;
  std::vector<std::string> interior, boundary;
  for (const auto& n : raw.nodes) (n.boundary ? boundary : interior).push_back(n.id);
  std::sort(interior.begin(), interior.end());
  std::sort(boundary.begin(), boundary.end());
  g.ids_ = interior;
  g.ids_.insert(g.ids_.end(), boundary.begin(), boundary.end());
  g.interior_count_ = static_cast<int>(interior.size());

  std::map<std::string, int> index;
  for (int i = 0; i < g.node_count(); ++i) index[g.ids_[i]] = i;
  for (const auto& e : raw.edges) {
    int u = index[e.u], v = index[e.v];
    if (u > v) std::swap(u, v);
    g.edges_.push_back({u, v, e.weight});
  }
  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const Graph::Edge& a, const Graph::Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });

  const int n = g.node_count();
  std::vector<int> degree(n, 0);
  for (const auto& e : g.edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.adjacency_offsets_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) g.adjacency_offsets_[i + 1] = g.adjacency_offsets_[i] + degree[i];
  g.adjacency_.resize(g.adjacency_offsets_.back());
  std::vector<int> cursor(g.adjacency_offsets_.begin(), g.adjacency_offsets_.end() - 1);
  for (int e = 0; e < static_cast<int>(g.edges_.size()); ++e) {
    const auto& edge = g.edges_[e];
    g.adjacency_[cursor[edge.u]++] = {edge.v, edge.weight, e};
    g.adjacency_[cursor[edge.v]++] = {edge.u, edge.weight, e};
  }
  g.cache_ = std::make_unique<Graph::MetricCache>();
  g.cache_->rows.resize(n);
  return g;
}

Graph validate_graph(const GraphData& raw) { return assemble_graph(raw, true); }

Graph::Graph(const Graph& other)
    : ids_(other.ids_),
      interior_count_(other.interior_count_),
      edges_(other.edges_),
      adjacency_(other.adjacency_),
      adjacency_offsets_(other.adjacency_offsets_),
      cache_(std::make_unique<MetricCache>()) {
  cache_->rows.resize(ids_.size());
}

Graph::Graph() : cache_(std::make_unique<MetricCache>()) {}
Graph::Graph(Graph&&) noexcept = default;
Graph& Graph::operator=(Graph&&) noexcept = default;
Graph::~Graph() = default;

Graph& Graph::operator=(const Graph& other) {
  if (this == &other) return *this;
  ids_ = other.ids_;
  interior_count_ = other.interior_count_;
  edges_ = other.edges_;
  adjacency_ = other.adjacency_;
  adjacency_offsets_ = other.adjacency_offsets_;
  cache_ = std::make_unique<MetricCache>();
  cache_->rows.resize(ids_.size());
  return *this;
}

int Graph::index(const std::string& id) const {
  auto found = find(id);
  if (!found) throw Error(Errc::invalid_argument, "unknown node id '" + id + "'");
  return *found;
}

std::optional<int> Graph::find(const std::string& id) const {
  for (int i = 0; i < node_count(); ++i)
    if (ids_[i] == id) return i;
  return std::nullopt;
}

std::span<const Graph::Adjacency> Graph::neighbors(int node) const {
  return {adjacency_.data() + adjacency_offsets_[node],
          static_cast<std::size_t>(adjacency_offsets_[node + 1] - adjacency_offsets_[node])};
}

int Graph::edge_between(int u, int v) const {
  for (const auto& a : neighbors(u))
    if (a.to == v) return a.edge;
  return -1;
}

namespace {

// Dijkstra over edge lengths 1/weight; sources enter the heap at distance 0.
std::vector<double> dijkstra(const Graph& g, std::span<const int> sources) {
  std::vector<double> dist(g.node_count(), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (int s : sources) {
    dist[s] = 0.0;
    heap.push({0.0, s});
  }
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const auto& a : g.neighbors(u)) {
      double candidate = d + 1.0 / a.weight;
      if (candidate < dist[a.to]) {
        dist[a.to] = candidate;
        heap.push({candidate, a.to});
      }
    }
  }
  return dist;
}

}  // namespace

std::span<const double> Graph::distances_from(int node) const {
  {
    std::scoped_lock lock(cache_->mutex);
    if (cache_->rows[node]) return *cache_->rows[node];
  }
  int source[1] = {node};
  auto computed = std::make_unique<std::vector<double>>(dijkstra(*this, source));
  std::scoped_lock lock(cache_->mutex);
  auto& row = cache_->rows[node];
  if (!row) row = std::move(computed);
  return *row;
}

double Graph::distance(int u, int v) const { return distances_from(u)[v]; }

std::span<const double> Graph::boundary_distances() const {
  std::scoped_lock lock(cache_->mutex);
  if (!cache_->boundary) {
    std::vector<int> sources;
    for (int i = interior_count_; i < node_count(); ++i) sources.push_back(i);
    auto all = sources.empty() ? std::vector<double>(node_count(), kInf) : dijkstra(*this, sources);
    all.resize(interior_count_);
    cache_->boundary = std::make_unique<std::vector<double>>(std::move(all));
  }
  return *cache_->boundary;
}

double Graph::boundary_distance(int interior_node) const {
  if (is_boundary(interior_node))
    throw Error(Errc::invalid_argument, "boundary_distance expects an interior node");
  return boundary_distances()[interior_node];
}

NodeFunction Graph::boundary_distance_function() const {
  auto span = boundary_distances();
  return NodeFunction(std::vector<double>(span.begin(), span.end()));
}

void Graph::precompute_distances() const {
  for (int i = 0; i < node_count(); ++i) distances_from(i);
  boundary_distances();
}

double shortest_distance(const Graph& g, int u, int v) {
  double d = g.distance(u, v);
  if (!std::isfinite(d))
    throw Error(Errc::unreachable, "no path between '" + g.id(u) + "' and '" + g.id(v) + "'");
  return d;
}

double shortest_distance(const Graph& g, const std::string& u, const std::string& v) {
  return shortest_distance(g, g.index(u), g.index(v));
}

}  // namespace inflap
