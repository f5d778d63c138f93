#include "doctest.h"

#include <cmath>
#include <random>

#include "inflap/graph.hpp"
#include "inflap/io.hpp"
#include "inflap/operators.hpp"
#include "inflap/runtime.hpp"
#include "test_support.hpp"

using namespace inflap;
using namespace testsupport;

TEST_CASE("validate_graph accepts the bundled fixtures") {
  for (const auto& name : fixture_names()) {
    auto fx = fixture(name);
    CHECK(validate(fx.graph).empty());
    auto g = validate_graph(fx.graph);
    CHECK(g.interior_count() + g.boundary_count() == static_cast<int>(fx.graph.nodes.size()));
  }
}

TEST_CASE("validate_graph accepts a single interior node with no edges") {
  GraphData data;
  data.nodes.push_back({"u1", false});
  auto g = validate_graph(data);
  CHECK(g.interior_count() == 1);
  CHECK_FALSE(g.has_boundary());
}

TEST_CASE("validate_graph reports structural violations") {
  auto base = fixture("g2").graph;

  SUBCASE("zero weight") {
    base.edges[1].weight = 0.0;
    auto violations = validate(base);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].code == Errc::nonpositive_weight);
    CHECK_THROWS_AS(validate_graph(base), ValidationError);
  }
  SUBCASE("negative and non-finite weights") {
    base.edges[0].weight = -2.0;
    base.edges[2].weight = std::numeric_limits<double>::quiet_NaN();
    CHECK(validate(base).size() == 2);
  }
  SUBCASE("duplicate node id") {
    base.nodes.push_back({"u1", true});
    auto violations = validate(base);
    REQUIRE(!violations.empty());
    CHECK(violations[0].code == Errc::duplicate_node_id);
  }
  SUBCASE("dangling endpoint") {
    base.edges.push_back({"u1", "nowhere", 1.0});
    auto violations = validate(base);
    REQUIRE(!violations.empty());
    CHECK(violations[0].code == Errc::dangling_edge_endpoint);
  }
  SUBCASE("self loop") {
    base.edges.push_back({"u2", "u2", 1.0});
    auto violations = validate(base);
    REQUIRE(!violations.empty());
    CHECK(violations[0].code == Errc::self_loop);
  }
  SUBCASE("disconnected interior") {
    base.nodes.push_back({"island", false});
    auto violations = validate(base);
    REQUIRE(!violations.empty());
    CHECK(violations[0].code == Errc::disconnected_interior);
  }
}

TEST_CASE("gradient matches hand values") {
  SUBCASE("g3 f1") {
    auto g = fx_graph("g3");
    auto f1 = fx_function(g, "g3", "f1");
    auto grad = gradient(g, f1);
    CHECK(grad.antisymmetric());
    CHECK(edge_value(g, grad, "u2", "u3") == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(edge_value(g, grad, "u3", "u2") == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(edge_value(g, grad, "u2", "b1") == doctest::Approx(-5.0 / 6.0).epsilon(1e-15));
  }
  SUBCASE("constant function on a boundaryless graph has zero gradient") {
    GraphData data;
    data.nodes = {{"a", false}, {"b", false}, {"c", false}};
    data.edges = {{"a", "b", 2.0}, {"b", "c", 5.0}};
    auto g = validate_graph(data);
    auto grad = gradient(g, NodeFunction({3.5, 3.5, 3.5}));
    for (int e = 0; e < grad.edge_count(); ++e) CHECK(grad.forward(e) == 0.0);
  }
  SUBCASE("g2 boundary distance") {
    auto g = fx_graph("g2");
    auto grad = gradient(g, fx_function(g, "g2", "dB"));
    CHECK(edge_value(g, grad, "u1", "b1") == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(edge_value(g, grad, "u1", "u2") == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("domain mismatch") {
    auto g = fx_graph("g2");
    CHECK_THROWS_AS(gradient(g, NodeFunction({1.0})), Error);
  }
}

TEST_CASE("divergence matches hand values") {
  auto g = fx_graph("g3");

  SUBCASE("certificate flux of the Lambda = 6/5 pair") {
    EdgeFunction Xi(static_cast<int>(g.edges().size()), true);
    int e_u2u3 = g.edge_between(g.index("u2"), g.index("u3"));
    int e_u3b2 = g.edge_between(g.index("u3"), g.index("b2"));
    // forward orientation is (min index, max index); fix signs accordingly
    auto set_directed = [&](int e, const std::string& from, double value) {
      bool forward = g.id(g.edges()[e].u) == from;
      Xi.set_antisymmetric(e, forward ? value : -value);
    };
    set_directed(e_u2u3, "u2", -1.0 / 5.0);
    set_directed(e_u3b2, "u3", -3.0 / 10.0);
    auto div = divergence(g, Xi);
    CHECK(-div[g.index("u2")] == doctest::Approx(3.0 / 5.0).epsilon(1e-15));
    CHECK(-div[g.index("u3")] == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("zero in, zero out") {
    EdgeFunction zero(static_cast<int>(g.edges().size()), false);
    auto div = divergence(g, zero);
    for (int u = 0; u < g.interior_count(); ++u) CHECK(div[u] == 0.0);
  }
}

TEST_CASE("integration by parts holds on random instances") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = validate_graph(random_graph_data(rng));
    auto f = random_function(rng, g);
    auto G = random_edge_function(rng, g);
    double lhs = inner_product(G, gradient(g, f));
    double rhs = inner_product(divergence(g, G), f);
    // <G, grad f>_E = <-div G, f>_V
    CHECK(lhs == doctest::Approx(-rhs).epsilon(1e-12));
  }
}

TEST_CASE("norm_p matches hand values and rejects p < 1") {
  auto g = fx_graph("g3");
  auto f1 = fx_function(g, "g3", "f1");
  CHECK(norm_p(f1, kInf) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(norm_p(gradient(g, f1), kInf) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(norm_p(NodeFunction::zeros(4), 3.0) == 0.0);
  CHECK_THROWS_AS(norm_p(f1, 0.5), Error);

  // edge norms carry the 1/2 factor: ||grad dB||_2^2 = 19/9 on g2
  auto g2 = fx_graph("g2");
  double n2 = norm_p(gradient(g2, fx_function(g2, "g2", "dB")), 2.0);
  CHECK(n2 * n2 == doctest::Approx(19.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("norm_p converges monotonically to the max norm") {
  std::mt19937 rng(21);
  auto g = validate_graph(random_graph_data(rng));
  auto f = random_function(rng, g);
  double limit = norm_p(f, kInf);
  double previous = norm_p(f, 2.0);
  for (double p = 4.0; p <= 256.0; p *= 2.0) {
    double current = norm_p(f, p);
    CHECK(current <= previous + 1e-12);
    CHECK(current >= limit - 1e-12);
    previous = current;
  }
  CHECK(previous == doctest::Approx(limit).epsilon(0.02));
}

TEST_CASE("shortest distances match the paper and the enumeration oracle") {
  auto g3 = fx_graph("g3");
  CHECK(shortest_distance(g3, "u2", "b2") == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(g3.distance(g3.index("u2"), g3.index("u2")) == 0.0);

  auto g1 = fx_graph("g1");
  CHECK(shortest_distance(g1, "u1", "u5") == doctest::Approx(2.0).epsilon(1e-15));

  for (const auto& name : fixture_names()) {
    auto g = fx_graph(name);
    for (int u = 0; u < g.node_count(); ++u)
      for (int v = 0; v < g.node_count(); ++v)
        CHECK(g.distance(u, v) == doctest::Approx(enumerated_distance(g, u, v)).epsilon(1e-12));
  }
}

TEST_CASE("distance satisfies the metric axioms on fixtures") {
  for (const auto& name : fixture_names()) {
    auto g = fx_graph(name);
    const int n = g.node_count();
    for (int u = 0; u < n; ++u) {
      CHECK(g.distance(u, u) == 0.0);
      for (int v = 0; v < n; ++v) {
        CHECK(g.distance(u, v) == doctest::Approx(g.distance(v, u)).epsilon(1e-14));
        if (u != v) CHECK(g.distance(u, v) > 0.0);
        for (int w = 0; w < n; ++w)
          CHECK(g.distance(u, v) <= g.distance(u, w) + g.distance(w, v) + 1e-12);
      }
    }
  }
}

TEST_CASE("boundary distances match the fixtures") {
  auto g2 = fx_graph("g2");
  CHECK(g2.boundary_distance(g2.index("u1")) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(g2.boundary_distance(g2.index("u2")) == doctest::Approx(0.5).epsilon(1e-15));

  auto g1 = fx_graph("g1");
  std::map<std::string, double> expected{
      {"u1", 1.0}, {"u2", 1.0}, {"u3", 0.5}, {"u4", 1.0}, {"u5", 1.0}};
  for (const auto& [id, value] : expected)
    CHECK(g1.boundary_distance(g1.index(id)) == doctest::Approx(value).epsilon(1e-15));

  GraphData no_boundary;
  no_boundary.nodes = {{"a", false}, {"b", false}};
  no_boundary.edges = {{"a", "b", 1.0}};
  auto g = validate_graph(no_boundary);
  CHECK(std::isinf(g.boundary_distance(0)));
  CHECK(std::isinf(g.boundary_distance(1)));
}

TEST_CASE("unreachable nodes raise") {
  GraphData data;
  data.nodes = {{"a", false}, {"lonely", true}};
  auto g = validate_graph(data);
  CHECK_THROWS_AS(shortest_distance(g, "a", "lonely"), Error);
}

TEST_CASE("Lipschitz bound |f(u)-f(v)| <= ||grad f||_inf d(u,v)") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = validate_graph(random_graph_data(rng));
    auto f = random_function(rng, g);
    double grad_inf = norm_p(gradient(g, f), kInf);
    for (int u = 0; u < g.interior_count(); ++u)
      for (int v = 0; v < g.interior_count(); ++v)
        CHECK(std::abs(f[u] - f[v]) <= grad_inf * g.distance(u, v) + 1e-12);
  }
}

TEST_CASE("graph and function JSON round-trips exactly") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = validate_graph(random_graph_data(rng));
    auto g2 = validate_graph(io::parse_graph_data(io::graph_json(g)));
    REQUIRE(g2.node_count() == g.node_count());
    REQUIRE(g2.interior_count() == g.interior_count());
    REQUIRE(g2.edges().size() == g.edges().size());
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      CHECK(g2.edges()[e].u == g.edges()[e].u);
      CHECK(g2.edges()[e].v == g.edges()[e].v);
      CHECK(g2.edges()[e].weight == g.edges()[e].weight);  // bit-exact
    }

    auto f = random_function(rng, g);
    auto f2 = io::parse_node_function(g, io::node_function_json(g, f));
    for (int u = 0; u < f.size(); ++u) CHECK(f2[u] == f[u]);  // bit-exact
  }
}

TEST_CASE("malformed graph documents raise parse errors, never crash") {
  for (const char* text : {
           "",
           "not json",
           "[]",
           "{}",
           R"({"nodes": 5, "edges": []})",
           R"({"nodes": [{"id": 3}], "edges": []})",
           R"({"nodes": [{"id": "a"}], "edges": [{"u": "a"}]})",
           R"({"nodes": [{"id": "a"}], "edges": [{"u": "a", "v": "a", "weight": "x"}]})",
       }) {
    CHECK_THROWS_AS(io::parse_graph_data(text), Error);
  }
  auto g = fx_graph("g2");
  for (const char* text : {"", "null", "[]", R"({"values": 3})", R"({"values": {"u1": "x"}})"}) {
    CHECK_THROWS_AS(io::parse_node_function(g, text), Error);
  }
}

TEST_CASE("distance cache is safe to populate from many threads") {
  std::mt19937 rng(67);
  RandomGraphOptions opts;
  opts.min_interior = 8;
  opts.max_interior = 10;
  opts.force_boundary = true;
  auto g = validate_graph(random_graph_data(rng, opts));
  auto reference = g;  // fresh cache, computed serially
  reference.precompute_distances();

  inflap::runtime::parallel_for(g.node_count(), [&](int u) { g.distances_from(u); });
  for (int u = 0; u < g.node_count(); ++u)
    for (int v = 0; v < g.node_count(); ++v) CHECK(g.distance(u, v) == reference.distance(u, v));
}

TEST_CASE("node function files must cover the interior exactly") {
  auto g = fx_graph("g2");
  CHECK_THROWS_AS(io::parse_node_function(g, R"({"values": {"u1": 1.0}})"), Error);
  CHECK_THROWS_AS(io::parse_node_function(g, R"({"values": {"u1": 1.0, "b1": 2.0}})"), Error);
  CHECK_THROWS_AS(
      io::parse_node_function(g, R"({"values": {"u1": 1.0, "u2": 2.0, "b1": 0.0}})"), Error);
  auto f = io::parse_node_function(g, R"({"values": {"u1": 0.25, "u2": -0.5}})");
  CHECK(f[g.index("u1")] == 0.25);
  CHECK(f[g.index("u2")] == -0.5);
}
