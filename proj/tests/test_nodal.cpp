#include "doctest.h"

#include <cmath>
#include <random>

#include "inflap/nodal.hpp"
#include "inflap/p_spectral.hpp"
#include "inflap/operators.hpp"
#include "test_support.hpp"

using namespace inflap;
using namespace testsupport;

TEST_CASE("nodal_domains") {
  SUBCASE("f2 on g3 has two singleton domains") {
    auto g = fx_graph("g3");
    auto [count, domains] = nodal_domains(g, fx_function(g, "g3", "f2"));
    CHECK(count == 2);
    REQUIRE(domains.size() == 2);
    CHECK(domains[0].sign == 1);
    CHECK(g.id(domains[0].nodes[0]) == "u2");
    CHECK(domains[1].sign == -1);
    CHECK(g.id(domains[1].nodes[0]) == "u3");
  }
  SUBCASE("positive f on g1 is a single domain") {
    auto g = fx_graph("g1");
    auto [count, domains] = nodal_domains(g, fx_function(g, "g1", "f"));
    CHECK(count == 1);
    CHECK(domains[0].nodes.size() == 5);
  }
  SUBCASE("strictly positive functions always give one domain") {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
      auto g = validate_graph(random_graph_data(rng));
      auto f = random_function(rng, g, false);  // positive values
      CHECK(nodal_domains(g, f).first == 1);
    }
  }
  SUBCASE("zero function is rejected") {
    auto g = fx_graph("g3");
    CHECK_THROWS_AS(nodal_domains(g, NodeFunction::zeros(2)), Error);
  }
}

TEST_CASE("split_at_zeros on the sign-change fixture") {
  auto g = fx_graph("g3");
  auto f2 = fx_function(g, "g3", "f2");
  auto decomposition = split_at_zeros(g, f2);

  // edge (u2,u3) with w = 3 and values +-1/6 splits into w = 6, 6
  const auto& split = decomposition.split_graph;
  auto w = split.find("z:u2:u3");
  REQUIRE(w.has_value());
  CHECK(split.is_boundary(*w));
  int e_u2w = split.edge_between(split.index("u2"), *w);
  int e_wu3 = split.edge_between(*w, split.index("u3"));
  REQUIRE(e_u2w >= 0);
  REQUIRE(e_wu3 >= 0);
  CHECK(split.edges()[e_u2w].weight == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(split.edges()[e_wu3].weight == doctest::Approx(6.0).epsilon(1e-15));
  // conjugacy: 1/6 + 1/6 = 1/3
  CHECK(1.0 / split.edges()[e_u2w].weight + 1.0 / split.edges()[e_wu3].weight ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  // gradients on the halves equal the original gradient
  NodeFunction f_split = NodeFunction::zeros(split.interior_count());
  for (int u = 0; u < split.interior_count(); ++u) f_split[u] = f2[g.index(split.id(u))];
  auto grad_split = gradient(split, f_split);
  auto grad_orig = gradient(g, f2);
  int e_orig = g.edge_between(g.index("u2"), g.index("u3"));
  CHECK(edge_value(split, grad_split, "u2", "z:u2:u3") ==
        doctest::Approx(edge_value(g, grad_orig, "u2", "u3")).epsilon(1e-15));
  CHECK(edge_value(split, grad_split, "z:u2:u3", "u3") ==
        doctest::Approx(edge_value(g, grad_orig, "u2", "u3")).epsilon(1e-15));
  (void)e_orig;

  // edge map records the split
  int splits = 0;
  for (const auto& rec : decomposition.edge_map)
    if (!rec.synthesized_id.empty()) {
      ++splits;
      CHECK(rec.synthesized_id == "z:u2:u3");
    }
  CHECK(splits == 1);
}

TEST_CASE("split_at_zeros leaves sign-constant functions untouched") {
  auto g = fx_graph("g1");
  auto decomposition = split_at_zeros(g, fx_function(g, "g1", "f"));
  CHECK(decomposition.split_graph.node_count() == g.node_count());
  CHECK(decomposition.split_graph.edges().size() == g.edges().size());
  for (const auto& rec : decomposition.edge_map) CHECK(rec.synthesized_id.empty());
  CHECK(decomposition.domains.size() == 1);
}

TEST_CASE("split_at_zeros moves zero nodes to the boundary") {
  auto g = fx_graph("g1");
  auto f = make_function(g, {{"u1", 1.0}, {"u2", 0.5}, {"u3", 0.0}, {"u4", 0.5}, {"u5", 1.0}});
  auto decomposition = split_at_zeros(g, f);
  const auto& split = decomposition.split_graph;
  CHECK(split.is_boundary(split.index("u3")));
  CHECK(split.interior_count() == 4);
  REQUIRE(decomposition.domains.size() == 2);
  CHECK(decomposition.domains[0].nodes.size() == 2);
  CHECK(decomposition.domains[1].nodes.size() == 2);
  CHECK(g.id(decomposition.domains[0].nodes[0]) == "u1");
  CHECK(g.id(decomposition.domains[1].nodes[0]) == "u4");
}

TEST_CASE("splitting invariants on random sign-changing functions") {
  std::mt19937 rng(59);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto g = validate_graph(random_graph_data(rng));
    auto f = random_function(rng, g);
    bool has_pos = false, has_neg = false;
    for (int u = 0; u < f.size(); ++u) {
      has_pos = has_pos || f[u] > 0.0;
      has_neg = has_neg || f[u] < 0.0;
    }
    if (!has_pos || !has_neg) continue;
    ++checked;

    auto decomposition = split_at_zeros(g, f);
    const auto& split = decomposition.split_graph;

    // conjugate-weight identity on every split edge
    for (const auto& rec : decomposition.edge_map) {
      if (rec.synthesized_id.empty()) continue;
      const auto& orig = g.edges()[rec.original_edge];
      int w = split.index(rec.synthesized_id);
      int e1 = split.edge_between(split.index(g.id(orig.u)), w);
      int e2 = split.edge_between(w, split.index(g.id(orig.v)));
      REQUIRE(e1 >= 0);
      REQUIRE(e2 >= 0);
      double lhs = 1.0 / split.edges()[e1].weight + 1.0 / split.edges()[e2].weight;
      CHECK(lhs == doctest::Approx(1.0 / orig.weight).epsilon(1e-12));
    }

    // component count equals the nodal-domain count
    CHECK(static_cast<int>(decomposition.domains.size()) == nodal_domains(g, f).first);

    // distances between same-domain interior nodes are preserved
    for (const auto& domain : decomposition.domains) {
      for (std::size_t i = 0; i < domain.nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < domain.nodes.size(); ++j) {
          int a = domain.nodes[i], b = domain.nodes[j];
          double before = g.distance(a, b);
          double after = split.distance(split.index(g.id(a)), split.index(g.id(b)));
          CHECK(after == doctest::Approx(before).epsilon(1e-12));
        }
      }
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("restriction property: components inherit the limit equation") {
  // (f2, 6) on g3 splits into two single-node domains, each of which must
  // satisfy the limit equation on its component graph.
  auto g = fx_graph("g3");
  auto f2 = fx_function(g, "g3", "f2");
  REQUIRE(check_limit_equation(g, f2, 6.0).overall);
  auto decomposition = split_at_zeros(g, f2);
  REQUIRE(decomposition.domains.size() == 2);
  for (int d = 0; d < 2; ++d) {
    auto [component, restricted] = extract_component(g, f2, decomposition, d);
    CHECK(check_limit_equation(component, restricted, 6.0).overall);
  }
  // same for the sign-constant pairs on g1, where the component is the graph
  auto g1 = fx_graph("g1");
  for (const char* name : {"f", "g"}) {
    auto f = fx_function(g1, "g1", name);
    auto dec = split_at_zeros(g1, f);
    REQUIRE(dec.domains.size() == 1);
    auto [component, restricted] = extract_component(g1, f, dec, 0);
    CHECK(check_limit_equation(component, restricted, 1.0).overall);
  }
}

TEST_CASE("packing lower bound on random sweep-produced solutions") {
  // 1/R_{N(f)} <= Lambda for limit-equation solutions, with the radius
  // cross-checked against the exhaustive oracle
  std::mt19937 rng(61);
  int checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    RandomGraphOptions opts;
    opts.min_interior = 4;
    opts.max_interior = 6;
    opts.max_edges = 8;  // tree-ish
    opts.force_boundary = true;
    auto g = validate_graph(random_graph_data(rng, opts));
    auto records = p_sweep(g, doubling_schedule(64.0), SweepMode::first);
    if (records.size() != 6 || !records.back().converged) continue;
    const auto& last = records.back();
    Tolerance tol{5e-2, 1e-9};
    if (!check_limit_equation(g, last.f, last.lambda_root, tol).overall) continue;
    ++checked;
    int domains = nodal_domains(g, last.f, 1e-9).first;
    double oracle_radius = brute_force_packing(g, domains).radius;
    CHECK(1.0 / oracle_radius <= last.lambda_root * (1.0 + 5e-2));
  }
  CHECK(checked >= 6);
}

TEST_CASE("nodal_bounds_check") {
  SUBCASE("(f2, 6) on g3: equality 1/R_2 = 6") {
    auto g = fx_graph("g3");
    auto report = nodal_bounds_check(g, fx_function(g, "g3", "f2"), 6.0);
    CHECK(report.ok);
    CHECK(report.domain_count == 2);
    CHECK(report.lower_bound == doctest::Approx(6.0).epsilon(1e-13));
  }
  SUBCASE("(f, 1) on g1: equality 1/R_1 = 1") {
    auto g = fx_graph("g1");
    auto report = nodal_bounds_check(g, fx_function(g, "g1", "f"), 1.0);
    CHECK(report.ok);
    CHECK(report.domain_count == 1);
    CHECK(report.lower_bound == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("precondition: the pair must satisfy the limit equation") {
    auto g = fx_graph("g2");
    CHECK_THROWS_AS(nodal_bounds_check(g, fx_function(g, "g2", "dB"), 2.0), Error);
  }
}
