#pragma once

#include "inflap/graph.hpp"

#include <map>
#include <string>
#include <vector>

namespace inflap {

/// Bundled path-graph fixtures with their known eigenpairs, used by the
/// acceptance suite and exported by the CLI `fixtures` subcommand.
struct FixtureFunction {
  std::string name;
  std::map<std::string, double> values;
  double lambda = 0.0;
  bool satisfies_limit_equation = false;
};

struct Fixture {
  std::string name;
  GraphData graph;
  std::vector<FixtureFunction> functions;
};

Fixture fixture(const std::string& name);  // g1 | g2 | g3; throws UnknownFixture
std::vector<std::string> fixture_names();

}  // namespace inflap
