#include "inflap/fixtures.hpp"

namespace inflap {

namespace {

Fixture make_g1() {
  Fixture fx;
  fx.name = "g1";
  fx.graph.nodes = {{"u1", false}, {"u2", false}, {"u3", false}, {"u4", false}, {"u5", false},
                    {"b1", true},  {"b2", true},  {"b3", true}};
  fx.graph.edges = {{"b1", "u1", 1.0}, {"u1", "u2", 2.0}, {"u2", "u3", 2.0}, {"u3", "u4", 2.0},
                    {"u4", "u5", 2.0}, {"u5", "b2", 1.0}, {"u3", "b3", 2.0}};
  fx.functions.push_back({"f",
                          {{"u1", 1.0},
                           {"u2", 2.0 / 3.0},
                           {"u3", 1.0 / 3.0},
                           {"u4", 2.0 / 3.0},
                           {"u5", 1.0}},
                          1.0,
                          true});
  // g solves the limit equation but cannot arise as a p -> inf limit of
  // first eigenfunctions: those are unique and inherit this graph's mirror
  // symmetry for every p, while g is asymmetric. Kept as the witness that
  // the limit-equation solution set is strictly larger than the set of
  // eigenpair limits; not machine-checkable from a single function.
  fx.functions.push_back({"g",
                          {{"u1", 1.0},
                           {"u2", 2.0 / 3.0},
                           {"u3", 1.0 / 3.0},
                           {"u4", 2.0 / 3.0},
                           {"u5", 4.0 / 9.0}},
                          1.0,
                          true});
  return fx;
}

Fixture make_g2() {
  Fixture fx;
  fx.name = "g2";
  fx.graph.nodes = {{"u1", false}, {"u2", false}, {"b1", true}, {"b2", true}};
  fx.graph.edges = {{"b1", "u1", 3.0}, {"u1", "u2", 2.0}, {"u2", "b2", 2.0}};
  // The boundary distance: a generalized eigenpair for Lambda = 2 that fails
  // the limit equation at u1.
  fx.functions.push_back({"dB", {{"u1", 1.0 / 3.0}, {"u2", 0.5}}, 2.0, false});
  return fx;
}

Fixture make_g3() {
  Fixture fx;
  fx.name = "g3";
  fx.graph.nodes = {{"u2", false}, {"u3", false}, {"b1", true}, {"b2", true}};
  fx.graph.edges = {{"b1", "u2", 1.0}, {"u2", "u3", 3.0}, {"u3", "b2", 2.0}};
  fx.functions.push_back({"f1", {{"u2", 5.0 / 6.0}, {"u3", 0.5}}, 6.0 / 5.0, true});
  fx.functions.push_back({"f2", {{"u2", 1.0 / 6.0}, {"u3", -1.0 / 6.0}}, 6.0, true});
  // Representative of the one-parameter family (*, 1/2), * in [1/6, 1/2],
  // all generalized eigenpairs for Lambda = 2 that fail the limit equation.
  fx.functions.push_back({"f3", {{"u2", 1.0 / 3.0}, {"u3", 0.5}}, 2.0, false});
  return fx;
}

}  // namespace

Fixture fixture(const std::string& name) {
  if (name == "g1") return make_g1();
  if (name == "g2") return make_g2();
  if (name == "g3") return make_g3();
  throw Error(Errc::unknown_fixture, "unknown fixture '" + name + "' (expected g1, g2, or g3)");
}

std::vector<std::string> fixture_names() { return {"g1", "g2", "g3"}; }

}  // namespace inflap
