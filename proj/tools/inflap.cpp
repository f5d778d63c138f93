// inflap: p- and infinity-Laplacian eigenvalue toolkit for weighted graphs
// with Dirichlet boundary.
//
// Exit codes: 0 success, 1 input error, 2 verification failure (report still
// written), 3 solver non-converged (partial results written).

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "inflap/fixtures.hpp"
#include "inflap/graph.hpp"
#include "inflap/inf_spectral.hpp"
#include "inflap/io.hpp"
#include "inflap/nodal.hpp"
#include "inflap/p_spectral.hpp"
#include "inflap/packing.hpp"
#include "inflap/runtime.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitVerificationFailed = 2;
constexpr int kExitSolverNonConverged = 3;

void emit(const std::string& out_path, const std::string& report) {
  if (out_path.empty())
    std::cout << report;
  else
    inflap::io::write_file_atomic(out_path, report);
}

struct CommonArgs {
  std::string graph_path;
  std::string function_path;
  std::string out_path;
  double lambda = 0.0;
  inflap::Tolerance tol;
  unsigned seed = 0;
};

int run(CLI::App& app, int argc, char** argv, const std::function<int()>& body) {
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    return body();
  } catch (const inflap::Error& e) {
    std::cerr << "error [" << inflap::errc_name(e.code()) << "]: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph p-/infinity-Laplacian eigenvalue toolkit"};
  app.require_subcommand(1);

  CommonArgs args;
  int k = 1;
  int kmax = 1;
  double pmax = 128.0;
  std::string mode = "first";
  std::string fixture_name;
  std::string out_dir = ".";

  auto add_common = [&](CLI::App* cmd, bool needs_function, bool needs_lambda) {
    cmd->add_option("--graph", args.graph_path, "graph JSON file")->required();
    if (needs_function)
      cmd->add_option("--function", args.function_path, "node-function JSON file")->required();
    if (needs_lambda) cmd->add_option("--lambda", args.lambda, "eigenvalue Lambda")->required();
    cmd->add_option("--tol", args.tol.rel, "relative tolerance");
    cmd->add_option("--tol-abs", args.tol.abs, "absolute tolerance");
    cmd->add_option("--out", args.out_path, "output path (default: stdout)");
    cmd->add_option("--seed", args.seed, "seed for randomized restarts (0 = deterministic)");
  };

  auto* validate_cmd = app.add_subcommand("validate", "validate a graph file");
  add_common(validate_cmd, false, false);

  auto* distances_cmd =
      app.add_subcommand("distances", "all-pairs and boundary shortest-path distances");
  add_common(distances_cmd, false, false);

  auto* packing_cmd = app.add_subcommand("packing", "k-th packing radius and centers");
  add_common(packing_cmd, false, false);
  packing_cmd->add_option("--k", k, "number of balls")->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "warm-started p-continuation toward p = infinity");
  add_common(sweep_cmd, false, false);
  sweep_cmd->add_option("--mode", mode, "first | second")
      ->check(CLI::IsMember({"first", "second"}));
  sweep_cmd->add_option("--pmax", pmax, "largest p in the doubling schedule");

  auto* check_limit_cmd =
      app.add_subcommand("check-limit", "verify the limit eigenvalue equation");
  add_common(check_limit_cmd, true, true);

  auto* check_gen_cmd = app.add_subcommand(
      "check-generalized", "find and verify a generalized infinity-eigenpair certificate");
  add_common(check_gen_cmd, true, true);

  auto* bounds_cmd =
      app.add_subcommand("bounds", "packing-radius bounds on the variational eigenvalues");
  add_common(bounds_cmd, false, false);
  bounds_cmd->add_option("--kmax,--k", kmax, "largest index k")->required();

  auto* split_cmd = app.add_subcommand("split", "zero-splitting of a graph along a function");
  add_common(split_cmd, true, false);

  auto* fixtures_cmd = app.add_subcommand("fixtures", "write a bundled example graph");
  fixtures_cmd->add_option("name", fixture_name, "g1 | g2 | g3")->required();
  fixtures_cmd->add_option("--out", out_dir, "output directory");

  return run(app, argc, argv, [&]() -> int {
    if (validate_cmd->parsed()) {
      auto data = inflap::io::parse_graph_data(inflap::io::read_file(args.graph_path));
      auto violations = inflap::validate(data);
      emit(args.out_path, inflap::io::validation_json(violations));
      return violations.empty() ? kExitOk : kExitVerificationFailed;
    }

    if (fixtures_cmd->parsed()) {
      auto fx = inflap::fixture(fixture_name);
      auto g = inflap::validate_graph(fx.graph);
      namespace fs = std::filesystem;
      fs::path dir(out_dir);
      inflap::io::write_file_atomic((dir / (fx.name + ".json")).string(), inflap::io::graph_json(g));
      for (const auto& fn : fx.functions) {
        auto f = inflap::NodeFunction::zeros(g.interior_count());
        for (const auto& [id, value] : fn.values) f[g.index(id)] = value;
        inflap::io::write_file_atomic((dir / (fx.name + "_" + fn.name + ".json")).string(),
                                      inflap::io::node_function_json(g, f));
      }
      return kExitOk;
    }

    auto g = inflap::io::load_graph(args.graph_path);

    if (distances_cmd->parsed()) {
      inflap::runtime::parallel_for(g.node_count(), [&](int u) { g.distances_from(u); });
      emit(args.out_path, inflap::io::distances_json(g));
      return kExitOk;
    }

    if (packing_cmd->parsed()) {
      auto result = inflap::packing_radius(g, k);
      emit(args.out_path, inflap::io::packing_json(g, result));
      return kExitOk;
    }

    if (bounds_cmd->parsed()) {
      auto bounds = inflap::infinity_variational_bounds(g, kmax);
      emit(args.out_path, inflap::io::bounds_json(bounds));
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      inflap::SolverOptions opts;
      opts.seed = args.seed;
      auto records = inflap::p_sweep(g, inflap::doubling_schedule(pmax),
                                     mode == "first" ? inflap::SweepMode::first
                                                     : inflap::SweepMode::second,
                                     opts);
      emit(args.out_path, inflap::io::sweep_csv(records));
      bool all_converged = !records.empty() && records.back().converged;
      return all_converged ? kExitOk : kExitSolverNonConverged;
    }

    auto f = inflap::io::load_node_function(g, args.function_path);

    if (check_limit_cmd->parsed()) {
      auto report = inflap::check_limit_equation(g, f, args.lambda, args.tol);
      emit(args.out_path, inflap::io::limit_report_json(g, args.lambda, report));
      return report.overall ? kExitOk : kExitVerificationFailed;
    }

    if (check_gen_cmd->parsed()) {
      auto search = inflap::find_generalized_certificate(g, f, args.lambda, args.tol);
      if (!search.found()) {
        emit(args.out_path, inflap::io::certificate_json(g, args.lambda, search, nullptr, nullptr));
        return kExitVerificationFailed;
      }
      auto densities = inflap::densities_from_certificate(g, f, *search.certificate, args.tol);
      auto support = inflap::support_subgraph_check(g, f, args.lambda, densities, args.tol);
      emit(args.out_path,
           inflap::io::certificate_json(g, args.lambda, search, &densities, &support));
      return support.ok ? kExitOk : kExitVerificationFailed;
    }

    if (split_cmd->parsed()) {
      auto decomposition = inflap::split_at_zeros(g, f, args.tol.abs);
      std::string graph_out = args.out_path.empty() ? "split.json" : args.out_path;
      std::filesystem::path map_out(graph_out);
      map_out.replace_extension(".edge_map.json");
      inflap::io::write_file_atomic(graph_out, inflap::io::graph_json(decomposition.split_graph));
      inflap::io::write_file_atomic(map_out.string(),
                                    inflap::io::edge_map_json(g, decomposition));
      return kExitOk;
    }

    return kExitInputError;
  });
}
