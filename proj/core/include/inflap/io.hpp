#pragma once

#include "inflap/graph.hpp"
#include "inflap/inf_spectral.hpp"
#include "inflap/nodal.hpp"
#include "inflap/p_spectral.hpp"
#include "inflap/packing.hpp"

#include <string>
#include <vector>

namespace inflap::io {

/// Graph schema:
///   { "nodes": [ {"id": "u1", "boundary": false}, ... ],
///     "edges": [ {"u": "u1", "v": "u2", "weight": 2.0}, ... ] }
/// Node-function schema: { "values": {"u1": 0.666, ...} }, domain must equal
/// the interior node set exactly.
///
/// Parsers throw Errc::parse_error on malformed input. Writers emit
/// deterministic bytes: fixed key order, nodes and edges in graph index
/// order, floats in shortest lossless round-trip form. Infinite values
/// serialize as null.
GraphData parse_graph_data(const std::string& json_text);
NodeFunction parse_node_function(const Graph& g, const std::string& json_text);

Graph load_graph(const std::string& path);  // read + parse + validate
NodeFunction load_node_function(const Graph& g, const std::string& path);

std::string graph_json(const Graph& g);
std::string node_function_json(const Graph& g, const NodeFunction& f);

std::string validation_json(const std::vector<Violation>& violations);
std::string distances_json(const Graph& g);
std::string packing_json(const Graph& g, const PackingResult& result);
std::string bounds_json(const std::vector<VariationalBound>& bounds);
std::string limit_report_json(const Graph& g, double lambda, const LimitEquationReport& report);

/// Full check-generalized document: search outcome, certificate, the
/// seven-condition verification, and (when the certificate was found) the
/// derived admissible densities and their support check.
std::string certificate_json(const Graph& g, double lambda, const CertificateSearch& search,
                             const AdmissibleDensities* densities,
                             const SupportCheckReport* support);

std::string edge_map_json(const Graph& g, const NodalDecomposition& decomposition);

/// CSV with header p,lambda,lambda_root,residual,iterations.
std::string sweep_csv(const std::vector<PSweepRecord>& records);

std::string read_file(const std::string& path);
/// Temp-file-plus-rename write; the destination is never partially written.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace inflap::io
