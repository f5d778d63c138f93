#include "inflap/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace inflap::io {

using nlohmann::ordered_json;

namespace {

ordered_json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::positive: return "positive";
    case Branch::zero: return "zero";
    case Branch::negative: return "negative";
  }
  return "?";
}

ordered_json node_function_to_json(const Graph& g, const NodeFunction& f) {
  ordered_json values = ordered_json::object();
  for (int u = 0; u < g.interior_count(); ++u) values[g.id(u)] = f[u];
  return values;
}

ordered_json edge_values_to_json(const Graph& g, const EdgeFunction& G, bool forward_only) {
  ordered_json out = ordered_json::array();
  for (int e = 0; e < G.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    ordered_json item{{"u", g.id(edge.u)}, {"v", g.id(edge.v)}, {"value", G.forward(e)}};
    if (!forward_only) item["reverse_value"] = G.backward(e);
    out.push_back(std::move(item));
  }
  return out;
}

ordered_json tolerance_to_json(const Tolerance& tol) {
  return ordered_json{{"rel", tol.rel}, {"abs", tol.abs}};
}

ordered_json limit_report_to_json(const Graph& g, double lambda,
                                  const LimitEquationReport& report) {
  ordered_json nodes = ordered_json::array();
  for (const auto& v : report.nodes) {
    nodes.push_back(ordered_json{{"id", g.id(v.node)},
                                 {"branch", branch_name(v.branch)},
                                 {"gradient_term", v.gradient_term},
                                 {"inf_laplacian", v.inf_laplacian},
                                 {"residual", v.residual},
                                 {"satisfied", v.satisfied}});
  }
  return ordered_json{{"lambda", lambda},
                      {"tolerance", tolerance_to_json(report.tolerance)},
                      {"overall", report.overall},
                      {"max_residual", report.residual},
                      {"nodes", std::move(nodes)}};
}

}  // namespace

GraphData parse_graph_data(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw Error(Errc::parse_error, std::string("invalid JSON: ") + e.what());
  }
  GraphData data;
  try {
    if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges"))
      throw Error(Errc::parse_error, "graph document needs 'nodes' and 'edges'");
    for (const auto& n : doc.at("nodes")) {
      GraphData::Node node;
      node.id = n.at("id").get<std::string>();
      node.boundary = n.value("boundary", false);
      data.nodes.push_back(std::move(node));
    }
    for (const auto& e : doc.at("edges")) {
      GraphData::Edge edge;
      edge.u = e.at("u").get<std::string>();
      edge.v = e.at("v").get<std::string>();
      edge.weight = e.at("weight").get<double>();
      data.edges.push_back(std::move(edge));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(Errc::parse_error, std::string("malformed graph document: ") + e.what());
  }
  return data;
}

NodeFunction parse_node_function(const Graph& g, const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw Error(Errc::parse_error, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("values") || !doc.at("values").is_object())
    throw Error(Errc::parse_error, "node-function document needs a 'values' object");
  const auto& values = doc.at("values");
  if (static_cast<int>(values.size()) != g.interior_count())
    throw Error(Errc::domain_mismatch,
                "function has " + std::to_string(values.size()) + " values, interior has " +
                    std::to_string(g.interior_count()) + " nodes");
  NodeFunction f = NodeFunction::zeros(g.interior_count());
  for (const auto& [id, value] : values.items()) {
    auto idx = g.find(id);
    if (!idx || g.is_boundary(*idx))
      throw Error(Errc::domain_mismatch, "value for '" + id + "' which is not an interior node");
    if (!value.is_number())
      throw Error(Errc::parse_error, "value for '" + id + "' is not a number");
    f[*idx] = value.get<double>();
  }
  return f;
}

Graph load_graph(const std::string& path) { return validate_graph(parse_graph_data(read_file(path))); }

NodeFunction load_node_function(const Graph& g, const std::string& path) {
  return parse_node_function(g, read_file(path));
}

std::string graph_json(const Graph& g) {
  ordered_json nodes = ordered_json::array();
  for (int u = 0; u < g.node_count(); ++u)
    nodes.push_back(ordered_json{{"id", g.id(u)}, {"boundary", g.is_boundary(u)}});
  ordered_json edges = ordered_json::array();
  for (const auto& e : g.edges())
    edges.push_back(ordered_json{{"u", g.id(e.u)}, {"v", g.id(e.v)}, {"weight", e.weight}});
  return ordered_json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}}.dump(2) + "\n";
}

std::string node_function_json(const Graph& g, const NodeFunction& f) {
  return ordered_json{{"values", node_function_to_json(g, f)}}.dump(2) + "\n";
}

std::string validation_json(const std::vector<Violation>& violations) {
  ordered_json list = ordered_json::array();
  for (const auto& v : violations)
    list.push_back(ordered_json{{"code", errc_name(v.code)}, {"detail", v.detail}});
  return ordered_json{{"valid", violations.empty()}, {"violations", std::move(list)}}.dump(2) + "\n";
}

std::string distances_json(const Graph& g) {
  ordered_json boundary = ordered_json::object();
  for (int u = 0; u < g.interior_count(); ++u)
    boundary[g.id(u)] = finite_or_null(g.boundary_distance(u));
  ordered_json pairs = ordered_json::array();
  for (int u = 0; u < g.node_count(); ++u) {
    auto row = g.distances_from(u);
    for (int v = u + 1; v < g.node_count(); ++v)
      pairs.push_back(
          ordered_json{{"u", g.id(u)}, {"v", g.id(v)}, {"distance", finite_or_null(row[v])}});
  }
  return ordered_json{{"boundary_distance", std::move(boundary)}, {"pairs", std::move(pairs)}}
             .dump(2) +
         "\n";
}

std::string packing_json(const Graph& g, const PackingResult& result) {
  ordered_json centers = ordered_json::array();
  for (int c : result.centers) centers.push_back(g.id(c));
  return ordered_json{{"k", result.k},
                      {"radius", finite_or_null(result.radius)},
                      {"centers", std::move(centers)},
                      {"no_boundary", result.no_boundary},
                      {"next_candidate", finite_or_null(result.next_candidate)}}
             .dump(2) +
         "\n";
}

std::string bounds_json(const std::vector<VariationalBound>& bounds) {
  ordered_json entries = ordered_json::array();
  for (const auto& b : bounds)
    entries.push_back(ordered_json{{"k", b.k}, {"upper_bound", b.bound}, {"exact", b.exact}});
  return ordered_json{{"entries", std::move(entries)}}.dump(2) + "\n";
}

std::string limit_report_json(const Graph& g, double lambda, const LimitEquationReport& report) {
  return limit_report_to_json(g, lambda, report).dump(2) + "\n";
}

std::string certificate_json(const Graph& g, double lambda, const CertificateSearch& search,
                             const AdmissibleDensities* densities,
                             const SupportCheckReport* support) {
  ordered_json doc;
  doc["lambda"] = lambda;
  doc["found"] = search.found();
  doc["paths_explored"] = search.paths_explored;
  if (search.found()) {
    const auto& cert = *search.certificate;
    if (cert.path) {
      ordered_json path = ordered_json::array();
      for (int u : *cert.path) path.push_back(g.id(u));
      doc["path"] = std::move(path);
    }
    doc["xi"] = node_function_to_json(g, cert.xi);
    doc["Xi"] = edge_values_to_json(g, cert.Xi, true);
    doc["verification"] = ordered_json{{"divergence_residual", search.verification.divergence_residual},
                                       {"edge_norm_error", search.verification.edge_norm_error},
                                       {"node_norm_error", search.verification.node_norm_error},
                                       {"xi_support_error", search.verification.xi_support_error},
                                       {"Xi_support_error", search.verification.Xi_support_error},
                                       {"xi_sign_error", search.verification.xi_sign_error},
                                       {"Xi_sign_error", search.verification.Xi_sign_error},
                                       {"ok", search.verification.ok}};
  } else {
    ordered_json frontier = ordered_json::array();
    for (int u : search.frontier) frontier.push_back(g.id(u));
    doc["frontier"] = std::move(frontier);
  }
  if (densities) {
    doc["densities"] =
        ordered_json{{"mu", node_function_to_json(g, densities->mu)},
                     {"tau", edge_values_to_json(g, densities->tau, true)}};
  }
  if (support) {
    ordered_json nodes = ordered_json::array();
    for (int u : support->support) nodes.push_back(g.id(u));
    doc["support_check"] = ordered_json{{"support", std::move(nodes)},
                                        {"vacuous", support->vacuous},
                                        {"ok", support->ok},
                                        {"limit", limit_report_to_json(g, lambda, support->limit)}};
  }
  return doc.dump(2) + "\n";
}

std::string edge_map_json(const Graph& g, const NodalDecomposition& decomposition) {
  ordered_json domains = ordered_json::array();
  for (const auto& d : decomposition.domains) {
    ordered_json nodes = ordered_json::array();
    for (int u : d.nodes) nodes.push_back(g.id(u));
    domains.push_back(ordered_json{{"sign", d.sign}, {"nodes", std::move(nodes)}});
  }
  ordered_json edges = ordered_json::array();
  for (const auto& rec : decomposition.edge_map) {
    const auto& e = g.edges()[rec.original_edge];
    ordered_json item{{"u", g.id(e.u)}, {"v", g.id(e.v)}};
    if (rec.synthesized_id.empty()) {
      item["split"] = false;
    } else {
      item["split"] = true;
      item["via"] = rec.synthesized_id;
    }
    edges.push_back(std::move(item));
  }
  return ordered_json{{"domains", std::move(domains)}, {"edges", std::move(edges)}}.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<PSweepRecord>& records) {
  std::ostringstream out;
  out << "p,lambda,lambda_root,residual,iterations\n";
  out << std::setprecision(17);
  for (const auto& r : records)
    out << r.p << ',' << r.lambda << ',' << r.lambda_root << ',' << r.residual << ','
        << r.iterations << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::parse_error, "cannot write '" + tmp.string() + "'");
    out << contents;
    if (!out.flush()) throw Error(Errc::parse_error, "short write to '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

}  // namespace inflap::io
