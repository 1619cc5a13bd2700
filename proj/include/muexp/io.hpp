#pragma once

// Text formats and JSON encoding used by the command-line tool. The only
// header that needs nlohmann::json.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "muexp/decompose.hpp"
#include "muexp/graph.hpp"
#include "muexp/verify.hpp"

namespace muexp::io {

using nlohmann::json;

namespace detail {

inline bool skip_line(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

inline std::string where(const std::string& name, std::size_t line_no) {
  return name + ":" + std::to_string(line_no) + ": ";
}

inline std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open " + path);
  return in;
}

}  // namespace detail

/// Edge list: "u v [w]" per line, '#' comments, optional leading "p n m".
/// Without a "p" line, n is one past the largest id.
inline Graph read_graph(std::istream& in, const std::string& name = "graph") {
  std::vector<Edge> edges;
  std::optional<std::int64_t> declared_n;
  std::int64_t max_id = -1;
  std::string line;
  std::size_t line_no = 0;
  bool seen_edge = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skip_line(line)) continue;
    std::istringstream ls(line);
    std::string first;
    ls >> first;
    if (first == "p") {
      std::int64_t n = -1, m = -1;
      require(!seen_edge && !declared_n, detail::where(name, line_no) + "'p' line must come first");
      require(static_cast<bool>(ls >> n >> m) && n >= 0 && m >= 0,
              detail::where(name, line_no) + "expected 'p <n> <m>'");
      declared_n = n;
      continue;
    }
    std::int64_t u = 0, v = 0;
    double w = 1.0;
    std::istringstream es(line);
    require(static_cast<bool>(es >> u >> v), detail::where(name, line_no) + "expected 'u v [w]'");
    if (!(es >> w)) {
      es.clear();
      w = 1.0;
    }
    std::string rest;
    require(!(es >> rest), detail::where(name, line_no) + "trailing tokens");
    require(u >= 0 && v >= 0 && u <= INT32_MAX && v <= INT32_MAX,
            detail::where(name, line_no) + "vertex ids must be non-negative 32-bit");
    require(std::isfinite(w) && w > 0.0, detail::where(name, line_no) + "weight must be positive");
    max_id = std::max({max_id, u, v});
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
    seen_edge = true;
  }
  const std::int64_t n = declared_n ? *declared_n : max_id + 1;
  require(max_id < n, name + ": vertex id " + std::to_string(max_id) + " exceeds declared n");
  return Graph(static_cast<std::size_t>(n), edges);
}

inline Graph read_graph_file(const std::string& path) {
  auto in = detail::open(path);
  return read_graph(in, path);
}

/// "v value" per line; vertices not listed get measure 0.
inline VertexMeasure read_measure(std::istream& in, std::size_t n, const std::string& name = "measure") {
  std::vector<double> values(n, 0.0);
  std::vector<char> seen(n, 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skip_line(line)) continue;
    std::istringstream ls(line);
    std::int64_t v = 0;
    double x = 0.0;
    require(static_cast<bool>(ls >> v >> x), detail::where(name, line_no) + "expected 'v value'");
    require(v >= 0 && static_cast<std::size_t>(v) < n, detail::where(name, line_no) + "vertex out of range");
    require(std::isfinite(x) && x >= 0.0, detail::where(name, line_no) + "measure must be finite and >= 0");
    require(!seen[v], detail::where(name, line_no) + "vertex listed twice");
    seen[v] = 1;
    values[v] = x;
  }
  return VertexMeasure(std::move(values));
}

inline VertexMeasure read_measure_file(const std::string& path, std::size_t n) {
  auto in = detail::open(path);
  return read_measure(in, n, path);
}

inline json expansion_json(const Expansion& e) {
  if (e.is_infinite()) return "infinite";
  return e.value();
}

inline json certificates_json(const DecompositionResult& r) {
  json out = json::array();
  for (std::size_t i = 0; i < r.clusters.size(); ++i) {
    json c = {{"kind", to_string(r.certificates[i].kind)}, {"size", r.clusters[i].size()}};
    c["expansion"] = r.certificates[i].measured ? expansion_json(*r.certificates[i].measured) : json(nullptr);
    out.push_back(std::move(c));
  }
  return out;
}

inline json decomposition_json(const DecompositionResult& r, double phi, std::uint64_t seed,
                               const json& params) {
  return {
      {"clusters", r.clusters},
      {"inter_cluster_edge_weight", r.inter_cluster_edge_weight},
      {"phi", phi},
      {"seed", seed},
      {"params", params},
      {"certificates", certificates_json(r)},
      {"depth", r.recursion_depth},
      {"summary",
       {{"games_played", r.games_played},
        {"charging_ratio", r.charging_ratio},
        {"log_mu_star", r.log_mu_star},
        {"diagnostics", r.diagnostics}}},
  };
}

inline json report_json(const PartitionReport& rep) {
  json clusters = json::array();
  for (const auto& c : rep.clusters) {
    clusters.push_back({{"index", c.index},
                        {"size", c.size},
                        {"checked", c.checked},
                        {"expansion", c.checked ? expansion_json(c.expansion) : json(nullptr)},
                        {"pass", c.pass}});
  }
  return {{"exact", rep.exact},
          {"weight_matches", rep.weight_matches},
          {"inter_weight_recount", rep.inter_weight_recount},
          {"inter_weight_reported", rep.inter_weight_reported},
          {"level", rep.level},
          {"problems", rep.problems},
          {"clusters", clusters},
          {"pass", rep.all_pass()}};
}

/// Clusters from a decomposition JSON document, in file order.
inline std::pair<std::vector<std::vector<Vertex>>, double> read_clusters(std::istream& in,
                                                                         const std::string& name) {
  json doc;
  try {
    doc = json::parse(in);
    std::vector<std::vector<Vertex>> clusters = doc.at("clusters").get<std::vector<std::vector<Vertex>>>();
    const double w = doc.contains("inter_cluster_edge_weight") ? doc["inter_cluster_edge_weight"].get<double>()
                                                               : std::nan("");
    return {std::move(clusters), w};
  } catch (const json::exception& e) {
    throw InputError(name + ": " + e.what());
  }
}

/// t,|A_t|,mu_R,matching_weight,psi; psi blank when not recorded.
inline void write_trace_csv(std::ostream& out, const std::vector<std::vector<RoundRecord>>& games) {
  out << "t,|A_t|,mu_R,matching_weight,psi\n";
  out << std::setprecision(17);
  for (const auto& trace : games) {
    for (const RoundRecord& r : trace) {
      out << r.t << ',' << r.active_size << ',' << r.mu_removed << ',' << r.matching_weight << ',';
      if (r.psi) out << *r.psi;
      out << '\n';
    }
  }
}

}  // namespace muexp::io
