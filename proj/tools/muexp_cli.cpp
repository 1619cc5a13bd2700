// muexp: expander decomposition, sparse cuts and brute-force verification
// on edge-list graphs. Exit codes: 0 ok, 1 verification failed, 2 bad input,
// 3 internal invariant violated.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "muexp/io.hpp"
#include "muexp/muexp.hpp"

namespace {

using nlohmann::json;

struct Options {
  std::string graph;
  std::string mu;
  double phi = 0.0;
  std::uint64_t seed = 0;
  double t_factor = 2.0;
  double c_factor = 1.0;
  std::optional<int> delta;
  double log_base = 2.0;
  std::size_t dense_limit = muexp::kDefaultDenseLimit;
  std::string trace;
  std::string json_out;
  std::size_t verify_max_n = 16;
  std::string clusters;
  std::optional<double> level;
};

struct Input {
  muexp::Graph graph;
  muexp::VertexMeasure mu;
};

Input load(const Options& o) {
  muexp::Graph g = muexp::io::read_graph_file(o.graph);
  muexp::VertexMeasure mu = o.mu.empty() ? muexp::VertexMeasure::degrees(g)
                                         : muexp::io::read_measure_file(o.mu, g.vertex_count());
  return {std::move(g), std::move(mu)};
}

muexp::GameConfig game_config(const Options& o) {
  muexp::GameConfig cfg;
  cfg.t_factor = o.t_factor;
  cfg.c_factor = o.c_factor;
  cfg.delta = o.delta;
  cfg.dense_limit = o.dense_limit;
  cfg.trace_potential = !o.trace.empty();
  return cfg;
}

json params_json(const Options& o, const Input& in) {
  return {{"t_factor", o.t_factor},
          {"c_factor", o.c_factor},
          {"delta", o.delta ? json(*o.delta) : json(nullptr)},
          {"log_base", o.log_base},
          {"dense_limit", o.dense_limit},
          {"verify_max_n", o.verify_max_n},
          {"n", in.graph.vertex_count()},
          {"m", in.graph.edge_count()},
          {"mu_total", in.mu.total()},
          {"mu_from_file", !o.mu.empty()}};
}

void emit(const json& doc, const std::string& path) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  muexp::require(out.good(), "cannot write " + path);
  out << text;
}

void emit_trace(const std::string& path, const std::vector<std::vector<muexp::RoundRecord>>& games) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  muexp::require(out.good(), "cannot write " + path);
  muexp::io::write_trace_csv(out, games);
}

int cmd_decompose(const Options& o) {
  const Input in = load(o);
  muexp::DecompositionConfig cfg;
  cfg.game = game_config(o);
  cfg.log_base = o.log_base;
  cfg.verify_max_n = o.verify_max_n;
  cfg.keep_traces = !o.trace.empty();
  muexp::Rng rng(o.seed);
  const auto res = muexp::decompose(in.graph, in.mu, o.phi, cfg, rng);
  emit_trace(o.trace, res.traces);
  emit(muexp::io::decomposition_json(res, o.phi, o.seed, params_json(o, in)), o.json_out);
  return 0;
}

int cmd_sparse_cut(const Options& o) {
  const Input in = load(o);
  muexp::require(in.graph.vertex_count() >= 1, "graph has no vertices");
  muexp::require(in.mu.total() > 0.0, "measure is identically zero");
  muexp::require(muexp::is_connected(in.graph), "sparse-cut needs a connected graph");
  const muexp::GameParams params =
      muexp::make_game_params(in.graph.vertex_count(), in.mu.total(), o.phi, game_config(o));
  muexp::Rng rng(o.seed);
  const auto boe = muexp::balanced_or_expander(in.graph, in.mu, params, rng, o.log_base);
  emit_trace(o.trace, {boe.game.trace});

  json doc = {{"case", muexp::to_string(boe.kind)},
              {"game_outcome", muexp::to_string(boe.game.variant)},
              {"rounds_played", boe.game.rounds_played},
              {"rounds_T", params.rounds_T},
              {"capacity_c", params.capacity_c},
              {"delta", params.delta},
              {"a_side", boe.a_side.members()},
              {"r_side", boe.r_side.members()},
              {"trimmed", boe.trimmed.has_value()},
              {"phi", o.phi},
              {"seed", o.seed},
              {"params", params_json(o, in)},
              {"diagnostics", boe.game.diagnostics}};
  if (boe.r_side.empty()) {
    doc["cut_expansion"] = nullptr;
  } else {
    doc["cut_expansion"] =
        muexp::io::expansion_json(muexp::mu_expansion_of_cut(in.graph, in.mu, boe.r_side));
    doc["cut_weight"] = muexp::cut_weight(in.graph, boe.r_side);
  }
  emit(doc, o.json_out);
  return 0;
}

int cmd_verify(const Options& o) {
  const Input in = load(o);
  if (o.clusters.empty()) {
    const std::size_t n = in.graph.vertex_count();
    muexp::require(n >= 2 && n <= muexp::kBruteForceLimit,
                   "brute-force expansion needs 2 <= n <= 20, got " + std::to_string(n));
    const auto bf = muexp::brute_force_expansion(in.graph, in.mu);
    json doc = {{"expansion", muexp::io::expansion_json(bf.value)},
                {"witness", bf.witness.universe() ? json(bf.witness.members()) : json(nullptr)}};
    if (o.level) {
      doc["level"] = *o.level;
      doc["pass"] = bf.value.at_least(*o.level);
    }
    emit(doc, o.json_out);
    return o.level && !bf.value.at_least(*o.level) ? 1 : 0;
  }
  muexp::require(o.verify_max_n <= muexp::kBruteForceLimit, "--verify-max-n cannot exceed 20");
  std::ifstream cf(o.clusters);
  muexp::require(cf.good(), "cannot open " + o.clusters);
  auto [clusters, reported] = muexp::io::read_clusters(cf, o.clusters);
  const double level = o.level ? *o.level : o.phi / 6.0;
  auto rep = muexp::validate_partition(in.graph, in.mu, clusters, reported, level, o.verify_max_n);
  if (std::isnan(reported)) {
    rep.weight_matches = true;
    rep.inter_weight_reported = rep.inter_weight_recount;
    rep.problems.erase(std::remove(rep.problems.begin(), rep.problems.end(),
                                   std::string("reported inter-cluster weight differs from recount")),
                       rep.problems.end());
  }
  emit(muexp::io::report_json(rep), o.json_out);
  return rep.all_pass() ? 0 : 1;
}

void add_common(CLI::App* sub, Options& o, bool needs_phi) {
  sub->add_option("--graph", o.graph, "edge-list file")->required();
  sub->add_option("--mu", o.mu, "vertex measure file (default: weighted degrees)");
  auto* phi = sub->add_option("--phi", o.phi, "target expansion")->check(CLI::PositiveNumber);
  if (needs_phi) phi->required();
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--t-factor", o.t_factor, "rounds T = ceil(f log2(n)^2)")->check(CLI::PositiveNumber);
  sub->add_option("--c-factor", o.c_factor, "capacity c = max(1, round(f / (phi ln n)))")
      ->check(CLI::PositiveNumber);
  sub->add_option("--delta", o.delta, "walk power (power of two)");
  sub->add_option("--log-base", o.log_base, "base of log n in the expander-cut threshold");
  sub->add_option("--dense-limit", o.dense_limit, "largest n for dense potential tracing");
  sub->add_option("--trace", o.trace, "per-round CSV output");
  sub->add_option("--json-out", o.json_out, "JSON output (default: stdout)");
  sub->add_option("--verify-max-n", o.verify_max_n, "brute-force clusters up to this size");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mu-expander decomposition"};
  app.require_subcommand(1);
  Options o;
  auto* dec = app.add_subcommand("decompose", "recursive expander decomposition");
  add_common(dec, o, true);
  auto* sc = app.add_subcommand("sparse-cut", "one balanced-or-expander step");
  add_common(sc, o, true);
  auto* ver = app.add_subcommand("verify", "brute-force expansion or partition check");
  add_common(ver, o, false);
  ver->add_option("--clusters", o.clusters, "decomposition JSON to validate");
  ver->add_option("--level", o.level, "required expansion (default phi/6 with --clusters)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (ver->parsed() && !o.clusters.empty() && !o.level && o.phi <= 0.0)
      throw muexp::InputError("verify --clusters needs --phi or --level");
    if (o.delta && !muexp::is_power_of_two(*o.delta))
      throw muexp::InputError("--delta must be a power of two");
    if (o.log_base <= 1.0) throw muexp::InputError("--log-base must exceed 1");
    if (dec->parsed()) return cmd_decompose(o);
    if (sc->parsed()) return cmd_sparse_cut(o);
    return cmd_verify(o);
  } catch (const muexp::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const muexp::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
