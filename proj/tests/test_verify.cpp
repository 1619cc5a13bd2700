#include <gtest/gtest.h>

#include <algorithm>

#include "muexp/verify.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace muexp;
using namespace muexp::testing;

namespace {

std::vector<Vertex> members_of(const VertexSet& s) {
  std::vector<Vertex> out(s.members().begin(), s.members().end());
  std::sort(out.begin(), out.end());
  return out;
}

Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= static_cast<Vertex>(leaves); ++v) e.push_back({0, v, 1.0});
  return Graph(leaves + 1, e);
}

}  // namespace

TEST(BruteForce, SmallExamples) {
  const Graph k4(4, clique_edges(0, 4));
  EXPECT_EQ(brute_force_expansion(k4, VertexMeasure::uniform(4)).value, Expansion::finite(2.0));

  const Graph path(3, std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.0}});
  const BruteForceCut p = brute_force_expansion(path, VertexMeasure::uniform(3));
  EXPECT_EQ(p.value, Expansion::finite(1.0));
  EXPECT_EQ(members_of(p.witness), (std::vector<Vertex>{0}));

  const Graph s = star(4);
  EXPECT_EQ(brute_force_expansion(s, VertexMeasure::degrees(s)).value, Expansion::finite(1.0));
}

TEST(BruteForce, RangeAndDegenerateMeasures) {
  EXPECT_THROW(brute_force_expansion(Graph(1, std::vector<Edge>{}), VertexMeasure::uniform(1)), InputError);
  const Graph big(21, clique_edges(0, 21));
  EXPECT_THROW(brute_force_expansion(big, VertexMeasure::uniform(21)), InputError);
  const Graph path(3, std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.0}});
  const BruteForceCut one = brute_force_expansion(path, VertexMeasure({0.0, 1.0, 0.0}));
  EXPECT_TRUE(one.value.is_infinite());
  EXPECT_TRUE(one.witness.empty());
}

TEST(BruteForce, WitnessAttainsTheValue) {
  Gen gen(61);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = uniform_int(gen, 2, 10);
    const Graph g = random_graph(n, 0.4, gen, 3);
    const VertexMeasure mu = random_measure(n, gen, 0.2);
    const BruteForceCut bf = brute_force_expansion(g, mu);
    ASSERT_TRUE(bf.value.is_finite());
    EXPECT_TRUE(bf.witness.contains(0));
    const auto recount = recount_expansion(g, mu, members_of(bf.witness));
    ASSERT_TRUE(recount.has_value());
    EXPECT_NEAR(bf.value.value(), *recount, 1e-12);
  }
}

TEST(BruteForce, DegreeMeasureMatchesConductanceEnumerator) {
  Gen gen(62);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = uniform_int(gen, 2, 11);
    const Graph g = random_graph(n, uniform_real(gen, 0.2, 0.8), gen, 4);
    const auto expected = enumerate_conductance(g);
    const BruteForceCut bf = brute_force_expansion(g, VertexMeasure::degrees(g));
    if (!expected) {
      EXPECT_TRUE(bf.value.is_infinite());
    } else {
      ASSERT_TRUE(bf.value.is_finite());
      EXPECT_NEAR(bf.value.value(), *expected, 1e-12);
    }
  }
}

TEST(NearExpansion, WholeSetAndSingletons) {
  Gen gen(63);
  const Graph g = random_connected_graph(9, 0.4, gen);
  const VertexMeasure mu = VertexMeasure::degrees(g);
  EXPECT_EQ(brute_force_near_expansion(g, mu, VertexSet::all(9)), brute_force_expansion(g, mu).value);
  EXPECT_TRUE(brute_force_near_expansion(g, mu, VertexSet(9, std::vector<Vertex>{3})).is_infinite());
  EXPECT_TRUE(brute_force_near_expansion(g, mu, VertexSet(9)).is_infinite());
}

TEST(NearExpansion, AtLeastTheInducedExpansion) {
  Gen gen(64);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = uniform_int(gen, 4, 12);
    const Graph g = random_connected_graph(n, 0.4, gen, 2);
    const VertexMeasure mu = random_measure(n, gen, 0.1);
    std::vector<Vertex> a;
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v)
      if (coin(gen, 0.7)) a.push_back(v);
    if (a.size() < 2) continue;
    const Expansion near = brute_force_near_expansion(g, mu, VertexSet(n, a));
    const Subgraph sub = induced_subgraph(g, a);
    const VertexMeasure local = mu.restrict(sub.to_parent);
    const BruteForceCut induced = brute_force_expansion(sub.graph, local);
    // Equal up to summation order when A has no boundary.
    if (induced.value.is_infinite()) {
      EXPECT_TRUE(near.is_infinite());
    } else {
      EXPECT_TRUE(near.at_least(induced.value.value() * (1.0 - 1e-12)));
    }
  }
}

TEST(Congestion, Examples) {
  const Graph g(3, std::vector<Edge>{{0, 1, 2.0}, {1, 2, 1.0}});
  PathDecomposition d;
  EXPECT_EQ(check_embedding_congestion(g, d), 0.0);
  d.paths.push_back(FlowPath{0, 2, 1.0, {0, 1, 2}});
  EXPECT_DOUBLE_EQ(check_embedding_congestion(g, d), 1.0);
  d.paths.push_back(FlowPath{1, 0, 3.0, {1, 0}});
  EXPECT_DOUBLE_EQ(check_embedding_congestion(g, d), 2.0);
  d.paths.push_back(FlowPath{0, 2, 1.0, {0, 2}});
  EXPECT_THROW(check_embedding_congestion(g, d), InputError);
}

TEST(ValidatePartition, AcceptsAndRejects) {
  const Graph g(6, std::vector<Edge>{{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}, {2, 3, 0.5}});
  const VertexMeasure mu = VertexMeasure::degrees(g);
  const auto good = validate_partition(g, mu, {{0, 1, 2}, {3, 4, 5}}, 0.5, 0.5);
  EXPECT_TRUE(good.all_pass());
  EXPECT_DOUBLE_EQ(good.inter_weight_recount, 0.5);
  ASSERT_EQ(good.clusters.size(), 2u);
  EXPECT_TRUE(good.clusters[0].checked);

  const auto overlap = validate_partition(g, mu, {{0, 1, 2}, {2, 3, 4, 5}}, 0.5, 0.5);
  EXPECT_FALSE(overlap.exact);
  EXPECT_FALSE(overlap.all_pass());

  const auto missing = validate_partition(g, mu, {{0, 1, 2}, {3, 4}}, 0.5, 0.5);
  EXPECT_FALSE(missing.exact);

  const auto weight = validate_partition(g, mu, {{0, 1, 2}, {3, 4, 5}}, 2.0, 0.5);
  EXPECT_FALSE(weight.weight_matches);
  EXPECT_FALSE(weight.all_pass());

  const auto weak = validate_partition(g, mu, {{0, 1, 2, 3, 4, 5}}, 0.0, 0.5);
  EXPECT_FALSE(weak.all_pass());
  EXPECT_NEAR(weak.clusters[0].expansion.value(), 0.5 / 6.5, 1e-12);

  const auto unchecked = validate_partition(g, mu, {{0, 1, 2, 3, 4, 5}}, 0.0, 0.5, 4);
  EXPECT_FALSE(unchecked.clusters[0].checked);
  EXPECT_TRUE(unchecked.all_pass());
  EXPECT_THROW(validate_partition(g, mu, {{0, 1, 2, 3, 4, 5}}, 0.0, 0.5, 21), InputError);
}
