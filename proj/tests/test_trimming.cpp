#include <gtest/gtest.h>

#include "muexp/trimming.hpp"
#include "muexp/verify.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace muexp;
using namespace muexp::testing;

TEST(Trim, ZeroBoundaryIsTheIdentity) {
  const Graph g(6, std::vector<Edge>{{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}});
  const VertexSet a(6, std::vector<Vertex>{0, 1, 2});
  const TrimResult r = trim(g, VertexMeasure::degrees(g), a, 0.5);
  EXPECT_EQ(r.kept, a);
  EXPECT_EQ(r.boundary_before, 0.0);
  EXPECT_EQ(r.boundary_after, 0.0);
}

TEST(Trim, PreconditionIsEnforced) {
  // K8 hanging off a path of nine vertices.
  std::vector<Edge> e = clique_edges(0, 8);
  for (Vertex v = 8; v < 16; ++v) e.push_back({v, v + 1, 1.0});
  e.push_back({0, 8, 1.0});
  const Graph g(17, e);
  std::vector<Vertex> core = {0, 1, 2, 3, 4, 5, 6, 7};
  EXPECT_THROW(trim(g, VertexMeasure::degrees(g), VertexSet(17, core), 0.1), InputError);
  EXPECT_THROW(trim(g, VertexMeasure::degrees(g), VertexSet(17), 0.1), InputError);
  EXPECT_THROW(trim(g, VertexMeasure::degrees(g), VertexSet(17, core), 0.0), InputError);
  // With a much larger phi the same set is admissible and needs no trimming.
  const TrimResult r = trim(g, VertexMeasure::degrees(g), VertexSet(17, core), 2.0);
  EXPECT_EQ(r.kept, VertexSet(17, core));
  EXPECT_DOUBLE_EQ(r.boundary_after, 1.0);
}

TEST(Trim, DanglerIsCutOff) {
  // K6 core, vertex 6 hangs by one edge and has three edges out of A.
  std::vector<Edge> e = clique_edges(0, 6);
  e.push_back({6, 0, 1.0});
  for (Vertex v = 7; v < 10; ++v) e.push_back({6, v, 1.0});
  e.push_back({7, 8, 1.0});
  e.push_back({8, 9, 1.0});
  const Graph g(10, e);
  std::vector<double> values(10, 5.0);
  values[6] = 0.5;
  const VertexMeasure mu(values);
  const VertexSet a(10, std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6});
  // |E(A, V \ A)| = 3, mu(A) = 30.5; phi = 1 fits the precondition.
  const TrimResult r = trim(g, mu, a, 1.0);
  EXPECT_EQ(r.kept, VertexSet(10, std::vector<Vertex>{0, 1, 2, 3, 4, 5}));
  EXPECT_DOUBLE_EQ(r.boundary_before, 3.0);
  EXPECT_DOUBLE_EQ(r.boundary_after, 1.0);
}

TEST(Trim, RandomNearExpandersTrimToExpanders) {
  Gen gen(51);
  int instances = 0, strict = 0;
  for (int i = 0; i < 600 && instances < 150; ++i) {
    const auto inst = random_trim_instance(gen);
    if (!inst) continue;
    ++instances;
    const TrimResult r = trim(inst->g, inst->mu, inst->a, inst->phi);
    for (Vertex v : r.kept.members()) EXPECT_TRUE(inst->a.contains(v));
    if (r.kept.size() < inst->a.size()) ++strict;
    const double mu_a = inst->mu.of(inst->a);
    EXPECT_GE(inst->mu.of(r.kept), mu_a - 4.0 * r.boundary_before / inst->phi - 1e-9);
    EXPECT_LE(r.boundary_after, 2.0 * r.boundary_before + 1e-9);
    EXPECT_DOUBLE_EQ(r.boundary_after, cut_weight(inst->g, r.kept));

    if (r.kept.size() < 2) continue;
    const Subgraph sub = induced_subgraph(inst->g, r.kept);
    const BruteForceCut bf = brute_force_expansion(sub.graph, inst->mu.restrict(sub.to_parent));
    EXPECT_TRUE(bf.value.at_least(inst->phi / 6.0 * (1.0 - 1e-9)))
        << "instance " << i << ": " << bf.value.value() << " < " << inst->phi / 6.0;
  }
  EXPECT_GE(instances, 100);
  EXPECT_GT(strict, 0);
}
