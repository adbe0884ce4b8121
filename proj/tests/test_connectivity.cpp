#include <gtest/gtest.h>

#include <random>

#include "gencon/connectivity.hpp"
#include "gencon/graph.hpp"
#include "oracles.hpp"

using namespace gencon;

TEST(VertexConnectivity, Examples) {
  EXPECT_EQ(vertex_connectivity(generate::complete(5)), 4);
  EXPECT_EQ(vertex_connectivity(generate::complete_bipartite(2, 3)), 2);
  EXPECT_EQ(vertex_connectivity(cartesian_product(generate::cycle(3), generate::cycle(3))), 4);
  EXPECT_EQ(vertex_connectivity(generate::cycle(5)), 2);
  EXPECT_EQ(vertex_connectivity(generate::path(4)), 1);
  EXPECT_EQ(vertex_connectivity(generate::complete(1)), 0);
}

TEST(VertexConnectivity, DisconnectedIsZero) {
  EXPECT_EQ(vertex_connectivity(Graph(4, {Edge(0, 1), Edge(2, 3)})), 0);
}

TEST(VertexConnectivity, MatchesCutEnumerationOnRandomGraphs) {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = oracle::random_connected(rng, 3 + trial % 7, 0.2 + 0.1 * (trial % 6));
    ASSERT_EQ(vertex_connectivity(g), oracle::vertex_connectivity(g)) << to_edge_list(g);
    EXPECT_LE(vertex_connectivity(g), g.min_degree());
  }
}

TEST(VertexConnectivity, EqualsMinDegreeOnCompleteMultipartite) {
  for (int a = 1; a <= 3; ++a)
    for (int b = a; b <= 3; ++b)
      for (int c = b; c <= 3; ++c) {
        const Graph g = generate::complete_tripartite(a, b, c);
        EXPECT_EQ(vertex_connectivity(g), g.min_degree());
      }
  EXPECT_EQ(vertex_connectivity(generate::complete_bipartite(3, 4)), 3);
}

TEST(LocalConnectivity, MatchesCutEnumeration) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = oracle::random_connected(rng, 4 + trial % 6, 0.35);
    for (Vertex a = 0; a < g.order(); ++a)
      for (Vertex b = a + 1; b < g.order(); ++b)
        ASSERT_EQ(local_connectivity(g, a, b), oracle::local_connectivity(g, a, b));
  }
}

TEST(DisjointPaths, K4AdjacentPair) {
  const Graph g = generate::complete(4);
  auto ps = disjoint_paths(g, 0, 1, 3);
  ASSERT_TRUE(ps);
  EXPECT_FALSE(check_path_system(g, *ps));
  int direct = 0, two_edge = 0;
  for (const Path& p : ps->paths) {
    if (p.size() == 2) ++direct;
    if (p.size() == 3) ++two_edge;
  }
  EXPECT_EQ(direct, 1);
  EXPECT_EQ(two_edge, 2);
}

TEST(DisjointPaths, C6Antipodal) {
  const Graph g = generate::cycle(6);
  auto ps = disjoint_paths(g, 0, 3, 2);
  ASSERT_TRUE(ps);
  EXPECT_FALSE(check_path_system(g, *ps));
  EXPECT_EQ(ps->paths, (std::vector<Path>{{0, 1, 2, 3}, {0, 5, 4, 3}}));
  EXPECT_FALSE(disjoint_paths(g, 0, 3, 3));
}

TEST(DisjointPaths, RandomGraphsProduceValidSystems) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = oracle::random_connected(rng, 5 + trial % 5, 0.4);
    const int k = local_connectivity(g, 0, g.order() - 1);
    auto ps = disjoint_paths(g, 0, g.order() - 1, k);
    ASSERT_TRUE(ps);
    EXPECT_EQ(static_cast<int>(ps->paths.size()), k);
    EXPECT_FALSE(check_path_system(g, *ps));
    EXPECT_FALSE(disjoint_paths(g, 0, g.order() - 1, k + 1));
  }
}

TEST(DisjointPaths, RejectsSameEndpoints) {
  EXPECT_THROW(disjoint_paths(generate::complete(3), 1, 1, 1), std::invalid_argument);
}

TEST(CheckPathSystem, DetectsSharedInternalVertex) {
  const Graph g = generate::complete(5);
  PathSystem ps{0, 1, {{0, 2, 1}, {0, 2, 3, 1}}};
  EXPECT_TRUE(check_path_system(g, ps));
}

TEST(Fan, K4ThreeDirectEdges) {
  const Graph g = generate::complete(4);
  auto f = fan(g, 0, {1, 2, 3}, 3);
  ASSERT_TRUE(f);
  EXPECT_FALSE(check_fan(g, *f));
  for (const Path& p : f->paths) EXPECT_EQ(p.size(), 2u);
}

TEST(Fan, C5TwoArcs) {
  const Graph g = generate::cycle(5);
  for (Vertex a = 1; a < 5; ++a)
    for (Vertex b = a + 1; b < 5; ++b) {
      auto f = fan(g, 0, {a, b}, 2);
      ASSERT_TRUE(f);
      EXPECT_FALSE(check_fan(g, *f));
    }
}

TEST(Fan, K33MixedTargets) {
  const Graph g = generate::complete_bipartite(3, 3);
  auto f = fan(g, 0, {1, 2, 3}, 3);
  ASSERT_TRUE(f);
  EXPECT_FALSE(check_fan(g, *f));
  EXPECT_EQ(f->paths.size(), 3u);
}

TEST(Fan, PathsSortedByTerminalAndTruncated) {
  const Graph g = generate::path(5);
  auto f = fan(g, 0, {2, 4}, 1);
  ASSERT_TRUE(f);
  EXPECT_EQ(f->paths, (std::vector<Path>{{0, 1, 2}}));
  EXPECT_FALSE(fan(g, 0, {2, 4}, 2));
  EXPECT_THROW(fan(g, 0, {0, 2}, 1), std::invalid_argument);
}

TEST(Fan, FanLemmaOnRandomGraphs) {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = oracle::random_connected(rng, 6 + trial % 4, 0.5);
    const int k = vertex_connectivity(g);
    std::vector<Vertex> ys;
    for (Vertex v = 1; v <= k; ++v) ys.push_back(v);
    auto f = fan(g, 0, ys, k);
    ASSERT_TRUE(f) << to_edge_list(g);
    EXPECT_FALSE(check_fan(g, *f));
  }
}

TEST(Kappa3UpperAdjacentMinDegree, Examples) {
  EXPECT_EQ(kappa3_upper_adjacent_min_degree(generate::complete(4)), 2);
  EXPECT_EQ(kappa3_upper_adjacent_min_degree(generate::cycle(5)), 1);
  EXPECT_EQ(kappa3_upper_adjacent_min_degree(generate::complete_bipartite(1, 4)), std::nullopt);
}

TEST(Kappa3RangeFromKappa, Examples) {
  auto check = [](int kappa, int lo, int hi) {
    const Kappa3Range r = kappa3_range_from_kappa(kappa);
    EXPECT_EQ(r.lower, lo) << kappa;
    EXPECT_EQ(r.upper, hi) << kappa;
  };
  check(4, 3, 4);
  check(5, 4, 5);
  check(1, 1, 1);
  check(0, 0, 0);
  check(8, 6, 8);
  check(7, 5, 7);
  EXPECT_THROW(kappa3_range_from_kappa(-1), std::invalid_argument);
}
