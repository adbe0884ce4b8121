#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "gencon/graph.hpp"
#include "oracles.hpp"

using namespace gencon;

TEST(CartesianProduct, K2TimesK2IsC4) {
  const Graph p = cartesian_product(generate::complete(2), generate::complete(2));
  EXPECT_EQ(p.order(), 4);
  EXPECT_EQ(p.size(), 4);
  for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(p.degree(v), 2);
  EXPECT_TRUE(p.connected());
}

TEST(CartesianProduct, C3TimesC3IsFourRegular) {
  const Graph p = cartesian_product(generate::cycle(3), generate::cycle(3));
  EXPECT_EQ(p.order(), 9);
  EXPECT_EQ(p.size(), 18);
  for (Vertex v = 0; v < 9; ++v) EXPECT_EQ(p.degree(v), 4);
}

TEST(CartesianProduct, K3TimesK3Counts) {
  const Graph p = cartesian_product(generate::complete(3), generate::complete(3));
  EXPECT_EQ(p.order(), 9);
  EXPECT_EQ(p.size(), 18);
}

TEST(CartesianProduct, FlatIdsAndEdgeRule) {
  const Graph g = generate::path(3);
  const Graph h = generate::cycle(4);
  const Graph p = cartesian_product(g, h);
  ProductLayout layout(g.order(), h.order());
  std::set<Vertex> ids;
  for (Vertex u = 0; u < g.order(); ++u) {
    for (Vertex v = 0; v < h.order(); ++v) {
      const Vertex x = layout.flat(u, v);
      EXPECT_EQ(x, u * h.order() + v);
      EXPECT_EQ(layout.coords(x), (ProductVertex{u, v}));
      ids.insert(x);
    }
  }
  EXPECT_EQ(static_cast<int>(ids.size()), p.order());
  for (Vertex a = 0; a < p.order(); ++a) {
    for (Vertex b = a + 1; b < p.order(); ++b) {
      auto [u1, v1] = layout.coords(a);
      auto [u2, v2] = layout.coords(b);
      const bool expected = (u1 == u2 && h.adjacent(v1, v2)) || (v1 == v2 && g.adjacent(u1, u2));
      EXPECT_EQ(p.adjacent(a, b), expected) << a << " " << b;
    }
  }
}

TEST(CartesianProduct, DegreeLawOnRandomFactors) {
  std::mt19937 rng(20240601);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = oracle::random_connected(rng, 2 + trial % 5, 0.4);
    const Graph h = oracle::random_connected(rng, 2 + (trial / 5) % 5, 0.4);
    const Graph p = cartesian_product(g, h);
    ProductLayout layout(g.order(), h.order());
    EXPECT_EQ(p.size(), g.size() * h.order() + h.size() * g.order());
    for (Vertex x = 0; x < p.order(); ++x) {
      auto [u, v] = layout.coords(x);
      EXPECT_EQ(p.degree(x), g.degree(u) + h.degree(v));
    }
  }
}

TEST(Join, K1JoinK1IsK2) {
  const Graph j = join(generate::complete(1), generate::complete(1));
  EXPECT_EQ(j.order(), 2);
  EXPECT_EQ(j.size(), 1);
}

TEST(Join, K2JoinEmpty2IsK4MinusEdge) {
  const Graph j = generate::join_complete_empty2(2);
  EXPECT_EQ(j.order(), 4);
  EXPECT_EQ(j.size(), 5);
  EXPECT_FALSE(j.adjacent(2, 3));
  EXPECT_EQ(j, join(generate::complete(2), generate::empty(2)));
}

TEST(Join, RejectsEmptyFactor) { EXPECT_THROW(join(Graph(0, {}), generate::complete(2)), std::invalid_argument); }

TEST(Fiber, SingleEdgeGivesOneProductEdge) {
  ProductLayout layout(3, 4);
  const Vertex vs[] = {0, 1};
  const Edge es[] = {Edge(0, 1)};
  const Fiber f = fiber_g(layout, vs, es, 2);
  ASSERT_EQ(f.edges.size(), 1u);
  EXPECT_EQ(f.edges[0], Edge(layout.flat(0, 2), layout.flat(1, 2)));
  EXPECT_EQ(f.vertices, (std::vector<Vertex>{2, 6}));
}

TEST(Fiber, WholeFactorFibersArePartsOfTheProduct) {
  const Graph g = generate::cycle(3);
  const Graph h = generate::path(4);
  const Graph p = cartesian_product(g, h);
  ProductLayout layout(g.order(), h.order());
  std::set<Edge> seen;
  for (Vertex v = 0; v < h.order(); ++v) {
    for (const Edge& e : fiber_g(layout, g, v).edges) {
      EXPECT_TRUE(p.has_edge(e));
      EXPECT_TRUE(seen.insert(e).second);
    }
  }
  for (Vertex u = 0; u < g.order(); ++u) {
    for (const Edge& e : fiber_h(layout, h, u).edges) {
      EXPECT_TRUE(p.has_edge(e));
      EXPECT_TRUE(seen.insert(e).second);
    }
  }
  EXPECT_EQ(static_cast<int>(seen.size()), p.size());
}

TEST(Generate, EdgeCounts) {
  EXPECT_EQ(generate::complete(4).size(), 6);
  const Graph t = generate::complete_tripartite(2, 2, 2);
  EXPECT_EQ(t.size(), 12);
  for (Vertex v = 0; v < 6; ++v) EXPECT_EQ(t.degree(v), 4);
  EXPECT_EQ(generate::complete_bipartite(2, 3).size(), 6);
  EXPECT_EQ(generate::cycle(5).size(), 5);
  EXPECT_EQ(generate::path(5).size(), 4);
}

TEST(Generate, Deterministic) {
  const int params[] = {1, 2, 3};
  EXPECT_EQ(generate_family("complete_tripartite", params), generate_family("complete_tripartite", params));
  EXPECT_EQ(to_edge_list(generate::cycle(7)), to_edge_list(generate::cycle(7)));
}

TEST(Generate, BadParameters) {
  const int two[] = {2};
  EXPECT_THROW(generate_family("cycle", two), std::invalid_argument);
  EXPECT_THROW(generate_family("nonsense", two), std::invalid_argument);
  EXPECT_THROW(generate_family("complete_bipartite", two), std::invalid_argument);
  EXPECT_THROW(generate::complete_bipartite(0, 3), std::invalid_argument);
}

TEST(Graph, RejectsInvalidEdges) {
  EXPECT_THROW(Graph(3, {Edge(0, 0)}), GraphError);
  EXPECT_THROW(Graph(3, {Edge(0, 3)}), GraphError);
  EXPECT_THROW(Graph(3, {Edge(0, 1), Edge(1, 0)}), GraphError);
  EXPECT_EQ(Graph::from_pairs(3, {{0, 1}, {1, 0}, {2, 1}}).size(), 2);
}

TEST(Graph, AdjacentOutOfRangeIsFalse) {
  const Graph g = generate::path(3);
  EXPECT_FALSE(g.adjacent(0, 7));
  EXPECT_FALSE(g.adjacent(-1, 0));
}

TEST(EdgeList, RoundTrip) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = oracle::random_connected(rng, 1 + trial % 9, 0.3);
    EXPECT_EQ(parse_edge_list(to_edge_list(g)), g);
  }
}

TEST(EdgeList, CommentsAndBlankLines) {
  const Graph g = parse_edge_list("# triangle\n3 3\n\n0 1\n1 2 # closing\n0 2\n");
  EXPECT_EQ(g, generate::complete(3));
}

TEST(EdgeList, MalformedInputs) {
  EXPECT_THROW(parse_edge_list(""), GraphError);
  EXPECT_THROW(parse_edge_list("3 2\n0 1\n"), GraphError);
  EXPECT_THROW(parse_edge_list("3 1\n0 5\n"), GraphError);
  EXPECT_THROW(parse_edge_list("3 1\n1 1\n"), GraphError);
  EXPECT_THROW(parse_edge_list("3 2\n0 1\n1 0\n"), GraphError);
  EXPECT_THROW(parse_edge_list("3 1\n0 1 2\n"), GraphError);
  EXPECT_THROW(parse_edge_list("3 1\nzero one\n"), GraphError);
}

TEST(Induced, MapsBackToParent) {
  const Graph g = generate::cycle(6);
  const Vertex keep[] = {1, 2, 3, 5};
  const InducedSubgraph sub = induced(g, keep);
  EXPECT_EQ(sub.graph.order(), 4);
  EXPECT_EQ(sub.graph.size(), 2);
  EXPECT_EQ(sub.to_parent, (std::vector<Vertex>{1, 2, 3, 5}));
}
