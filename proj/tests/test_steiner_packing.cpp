#include <gtest/gtest.h>

#include <random>

#include "gencon/bounds.hpp"
#include "gencon/connectivity.hpp"
#include "gencon/steiner.hpp"
#include "oracles.hpp"

using namespace gencon;

namespace {

STree tree_of(std::vector<Edge> edges) { return STree{std::move(edges)}; }

}  // namespace

TEST(VerifyBundle, K4TwoTrees) {
  const Graph g = generate::complete(4);
  STreeBundle b{{0, 1, 2}, {tree_of({Edge(0, 1), Edge(1, 2)}), tree_of({Edge(0, 3), Edge(1, 3), Edge(2, 3)})}};
  EXPECT_EQ(verify_bundle(g, b), std::nullopt);
}

TEST(VerifyBundle, SharedNonTerminalVertex) {
  const Graph g = generate::complete(6);
  STreeBundle b{{0, 1, 2},
                {tree_of({Edge(0, 3), Edge(1, 3), Edge(2, 3)}),
                 tree_of({Edge(0, 4), Edge(1, 4), Edge(3, 4), Edge(3, 5), Edge(2, 5)})}};
  auto bad = verify_bundle(g, b);
  ASSERT_TRUE(bad);
  EXPECT_NE(bad->find("trees 0 and 1 share non-terminal vertex"), std::string::npos) << *bad;
}

TEST(VerifyBundle, CycleMember) {
  const Graph g = generate::complete(4);
  STreeBundle b{{0, 1, 2}, {tree_of({Edge(0, 1), Edge(1, 2), Edge(0, 2)})}};
  auto bad = verify_bundle(g, b);
  ASSERT_TRUE(bad);
  EXPECT_NE(bad->find("tree 0"), std::string::npos) << *bad;
}

TEST(VerifyBundle, MissingTerminalAndForeignEdge) {
  const Graph g = generate::cycle(5);
  STreeBundle missing{{0, 1, 3}, {tree_of({Edge(0, 1)})}};
  EXPECT_TRUE(verify_bundle(g, missing));
  STreeBundle foreign{{0, 1, 2}, {tree_of({Edge(0, 1), Edge(0, 2)})}};
  EXPECT_TRUE(verify_bundle(g, foreign));
}

TEST(VerifyBundle, SharedEdge) {
  const Graph g = generate::complete(4);
  STreeBundle b{{0, 1}, {tree_of({Edge(0, 1)}), tree_of({Edge(0, 1)})}};
  auto bad = verify_bundle(g, b);
  ASSERT_TRUE(bad);
  EXPECT_NE(bad->find("trees 0 and 1"), std::string::npos) << *bad;
}

TEST(MaxTrees, Examples) {
  const Graph k33 = generate::complete_bipartite(3, 3);
  EXPECT_EQ(max_internally_disjoint_trees(k33, {0, 1, 3}).count, 2);
  EXPECT_EQ(oracle::kappa_of_set(k33, {0, 1, 3}), 2);
  EXPECT_EQ(max_internally_disjoint_trees(k33, {0, 1, 2}).count, 3);
  EXPECT_EQ(oracle::kappa_of_set(k33, {0, 1, 2}), 3);
  EXPECT_EQ(max_internally_disjoint_trees(generate::path(4), {0, 1, 3}).count, 1);
  const Graph c3c3 = cartesian_product(generate::cycle(3), generate::cycle(3));
  for (Vertex a = 0; a < 9; ++a)
    for (Vertex b = a + 1; b < 9; ++b)
      for (Vertex c = b + 1; c < 9; ++c) {
        auto r = max_internally_disjoint_trees(c3c3, {a, b, c});
        EXPECT_GE(r.count, 3);
        EXPECT_EQ(verify_bundle(c3c3, r.bundle), std::nullopt);
      }
}

TEST(MaxTrees, AgreesWithTreeEnumerationOracle) {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + trial % 4;
    const Graph g = oracle::random_connected(rng, n, 0.45);
    if (g.size() > 16) continue;
    std::vector<Vertex> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const int k = 2 + trial % 2;
    std::vector<Vertex> s(perm.begin(), perm.begin() + k);
    std::sort(s.begin(), s.end());
    auto r = max_internally_disjoint_trees(g, s);
    ASSERT_EQ(r.count, oracle::kappa_of_set(g, s)) << to_edge_list(g);
    EXPECT_EQ(verify_bundle(g, r.bundle), std::nullopt);
    EXPECT_EQ(static_cast<int>(r.bundle.trees.size()), r.count);
  }
}

TEST(MaxTrees, AddingAnEdgeNeverHurts) {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = oracle::random_connected(rng, 6, 0.3);
    std::vector<Edge> missing;
    for (Vertex a = 0; a < 6; ++a)
      for (Vertex b = a + 1; b < 6; ++b)
        if (!g.adjacent(a, b)) missing.emplace_back(a, b);
    if (missing.empty()) continue;
    const Edge extra = missing[rng() % missing.size()];
    const Graph bigger = g.with_edges(std::span<const Edge>(&extra, 1));
    const std::vector<Vertex> s{0, 2, 5};
    EXPECT_LE(max_internally_disjoint_trees(g, s).count, max_internally_disjoint_trees(bigger, s).count);
  }
}

TEST(MaxTrees, RejectsOversizedGraph) {
  EXPECT_THROW(max_internally_disjoint_trees(generate::path(65), {0, 64}), std::invalid_argument);
}

TEST(MaxTrees, BudgetIsExplicit) {
  SearchBudget tiny(5);
  const Graph g = cartesian_product(generate::cycle(3), generate::cycle(3));
  EXPECT_THROW(max_internally_disjoint_trees(g, {0, 4, 8}, tiny), BudgetExceeded);
}

TEST(KappaK, Examples) {
  EXPECT_EQ(kappa_k(generate::complete(5), 3).value, 3);
  EXPECT_EQ(kappa_k(generate::cycle(6), 3).value, 1);
  EXPECT_EQ(oracle::kappa3(generate::cycle(6)), 1);
  EXPECT_EQ(kappa_k(generate::complete_bipartite(2, 3), 3).value, 2);
}

TEST(KappaK, WitnessAttainsValue) {
  const Graph g = generate::complete_bipartite(3, 3);
  const KappaKResult r = kappa_k(g, 3);
  EXPECT_EQ(r.value, 2);
  ASSERT_EQ(r.witness.size(), 3u);
  EXPECT_EQ(max_internally_disjoint_trees(g, r.witness).count, 2);
  EXPECT_EQ(verify_bundle(g, r.bundle), std::nullopt);
  EXPECT_FALSE(r.symmetry_used);
}

TEST(KappaK, SymmetryPruningAgrees) {
  KappaKOptions sym;
  sym.use_symmetry = true;
  for (const Graph& g : {generate::complete_tripartite(1, 2, 2), generate::cycle(7), oracle::petersen(),
                         cartesian_product(generate::complete(2), generate::complete(3))}) {
    const KappaKResult plain = kappa_k(g, 3);
    const KappaKResult pruned = kappa_k(g, 3, sym);
    EXPECT_EQ(plain.value, pruned.value);
    EXPECT_TRUE(pruned.symmetry_used);
    EXPECT_LE(pruned.subsets_examined, plain.subsets_examined);
  }
}

TEST(KappaK, K2EqualsVertexConnectivity) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = oracle::random_connected(rng, 3 + trial % 5, 0.5);
    EXPECT_EQ(kappa_k(g, 2).value, vertex_connectivity(g)) << to_edge_list(g);
  }
}

TEST(KappaK, Theorem23AndSandwichOnRandomGraphs) {
  std::mt19937 rng(2718);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = oracle::random_connected(rng, 4 + trial % 4, 0.55);
    const int k3 = kappa_k(g, 3).value;
    if (auto ub = kappa3_upper_adjacent_min_degree(g)) EXPECT_LE(k3, *ub);
    const Kappa3Range range = kappa3_range_from_kappa(vertex_connectivity(g));
    EXPECT_GE(k3, range.lower);
    EXPECT_LE(k3, range.upper);
  }
}

TEST(KappaK, RejectsBadK) {
  EXPECT_THROW(kappa_k(generate::complete(3), 1), std::invalid_argument);
  EXPECT_THROW(kappa_k(generate::complete(3), 4), std::invalid_argument);
}

TEST(Kappa3Formula, Examples) {
  EXPECT_EQ(kappa3_formula(Kappa3Family::complete_tripartite, {2, 2, 2}), 3);
  EXPECT_EQ(kappa3_formula(Kappa3Family::complete_tripartite, {1, 1, 3}), 2);
  EXPECT_EQ(kappa3_formula(Kappa3Family::complete_tripartite, {1, 1, 1}), 1);
  EXPECT_EQ(kappa3_formula(Kappa3Family::complete_times_complete, {2, 3}), 3);
  EXPECT_EQ(kappa3_formula(Kappa3Family::complete_bipartite, {3, 3}), 2);
  EXPECT_EQ(kappa3_formula(Kappa3Family::complete_bipartite, {3, 2}), 2);
  EXPECT_EQ(kappa3_formula(Kappa3Family::cycle_product, {2}), 3);
  EXPECT_EQ(kappa3_formula(Kappa3Family::complete, {5}), 3);
  EXPECT_EQ(kappa3_formula(Kappa3Family::complete_times_tripartite_aaa, {1, 2}), 2);
}

TEST(Kappa3Formula, OutOfRange) {
  EXPECT_THROW(kappa3_formula(Kappa3Family::complete_times_complete, {0, 3}), std::invalid_argument);
  EXPECT_THROW(kappa3_formula(Kappa3Family::complete_times_complete, {2, 1}), std::invalid_argument);
  EXPECT_THROW(kappa3_formula(Kappa3Family::complete, {2}), std::invalid_argument);
  EXPECT_THROW(kappa3_formula(Kappa3Family::complete_bipartite, {1, 2, 3}), std::invalid_argument);
}

TEST(Kappa3Formula, AgreesWithSearchAndOracleOnFamilies) {
  struct Case {
    Graph g;
    Kappa3Family family;
    std::vector<int> params;
  };
  const std::vector<Case> cases = {
      {generate::complete(4), Kappa3Family::complete, {4}},
      {generate::complete(5), Kappa3Family::complete, {5}},
      {generate::complete_bipartite(2, 3), Kappa3Family::complete_bipartite, {2, 3}},
      {generate::complete_bipartite(3, 3), Kappa3Family::complete_bipartite, {3, 3}},
      {generate::complete_bipartite(2, 4), Kappa3Family::complete_bipartite, {2, 4}},
      {generate::complete_tripartite(1, 1, 2), Kappa3Family::complete_tripartite, {1, 1, 2}},
      {generate::complete_tripartite(1, 1, 3), Kappa3Family::complete_tripartite, {1, 1, 3}},
      {generate::complete_tripartite(1, 2, 3), Kappa3Family::complete_tripartite, {1, 2, 3}},
      {generate::complete_tripartite(2, 2, 2), Kappa3Family::complete_tripartite, {2, 2, 2}},
      {cartesian_product(generate::complete(2), generate::complete(3)),
       Kappa3Family::complete_times_tripartite_aaa, {1, 2}},
      {cartesian_product(generate::complete(3), generate::complete(3)), Kappa3Family::complete_times_complete, {2, 3}},
  };
  for (const Case& c : cases) {
    const int formula = kappa3_formula(c.family, c.params);
    EXPECT_EQ(kappa_k(c.g, 3).value, formula) << to_edge_list(c.g);
    if (c.g.size() <= 12) EXPECT_EQ(oracle::kappa3(c.g), formula) << to_edge_list(c.g);
  }
}

TEST(RecognizeFamily, NamesAndParameters) {
  auto m = recognize_family(generate::complete_bipartite(4, 2));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->family, Kappa3Family::complete_bipartite);
  EXPECT_EQ(m->params, (std::vector<int>{2, 4}));
  EXPECT_EQ(m->name, "K_{2,4}");
  EXPECT_EQ(recognize_family(generate::complete(4))->name, "K_4");
  EXPECT_EQ(recognize_family(generate::cycle(6))->name, "C_6");
  EXPECT_EQ(recognize_family(generate::complete_tripartite(3, 1, 2))->name, "K_{1,2,3}");
  EXPECT_FALSE(recognize_family(generate::path(4)));
  EXPECT_FALSE(recognize_family(oracle::petersen()));
}

TEST(TreeFromSubgraph, PrunesNonTerminalLeaves) {
  const std::vector<Edge> edges{Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(1, 4), Edge(4, 5)};
  const std::vector<Vertex> terms{0, 2};
  auto t = tree_from_subgraph(edges, terms);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->edges, (std::vector<Edge>{Edge(0, 1), Edge(1, 2)}));
  const std::vector<Vertex> apart{0, 9};
  EXPECT_FALSE(tree_from_subgraph(edges, apart));
}

TEST(Profile, BoundarySignature) {
  const STree t = tree_of({Edge(0, 1), Edge(1, 3), Edge(2, 3)});
  const std::vector<Vertex> s{0, 1, 2};
  const MinimalSTreeProfile p = profile_tree(t, s);
  EXPECT_EQ(p.terminal_edges, 1);
  EXPECT_EQ(p.boundary_degree, (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(p.steiner_vertices, 1);
  EXPECT_EQ(p.label(), "ss=1 b=[0,1,1] x=1");
}
