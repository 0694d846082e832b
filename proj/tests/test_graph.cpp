#include <gtest/gtest.h>

#include "hkc/generators.hpp"
#include "hkc/graph.hpp"

using namespace hkc;

namespace {

// independent oracle: densest subgraph by direct enumeration of all subsets
std::pair<std::vector<Vertex>, double> densest_by_enumeration(const Graph& g) {
    int n = g.n();
    std::vector<Vertex> best;
    double best_density = -1;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<Vertex> sub;
        for (int v = 1; v <= n; ++v)
            if (mask & (1u << (v - 1))) sub.push_back(v);
        long long e = 0;
        for (auto [u, v] : g.edges())
            if ((mask & (1u << (u - 1))) && (mask & (1u << (v - 1)))) ++e;
        double density = 2.0 * e / sub.size();
        if (density > best_density + 1e-12) {
            best_density = density;
            best = sub;
        }
    }
    return {best, best_density};
}

Graph k4_plus_pendant() {
    return Graph::from_edges(5, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {4, 5}});
}

}  // namespace

TEST(Graph, ConstructionInvariants) {
    auto g = Graph::from_edges(4, {{2, 1}, {3, 4}});
    EXPECT_EQ(g.n(), 4);
    EXPECT_EQ(g.m(), 2);
    EXPECT_TRUE(g.has_edge(1, 2));
    EXPECT_TRUE(g.has_edge(2, 1));
    EXPECT_THROW(Graph::from_edges(3, {{1, 1}}), std::invalid_argument);
    EXPECT_THROW(Graph::from_edges(3, {{1, 2}, {2, 1}}), std::invalid_argument);
    EXPECT_THROW(Graph::from_edges(3, {{1, 4}}), std::invalid_argument);
}

TEST(EdgesBetween, DoubleCountingConvention) {
    auto k3 = Graph::complete(3);
    EXPECT_EQ(edges_between(k3, VertexSet({1}), VertexSet({2, 3})), 2);
    EXPECT_EQ(edges_between(k3, VertexSet({1, 2, 3}), VertexSet({1, 2, 3})), 6);
    auto path = Graph::path(3);
    EXPECT_EQ(edges_between(path, VertexSet({1, 3}), VertexSet({2})), 2);
}

TEST(EdgesBetween, SelfPairCountsInducedEdgesTwice) {
    // E(S,S) == 2 |E(G_S)| exhaustively on small random graphs
    for (uint64_t s = 0; s < 5; ++s) {
        auto g = gen_gnp(8, 4, Seed{s});
        for (unsigned mask = 1; mask < (1u << 8); ++mask) {
            std::vector<Vertex> sub;
            for (int v = 1; v <= 8; ++v)
                if (mask & (1u << (v - 1))) sub.push_back(v);
            VertexSet S(sub);
            auto ind = induced_subgraph(g, S);
            ASSERT_EQ(edges_between(g, S, S), 2 * ind.graph.m());
        }
    }
}

TEST(Sparsity, Examples) {
    auto k4 = Graph::complete(4);
    EXPECT_EQ(sparsity(k4, VertexSet({1}), 3), Ratio(4, 3));
    auto two_comp = Graph::from_edges(5, {{1, 2}, {2, 3}, {1, 3}, {4, 5}});
    EXPECT_EQ(sparsity(two_comp, VertexSet({1, 2, 3}), 2).num, 0);
    auto c4 = Graph::cycle(4);
    EXPECT_EQ(sparsity(c4, VertexSet({1, 2}), 2), Ratio(1, 1));
    EXPECT_THROW(sparsity(k4, VertexSet({1, 2, 3, 4}), 3), std::invalid_argument);
    EXPECT_THROW(sparsity(k4, VertexSet(), 3), std::invalid_argument);
}

TEST(ConnectedComponents, PartitionProperty) {
    auto empty3 = Graph::from_edges(3, {});
    EXPECT_EQ(connected_components(empty3).size(), 3u);
    auto mixed = Graph::from_edges(5, {{1, 2}, {2, 3}, {1, 3}, {4, 5}});
    auto comps = connected_components(mixed);
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_EQ(comps[0], VertexSet({1, 2, 3}));
    EXPECT_EQ(comps[1], VertexSet({4, 5}));
    auto single = Graph::from_edges(1, {});
    EXPECT_EQ(connected_components(single).size(), 1u);

    // partition: disjoint, covering, no cross edges
    for (uint64_t s = 0; s < 5; ++s) {
        auto g = gen_gnp(40, 1.5, Seed{s});
        auto cs = connected_components(g);
        std::vector<int> owner(g.n() + 1, -1);
        size_t total = 0;
        for (size_t i = 0; i < cs.size(); ++i) {
            total += cs[i].size();
            for (Vertex v : cs[i]) {
                ASSERT_EQ(owner[v], -1);
                owner[v] = (int)i;
            }
        }
        ASSERT_EQ(total, (size_t)g.n());
        for (auto [u, v] : g.edges()) ASSERT_EQ(owner[u], owner[v]);
    }
}

TEST(InducedSubgraph, Examples) {
    auto k4 = Graph::complete(4);
    auto sub = induced_subgraph(k4, VertexSet({1, 2, 3}));
    EXPECT_EQ(sub.graph, Graph::complete(3));
    auto none = induced_subgraph(k4, VertexSet());
    EXPECT_EQ(none.graph.n(), 0);
    auto c5 = Graph::cycle(5);
    auto pair = induced_subgraph(c5, VertexSet({1, 2}));
    EXPECT_EQ(pair.graph.m(), 1);
    EXPECT_EQ(pair.to_original, (std::vector<Vertex>{1, 2}));
}

TEST(IsLegalColoring, Examples) {
    auto k3 = Graph::complete(3);
    EXPECT_TRUE(is_legal_coloring(k3, Coloring(3, {1, 2, 3})).legal);
    auto bad = is_legal_coloring(k3, Coloring(3, {1, 1, 2}));
    EXPECT_FALSE(bad.legal);
    EXPECT_EQ(bad.violations, (std::vector<Edge>{{1, 2}}));
    auto e = Graph::from_edges(2, {{1, 2}});
    EXPECT_TRUE(is_legal_coloring(e, Coloring(3, {1, 0})).legal);
    EXPECT_THROW(is_legal_coloring(k3, Coloring(3, {1, 2})), std::invalid_argument);
}

TEST(CountColorings, Examples) {
    EXPECT_EQ(std::get<long long>(count_k_colorings(Graph::complete(3), 3)), 6);
    EXPECT_EQ(std::get<long long>(count_k_colorings(Graph::complete(4), 3)), 0);
    EXPECT_EQ(std::get<long long>(count_k_colorings(Graph::from_edges(2, {{1, 2}}), 3)), 6);
    EXPECT_THROW(count_k_colorings(Graph::from_edges(40, {}), 3), std::invalid_argument);
    auto capped = count_k_colorings(Graph::from_edges(20, {}), 3, 1000);
    EXPECT_TRUE(std::holds_alternative<CapExceeded>(capped));
}

TEST(CountColorings, MatchesDirectEnumeration) {
    // oracle: walk all k^n assignments directly
    for (uint64_t s = 0; s < 10; ++s) {
        auto g = gen_gnp(7, 3, Seed{s});
        long long direct = 0;
        int n = g.n();
        std::vector<int> a(n, 1);
        while (true) {
            bool ok = true;
            for (auto [u, v] : g.edges())
                if (a[u - 1] == a[v - 1]) {
                    ok = false;
                    break;
                }
            if (ok) ++direct;
            int i = 0;
            while (i < n && a[i] == 3) a[i++] = 1;
            if (i == n) break;
            ++a[i];
        }
        EXPECT_EQ(std::get<long long>(count_k_colorings(g, 3)), direct);
    }
}

TEST(CountColorings, RelabelInvariant) {
    auto g = gen_gnp(9, 3.5, Seed{11});
    auto base = std::get<long long>(count_k_colorings(g, 3));
    Rng rng(Seed{5});
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Vertex> perm(g.n());
        std::iota(perm.begin(), perm.end(), 1);
        rng.shuffle(perm);
        std::vector<Edge> edges;
        for (auto [u, v] : g.edges())
            edges.push_back({std::min(perm[u - 1], perm[v - 1]),
                             std::max(perm[u - 1], perm[v - 1])});
        auto h = Graph::from_edges(g.n(), std::move(edges));
        EXPECT_EQ(std::get<long long>(count_k_colorings(h, 3)), base);
    }
}

TEST(MaxDensity, Examples) {
    auto k4 = max_density_subgraph(Graph::complete(4));
    EXPECT_EQ(k4.vertices.size(), 4u);
    EXPECT_EQ(k4.density, Ratio(3, 1));

    auto pend = max_density_subgraph(k4_plus_pendant());
    EXPECT_EQ(pend.vertices, VertexSet({1, 2, 3, 4}));
    EXPECT_EQ(pend.density, Ratio(3, 1));
    EXPECT_GT(pend.density.value(), 14.0 / 5.0);

    // a single edge is a 2-vertex tree and achieves exactly density 1
    auto edge = max_density_subgraph(Graph::from_edges(2, {{1, 2}}));
    EXPECT_EQ(edge.density, Ratio(1, 1));
}

TEST(MaxDensity, AgainstEnumerationOracle) {
    for (uint64_t s = 0; s < 12; ++s) {
        auto g = gen_gnp(9, 3.0, Seed{s});
        auto exact = densest_by_enumeration(g);
        auto got = max_density_subgraph(g);
        EXPECT_NEAR(got.density.value(), exact.second, 1e-12) << "seed " << s;
    }
}

TEST(MaxDensity, FlowPathAgreesWithExhaustiveOnOverlap) {
    // same inputs through both routes; exhaustive_limit=0 forces the min-cut
    // path. The maximum density must agree exactly; the maximizer itself may
    // differ under ties, so both returned sets are re-checked for optimality.
    auto density_of = [](const Graph& g, const VertexSet& s) {
        auto sub = induced_subgraph(g, s);
        return Ratio(2 * sub.graph.m(), (long long)s.size());
    };
    for (uint64_t s = 0; s < 12; ++s) {
        auto g = gen_gnp(12, 4.0, Seed{100 + s});
        auto exhaustive = max_density_subgraph(g, 22);
        auto flow = max_density_subgraph(g, 0);
        EXPECT_EQ(exhaustive.density, flow.density) << "seed " << s;
        EXPECT_EQ(density_of(g, exhaustive.vertices), exhaustive.density) << "seed " << s;
        EXPECT_EQ(density_of(g, flow.vertices), flow.density) << "seed " << s;
    }
}

TEST(MaxDensity, AtLeastAverageDegree) {
    for (uint64_t s = 0; s < 8; ++s) {
        auto g = gen_gnp(30, 5.0, Seed{300 + s});
        auto got = max_density_subgraph(g);
        EXPECT_GE(got.density.value() + 1e-12, g.average_degree());
    }
}
