#include <gtest/gtest.h>

#include <cmath>

#include "hkc/generators.hpp"
#include "hkc/io.hpp"
#include "hkc/spectral.hpp"

using namespace hkc;

TEST(Seed, DerivationIsStableAndSplits) {
    Seed root{12345};
    EXPECT_EQ(root.derive("host").key, Seed{12345}.derive("host").key);
    EXPECT_NE(root.derive("host").key, root.derive("plant").key);
    EXPECT_NE(root.derive(0).key, root.derive(1).key);
}

TEST(GenGnp, DegenerateEndpoints) {
    EXPECT_EQ(gen_gnp(5, 0, Seed{1}).m(), 0);
    EXPECT_EQ(gen_gnp(5, 4, Seed{1}), Graph::complete(5));
    EXPECT_THROW(gen_gnp(5, 5, Seed{1}), std::invalid_argument);
    EXPECT_THROW(gen_gnp(1, 0, Seed{1}), std::invalid_argument);
}

TEST(GenGnp, EdgeCountConcentration) {
    // expectation C(n,2) p = 10000, sigma ~ sqrt(9900); five sigma per seed
    const double expect = 10000.0, sigma = std::sqrt(9900.0);
    for (uint64_t s = 0; s < 20; ++s) {
        auto g = gen_gnp(1000, 20, Seed{s});
        EXPECT_NEAR((double)g.m(), expect, 5 * sigma) << "seed " << s;
    }
}

TEST(GenGnp, Deterministic) {
    EXPECT_EQ(gen_gnp(100, 8, Seed{7}), gen_gnp(100, 8, Seed{7}));
    EXPECT_NE(gen_gnp(100, 8, Seed{7}), gen_gnp(100, 8, Seed{8}));
}

TEST(GenRandomRegular, SmallCases) {
    EXPECT_EQ(gen_random_regular(4, 3, Seed{1}), Graph::complete(4));
    EXPECT_THROW(gen_random_regular(5, 3, Seed{1}), std::invalid_argument);
    EXPECT_THROW(gen_random_regular(4, 4, Seed{1}), std::invalid_argument);
}

TEST(GenRandomRegular, DegreesExact) {
    for (uint64_t s = 0; s < 5; ++s) {
        auto g = gen_random_regular(60, 7, Seed{s});
        ASSERT_TRUE(g.is_regular(7)) << "seed " << s;
    }
    auto g = gen_random_graph_with_degrees({3, 3, 2, 2, 1, 1}, Seed{3});
    for (Vertex v = 1; v <= 6; ++v)
        EXPECT_EQ(g.degree(v), (std::vector<int>{3, 3, 2, 2, 1, 1})[v - 1]);
}

TEST(GenRandomRegular, RejectionBudgetOnInfeasibleSequence) {
    // even degree sum, but no simple graph realizes it: vertex 1 needs three
    // distinct neighbors and only one other vertex has positive degree
    EXPECT_THROW(gen_random_graph_with_degrees({3, 1, 0, 0}, Seed{1}, 50), std::runtime_error);
}

TEST(GenRandomRegular, ExpansionOfRandomRegular) {
    // lambda-hat <= 3 sqrt(d) for most seeds at d=10
    int good = 0;
    for (uint64_t s = 0; s < 10; ++s) {
        auto g = gen_random_regular(1000, 10, Seed{s});
        if (lambda_expansion(g, 1e-5) <= 3 * std::sqrt(10.0)) ++good;
    }
    EXPECT_GE(good, 9);
}

TEST(RandomPartition, Examples) {
    auto c = random_partition(1, 3, Seed{1});
    EXPECT_EQ(c.n(), 1);
    EXPECT_GE(c.of(1), 1);
    EXPECT_LE(c.of(1), 3);
    EXPECT_EQ(random_partition(50, 3, Seed{9}).assign, random_partition(50, 3, Seed{9}).assign);
    // class-size concentration at n=3000: within 5 sqrt(n/k) of n/k
    for (uint64_t s = 0; s < 20; ++s) {
        auto p = random_partition(3000, 3, Seed{s});
        auto sizes = p.class_sizes();
        for (int col = 1; col <= 3; ++col)
            EXPECT_NEAR((double)sizes[col], 1000.0, 5 * std::sqrt(1000.0)) << "seed " << s;
    }
}

TEST(BalancedRandomPartition, SizesExact) {
    auto even = balanced_random_partition(6, 3, Seed{1}).class_sizes();
    EXPECT_EQ(even[1], 2);
    EXPECT_EQ(even[2], 2);
    EXPECT_EQ(even[3], 2);
    auto odd = balanced_random_partition(7, 3, Seed{1}).class_sizes();
    std::vector<int> sz{odd[1], odd[2], odd[3]};
    std::sort(sz.begin(), sz.end());
    EXPECT_EQ(sz, (std::vector<int>{2, 2, 3}));
}

TEST(ApplyPlanting, Examples) {
    auto k3 = Graph::complete(3);
    EXPECT_EQ(apply_planting(k3, Coloring(3, {1, 2, 3})).result, k3);
    EXPECT_EQ(apply_planting(k3, Coloring(3, {1, 1, 1})).result.m(), 0);
    auto path = Graph::path(3);
    auto inst = apply_planting(path, Coloring(3, {1, 1, 2}));
    EXPECT_EQ(inst.result.edges(), (std::vector<Edge>{{2, 3}}));
    EXPECT_THROW(apply_planting(k3, Coloring(3, {1, 0, 2})), std::invalid_argument);
}

TEST(ApplyPlanting, ResultAlwaysLegalAndSubsetOfHost) {
    for (uint64_t s = 0; s < 10; ++s) {
        auto inst = make_instance(Model::RR, 120, 3, 12, std::nullopt, std::nullopt, Seed{s});
        EXPECT_TRUE(is_legal_coloring(inst.result, inst.planted).legal);
        for (auto [u, v] : inst.result.edges()) EXPECT_TRUE(inst.host.has_edge(u, v));
    }
}

TEST(MakeInstance, DispatchContract) {
    auto rr = make_instance(Model::RR, 90, 3, 10, std::nullopt, std::nullopt, Seed{1});
    EXPECT_EQ(rr.params.model, Model::RR);
    auto sizes = rr.planted.class_sizes();
    EXPECT_EQ(sizes[1], 30);

    auto host = Graph::complete(6);
    auto plant = Coloring(3, {1, 1, 2, 2, 3, 3});
    auto aa = make_instance(Model::AA, 6, 3, 5, host, plant, Seed{1});
    EXPECT_EQ(aa.result, Graph::complete_multipartite({2, 2, 2}));

    EXPECT_THROW(make_instance(Model::RA, 90, 3, 10, std::nullopt, std::nullopt, Seed{1}),
                 std::invalid_argument);
    EXPECT_THROW(make_instance(Model::RR, 90, 3, 10, host, std::nullopt, Seed{1}),
                 std::invalid_argument);
}

TEST(InstanceIo, GraphRoundTripAndStability) {
    auto g = gen_gnp(40, 6, Seed{2});
    auto text = io::graph_to_string(g);
    std::istringstream in(text);
    EXPECT_EQ(io::graph_from_stream(in), g);
    EXPECT_EQ(io::graph_to_string(g), text);  // stable bytes

    auto c = balanced_random_partition(40, 3, Seed{2});
    std::istringstream cin(io::coloring_to_string(c));
    EXPECT_EQ(io::coloring_from_stream(cin, 3).assign, c.assign);
}

TEST(InstanceIo, ParseErrors) {
    std::istringstream bad1("p edge 3 1\ne 1 5\n");
    EXPECT_THROW(io::graph_from_stream(bad1), std::exception);
    std::istringstream bad2("e 1 2\n");
    EXPECT_THROW(io::graph_from_stream(bad2), std::exception);
    std::istringstream bad3("1 1\n3 2\n");
    EXPECT_THROW(io::coloring_from_stream(bad3, 3), std::exception);
}
