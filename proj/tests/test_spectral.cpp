#include <gtest/gtest.h>

#include "hkc/generators.hpp"
#include "hkc/spectral.hpp"

using namespace hkc;

namespace {

Graph octahedron() { return Graph::complete_multipartite({2, 2, 2}); }

PlantedInstance octahedron_instance() {
    InstanceParams p;
    p.model = Model::AA;
    p.d = 5;
    return apply_planting(Graph::complete(6), Coloring(3, {1, 1, 2, 2, 3, 3}), p);
}

// largest principal angle between equal-dimension column spans
double principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.transpose() * b);
    double smin = svd.singularValues().minCoeff();
    return std::acos(std::min(1.0, smin));
}

}  // namespace

TEST(DenseSpectrum, KnownSpectra) {
    auto k3 = full_spectrum_dense(Graph::complete(3));
    EXPECT_NEAR(k3.values[0], 2, 1e-9);
    EXPECT_NEAR(k3.values[1], -1, 1e-9);
    EXPECT_NEAR(k3.values[2], -1, 1e-9);

    auto oct = full_spectrum_dense(octahedron());
    const double expect[6] = {4, 0, 0, 0, -2, -2};
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(oct.values[i], expect[i], 1e-9);

    auto empty = full_spectrum_dense(Graph::from_edges(4, {}));
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(empty.values[i], 0, 1e-12);
}

TEST(DenseSpectrum, TraceAndFrobeniusIdentities) {
    for (uint64_t s = 0; s < 6; ++s) {
        auto g = gen_gnp(60, 8, Seed{s});
        auto sd = full_spectrum_dense(g);
        EXPECT_NEAR(sd.values.sum(), 0.0, 1e-6 * g.n());
        EXPECT_NEAR(sd.values.squaredNorm(), 2.0 * g.m(), 1e-6 * std::max<double>(1, g.m()));
    }
}

TEST(DenseSpectrum, ResidualContract) {
    auto g = gen_gnp(80, 10, Seed{3});
    auto sd = full_spectrum_dense(g);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n(), g.n());
    for (auto [u, v] : g.edges()) a(u - 1, v - 1) = a(v - 1, u - 1) = 1;
    for (int i = 0; i < g.n(); ++i) {
        double resid = (a * sd.vectors.col(i) - sd.values[i] * sd.vectors.col(i)).norm();
        EXPECT_LE(resid, 1e-9 * std::max(1.0, std::abs(sd.values[i])));
    }
}

TEST(ExtremeEigenpairs, OctahedronBottomPlane) {
    auto g = octahedron();
    auto dense = full_spectrum_dense(g);
    auto ext = extreme_eigenpairs(g, 2, 0, 1e-9);
    EXPECT_NEAR(ext.values[0], -2, 1e-8);
    EXPECT_NEAR(ext.values[1], -2, 1e-8);
    EXPECT_LT(principal_angle(ext.vectors, dense.vectors.rightCols(2)), 1e-6);
}

TEST(ExtremeEigenpairs, SmallCases) {
    auto top = extreme_eigenpairs(Graph::complete(3), 0, 1, 1e-10);
    EXPECT_NEAR(top.values[0], 2, 1e-9);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(top.vectors(i, 0)), 1 / std::sqrt(3.0), 1e-8);

    // disjoint union 2 x K3: two copies of eigenvalue 2
    Graph two_k3 = Graph::from_edges(6, {{1, 2}, {1, 3}, {2, 3}, {4, 5}, {4, 6}, {5, 6}});
    auto pair = extreme_eigenpairs(two_k3, 0, 2, 1e-9);
    EXPECT_NEAR(pair.values[0], 2, 1e-8);
    EXPECT_NEAR(pair.values[1], 2, 1e-8);

    EXPECT_THROW(extreme_eigenpairs(two_k3, 4, 3, 1e-8), std::invalid_argument);
}

TEST(ExtremeEigenpairs, AgreesWithDenseOnRandomGraphs) {
    // eigenvalue agreement and cluster-aware subspace agreement vs the oracle
    Rng rng(Seed{314});
    for (int trial = 0; trial < 50; ++trial) {
        int n = 30 + (int)rng.next_below(271);
        double d = 4 + (double)rng.next_below(10);
        auto g = gen_gnp(n, d, Seed{1000 + (uint64_t)trial});
        auto dense = full_spectrum_dense(g);
        auto ext = extreme_eigenpairs(g, 2, 2, 1e-8);
        EXPECT_NEAR(ext.values[0], dense.values[0], 1e-6) << "trial " << trial;
        EXPECT_NEAR(ext.values[1], dense.values[1], 1e-6) << "trial " << trial;
        EXPECT_NEAR(ext.values[2], dense.values[n - 2], 1e-6) << "trial " << trial;
        EXPECT_NEAR(ext.values[3], dense.values[n - 1], 1e-6) << "trial " << trial;

        // compare subspaces cluster by cluster so exact ties stay well posed
        auto check_cluster = [&](std::vector<int> ext_cols, std::vector<int> dense_cols) {
            Eigen::MatrixXd a(n, (int)ext_cols.size()), b(n, (int)dense_cols.size());
            for (size_t i = 0; i < ext_cols.size(); ++i) a.col(i) = ext.vectors.col(ext_cols[i]);
            for (size_t i = 0; i < dense_cols.size(); ++i) b.col(i) = dense.vectors.col(dense_cols[i]);
            EXPECT_LT(principal_angle(a, b), 1e-5) << "trial " << trial;
        };
        const double cluster_gap = 1e-4;
        if (std::abs(dense.values[0] - dense.values[1]) > cluster_gap)
            check_cluster({0}, {0});
        else
            check_cluster({0, 1}, {0, 1});
        if (std::abs(dense.values[n - 1] - dense.values[n - 2]) > cluster_gap)
            check_cluster({3}, {n - 1});
        else
            check_cluster({2, 3}, {n - 2, n - 1});
    }
}

TEST(LambdaExpansion, KnownValues) {
    EXPECT_NEAR(lambda_expansion(Graph::complete(4)), 1, 1e-8);
    EXPECT_NEAR(lambda_expansion(Graph::cycle(4)), 2, 1e-8);
    Graph two_k3 = Graph::from_edges(6, {{1, 2}, {1, 3}, {2, 3}, {4, 5}, {4, 6}, {5, 6}});
    EXPECT_NEAR(lambda_expansion(two_k3), 2, 1e-8);
}

TEST(IndicatorBasis, OctahedronExactAlignment) {
    auto inst = octahedron_instance();
    auto basis = indicator_basis(inst.planted);
    EXPECT_NEAR(basis.col(0).dot(Eigen::VectorXd::Ones(6)) / std::sqrt(6.0), 1.0, 1e-12);
    auto dense = full_spectrum_dense(inst.result);
    Eigen::MatrixXd bottom = dense.vectors.rightCols(2);
    EXPECT_NEAR((bottom.transpose() * basis.col(1)).norm(), 1.0, 1e-9);
    EXPECT_NEAR((bottom.transpose() * basis.col(2)).norm(), 1.0, 1e-9);
}

TEST(ValidatePlantedSpectrum, OctahedronAllPass) {
    // on a complete host the per-class neighbor count is exactly n/3, so the
    // spectrum windows are stated with d = n: lam1 = 4 = (2/3) * 6
    InstanceParams p;
    p.model = Model::AA;
    p.d = 6;
    auto inst = apply_planting(Graph::complete(6), Coloring(3, {1, 1, 2, 2, 3, 3}), p);
    auto rep = validate_planted_spectrum(inst, PlantingMode::RandomPlanting);
    EXPECT_TRUE(rep.all_ok);
    EXPECT_NEAR(rep.lam1, 4.0, 1e-9);
    EXPECT_NEAR(rep.lam_n, -2.0, 1e-9);
    EXPECT_NEAR(rep.lam_n1, -2.0, 1e-9);
    EXPECT_NEAR(rep.alignment, 1.0, 1e-9);
}

TEST(ValidatePlantedSpectrum, DegeneratePlantingFailsLam1Window) {
    InstanceParams p;
    p.d = 5;
    auto inst = apply_planting(Graph::complete(6), Coloring(3, std::vector<int>(6, 1)), p);
    EXPECT_EQ(inst.result.m(), 0);
    auto rep = validate_planted_spectrum(inst, PlantingMode::RandomPlanting);
    EXPECT_FALSE(rep.lam1_ok);
    EXPECT_FALSE(rep.all_ok);
}

TEST(ValidatePlantedSpectrum, RandomRegularCorridor) {
    int pass = 0;
    for (uint64_t s = 0; s < 10; ++s) {
        auto host = gen_random_regular(900, 60, Seed{s}.derive("host"));
        InstanceParams ip;
        ip.model = Model::AR;
        ip.d = 60;
        auto inst =
            apply_planting(host, balanced_random_partition(900, 3, Seed{s}.derive("plant")), ip);
        if (validate_planted_spectrum(inst, PlantingMode::RandomPlanting).all_ok) ++pass;
    }
    EXPECT_GE(pass, 9);
}

TEST(MixingDiscrepancy, Examples) {
    auto k4 = Graph::complete(4);
    auto chk = mixing_discrepancy(k4, VertexSet({1, 2}), VertexSet({3, 4}), 3);
    EXPECT_NEAR(chk.lhs, 1.0, 1e-9);
    EXPECT_NEAR(chk.rhs, 2.0, 1e-7);
    EXPECT_TRUE(chk.holds);

    // S = T = V gives the handshake identity, lhs = 0
    auto all = k4.all_vertices();
    auto whole = mixing_discrepancy(k4, all, all, 3);
    EXPECT_NEAR(whole.lhs, 0.0, 1e-9);
    EXPECT_TRUE(whole.holds);

    // C6 is bipartite: lambda-hat = |lambda_n| = 2
    auto c6 = Graph::cycle(6);
    auto far = mixing_discrepancy(c6, VertexSet({1}), VertexSet({4}), 2);
    EXPECT_NEAR(far.lhs, 1.0 / 3.0, 1e-9);
    EXPECT_NEAR(far.rhs, 2.0, 1e-7);
    EXPECT_TRUE(far.holds);

    EXPECT_THROW(mixing_discrepancy(Graph::path(3), VertexSet({1}), VertexSet({2}), 2),
                 std::invalid_argument);
}

TEST(MixingDiscrepancy, HoldsOnRandomRegularSubsets) {
    // the mixing lemma is a theorem; a violation means a bug
    for (uint64_t s = 0; s < 3; ++s) {
        auto g = gen_random_regular(120, 8, Seed{s});
        double lam = lambda_expansion(g, 1e-7);
        Rng rng(Seed{s}.derive("sets"));
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<Vertex> sv, tv;
            for (Vertex v = 1; v <= g.n(); ++v) {
                if (rng.bernoulli(0.3)) sv.push_back(v);
                if (rng.bernoulli(0.3)) tv.push_back(v);
            }
            if (sv.empty() || tv.empty()) continue;
            auto chk = mixing_discrepancy(g, VertexSet(sv), VertexSet(tv), 8, lam);
            EXPECT_TRUE(chk.holds);
        }
    }
}
