#include <gtest/gtest.h>

#include <filesystem>

#include "hkc/harness.hpp"

using namespace hkc;

namespace {

ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.model = Model::RR;
    cfg.n_sweep = {60};
    cfg.d_sweep = {20};
    cfg.algo = "ar";
    cfg.num_seeds = 1;
    cfg.master_seed = 12;
    return cfg;
}

}  // namespace

TEST(AdversaryMenu, NamedStrategies) {
    auto host = gen_gnp(9, 4, Seed{1});
    auto blocks = adversary_menu("id-blocks", host, 3, Seed{1});
    EXPECT_EQ(blocks.assign, (std::vector<int>{1, 1, 1, 2, 2, 2, 3, 3, 3}));

    auto stripes = adversary_menu("stripes", host, 3, Seed{1});
    EXPECT_EQ(stripes.assign, (std::vector<int>{1, 2, 3, 1, 2, 3, 1, 2, 3}));

    auto by_degree = adversary_menu("degree-sorted", host, 3, Seed{1});
    std::vector<Vertex> order(9);
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return host.degree(a) > host.degree(b); });
    for (int i = 0; i < 9; ++i) EXPECT_EQ(by_degree.of(order[i]), i % 3 + 1);

    auto spectral = adversary_menu("spectral-correlated", gen_gnp(90, 10, Seed{2}), 3, Seed{1});
    auto sizes = spectral.class_sizes();
    EXPECT_EQ(sizes[1], 30);
    EXPECT_EQ(sizes[2], 30);
    EXPECT_EQ(sizes[3], 30);

    EXPECT_THROW(adversary_menu("nope", host, 3, Seed{1}), std::invalid_argument);
}

TEST(AdversaryMenu, RaForgeDelegates) {
    // host with a hand-planted prism copy; the forge adversary should fire
    Graph prism = Graph::from_edges(6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6},
                                        {1, 4}, {2, 5}, {3, 6}});
    std::vector<Edge> edges(prism.edges());
    auto noise = gen_gnp(24, 3, Seed{5});
    for (auto [u, v] : noise.edges()) edges.push_back({u + 6, v + 6});
    auto host = Graph::from_edges(30, std::move(edges));
    auto plant = adversary_menu("ra-forge", host, 3, Seed{3});
    EXPECT_TRUE(plant.is_total());
    auto sizes = plant.class_sizes();
    EXPECT_EQ(sizes[1] + sizes[2] + sizes[3], 30);
}

TEST(Experiment, ValidationRejectsBadConfigs) {
    auto cfg = tiny_config();
    cfg.num_seeds = 0;
    EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
    cfg = tiny_config();
    cfg.n_sweep.clear();
    EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
    cfg = tiny_config();
    cfg.model = Model::RA;
    EXPECT_THROW(run_experiment(cfg), std::invalid_argument);  // adversaries missing
}

TEST(Experiment, SingleCellRunsAndVerifies) {
    auto cfg = tiny_config();
    cfg.n_sweep = {60};
    cfg.d_sweep = {20};
    auto res = run_experiment(cfg);
    ASSERT_EQ(res.cells.size(), 1u);
    // d=20 sits below the reliable regime; the row exists either way and the
    // csv has the full schema
    EXPECT_EQ(res.csv.substr(0, 10), std::string("model,algo"));
    EXPECT_EQ(std::count(res.csv.begin(), res.csv.end(), '\n'), 2);
}

TEST(Experiment, DeterministicAcrossRunsAndWorkerCounts) {
    ExperimentConfig cfg;
    cfg.model = Model::RR;
    cfg.n_sweep = {120, 150};
    cfg.d_sweep = {40};
    cfg.algo = "ar";
    cfg.num_seeds = 3;
    cfg.master_seed = 99;
    auto a = run_experiment(cfg);
    auto b = run_experiment(cfg);
    EXPECT_EQ(a.csv, b.csv);
    cfg.workers = 2;
    auto c = run_experiment(cfg);
    EXPECT_EQ(a.csv, c.csv);
    cfg.master_seed = 100;
    auto d = run_experiment(cfg);
    EXPECT_NE(a.csv, d.csv);
}

TEST(Experiment, CompleteRowsAreLegalAndAdversarialModelsRun) {
    ExperimentConfig cfg;
    cfg.model = Model::RA;
    cfg.n_sweep = {150};
    cfg.d_sweep = {70};
    cfg.algo = "ra";
    cfg.num_seeds = 2;
    cfg.adversaries = {"id-blocks", "degree-sorted"};
    cfg.master_seed = 5;
    auto res = run_experiment(cfg);
    ASSERT_EQ(res.cells.size(), 4u);
    for (const auto& cell : res.cells) {
        EXPECT_TRUE(cell.fail_stage.substr(0, 5) != "error") << cell.fail_stage;
        if (cell.complete) EXPECT_TRUE(cell.legal);
    }
}

TEST(Experiment, SpectrumAlgoFillsReportColumns) {
    ExperimentConfig cfg;
    cfg.model = Model::AR;
    cfg.n_sweep = {240};
    cfg.d_sweep = {40};
    cfg.algo = "spectrum";
    cfg.num_seeds = 2;
    cfg.master_seed = 3;
    auto res = run_experiment(cfg);
    for (const auto& cell : res.cells) {
        EXPECT_GT(cell.lam1, 0);
        EXPECT_LT(cell.lam_n, 0);
        EXPECT_GT(cell.lam_host, 0);
    }
}

TEST(Experiment, FilesWrittenByteStable) {
    auto dir = std::filesystem::temp_directory_path() / "hkc_test_exp";
    std::filesystem::remove_all(dir);
    auto cfg = tiny_config();
    cfg.out_dir = dir;
    run_experiment(cfg);
    auto csv1 = io::read_file(dir / "results.csv");
    run_experiment(cfg);
    auto csv2 = io::read_file(dir / "results.csv");
    EXPECT_EQ(csv1, csv2);
    EXPECT_TRUE(std::filesystem::exists(dir / "summary.json"));
    std::filesystem::remove_all(dir);
}

TEST(InstanceBundle, RoundTrip) {
    auto dir = std::filesystem::temp_directory_path() / "hkc_test_bundle";
    std::filesystem::remove_all(dir);
    auto inst = make_instance(Model::RR, 40, 3, 10, std::nullopt, std::nullopt, Seed{77});
    write_instance_bundle(dir, inst);
    auto back = read_instance_bundle(dir);
    EXPECT_EQ(back.host, inst.host);
    EXPECT_EQ(back.result, inst.result);
    EXPECT_EQ(back.planted.assign, inst.planted.assign);
    EXPECT_EQ(back.params.seed.key, inst.params.seed.key);

    // byte-identical on rewrite
    auto meta1 = io::read_file(dir / "meta.json");
    write_instance_bundle(dir, inst);
    EXPECT_EQ(io::read_file(dir / "meta.json"), meta1);
    std::filesystem::remove_all(dir);
}

TEST(VerifyFiles, ExitSemantics) {
    auto dir = std::filesystem::temp_directory_path() / "hkc_test_verify";
    std::filesystem::create_directories(dir);
    auto k3 = Graph::complete(3);
    io::write_file(dir / "g.graph", io::graph_to_string(k3));
    io::write_file(dir / "good.coloring", io::coloring_to_string(Coloring(3, {1, 2, 3})));
    io::write_file(dir / "bad.coloring", io::coloring_to_string(Coloring(3, {1, 1, 1})));
    EXPECT_TRUE(verify_files(dir / "g.graph", dir / "good.coloring").legal);
    auto bad = verify_files(dir / "g.graph", dir / "bad.coloring");
    EXPECT_FALSE(bad.legal);
    EXPECT_EQ(bad.violations.size(), 3u);
    io::write_file(dir / "short.coloring", "1 1\n2 2\n");
    EXPECT_THROW(verify_files(dir / "g.graph", dir / "short.coloring"), std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST(ConfigJson, ParsesSweepsAndParams) {
    auto j = ordered_json::parse(R"({
        "model": "RA", "host": "gnp", "n": [100, 200], "d": 50,
        "algo": "ra", "num_seeds": 4, "adversaries": ["id-blocks"],
        "seed": 42, "workers": 2,
        "params": {"eps": 0.1, "cluster_constant": 2.0, "component_cap": 9}
    })");
    auto cfg = experiment_config_from_json(j);
    EXPECT_EQ(cfg.model, Model::RA);
    EXPECT_EQ(cfg.n_sweep, (std::vector<int>{100, 200}));
    EXPECT_EQ(cfg.d_sweep, (std::vector<double>{50}));
    EXPECT_EQ(cfg.num_seeds, 4);
    EXPECT_EQ(cfg.master_seed, 42u);
    EXPECT_DOUBLE_EQ(cfg.params.eps, 0.1);
    EXPECT_DOUBLE_EQ(cfg.params.cluster_constant, 2.0);
    EXPECT_EQ(cfg.params.component_cap, 9);
}
