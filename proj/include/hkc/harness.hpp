#pragma once

#include <atomic>
#include <filesystem>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "hkc/forge.hpp"
#include "hkc/io.hpp"
#include "hkc/pipeline.hpp"

namespace hkc {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kGeneratorVersion = "1";
inline constexpr const char* kSeedEnvVar = "HKC_SEED";

// ---------------------------------------------------------------- bundles

inline void write_instance_bundle(const std::filesystem::path& dir, const PlantedInstance& inst) {
    std::filesystem::create_directories(dir);
    io::write_file(dir / "host.graph", io::graph_to_string(inst.host));
    io::write_file(dir / "result.graph", io::graph_to_string(inst.result));
    io::write_file(dir / "planted.coloring", io::coloring_to_string(inst.planted));
    ordered_json meta;
    meta["model"] = to_string(inst.params.model);
    meta["n"] = inst.params.n;
    meta["k"] = inst.params.k;
    meta["d"] = inst.params.d;
    meta["seed"] = inst.params.seed.key;
    meta["generator_version"] = kGeneratorVersion;
    io::write_file(dir / "meta.json", meta.dump(2) + "\n");
}

inline PlantedInstance read_instance_bundle(const std::filesystem::path& dir) {
    auto meta = ordered_json::parse(io::read_file(dir / "meta.json"));
    PlantedInstance inst;
    inst.host = io::read_graph(dir / "host.graph");
    inst.result = io::read_graph(dir / "result.graph");
    inst.planted = io::read_coloring(dir / "planted.coloring", meta["k"].get<int>());
    inst.params.model = model_from_string(meta["model"].get<std::string>());
    inst.params.n = meta["n"].get<int>();
    inst.params.k = meta["k"].get<int>();
    inst.params.d = meta["d"].get<double>();
    inst.params.seed = Seed{meta["seed"].get<uint64_t>()};
    return inst;
}

// ---------------------------------------------------------- adversary menu

// Named balanced-partition strategies playing the planting adversary.
inline Coloring adversary_menu(const std::string& name, const Graph& host, int k, Seed seed) {
    int n = host.n();
    auto class_of_rank = [&](int rank) {  // balanced sizes, larger classes first
        int base = n / k, extra = n % k;
        int c = 0, acc = 0;
        while (true) {
            int sz = base + (c < extra ? 1 : 0);
            if (rank < acc + sz) return c + 1;
            acc += sz;
            ++c;
        }
    };
    if (name == "random-balanced") return balanced_random_partition(n, k, seed);
    if (name == "id-blocks") {
        std::vector<int> assign(n);
        for (int i = 0; i < n; ++i) assign[i] = class_of_rank(i);
        return Coloring(k, std::move(assign));
    }
    if (name == "stripes") {
        std::vector<int> assign(n);
        for (int i = 0; i < n; ++i) assign[i] = i % k + 1;
        return Coloring(k, std::move(assign));
    }
    if (name == "degree-sorted") {
        std::vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), 1);
        std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
            return host.degree(a) > host.degree(b);
        });
        std::vector<int> assign(n);
        for (int i = 0; i < n; ++i) assign[order[i] - 1] = i % k + 1;  // round-robin
        return Coloring(k, std::move(assign));
    }
    if (name == "spectral-correlated") {
        auto sd = extreme_eigenpairs(host, 1, 0, 1e-6);
        std::vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), 1);
        std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
            return sd.vectors(a - 1, 0) < sd.vectors(b - 1, 0);
        });
        std::vector<int> assign(n);
        for (int i = 0; i < n; ++i) assign[order[i] - 1] = class_of_rank(i);
        return Coloring(k, std::move(assign));
    }
    if (name == "ra-forge") {
        // prism graph as the planted NP-hard kernel
        Graph prism = Graph::from_edges(6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6},
                                            {1, 4}, {2, 5}, {3, 6}});
        auto r = forge_RA_adversary(host, prism, seed);
        if (std::holds_alternative<ForgeFail>(r))
            return balanced_random_partition(n, k, seed.derive("fallback"));
        return std::get<AdversaryPlanting>(r).planting;
    }
    throw std::invalid_argument("adversary_menu: unknown strategy '" + name + "'");
}

// ------------------------------------------------------------- experiment

struct ExperimentConfig {
    Model model = Model::RR;
    std::optional<HostKind> host_kind;  // default: Regular for H_A, Gnp for H_R
    std::vector<int> n_sweep;
    std::vector<double> d_sweep;
    std::vector<int> k_sweep{3};
    std::string algo = "ar";  // ar | ra | kcluster | spectrum
    PipelineParams params;
    int num_seeds = 1;
    std::vector<std::string> adversaries;  // P_A models; ignored otherwise
    std::filesystem::path out_dir;
    bool record_timings = false;
    uint64_t master_seed = 0;
    int workers = 1;

    void validate() const {
        if (n_sweep.empty() || d_sweep.empty() || k_sweep.empty())
            throw std::invalid_argument("experiment config: empty sweep");
        if (num_seeds < 1) throw std::invalid_argument("experiment config: num_seeds must be >= 1");
        bool plant_adv = model == Model::AA || model == Model::RA;
        if (plant_adv && adversaries.empty())
            throw std::invalid_argument("experiment config: adversarial planting needs adversaries");
        if (workers < 1) throw std::invalid_argument("experiment config: workers must be >= 1");
    }
    HostKind effective_host_kind() const {
        if (host_kind) return *host_kind;
        return (model == Model::AA || model == Model::AR) ? HostKind::Regular : HostKind::Gnp;
    }
};

struct ExperimentCell {
    int index = 0;
    Model model = Model::RR;
    std::string algo;
    int n = 0;
    double d = 0;
    int k = 3;
    uint64_t seed = 0;
    std::string adversary;
    bool legal = false;
    bool complete = false;
    long long b = -1;
    long long sb = -1;
    long long dist = -1;
    double lam1 = 0, lam_n1 = 0, lam_n = 0, max_middle = 0, lam_host = 0;
    bool spec_ok = false;
    std::string fail_stage;
    double t_total_ms = 0;
    std::array<double, 5> t_stage_ms{};
};

namespace detail {

inline std::string csv_num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

inline std::string cell_csv_row(const ExperimentCell& c) {
    std::ostringstream o;
    o << to_string(c.model) << ',' << c.algo << ',' << c.n << ',' << csv_num(c.d) << ',' << c.k
      << ',' << c.seed << ',' << c.adversary << ',' << (c.legal ? 1 : 0) << ','
      << (c.complete ? 1 : 0) << ',' << c.b << ',' << c.sb << ',' << c.dist << ','
      << csv_num(c.lam1) << ',' << csv_num(c.lam_n1) << ',' << csv_num(c.lam_n) << ','
      << csv_num(c.max_middle) << ',' << csv_num(c.lam_host) << ',' << (c.spec_ok ? 1 : 0) << ','
      << c.fail_stage << ',' << csv_num(c.t_total_ms);
    for (double t : c.t_stage_ms) o << ',' << csv_num(t);
    o << '\n';
    return o.str();
}

inline const char* kCsvHeader =
    "model,algo,n,d,k,seed,adversary,legal,complete,b,sb,dist,lam1,lam_n1,lam_n,max_middle,"
    "lam_host,spec_ok,fail_stage,t_total_ms,t_stage1_ms,t_stage2_ms,t_stage3_ms,t_stage4_ms,"
    "t_stage5_ms\n";

}  // namespace detail

// Runs one resolved cell: generate the instance deterministically, run the
// selected algorithm, verify, fill the outcome row.
inline ExperimentCell run_cell(const ExperimentConfig& cfg, int index, int n, double d, int k,
                               const std::string& adversary) {
    ExperimentCell cell;
    cell.index = index;
    cell.model = cfg.model;
    cell.algo = cfg.algo;
    cell.n = n;
    cell.d = d;
    cell.k = k;
    cell.adversary = adversary;
    Seed cell_seed = Seed{cfg.master_seed}.derive("cell").derive((uint64_t)index);
    cell.seed = cell_seed.key;
    auto t0 = std::chrono::steady_clock::now();
    try {
        Graph host = cfg.effective_host_kind() == HostKind::Gnp
                         ? gen_gnp(n, d, cell_seed.derive("host"))
                         : gen_random_regular(n, (int)std::llround(d), cell_seed.derive("host"));
        bool plant_adv = cfg.model == Model::AA || cfg.model == Model::RA;
        Coloring planted = plant_adv
                               ? adversary_menu(adversary, host, k, cell_seed.derive("adversary"))
                               : balanced_random_partition(n, k, cell_seed.derive("plant"));
        InstanceParams ip;
        ip.model = cfg.model;
        ip.seed = cell_seed;
        ip.d = d;
        PlantedInstance inst = apply_planting(host, planted, ip);

        PipelineParams params = cfg.params;
        params.k = k;
        if (cfg.algo == "ar" || cfg.algo == "ra") {
            ColorOutcome ar;
            RAOutcome ra;
            const StageTrace* trace;
            const Coloring* final_coloring;
            if (cfg.algo == "ar") {
                ar = color_AR(inst.result, d, params, cell_seed.derive("algo"), &inst.planted);
                trace = &ar.trace;
                final_coloring = &ar.coloring;
                cell.complete = ar.success;
                cell.fail_stage = ar.failure_stage;
            } else {
                ra = color_RA(inst.result, d, params, cell_seed.derive("algo"), &inst.planted);
                trace = &ra.trace;
                final_coloring = &ra.coloring;
                cell.complete = ra.complete;
            }
            auto legality = is_legal_coloring(inst.result, *final_coloring);
            cell.legal = legality.legal;
            if (cell.complete && (!final_coloring->is_total() || !cell.legal))
                throw std::logic_error("complete outcome failed re-verification");
            if (trace->stages[2].n() == inst.result.n())
                cell.b = inst.result.n() - trace->stages[2].num_colored();
            cell.sb = (long long)compute_SB(inst, params.effective_eps(d)).size();
            cell.dist = final_coloring->is_total()
                            ? approx_distance(*final_coloring, inst.planted, k)
                            : partial_disagreement(*final_coloring, inst.planted);
            for (int s = 0; s < 5; ++s) cell.t_stage_ms[s] = trace->stage_ms[s];
        } else if (cfg.algo == "kcluster") {
            auto res = spectral_k_clustering(inst.result, k, params, cell_seed.derive("algo"), d);
            cell.complete = res.coloring.has_value();
            if (res.coloring) {
                cell.legal = is_legal_coloring(inst.result, *res.coloring).legal;
                cell.dist = approx_distance(*res.coloring, inst.planted, k);
            }
        } else if (cfg.algo == "spectrum") {
            auto mode = plant_adv ? PlantingMode::AdversarialPlanting : PlantingMode::RandomPlanting;
            auto rep = validate_planted_spectrum(inst, mode);
            cell.lam1 = rep.lam1;
            cell.lam_n1 = rep.lam_n1;
            cell.lam_n = rep.lam_n;
            cell.max_middle = rep.max_middle;
            cell.lam_host = rep.lam_host;
            cell.spec_ok = rep.all_ok;
            cell.legal = rep.all_ok;
            cell.complete = rep.all_ok;
            cell.sb = (long long)compute_SB(inst, params.effective_eps(d)).size();
        } else {
            throw std::invalid_argument("unknown algo: " + cfg.algo);
        }
    } catch (const std::exception& e) {
        cell.fail_stage = std::string("error: ") + e.what();
        cell.legal = false;
        cell.complete = false;
    }
    cell.t_total_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return cell;
}

struct ExperimentResult {
    std::vector<ExperimentCell> cells;
    std::string csv;
    ordered_json summary;
};

// Deterministic seeded sweep; cells run concurrently, rows are emitted in
// cell-index order so the worker count never changes the output.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    struct Spec {
        int n;
        double d;
        int k;
        std::string adversary;
        int seed_index;
    };
    std::vector<Spec> specs;
    bool plant_adv = cfg.model == Model::AA || cfg.model == Model::RA;
    std::vector<std::string> advs = plant_adv ? cfg.adversaries : std::vector<std::string>{""};
    for (int n : cfg.n_sweep)
        for (double d : cfg.d_sweep)
            for (int k : cfg.k_sweep)
                for (const auto& adv : advs)
                    for (int s = 0; s < cfg.num_seeds; ++s) specs.push_back({n, d, k, adv, s});

    ExperimentResult result;
    result.cells.resize(specs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= specs.size()) break;
            const auto& s = specs[i];
            result.cells[i] = run_cell(cfg, (int)i, s.n, s.d, s.k, s.adversary);
        }
    };
    if (cfg.workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::ostringstream csv;
    csv << detail::kCsvHeader;
    for (auto cell : result.cells) {
        if (!cfg.record_timings) {
            cell.t_total_ms = 0;
            cell.t_stage_ms = {};
        }
        csv << detail::cell_csv_row(cell);
    }
    result.csv = csv.str();

    // success rates per sweep point
    ordered_json points = ordered_json::array();
    for (int n : cfg.n_sweep)
        for (double d : cfg.d_sweep)
            for (int k : cfg.k_sweep) {
                int total = 0, legal = 0, complete = 0;
                double mean_b = 0, mean_dist = 0;
                int b_count = 0, dist_count = 0;
                for (const auto& c : result.cells) {
                    if (c.n != n || c.d != d || c.k != k) continue;
                    ++total;
                    legal += c.legal;
                    complete += c.complete;
                    if (c.b >= 0) {
                        mean_b += (double)c.b;
                        ++b_count;
                    }
                    if (c.dist >= 0) {
                        mean_dist += (double)c.dist;
                        ++dist_count;
                    }
                }
                ordered_json p;
                p["n"] = n;
                p["d"] = d;
                p["k"] = k;
                p["cells"] = total;
                p["legal_rate"] = total ? (double)legal / total : 0.0;
                p["complete_rate"] = total ? (double)complete / total : 0.0;
                if (b_count) p["mean_b"] = mean_b / b_count;
                if (dist_count) p["mean_dist"] = mean_dist / dist_count;
                points.push_back(p);
            }
    result.summary["model"] = to_string(cfg.model);
    result.summary["algo"] = cfg.algo;
    result.summary["master_seed"] = cfg.master_seed;
    result.summary["points"] = points;

    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        io::write_file(cfg.out_dir / "results.csv", result.csv);
        io::write_file(cfg.out_dir / "summary.json", result.summary.dump(2) + "\n");
    }
    return result;
}

// -------------------------------------------------------------- verifier

struct VerifyResult {
    bool legal = false;
    std::vector<Edge> violations;
};

inline VerifyResult verify_files(const std::filesystem::path& graph_file,
                                 const std::filesystem::path& coloring_file) {
    Graph g = io::read_graph(graph_file);
    Coloring c = io::read_coloring(coloring_file);
    if (c.n() != g.n())
        throw std::runtime_error("verify: coloring has " + std::to_string(c.n()) +
                                 " vertices but graph has " + std::to_string(g.n()));
    auto rep = is_legal_coloring(g, c);
    return {rep.legal, rep.violations};
}

// ------------------------------------------------------- config ingestion

inline PipelineParams pipeline_params_from_json(const ordered_json& j) {
    PipelineParams p;
    if (j.contains("eps")) p.eps = j["eps"].get<double>();
    if (j.contains("cluster_constant")) p.cluster_constant = j["cluster_constant"].get<double>();
    if (j.contains("cluster_size_slack"))
        p.cluster_size_slack = j["cluster_size_slack"].get<double>();
    if (j.contains("coverage_slack")) p.coverage_slack = j["coverage_slack"].get<double>();
    if (j.contains("recolor_rounds_factor"))
        p.recolor_rounds_factor = j["recolor_rounds_factor"].get<double>();
    if (j.contains("recolor_rounds_cap")) p.recolor_rounds_cap = j["recolor_rounds_cap"].get<int>();
    if (j.contains("component_cap")) p.component_cap = j["component_cap"].get<int>();
    if (j.contains("triplet_attempt_cap"))
        p.triplet_attempt_cap = j["triplet_attempt_cap"].get<int>();
    if (j.contains("k")) p.k = j["k"].get<int>();
    if (j.contains("exhaustive_triplets")) p.exhaustive_triplets = j["exhaustive_triplets"].get<bool>();
    if (j.contains("kcluster_c1")) p.kcluster_c1 = j["kcluster_c1"].get<double>();
    if (j.contains("kcluster_c2")) p.kcluster_c2 = j["kcluster_c2"].get<double>();
    if (j.contains("kcluster_exponent")) p.kcluster_exponent = j["kcluster_exponent"].get<double>();
    return p;
}

inline ExperimentConfig experiment_config_from_json(const ordered_json& j) {
    ExperimentConfig cfg;
    if (j.contains("model")) cfg.model = model_from_string(j["model"].get<std::string>());
    if (j.contains("host")) {
        std::string h = j["host"].get<std::string>();
        if (h == "gnp") cfg.host_kind = HostKind::Gnp;
        else if (h == "regular") cfg.host_kind = HostKind::Regular;
        else throw std::invalid_argument("config: host must be gnp or regular");
    }
    auto read_list = [&](const char* key, auto& out) {
        if (!j.contains(key)) return;
        using T = typename std::decay_t<decltype(out)>::value_type;
        if (j[key].is_array())
            for (const auto& x : j[key]) out.push_back(x.get<T>());
        else
            out.push_back(j[key].get<T>());
    };
    read_list("n", cfg.n_sweep);
    read_list("d", cfg.d_sweep);
    cfg.k_sweep.clear();
    read_list("k", cfg.k_sweep);
    if (cfg.k_sweep.empty()) cfg.k_sweep.push_back(3);
    if (j.contains("algo")) cfg.algo = j["algo"].get<std::string>();
    if (j.contains("params")) cfg.params = pipeline_params_from_json(j["params"]);
    if (j.contains("num_seeds")) cfg.num_seeds = j["num_seeds"].get<int>();
    if (j.contains("adversaries"))
        for (const auto& a : j["adversaries"]) cfg.adversaries.push_back(a.get<std::string>());
    if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
    if (j.contains("timings")) cfg.record_timings = j["timings"].get<bool>();
    if (j.contains("seed")) cfg.master_seed = j["seed"].get<uint64_t>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
    return cfg;
}

}  // namespace hkc
