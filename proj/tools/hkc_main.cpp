// Command line front end: generators, coloring pipeline, verification,
// spectral reports, hardness forge and the batch experiment driver.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "hkc/harness.hpp"

namespace {

using namespace hkc;

std::optional<uint64_t> env_seed() {
    if (const char* env = std::getenv(kSeedEnvVar)) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return (uint64_t)v;
        std::cerr << "warning: ignoring malformed " << kSeedEnvVar << "\n";
    }
    return std::nullopt;
}

VertexSet read_vertex_set(const std::string& path) {
    std::istringstream in(io::read_file(path));
    std::vector<Vertex> ids;
    Vertex v;
    while (in >> v) ids.push_back(v);
    return VertexSet(std::move(ids));
}

PipelineParams load_params(const std::string& path) {
    if (path.empty()) return {};
    return pipeline_params_from_json(ordered_json::parse(io::read_file(path)));
}

ordered_json trace_json(const StageTrace& trace, bool planted_known) {
    ordered_json j;
    j["clustering_failed"] = trace.clustering_failed;
    j["cluster_attempts"] = trace.cluster_attempts;
    ordered_json stages = ordered_json::array();
    static const char* names[5] = {"clustering", "recoloring", "uncoloring", "safe-recoloring",
                                   "completion"};
    for (int s = 0; s < 5; ++s) {
        ordered_json e;
        e["stage"] = names[s];
        e["ms"] = trace.stage_ms[s];
        if (planted_known) e["planted_disagreement"] = trace.planted_disagreement[s];
        if (trace.stages[s].n() > 0)
            e["free"] = trace.stages[s].n() - trace.stages[s].num_colored();
        stages.push_back(e);
    }
    j["stages"] = stages;
    return j;
}

int cmd_gen(const std::string& model_str, const std::string& host_kind_str, int n, double d, int k,
            const std::string& host_file, const std::string& plant_file,
            const std::string& adversary, bool plant_iid, uint64_t seed, const std::string& out) {
    Model model = model_from_string(model_str);
    bool host_adv = model == Model::AA || model == Model::AR;
    bool plant_adv = model == Model::AA || model == Model::RA;
    HostKind kind = host_kind_str == "regular"
                        ? HostKind::Regular
                        : (host_kind_str == "gnp" ? HostKind::Gnp
                                                  : (host_adv ? HostKind::Regular : HostKind::Gnp));
    std::optional<Graph> host;
    if (!host_file.empty()) {
        host = io::read_graph(host_file);
    } else if (host_adv) {
        // materialize the adversarial expander as a generated regular graph
        host = kind == HostKind::Regular
                   ? gen_random_regular(n, (int)std::llround(d), Seed{seed}.derive("host"))
                   : gen_gnp(n, d, Seed{seed}.derive("host"));
    }
    std::optional<Coloring> plant;
    if (!plant_file.empty()) {
        plant = io::read_coloring(plant_file, k);
    } else if (plant_adv && !adversary.empty()) {
        // menu adversaries need to see the host, so generate a random host
        // here when the model's host axis is random
        Graph menu_host = host ? *host
                               : (kind == HostKind::Regular
                                      ? gen_random_regular(n, (int)std::llround(d),
                                                           Seed{seed}.derive("host"))
                                      : gen_gnp(n, d, Seed{seed}.derive("host")));
        Coloring menu_plant =
            adversary_menu(adversary, menu_host, k, Seed{seed}.derive("adversary"));
        InstanceParams ip;
        ip.model = model;
        ip.seed = Seed{seed};
        ip.d = d;
        auto inst = apply_planting(menu_host, menu_plant, ip);
        write_instance_bundle(out, inst);
        std::cout << "wrote instance bundle to " << out << " (n=" << inst.params.n
                  << ", host edges=" << inst.host.m() << ", result edges=" << inst.result.m()
                  << ")\n";
        return 0;
    } else if (plant_adv) {
        throw std::runtime_error("gen: adversarial planting needs --plant-file or --adversary");
    }
    MakeInstanceOptions opts;
    opts.host_kind = kind;
    opts.balanced_planting = !plant_iid;
    auto inst = make_instance(model, n, k, d, host, plant, Seed{seed}, opts);
    write_instance_bundle(out, inst);
    std::cout << "wrote instance bundle to " << out << " (n=" << inst.params.n
              << ", host edges=" << inst.host.m() << ", result edges=" << inst.result.m() << ")\n";
    return 0;
}

int cmd_plant(const std::string& host_file, const std::string& plant_file,
              const std::string& model_str, const std::string& out) {
    Graph host = io::read_graph(host_file);
    Coloring plant = io::read_coloring(plant_file);
    InstanceParams ip;
    ip.model = model_from_string(model_str);
    auto inst = apply_planting(host, plant, ip);
    write_instance_bundle(out, inst);
    std::cout << "wrote instance bundle to " << out << "\n";
    return 0;
}

int cmd_color(const std::string& algo, const std::string& graph_file,
              const std::string& planted_file, double d, int k, const std::string& params_file,
              uint64_t seed, const std::string& out) {
    Graph g = io::read_graph(graph_file);
    std::optional<Coloring> planted;
    if (!planted_file.empty()) planted = io::read_coloring(planted_file, 3);
    PipelineParams params = load_params(params_file);
    std::filesystem::path outdir = out.empty() ? "." : out;
    std::filesystem::create_directories(outdir);

    ordered_json report;
    report["algo"] = algo;
    Coloring result;
    if (algo == "ar") {
        auto outc = color_AR(g, d, params, Seed{seed}, planted ? &*planted : nullptr);
        result = outc.coloring;
        report["success"] = outc.success;
        if (!outc.success) report["failure_stage"] = outc.failure_stage;
        report["trace"] = trace_json(outc.trace, planted.has_value());
    } else if (algo == "ra") {
        auto outc = color_RA(g, d, params, Seed{seed}, planted ? &*planted : nullptr);
        result = outc.coloring;
        report["complete"] = outc.complete;
        report["guesses_tried"] = outc.guesses_tried;
        report["trace"] = trace_json(outc.trace, planted.has_value());
    } else if (algo == "k-cluster") {
        auto res = spectral_k_clustering(g, k, params, Seed{seed}, d);
        report["accepted"] = res.coloring.has_value();
        report["attempts"] = res.attempts;
        if (!res.coloring) {
            io::write_file(outdir / "color_report.json", report.dump(2) + "\n");
            std::cout << "clustering failed after " << res.attempts << " attempts\n";
            return 1;
        }
        result = *res.coloring;
    } else if (algo == "sparse3") {
        auto res = sparse_3_color(g);
        if (std::holds_alternative<NotThreeColorable>(res)) {
            report["three_colorable"] = false;
            ordered_json w = ordered_json::array();
            for (Vertex v : std::get<NotThreeColorable>(res).k4_witness) w.push_back(v);
            report["k4_witness"] = w;
            io::write_file(outdir / "color_report.json", report.dump(2) + "\n");
            std::cout << "not 3-colorable (K4 core component)\n";
            return 1;
        }
        result = std::get<Coloring>(res);
        report["three_colorable"] = true;
    } else {
        std::cerr << "unknown --algo " << algo << "\n";
        return 2;
    }

    auto legality = is_legal_coloring(g, result);
    report["legal"] = legality.legal;
    report["total"] = result.is_total();
    report["free"] = result.n() - result.num_colored();
    if (algo == "ar" || algo == "ra") {
        const auto& uncolored_stage = report["trace"]["stages"][2];
        if (uncolored_stage.contains("free")) report["b"] = uncolored_stage["free"];
    }
    if (planted) {
        InstanceParams ip;
        ip.d = d > 0 ? d : estimate_host_degree(g);
        PlantedInstance inst;
        inst.host = g;  // SB against the visible graph when the host is unknown
        inst.result = g;
        inst.planted = *planted;
        inst.params = ip;
        report["sb"] = (long long)compute_SB(inst, params.effective_eps(ip.d)).size();
        if (result.is_total()) report["distance_to_planted"] = approx_distance(result, *planted, 3);
    }
    io::write_file(outdir / "coloring.out", io::coloring_to_string(result));
    io::write_file(outdir / "color_report.json", report.dump(2) + "\n");
    std::cout << (legality.legal ? "legal" : "NOT legal") << ", "
              << (result.is_total() ? "total" : "partial") << "; wrote " << (outdir / "coloring.out")
              << "\n";
    return legality.legal ? 0 : 1;
}

int cmd_verify(const std::string& graph_file, const std::string& coloring_file) {
    auto res = verify_files(graph_file, coloring_file);
    if (res.legal) {
        std::cout << "legal\n";
        return 0;
    }
    std::cout << res.violations.size() << " monochromatic edge(s):\n";
    for (auto [u, v] : res.violations) std::cout << "  " << u << " " << v << "\n";
    return 1;
}

int cmd_spectrum(const std::string& graph_file, int num_low, int num_high, bool dense,
                 const std::string& s_file, const std::string& t_file, int mixing_d, double tol,
                 const std::string& out) {
    Graph g = io::read_graph(graph_file);
    ordered_json rep;
    rep["n"] = g.n();
    rep["m"] = g.m();
    SpectralDecomposition sd;
    if (dense || g.n() <= 64) {
        sd = full_spectrum_dense(g);
    } else {
        sd = extreme_eigenpairs(g, num_low, num_high, tol);
    }
    ordered_json vals = ordered_json::array();
    detail::Csr csr(g);
    Eigen::VectorXd ax(g.n());
    ordered_json resids = ordered_json::array();
    for (int i = 0; i < sd.count(); ++i) {
        vals.push_back(sd.values[i]);
        csr.apply(sd.vectors.col(i), ax);
        resids.push_back((ax - sd.values[i] * sd.vectors.col(i)).norm());
    }
    rep["eigenvalues"] = vals;
    rep["residuals"] = resids;
    if (g.n() >= 2) rep["lambda_hat"] = lambda_expansion(g, tol);
    if (!s_file.empty() && !t_file.empty()) {
        int d = mixing_d > 0 ? mixing_d : (int)std::llround(g.average_degree());
        auto chk = mixing_discrepancy(g, read_vertex_set(s_file), read_vertex_set(t_file), d);
        ordered_json mj;
        mj["lhs"] = chk.lhs;
        mj["rhs"] = chk.rhs;
        mj["holds"] = chk.holds;
        rep["mixing"] = mj;
    }
    std::string text = rep.dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else {
        io::write_file(out, text);
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

ordered_json gadget_json(const Gadget& g) {
    ordered_json j;
    j["vertices"] = g.graph.n();
    j["edges"] = g.graph.m();
    ordered_json ports = ordered_json::array();
    for (Vertex p : g.ports) ports.push_back(p);
    j["ports"] = ports;
    j["ports_equal_certified"] = g.ports_equal_certified;
    j["num_3colorings"] = g.num_3colorings;
    j["max_subgraph_density"] = g.max_subgraph_density.value();
    return j;
}

int cmd_forge_reduce(const std::string& graph_file, const std::string& out) {
    Graph h4 = io::read_graph(graph_file);
    auto red = reduce_4regular_to_balanced(h4);
    std::filesystem::path dir = out;
    std::filesystem::create_directories(dir);
    io::write_file(dir / "reduced.graph", io::graph_to_string(red.graph));
    ordered_json cert;
    cert["input_n"] = h4.n();
    cert["output_n"] = red.graph.n();
    cert["output_m"] = red.graph.m();
    cert["average_degree"] = red.average_degree;
    cert["max_density"] = red.max_density.value();
    cert["balanced"] = red.balanced;
    cert["diamond"] = gadget_json(diamond_gadget());
    if (red.checked_equivalence) {
        cert["h4_colorable"] = red.h4_colorable;
        cert["r_colorable"] = red.r_colorable;
        cert["equivalent"] = red.h4_colorable == red.r_colorable;
        if (red.r_colorable) cert["decode_legal"] = red.decode_legal;
    }
    ordered_json ports = ordered_json::array();
    for (const auto& pm : red.port_map) {
        ordered_json row = ordered_json::array();
        for (Vertex p : pm) row.push_back(p);
        ports.push_back(row);
    }
    cert["port_map"] = ports;
    io::write_file(dir / "certificate.json", cert.dump(2) + "\n");
    std::cout << "wrote reduction to " << dir << " (balanced=" << red.balanced << ")\n";
    return red.balanced ? 0 : 1;
}

int cmd_forge_aa(const std::string& q_file, int n, int d, uint64_t seed, const std::string& out) {
    Graph q_base = q_file.empty() ? Graph::complete_multipartite({4, 4}) : io::read_graph(q_file);
    auto chi_base = find_k_coloring(q_base, 3);
    if (!chi_base) throw std::runtime_error("forge aa: base Q is not 3-colorable");
    Graph q = triple_copy(q_base);
    Coloring chi = rotated_triple_coloring(q_base, *chi_base);
    auto inst = forge_AA(q, n, d, Seed{seed}, chi);

    std::filesystem::path dir = out;
    std::filesystem::create_directories(dir);
    io::write_file(dir / "g.graph", io::graph_to_string(inst.g));
    io::write_file(dir / "host.graph", io::graph_to_string(*inst.certificate_host));
    io::write_file(dir / "planted.coloring", io::coloring_to_string(inst.full_planting));
    ordered_json cert;
    cert["n"] = inst.g.n();
    cert["q_n"] = inst.q.n();
    cert["connectors"] = (long long)inst.connectors.size();
    cert["host_regular_degree"] = d;
    cert["replay_ok"] = inst.replay_ok;
    cert["lambda_hat_host"] = inst.lam_hat_host;
    cert["lambda_hat_z"] = inst.lam_hat_z;
    cert["perturbation_ok"] = inst.perturbation_ok;
    io::write_file(dir / "certificate.json", cert.dump(2) + "\n");
    std::cout << "wrote AA instance to " << dir << " (replay_ok=" << inst.replay_ok << ")\n";
    return inst.replay_ok ? 0 : 1;
}

int cmd_forge_ra(const std::string& host_file, const std::string& q_file, bool k4, uint64_t seed,
                 const std::string& out) {
    Graph host = io::read_graph(host_file);
    Graph q = io::read_graph(q_file);
    auto res = k4 ? forge_k4_planting(host, q, Seed{seed})
                  : forge_RA_adversary(host, q, Seed{seed});
    std::filesystem::path dir = out;
    std::filesystem::create_directories(dir);
    ordered_json cert;
    cert["mode"] = k4 ? "k4" : "ra";
    if (std::holds_alternative<ForgeFail>(res)) {
        const auto& f = std::get<ForgeFail>(res);
        cert["fail_step"] = f.step;
        cert["fail_what"] = f.what;
        io::write_file(dir / "certificate.json", cert.dump(2) + "\n");
        std::cout << "adversary failed at step " << f.step << ": " << f.what << "\n";
        return 1;
    }
    const auto& adv = std::get<AdversaryPlanting>(res);
    const auto& plant = adv.planting;
    InstanceParams ip;
    ip.model = Model::RA;
    ip.seed = Seed{seed};
    auto inst = apply_planting(host, plant, ip);
    write_instance_bundle(dir, inst);
    cert["fail_step"] = "";
    cert["k"] = plant.k;
    auto sizes = plant.class_sizes();
    ordered_json sj = ordered_json::array();
    for (int c = 1; c <= plant.k; ++c) sj.push_back(sizes[c]);
    cert["class_sizes"] = sj;
    ordered_json cm = ordered_json::array();
    for (Vertex v : adv.copy) cm.push_back(v);
    cert["copy_map"] = cm;
    io::write_file(dir / "certificate.json", cert.dump(2) + "\n");
    std::cout << "wrote adversarial instance to " << dir << "\n";
    return 0;
}

int cmd_forge_embed(const std::string& q_file, const std::string& hprime_file, int block_size,
                    uint64_t seed, const std::string& out) {
    Graph q = io::read_graph(q_file);
    Graph hprime = io::read_graph(hprime_file);
    auto chi = find_k_coloring(q, 3);
    if (!chi) throw std::runtime_error("forge embed: Q is not 3-colorable");
    auto res = embed_Q_via_independent_blocks(q, hprime, block_size, Seed{seed}, *chi);
    std::filesystem::path dir = out;
    std::filesystem::create_directories(dir);
    ordered_json cert;
    cert["mode"] = "embed";
    if (std::holds_alternative<ForgeFail>(res)) {
        const auto& f = std::get<ForgeFail>(res);
        cert["fail_step"] = f.step;
        cert["fail_what"] = f.what;
        io::write_file(dir / "certificate.json", cert.dump(2) + "\n");
        std::cout << "embedding failed: " << f.step << "\n";
        return 1;
    }
    const auto& emb = std::get<EmbedOutput>(res);
    write_instance_bundle(dir, emb.instance);
    cert["fail_step"] = "";
    ordered_json map = ordered_json::array();
    for (Vertex v : emb.copy_map) map.push_back(v);
    cert["copy_map"] = map;
    io::write_file(dir / "certificate.json", cert.dump(2) + "\n");
    std::cout << "wrote embedded instance to " << dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hosted k-coloring toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    uint64_t seed = env_seed().value_or(0);
    std::string out_dir;
    int workers = 1;
    std::string params_file;
    app.add_option("--seed", seed, "master seed (decimal u64; env " + std::string(kSeedEnvVar) + ")");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--workers", workers, "worker threads for experiments");
    app.add_option("--params", params_file, "pipeline params JSON file");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a planted instance bundle");
    std::string g_model = "rr", g_host, g_host_file, g_plant_file, g_adversary;
    int g_n = 0, g_k = 3;
    double g_d = 0;
    bool g_plant_iid = false;
    gen->add_option("--model", g_model, "aa|ar|ra|rr");
    gen->add_option("--host", g_host, "gnp|regular (default: regular for aa/ar, gnp otherwise)");
    gen->add_option("-n", g_n, "vertex count");
    gen->add_option("-d", g_d, "host average degree");
    gen->add_option("-k", g_k, "colors");
    gen->add_option("--host-file", g_host_file, "host graph file (adversarial host)");
    gen->add_option("--plant-file", g_plant_file, "planting file (adversarial planting)");
    gen->add_option("--adversary", g_adversary,
                    "menu strategy for adversarial planting (id-blocks, stripes, degree-sorted, "
                    "spectral-correlated, random-balanced, ra-forge)");
    gen->add_flag("--plant-iid", g_plant_iid, "iid uniform planting instead of balanced");

    // plant
    auto* plant = app.add_subcommand("plant", "apply a planting to a host graph");
    std::string p_host, p_plant, p_model = "aa";
    plant->add_option("--host-file", p_host)->required();
    plant->add_option("--plant-file", p_plant)->required();
    plant->add_option("--model", p_model, "tag recorded in meta.json");

    // color
    auto* color = app.add_subcommand("color", "run a coloring algorithm on a graph file");
    std::string c_algo = "ar", c_graph, c_planted;
    double c_d = 0;
    int c_k = 3;
    color->add_option("--algo", c_algo, "ar|ra|k-cluster|sparse3");
    color->add_option("--graph", c_graph)->required();
    color->add_option("--planted", c_planted, "planted coloring file (diagnostics)");
    color->add_option("--d", c_d, "host average degree (estimated when absent)");
    color->add_option("--k", c_k, "colors for k-cluster");

    // verify
    auto* verify = app.add_subcommand("verify", "check a coloring file against a graph file");
    std::string v_graph, v_coloring;
    verify->add_option("graph", v_graph)->required();
    verify->add_option("coloring", v_coloring)->required();

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "eigenvalue report for a graph file");
    std::string s_graph, s_sfile, s_tfile, s_out;
    int s_low = 2, s_high = 2, s_mixd = 0;
    double s_tol = 1e-8;
    bool s_dense = false;
    spectrum->add_option("--graph", s_graph)->required();
    spectrum->add_option("--low", s_low, "most-negative eigenpairs");
    spectrum->add_option("--high", s_high, "largest eigenpairs");
    spectrum->add_flag("--dense", s_dense, "full dense decomposition");
    spectrum->add_option("--tol", s_tol, "residual tolerance");
    spectrum->add_option("--mixing-s", s_sfile, "vertex set file for the mixing check");
    spectrum->add_option("--mixing-t", s_tfile, "vertex set file for the mixing check");
    spectrum->add_option("--mixing-d", s_mixd, "regular degree for the mixing check");
    spectrum->add_option("--report", s_out, "write JSON report here instead of stdout");

    // forge
    auto* forge = app.add_subcommand("forge", "hardness constructions");
    forge->require_subcommand(1);
    auto* f_reduce = forge->add_subcommand("reduce", "4-regular -> balanced gadget reduction");
    std::string fr_graph;
    f_reduce->add_option("--graph", fr_graph)->required();
    auto* f_aa = forge->add_subcommand("aa", "A/A instance with certificate host");
    std::string fa_q;
    int fa_n = 600, fa_d = 24;
    f_aa->add_option("--q-file", fa_q, "base Q (triple-copied; default K_{4,4})");
    f_aa->add_option("-n", fa_n, "total vertices");
    f_aa->add_option("-d", fa_d, "host degree");
    auto* f_ra = forge->add_subcommand("ra", "R/A adversary planting");
    std::string fra_host, fra_q;
    f_ra->add_option("--host", fra_host)->required();
    f_ra->add_option("--q", fra_q)->required();
    auto* f_k4 = forge->add_subcommand("k4", "4-color adversary planting");
    std::string fk_host, fk_q;
    f_k4->add_option("--host", fk_host)->required();
    f_k4->add_option("--q", fk_q)->required();
    auto* f_embed = forge->add_subcommand("embed", "faithful-vertex block embedding");
    std::string fe_q, fe_h;
    int fe_block = 8;
    f_embed->add_option("--q", fe_q)->required();
    f_embed->add_option("--hprime", fe_h)->required();
    f_embed->add_option("--block-size", fe_block);

    // experiment
    auto* experiment = app.add_subcommand("experiment", "seeded batch experiment sweep");
    std::string e_config;
    experiment->add_option("--config", e_config, "experiment config JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen)
            return cmd_gen(g_model, g_host, g_n, g_d, g_k, g_host_file, g_plant_file, g_adversary,
                           g_plant_iid, seed, out_dir.empty() ? "instance" : out_dir);
        if (*plant)
            return cmd_plant(p_host, p_plant, p_model, out_dir.empty() ? "instance" : out_dir);
        if (*color)
            return cmd_color(c_algo, c_graph, c_planted, c_d, c_k, params_file, seed, out_dir);
        if (*verify) return cmd_verify(v_graph, v_coloring);
        if (*spectrum)
            return cmd_spectrum(s_graph, s_low, s_high, s_dense, s_sfile, s_tfile, s_mixd, s_tol,
                                s_out);
        if (*forge) {
            if (*f_reduce) return cmd_forge_reduce(fr_graph, out_dir.empty() ? "reduction" : out_dir);
            if (*f_aa) return cmd_forge_aa(fa_q, fa_n, fa_d, seed, out_dir.empty() ? "aa" : out_dir);
            if (*f_ra) return cmd_forge_ra(fra_host, fra_q, false, seed,
                                           out_dir.empty() ? "ra" : out_dir);
            if (*f_k4)
                return cmd_forge_ra(fk_host, fk_q, true, seed, out_dir.empty() ? "k4" : out_dir);
            if (*f_embed)
                return cmd_forge_embed(fe_q, fe_h, fe_block, seed,
                                       out_dir.empty() ? "embed" : out_dir);
        }
        if (*experiment) {
            auto cfg = experiment_config_from_json(ordered_json::parse(io::read_file(e_config)));
            // precedence: --seed flag, then the environment, then the config file
            if (auto es = env_seed()) cfg.master_seed = *es;
            if (app.count("--seed")) cfg.master_seed = seed;
            if (app.count("--out")) cfg.out_dir = out_dir;
            if (app.count("--workers")) cfg.workers = workers;
            if (app.count("--params")) cfg.params = load_params(params_file);
            auto res = run_experiment(cfg);
            std::cout << res.summary.dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
