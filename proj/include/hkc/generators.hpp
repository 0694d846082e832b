#pragma once

#include <optional>
#include <string>

#include "hkc/graph.hpp"
#include "hkc/rng.hpp"

namespace hkc {

enum class Model { AA, AR, RA, RR };  // host axis first, planting axis second

inline std::string to_string(Model m) {
    switch (m) {
        case Model::AA: return "AA";
        case Model::AR: return "AR";
        case Model::RA: return "RA";
        case Model::RR: return "RR";
    }
    return "?";
}

inline Model model_from_string(const std::string& s) {
    if (s == "AA" || s == "aa") return Model::AA;
    if (s == "AR" || s == "ar") return Model::AR;
    if (s == "RA" || s == "ra") return Model::RA;
    if (s == "RR" || s == "rr") return Model::RR;
    throw std::invalid_argument("unknown model tag: " + s);
}

struct InstanceParams {
    int n = 0;
    int k = 3;
    double d = 0;  // host average degree
    Model model = Model::RR;
    Seed seed;
};

// Host graph + planted partition + the resulting graph.
// result = host minus edges monochromatic under the planting.
struct PlantedInstance {
    Graph host;
    Coloring planted;
    Graph result;
    InstanceParams params;
};

// G_{n,d}: each pair kept with probability p = d/(n-1).
inline Graph gen_gnp(int n, double d, Seed seed) {
    if (n < 2) throw std::invalid_argument("gen_gnp: n must be >= 2");
    if (d < 0 || d > n - 1) throw std::invalid_argument("gen_gnp: d out of [0, n-1]");
    double p = d / (n - 1);
    Rng rng(seed);
    std::vector<Edge> edges;
    edges.reserve((size_t)(p * n * (n - 1) / 2 * 1.1) + 16);
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = u + 1; v <= n; ++v)
            if (rng.bernoulli(p)) edges.push_back({u, v});
    return Graph::from_edges(n, std::move(edges));
}

// Configuration-model pairing for a prescribed degree sequence. Offending
// pairs (loops, doubles) are rejected and redrawn; if the tail of the pairing
// gets stuck the whole attempt restarts, up to the retry cap.
inline Graph gen_random_graph_with_degrees(const std::vector<int>& degrees, Seed seed,
                                           int retry_cap = 1000) {
    int n = (int)degrees.size();
    long long total = 0;
    for (int v = 0; v < n; ++v) {
        if (degrees[v] < 0 || degrees[v] >= n)
            throw std::invalid_argument("gen_random_graph_with_degrees: bad degree");
        total += degrees[v];
    }
    if (total % 2 != 0)
        throw std::invalid_argument("gen_random_graph_with_degrees: odd degree sum");
    if (total == 0) return Graph::from_edges(n, {});
    Rng rng(seed);
    for (int attempt = 0; attempt < retry_cap; ++attempt) {
        std::vector<Vertex> stubs;
        stubs.reserve(total);
        for (Vertex v = 1; v <= n; ++v)
            for (int i = 0; i < degrees[v - 1]; ++i) stubs.push_back(v);
        rng.shuffle(stubs);
        std::vector<std::vector<Vertex>> adj(n + 1);
        std::vector<Edge> edges;
        edges.reserve(stubs.size() / 2);
        bool stuck = false;
        long long misses = 0;
        const long long miss_budget = 200 + total;
        while (stubs.size() >= 2) {
            size_t i = rng.next_below(stubs.size());
            size_t j = rng.next_below(stubs.size());
            if (i == j) continue;
            Vertex a = stubs[i], b = stubs[j];
            bool dup = a == b;
            if (!dup)
                for (Vertex w : adj[a])
                    if (w == b) {
                        dup = true;
                        break;
                    }
            if (dup) {
                if (++misses > miss_budget) {
                    stuck = true;
                    break;
                }
                continue;
            }
            misses = 0;
            adj[a].push_back(b);
            adj[b].push_back(a);
            edges.push_back({std::min(a, b), std::max(a, b)});
            if (i < j) std::swap(i, j);
            stubs[i] = stubs.back();
            stubs.pop_back();
            stubs[j] = stubs.back();
            stubs.pop_back();
        }
        if (!stuck) {
            auto g = Graph::from_edges(n, std::move(edges));
            for (Vertex v = 1; v <= n; ++v)
                if (g.degree(v) != degrees[v - 1])
                    throw std::logic_error("gen_random_graph_with_degrees: degree audit failed");
            return g;
        }
    }
    throw std::runtime_error("gen_random_graph_with_degrees: rejection budget exceeded");
}

// Random simple d-regular graph via the pairing model.
inline Graph gen_random_regular(int n, int d, Seed seed, int retry_cap = 1000) {
    if ((long long)n * d % 2 != 0)
        throw std::invalid_argument("gen_random_regular: n*d must be even");
    if (d >= n) throw std::invalid_argument("gen_random_regular: d must be < n");
    return gen_random_graph_with_degrees(std::vector<int>(n, d), seed, retry_cap);
}

// Each vertex independently uniform over {1..k}.
inline Coloring random_partition(int n, int k, Seed seed) {
    if (n < 1 || k < 2) throw std::invalid_argument("random_partition: need n >= 1, k >= 2");
    Rng rng(seed);
    std::vector<int> assign(n);
    for (auto& c : assign) c = 1 + (int)rng.next_below(k);
    return Coloring(k, std::move(assign));
}

// Uniformly random partition with class sizes floor(n/k) or ceil(n/k);
// classes 1..(n mod k) receive the larger size.
inline Coloring balanced_random_partition(int n, int k, Seed seed) {
    if (n < k) throw std::invalid_argument("balanced_random_partition: need n >= k");
    std::vector<int> assign;
    assign.reserve(n);
    for (int c = 1; c <= k; ++c) {
        int sz = n / k + (c <= n % k ? 1 : 0);
        for (int i = 0; i < sz; ++i) assign.push_back(c);
    }
    Rng rng(seed);
    rng.shuffle(assign);
    return Coloring(k, std::move(assign));
}

// Intersect the host with the complete k-partite graph of P: keep an edge
// iff its endpoints get different colors.
inline PlantedInstance apply_planting(const Graph& host, const Coloring& planted,
                                      InstanceParams params = {}) {
    if (planted.n() != host.n()) throw std::invalid_argument("apply_planting: length mismatch");
    if (!planted.is_total()) throw std::invalid_argument("apply_planting: planting must be total");
    std::vector<Edge> kept;
    kept.reserve(host.edges().size());
    for (auto [u, v] : host.edges())
        if (planted.of(u) != planted.of(v)) kept.push_back({u, v});
    PlantedInstance inst;
    inst.host = host;
    inst.planted = planted;
    inst.result = Graph::from_edges(host.n(), std::move(kept));
    params.n = host.n();
    params.k = planted.k;
    if (params.d == 0) params.d = host.average_degree();
    inst.params = params;
    return inst;
}

enum class HostKind { Gnp, Regular };

struct MakeInstanceOptions {
    HostKind host_kind = HostKind::Gnp;  // for random-host models
    bool balanced_planting = true;       // for random-planting models
};

// Dispatch for the four selection rules. Adversarial axes require the
// corresponding input; random axes forbid it.
inline PlantedInstance make_instance(Model model, int n, int k, double d,
                                     const std::optional<Graph>& host_input,
                                     const std::optional<Coloring>& plant_input, Seed seed,
                                     MakeInstanceOptions opts = {}) {
    bool host_adversarial = (model == Model::AA || model == Model::AR);
    bool plant_adversarial = (model == Model::AA || model == Model::RA);
    if (host_adversarial && !host_input)
        throw std::invalid_argument("make_instance: adversarial host requires host_input");
    if (!host_adversarial && host_input)
        throw std::invalid_argument("make_instance: random host forbids host_input");
    if (plant_adversarial && !plant_input)
        throw std::invalid_argument("make_instance: adversarial planting requires plant_input");
    if (!plant_adversarial && plant_input)
        throw std::invalid_argument("make_instance: random planting forbids plant_input");

    Graph host;
    if (host_adversarial) {
        host = *host_input;
        n = host.n();
    } else {
        host = opts.host_kind == HostKind::Gnp
                   ? gen_gnp(n, d, seed.derive("host"))
                   : gen_random_regular(n, (int)d, seed.derive("host"));
    }
    Coloring planted = plant_adversarial
                           ? *plant_input
                           : (opts.balanced_planting
                                  ? balanced_random_partition(n, k, seed.derive("plant"))
                                  : random_partition(n, k, seed.derive("plant")));
    InstanceParams params;
    params.model = model;
    params.seed = seed;
    params.d = d;
    return apply_planting(host, planted, params);
}

}  // namespace hkc
