#pragma once

#include <optional>
#include <string>

#include "hkc/pipeline.hpp"
#include "hkc/spectral.hpp"

namespace hkc {

// Hardness constructions with computational certification: every object
// returned here carries flags that were verified on the concrete
// output, never assumed from the construction.

struct ForgeFail {
    std::string step;  // label from the adversary procedure ("1", "2", "S1", "S2", ...)
    std::string what;
};

struct Gadget {
    Graph graph;
    std::vector<Vertex> ports;
    bool ports_equal_certified = false;  // all legal 3-colorings give equal port colors
    long long num_3colorings = -1;
    Ratio max_subgraph_density;
};

namespace detail {

// Exhaustively checks that all legal 3-colorings color the ports alike.
inline std::pair<bool, long long> certify_ports_equal(const Graph& g,
                                                      const std::vector<Vertex>& ports) {
    bool equal = true;
    long long count = 0;
    enumerate_k_colorings(g, 3, [&](const std::vector<int>& assign) {
        ++count;
        int c0 = assign[ports[0] - 1];
        for (Vertex p : ports)
            if (assign[p - 1] != c0) {
                equal = false;
                return false;
            }
        return true;
    });
    return {equal && count > 0, count};
}

}  // namespace detail

// K4 minus one edge; its two nonadjacent vertices are the ports and are
// forced to share a color in every legal 3-coloring.
inline Gadget diamond_gadget() {
    Gadget g;
    g.graph = Graph::from_edges(4, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}});
    g.ports = {1, 4};
    auto [equal, count] = detail::certify_ports_equal(g.graph, g.ports);
    g.ports_equal_certified = equal;
    g.num_3colorings = count;
    g.max_subgraph_density = max_density_subgraph(g.graph).density;
    return g;
}

// Chain of num_ports-1 diamonds t_0 -D- t_1 -D- ... -D- t_{num_ports-1};
// all ports are forced to one color. Certification is exhaustive while the
// enumeration stays small.
inline Gadget equality_fanout(int num_ports) {
    if (num_ports < 2) throw std::invalid_argument("equality_fanout: need at least 2 ports");
    int n = 3 * num_ports - 2;
    std::vector<Edge> edges;
    std::vector<Vertex> ports;
    ports.push_back(1);
    for (int i = 1; i < num_ports; ++i) {
        Vertex prev = 3 * (i - 1) + 1, a = 3 * i - 1, b = 3 * i, next = 3 * i + 1;
        edges.push_back({prev, a});
        edges.push_back({prev, b});
        edges.push_back({a, b});
        edges.push_back({a, next});
        edges.push_back({b, next});
        ports.push_back(next);
    }
    Gadget g;
    g.graph = Graph::from_edges(n, std::move(edges));
    g.ports = std::move(ports);
    if (n <= 16) {
        auto [equal, count] = detail::certify_ports_equal(g.graph, g.ports);
        g.ports_equal_certified = equal;
        g.num_3colorings = count;
    }
    g.max_subgraph_density = max_density_subgraph(g.graph).density;
    return g;
}

struct ReductionOutput {
    Graph graph;                                // R(H4)
    std::vector<std::vector<Vertex>> port_map;  // for input vertex v: its 4 port ids in R
    double average_degree = 0;
    Ratio max_density;     // from max_density_subgraph(R)
    bool balanced = false;  // max_density equals the average degree of R
    bool checked_equivalence = false;  // brute-force 3-colorability both sides
    bool h4_colorable = false;
    bool r_colorable = false;
    bool decode_legal = false;  // decoded port coloring is legal on H4
};

// Decode a legal coloring of R back to the input graph via port colors.
inline Coloring decode_reduction_coloring(const ReductionOutput& red, const Coloring& r_coloring) {
    int n = (int)red.port_map.size();
    std::vector<int> assign(n);
    for (int v = 1; v <= n; ++v) {
        int c = r_coloring.of(red.port_map[v - 1][0]);
        for (Vertex p : red.port_map[v - 1])
            if (r_coloring.of(p) != c)
                throw std::logic_error("decode_reduction_coloring: ports disagree");
        assign[v - 1] = c;
    }
    return Coloring(3, std::move(assign));
}

// Replace every vertex of a 4-regular graph by an equality fanout and join
// fanout ports along the original edges. The output is balanced (certified
// by max_density_subgraph per output) and 3-colorable iff the input is.
inline ReductionOutput reduce_4regular_to_balanced(const Graph& h4, int equivalence_guard = 12) {
    if (!h4.is_regular(4))
        throw std::invalid_argument("reduce_4regular_to_balanced: input not 4-regular");
    int n = h4.n();
    const Gadget fan = equality_fanout(4);
    const int block = fan.graph.n();  // 10
    std::vector<Edge> edges;
    edges.reserve((size_t)n * 15 + h4.m());
    ReductionOutput out;
    out.port_map.assign(n, {});
    for (Vertex v = 1; v <= n; ++v) {
        int off = (v - 1) * block;
        for (auto [a, b] : fan.graph.edges()) edges.push_back({a + off, b + off});
        for (Vertex p : fan.ports) out.port_map[v - 1].push_back(p + off);
    }
    std::vector<int> next_port(n + 1, 0);
    for (auto [u, v] : h4.edges()) {
        Vertex pu = out.port_map[u - 1][next_port[u]++];
        Vertex pv = out.port_map[v - 1][next_port[v]++];
        edges.push_back({std::min(pu, pv), std::max(pu, pv)});
    }
    out.graph = Graph::from_edges(n * block, std::move(edges));
    out.average_degree = out.graph.average_degree();
    auto dens = max_density_subgraph(out.graph);
    out.max_density = dens.density;
    out.balanced =
        dens.density == Ratio(2 * out.graph.m(), out.graph.n());

    if (n <= equivalence_guard) {
        out.checked_equivalence = true;
        out.h4_colorable = find_k_coloring(h4, 3).has_value();
        auto rc = find_k_coloring(out.graph, 3);
        out.r_colorable = rc.has_value();
        if (rc) {
            auto decoded = decode_reduction_coloring(out, *rc);
            out.decode_legal = is_legal_coloring(h4, decoded).legal;
        }
    }
    return out;
}

// Three disjoint relabeled copies; copy c occupies ids (c-1)*n+1 .. c*n.
inline Graph triple_copy(const Graph& g) {
    int n = g.n();
    std::vector<Edge> edges;
    edges.reserve(3 * g.edges().size());
    for (int c = 0; c < 3; ++c)
        for (auto [u, v] : g.edges()) edges.push_back({u + c * n, v + c * n});
    return Graph::from_edges(3 * n, std::move(edges));
}

// Balanced 3-coloring of triple_copy(g) by rotating a legal coloring of g
// across the copies.
inline Coloring rotated_triple_coloring(const Graph& g, const Coloring& chi) {
    if (chi.n() != g.n() || chi.k != 3)
        throw std::invalid_argument("rotated_triple_coloring: need a 3-coloring of g");
    std::vector<int> assign(3 * g.n());
    for (int c = 0; c < 3; ++c)
        for (Vertex v = 1; v <= g.n(); ++v)
            assign[c * g.n() + v - 1] = (chi.of(v) - 1 + c) % 3 + 1;
    return Coloring(3, std::move(assign));
}

struct AAInstance {
    Graph q;                      // the NP-hard part, ids 1..n1 in g
    Graph z;                      // expander part before planting, local ids 1..n2
    Coloring plant_z;             // planting on z (local ids)
    Graph z3;                     // z after planting (local ids)
    Graph g;                      // disjoint union q + z3 (z shifted by n1)
    Coloring full_planting;       // chi_q on the q part, plant_z shifted
    std::vector<Vertex> connectors;  // ids in g numbering
    std::optional<Graph> certificate_host;  // d-regular H; planting reproduces g
    bool replay_ok = false;       // apply_planting(H, full_planting) == g
    // dense-path measurements (n within the dense cap)
    double lam_hat_host = -1, lam_hat_z = -1;
    bool perturbation_ok = false;  // |lam_i(H) - lam_i(Z padded)| <= max|lam(N)| + 1e-6
};

// The A/A hardness construction: an expander Z with n1(d-4) connector
// vertices of degree d-1, a balanced planting on Z, and G = Q + Z3. When a
// balanced coloring of Q is known the d-regular certificate host H is built
// by wiring each Q vertex to d-4 unused connectors of its own color, and
// replanting H is verified to reproduce G edge-for-edge.
inline AAInstance forge_AA(const Graph& q, int n, int d, Seed seed,
                           std::optional<Coloring> chi_q = std::nullopt, int dense_cap = 2048,
                           int brute_guard = 12) {
    if (!q.is_regular(4)) throw std::invalid_argument("forge_AA: Q must be 4-regular");
    int n1 = q.n();
    if (!chi_q) {
        if (n1 > brute_guard)
            throw std::invalid_argument("forge_AA: chi_Q absent and Q too large to brute-force");
        auto found = find_k_coloring(q, 3);
        if (!found) throw std::invalid_argument("forge_AA: Q is not 3-colorable");
        chi_q = *found;
    }
    if (!is_legal_coloring(q, *chi_q).legal)
        throw std::invalid_argument("forge_AA: chi_Q is not legal on Q");
    auto sizes = chi_q->class_sizes();
    if (n1 % 3 != 0 || sizes[1] != n1 / 3 || sizes[2] != n1 / 3 || sizes[3] != n1 / 3)
        throw std::invalid_argument("forge_AA: chi_Q must be balanced");

    AAInstance inst;
    inst.q = q;
    int n2 = n - n1;
    long long c = (long long)n1 * (d - 4);
    if (d < 5 || c > n2) throw std::invalid_argument("forge_AA: infeasible connector budget");
    if (((long long)n2 * d - c) % 2 != 0)
        throw std::invalid_argument("forge_AA: Z degree sum is odd; adjust n or d");

    // Z: connectors are local ids 1..c with degree d-1, the rest degree d
    std::vector<int> degs(n2, d);
    for (long long i = 0; i < c; ++i) degs[i] = d - 1;
    inst.z = gen_random_graph_with_degrees(degs, seed.derive("Z"));

    // balanced planting on Z with connectors split evenly per class
    Rng rng(seed.derive("Zplant"));
    std::vector<int> plant(n2, 0);
    auto spread = [&](std::vector<int> group) {
        rng.shuffle(group);
        for (size_t i = 0; i < group.size(); ++i) plant[group[i]] = (int)(i % 3) + 1;
    };
    std::vector<int> connectors_local(c), others_local;
    std::iota(connectors_local.begin(), connectors_local.end(), 0);
    for (int i = (int)c; i < n2; ++i) others_local.push_back(i);
    spread(connectors_local);
    spread(others_local);
    inst.plant_z = Coloring(3, plant);
    inst.z3 = apply_planting(inst.z, inst.plant_z).result;

    // G = Q + Z3, planting = chi_Q + plant_z
    std::vector<Edge> g_edges(q.edges());
    for (auto [u, v] : inst.z3.edges()) g_edges.push_back({u + n1, v + n1});
    inst.g = Graph::from_edges(n, std::move(g_edges));
    std::vector<int> full(n);
    for (Vertex v = 1; v <= n1; ++v) full[v - 1] = chi_q->of(v);
    for (Vertex v = 1; v <= n2; ++v) full[n1 + v - 1] = inst.plant_z.of(v);
    inst.full_planting = Coloring(3, std::move(full));
    for (long long i = 0; i < c; ++i) inst.connectors.push_back((Vertex)(n1 + 1 + i));

    // certificate host: Q edges + Z edges + connector wiring by color
    std::vector<std::vector<Vertex>> pool(4);  // unused connectors per color, g ids
    for (Vertex conn : inst.connectors) pool[inst.full_planting.of(conn)].push_back(conn);
    std::vector<Edge> h_edges(q.edges());
    for (auto [u, v] : inst.z.edges()) h_edges.push_back({u + n1, v + n1});
    std::vector<Edge> wiring;
    for (Vertex v = 1; v <= n1; ++v) {
        auto& p = pool[chi_q->of(v)];
        if ((int)p.size() < d - 4)
            throw std::logic_error("forge_AA: connector pool exhausted");
        for (int i = 0; i < d - 4; ++i) {
            wiring.push_back({v, p.back()});
            p.pop_back();
        }
    }
    for (auto e : wiring) h_edges.push_back(e);
    Graph host = Graph::from_edges(n, std::move(h_edges));
    if (!host.is_regular(d)) throw std::logic_error("forge_AA: certificate host not d-regular");
    inst.replay_ok = apply_planting(host, inst.full_planting).result == inst.g;
    inst.certificate_host = std::move(host);

    if (n <= dense_cap) {
        auto sh = full_spectrum_dense(*inst.certificate_host, dense_cap);
        auto sz = full_spectrum_dense(inst.z, dense_cap);
        inst.lam_hat_host = std::max(sh.values[1], std::abs(sh.values[n - 1]));
        inst.lam_hat_z = std::max(sz.values[1], std::abs(sz.values[n2 - 1]));
        // N = host minus Z edges (Q edges plus the connector stars)
        std::vector<Edge> n_edges(q.edges());
        for (auto e : wiring) n_edges.push_back(e);
        std::sort(n_edges.begin(), n_edges.end());
        auto sn = full_spectrum_dense(Graph::from_edges(n, std::move(n_edges)), dense_cap);
        double n_norm =
            std::max(std::abs(sn.values[0]), std::abs(sn.values[n - 1]));
        // Z padded with isolated Q-part vertices: spectrum of Z plus zeros
        std::vector<double> zpad(n, 0.0);
        for (int i = 0; i < n2; ++i) zpad[i] = sz.values[i];
        std::sort(zpad.begin(), zpad.end(), std::greater<>());
        inst.perturbation_ok = true;
        for (int i = 0; i < n; ++i)
            if (std::abs(sh.values[i] - zpad[i]) > n_norm + 1e-6) {
                inst.perturbation_ok = false;
                break;
            }
    }
    return inst;
}

// Randomized backtracking search for a vertex-induced copy of Q in G; the
// returned map certifies both edge presence and non-edge absence.
inline std::optional<std::vector<Vertex>> find_induced_copy(const Graph& g, const Graph& q,
                                                            Seed seed, int guard = 12) {
    int nq = q.n();
    if (nq > guard) throw std::invalid_argument("find_induced_copy: Q exceeds guard");
    if (nq == 0) return std::vector<Vertex>{};
    if (nq > g.n()) return std::nullopt;

    // placement order: most adjacency to already placed, ties by degree
    std::vector<Vertex> order;
    std::vector<char> placed(nq + 1, 0);
    for (int step = 0; step < nq; ++step) {
        Vertex best = 0;
        int best_adj = -1, best_deg = -1;
        for (Vertex v = 1; v <= nq; ++v) {
            if (placed[v]) continue;
            int adj = 0;
            for (Vertex u : q.neighbors(v))
                if (placed[u]) ++adj;
            if (adj > best_adj || (adj == best_adj && q.degree(v) > best_deg)) {
                best = v;
                best_adj = adj;
                best_deg = q.degree(v);
            }
        }
        order.push_back(best);
        placed[best] = 1;
    }

    Rng rng(seed.derive("induced"));
    std::vector<Vertex> image(nq + 1, 0);  // q vertex -> g vertex
    std::vector<char> used(g.n() + 1, 0);

    std::function<bool(int)> place = [&](int depth) -> bool {
        if (depth == nq) return true;
        Vertex qv = order[depth];
        std::vector<Vertex> candidates;
        for (Vertex gv = 1; gv <= g.n(); ++gv) {
            if (used[gv]) continue;
            bool ok = true;
            for (int t = 0; t < depth && ok; ++t) {
                bool need = q.has_edge(qv, order[t]);
                bool have = g.has_edge(gv, image[order[t]]);
                if (need != have) ok = false;
            }
            if (ok) candidates.push_back(gv);
        }
        rng.shuffle(candidates);
        for (Vertex gv : candidates) {
            image[qv] = gv;
            used[gv] = 1;
            if (place(depth + 1)) return true;
            used[gv] = 0;
            image[qv] = 0;
        }
        return false;
    };
    if (!place(0)) return std::nullopt;
    std::vector<Vertex> map(nq);
    for (Vertex v = 1; v <= nq; ++v) map[v - 1] = image[v];
    return map;
}

namespace detail {

// First (near-)balanced legal 3-coloring of q by exhaustive enumeration.
inline std::optional<Coloring> balanced_3_coloring(const Graph& q) {
    std::optional<Coloring> best;
    int best_spread = q.n() + 1;
    enumerate_k_colorings(q, 3, [&](const std::vector<int>& assign) {
        int sz[4] = {0, 0, 0, 0};
        for (int c : assign) sz[c]++;
        int spread = std::max({sz[1], sz[2], sz[3]}) - std::min({sz[1], sz[2], sz[3]});
        if (spread < best_spread) {
            best_spread = spread;
            best = Coloring(3, assign);
        }
        return best_spread > 0;  // stop at a perfectly balanced one
    });
    return best;
}

}  // namespace detail

struct AdversaryPlanting {
    Coloring planting;
    std::vector<Vertex> copy;  // image of Q's vertices in H
};

// The R/A adversary: pick a random induced copy of Q in H, refuse hosts
// where two differently colored copy vertices share an outside common
// neighbor, then extend the copy's coloring to a balanced planting that
// forces every outside neighbor to its copy-neighbor's color.
inline std::variant<AdversaryPlanting, ForgeFail> forge_RA_adversary(const Graph& h, const Graph& q,
                                                                     Seed seed, int q_guard = 12,
                                                                     int h_guard = 400) {
    if (q.n() > q_guard || h.n() > h_guard)
        throw std::invalid_argument("forge_RA_adversary: guard exceeded");
    auto chi = detail::balanced_3_coloring(q);
    if (!chi) throw std::invalid_argument("forge_RA_adversary: Q is not 3-colorable");

    auto copy = find_induced_copy(h, q, seed.derive("copy"), q_guard);
    if (!copy) return ForgeFail{"1", "no induced copy of Q in H"};
    int n = h.n();
    std::vector<int> copy_color(n + 1, 0);  // chi color for copy vertices
    for (Vertex v = 1; v <= q.n(); ++v) copy_color[(*copy)[v - 1]] = chi->of(v);

    // step 2: no two copy vertices of different colors may share an outside neighbor
    std::vector<int> forced(n + 1, 0);
    for (Vertex hv = 1; hv <= n; ++hv) {
        if (copy_color[hv]) continue;
        int want = 0;
        for (Vertex u : h.neighbors(hv)) {
            if (!copy_color[u]) continue;
            if (want == 0) {
                want = copy_color[u];
            } else if (want != copy_color[u]) {
                return ForgeFail{"2", "copy vertices of different colors share a neighbor"};
            }
        }
        forced[hv] = want;
    }

    // step 3: balanced extension
    std::vector<int> plant(n, 0);
    std::vector<int> count(4, 0);
    for (Vertex v = 1; v <= n; ++v) {
        int c = copy_color[v] ? copy_color[v] : forced[v];
        plant[v - 1] = c;
        if (c) count[c]++;
    }
    std::vector<Vertex> rest;
    for (Vertex v = 1; v <= n; ++v)
        if (plant[v - 1] == 0) rest.push_back(v);
    Rng rng(seed.derive("fill"));
    rng.shuffle(rest);
    for (Vertex v : rest) {
        int c = 1;
        for (int col = 2; col <= 3; ++col)
            if (count[col] < count[c]) c = col;
        plant[v - 1] = c;
        count[c]++;
    }
    return AdversaryPlanting{Coloring(3, std::move(plant)), *copy};
}

// The k=4 adversary: the copy keeps a balanced 3-coloring, all its outside
// neighbors take the fourth color, so edges from the copy to color 4 stay in
// the planted graph and any legal 4-coloring must 3-color the copy.
inline std::variant<AdversaryPlanting, ForgeFail> forge_k4_planting(const Graph& h, const Graph& q,
                                                                    Seed seed, int q_guard = 12,
                                                                    int h_guard = 400) {
    if (q.n() > q_guard || h.n() > h_guard)
        throw std::invalid_argument("forge_k4_planting: guard exceeded");
    auto chi = detail::balanced_3_coloring(q);
    if (!chi) throw std::invalid_argument("forge_k4_planting: Q is not 3-colorable");
    auto copy = find_induced_copy(h, q, seed.derive("copy"), q_guard);
    if (!copy) return ForgeFail{"1", "no induced copy of Q in H"};

    int n = h.n();
    std::vector<int> copy_color(n + 1, 0);
    for (Vertex v = 1; v <= q.n(); ++v) copy_color[(*copy)[v - 1]] = chi->of(v);
    std::vector<char> outside_nbr(n + 1, 0);
    long long nbr_count = 0;
    for (Vertex v = 1; v <= q.n(); ++v) {
        bool has_outside = false;
        for (Vertex u : h.neighbors((*copy)[v - 1])) {
            if (copy_color[u]) continue;
            has_outside = true;
            if (!outside_nbr[u]) {
                outside_nbr[u] = 1;
                ++nbr_count;
            }
        }
        if (!has_outside) return ForgeFail{"S1", "copy vertex with no outside neighbor"};
    }
    if (nbr_count > n / 4) return ForgeFail{"S2", "outside neighborhood exceeds n/4 budget"};

    std::vector<int> plant(n, 0);
    std::vector<long long> count(5, 0);
    for (Vertex v = 1; v <= n; ++v) {
        if (copy_color[v]) plant[v - 1] = copy_color[v];
        else if (outside_nbr[v]) plant[v - 1] = 4;
        if (plant[v - 1]) count[plant[v - 1]]++;
    }
    std::vector<Vertex> rest;
    for (Vertex v = 1; v <= n; ++v)
        if (plant[v - 1] == 0) rest.push_back(v);
    Rng rng(seed.derive("fill"));
    rng.shuffle(rest);
    for (Vertex v : rest) {
        int c = 1;
        for (int col = 2; col <= 4; ++col)
            if (count[col] < count[c]) c = col;
        plant[v - 1] = c;
        count[c]++;
    }
    return AdversaryPlanting{Coloring(4, std::move(plant)), *copy};
}

struct EmbedOutput {
    Graph host;               // H' plus the complete bipartite bundles
    Coloring plant;
    PlantedInstance instance;
    std::vector<std::vector<Vertex>> blocks;  // block i hosts Q vertex i+1
    std::vector<Vertex> copy_map;  // faithful vertex per block, certifying a copy of Q
};

// Faithful-vertex embedding: place Q on blocks of an independent set of H',
// wire complete bipartite bundles along Q's edges, plant a random coloring
// and recover a vertex-induced copy of Q through one faithful vertex per
// block. With plant_blocks_with_chi the planting is forced to chi on the
// blocks, which makes every block vertex faithful by construction.
inline std::variant<EmbedOutput, ForgeFail> embed_Q_via_independent_blocks(
    const Graph& q, const Graph& hprime, int block_size, Seed seed, const Coloring& chi,
    bool plant_blocks_with_chi = false) {
    if (!is_legal_coloring(q, chi).legal || !chi.is_total() || chi.k != 3)
        throw std::invalid_argument("embed_Q_via_independent_blocks: chi must 3-color Q");
    int nq = q.n(), n = hprime.n();
    long long need = (long long)nq * block_size;

    // greedy independent set in seeded random order
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 1);
    Rng rng(seed.derive("indep"));
    rng.shuffle(order);
    std::vector<char> blocked(n + 1, 0);
    std::vector<Vertex> indep;
    for (Vertex v : order) {
        if (blocked[v]) continue;
        indep.push_back(v);
        blocked[v] = 1;
        for (Vertex u : hprime.neighbors(v)) blocked[u] = 1;
        if ((long long)indep.size() == need) break;
    }
    if ((long long)indep.size() < need)
        return ForgeFail{"independent-set", "no independent set of size n(Q)*block_size found"};

    std::vector<std::vector<Vertex>> blocks(nq);
    for (int i = 0; i < nq; ++i)
        blocks[i].assign(indep.begin() + (long long)i * block_size,
                         indep.begin() + (long long)(i + 1) * block_size);

    std::vector<Edge> edges(hprime.edges());
    for (auto [qu, qv] : q.edges())
        for (Vertex a : blocks[qu - 1])
            for (Vertex b : blocks[qv - 1]) edges.push_back({std::min(a, b), std::max(a, b)});
    Graph host = Graph::from_edges(n, std::move(edges));

    Coloring plant = random_partition(n, 3, seed.derive("plant"));
    if (plant_blocks_with_chi)
        for (int i = 0; i < nq; ++i)
            for (Vertex v : blocks[i]) plant.set(v, chi.of(i + 1));
    auto inst = apply_planting(host, plant);

    std::vector<Vertex> faithful(nq, 0);
    for (int i = 0; i < nq; ++i) {
        Vertex pick = 0;
        for (Vertex v : blocks[i])
            if (plant.of(v) == chi.of(i + 1) && (pick == 0 || v < pick)) pick = v;
        if (pick == 0) return ForgeFail{"no-faithful", "block " + std::to_string(i + 1) +
                                                            " has no faithful vertex"};
        faithful[i] = pick;
    }
    // certify the induced copy edge-exactly
    for (Vertex a = 1; a <= nq; ++a)
        for (Vertex b = a + 1; b <= nq; ++b)
            if (q.has_edge(a, b) != inst.result.has_edge(faithful[a - 1], faithful[b - 1]))
                throw std::logic_error("embed_Q_via_independent_blocks: copy certificate failed");

    EmbedOutput out;
    out.host = std::move(host);
    out.plant = std::move(plant);
    out.instance = std::move(inst);
    out.blocks = std::move(blocks);
    out.copy_map = std::move(faithful);
    return out;
}

struct UniquenessReport {
    long long count = 0;          // legal k-colorings found (exact unless capped)
    bool capped = false;
    bool unique_up_to_permutation = false;
};

// Is the planted coloring the only legal one? True iff the count equals k!
// and every enumerated coloring induces the planted partition.
inline UniquenessReport uniqueness_check(const PlantedInstance& inst, long long cap = 10'000'000,
                                         int guard_n = 32) {
    if (inst.result.n() > guard_n)
        throw std::invalid_argument("uniqueness_check: n exceeds guard");
    int k = inst.planted.k;
    long long factorial = 1;
    for (int i = 2; i <= k; ++i) factorial *= i;

    auto canonical = [&](const std::vector<int>& assign) {
        std::vector<int> relabel(k + 1, 0), out(assign.size());
        int next = 0;
        for (size_t i = 0; i < assign.size(); ++i) {
            if (relabel[assign[i]] == 0) relabel[assign[i]] = ++next;
            out[i] = relabel[assign[i]];
        }
        return out;
    };
    const std::vector<int> planted_canon = canonical(inst.planted.assign);

    UniquenessReport rep;
    bool all_match = true;
    bool finished = detail::enumerate_k_colorings(inst.result, k, [&](const std::vector<int>& a) {
        ++rep.count;
        if (canonical(a) != planted_canon) all_match = false;
        return rep.count <= cap;
    });
    rep.capped = !finished;
    rep.unique_up_to_permutation = !rep.capped && rep.count == factorial && all_match;
    return rep;
}

// Parameter regime bookkeeping for the hardness constructions.
struct ForgeParams {
    double delta = 0.48;  // host degree exponent
    double eps = 0.01;    // subgraph size exponent
    double alpha = 3.75;  // balanced average degree target
    Seed seed;

    double delta0() const { return (7 + 16 * eps) / 15.0; }
    // k = min(sqrt(eps) n^{(1-2delta)/2}, sqrt(eps) n^{(alpha*delta-alpha+2)/4})
    double subgraph_size_bound(double n) const {
        double a = std::sqrt(eps) * std::pow(n, (1 - 2 * delta) / 2);
        double b = std::sqrt(eps) * std::pow(n, (alpha * delta - alpha + 2) / 4);
        return std::min(a, b);
    }
};

}  // namespace hkc
