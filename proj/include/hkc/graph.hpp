#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hkc {

using Vertex = int;                       // 1-based, matching the [n] convention
using Edge = std::pair<Vertex, Vertex>;   // always stored with first < second

// Sorted set of distinct vertex ids in {1..n}.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) {
        std::sort(ids_.begin(), ids_.end());
        ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
        if (!ids_.empty() && ids_.front() < 1)
            throw std::invalid_argument("VertexSet: vertex ids must be >= 1");
    }

    size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    bool contains(Vertex v) const {
        return std::binary_search(ids_.begin(), ids_.end(), v);
    }
    const std::vector<Vertex>& ids() const { return ids_; }
    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }
    bool operator==(const VertexSet&) const = default;

private:
    std::vector<Vertex> ids_;
};

// Total or partial color assignment; 0 means free/uncolored.
struct Coloring {
    int k = 0;
    std::vector<int> assign;  // assign[v-1] in {0..k}

    Coloring() = default;
    Coloring(int k_, std::vector<int> a) : k(k_), assign(std::move(a)) {
        for (int c : assign)
            if (c < 0 || c > k) throw std::invalid_argument("Coloring: color out of range");
    }
    static Coloring uniform(int n, int k, int color) {
        return Coloring(k, std::vector<int>(n, color));
    }

    int n() const { return (int)assign.size(); }
    int of(Vertex v) const { return assign[v - 1]; }
    void set(Vertex v, int c) { assign[v - 1] = c; }
    bool is_total() const {
        return std::none_of(assign.begin(), assign.end(), [](int c) { return c == 0; });
    }
    int num_colored() const {
        return (int)std::count_if(assign.begin(), assign.end(), [](int c) { return c != 0; });
    }
    std::vector<int> class_sizes() const {
        std::vector<int> s(k + 1, 0);
        for (int c : assign) s[c]++;
        return s;
    }
    bool operator==(const Coloring&) const = default;
};

// Immutable simple undirected labeled graph, vertices 1..n.
class Graph {
public:
    Graph() = default;

    static Graph from_edges(int n, std::vector<Edge> edges) {
        if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
        for (auto& [u, v] : edges) {
            if (u > v) std::swap(u, v);
            if (u == v) throw std::invalid_argument("Graph: self-loop");
            if (u < 1 || v > n) throw std::invalid_argument("Graph: vertex id out of range");
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw std::invalid_argument("Graph: parallel edge");
        Graph g;
        g.n_ = n;
        g.edges_ = std::move(edges);
        g.adj_.assign(n + 1, {});
        for (auto [u, v] : g.edges_) {
            g.adj_[u].push_back(v);
            g.adj_[v].push_back(u);
        }
        for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
        return g;
    }

    static Graph complete(int n) {
        std::vector<Edge> e;
        e.reserve((size_t)n * (n - 1) / 2);
        for (Vertex u = 1; u <= n; ++u)
            for (Vertex v = u + 1; v <= n; ++v) e.push_back({u, v});
        return from_edges(n, std::move(e));
    }

    static Graph cycle(int n) {
        std::vector<Edge> e;
        for (Vertex u = 1; u < n; ++u) e.push_back({u, u + 1});
        if (n >= 3) e.push_back({1, n});
        return from_edges(n, std::move(e));
    }

    static Graph path(int n) {
        std::vector<Edge> e;
        for (Vertex u = 1; u < n; ++u) e.push_back({u, u + 1});
        return from_edges(n, std::move(e));
    }

    // Complete multipartite graph with the given part sizes.
    static Graph complete_multipartite(const std::vector<int>& parts) {
        int n = std::accumulate(parts.begin(), parts.end(), 0);
        std::vector<int> part_of(n + 1);
        int v = 1;
        for (size_t i = 0; i < parts.size(); ++i)
            for (int j = 0; j < parts[i]; ++j) part_of[v++] = (int)i;
        std::vector<Edge> e;
        for (Vertex u = 1; u <= n; ++u)
            for (Vertex w = u + 1; w <= n; ++w)
                if (part_of[u] != part_of[w]) e.push_back({u, w});
        return from_edges(n, std::move(e));
    }

    int n() const { return n_; }
    long long m() const { return (long long)edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const Vertex> neighbors(Vertex v) const {
        check_vertex(v);
        return adj_[v];
    }
    int degree(Vertex v) const { return (int)neighbors(v).size(); }
    bool has_edge(Vertex u, Vertex v) const {
        check_vertex(u);
        check_vertex(v);
        return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
    }
    double average_degree() const { return n_ == 0 ? 0.0 : 2.0 * (double)m() / n_; }
    bool is_regular(int d) const {
        for (Vertex v = 1; v <= n_; ++v)
            if (degree(v) != d) return false;
        return true;
    }
    VertexSet all_vertices() const {
        std::vector<Vertex> ids(n_);
        std::iota(ids.begin(), ids.end(), 1);
        return VertexSet(std::move(ids));
    }
    void check_vertex(Vertex v) const {
        if (v < 1 || v > n_) throw std::out_of_range("vertex id out of range");
    }
    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
};

// Exact nonnegative rational, reduced.
struct Ratio {
    long long num = 0;
    long long den = 1;

    Ratio() = default;
    Ratio(long long n, long long d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Ratio: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    double value() const { return (double)num / (double)den; }
    bool operator==(const Ratio&) const = default;
    // compares a/b vs c/d by cross multiplication; fits easily in 64 bits here
    bool operator<(const Ratio& o) const { return num * o.den < o.num * den; }
    bool operator>(const Ratio& o) const { return o < *this; }
};

// E_G(S,T) with the both-endpoints convention: edges inside S∩T count twice.
inline long long edges_between(const Graph& g, const VertexSet& S, const VertexSet& T) {
    std::vector<char> in_t(g.n() + 1, 0);
    for (Vertex v : T) {
        g.check_vertex(v);
        in_t[v] = 1;
    }
    long long count = 0;
    for (Vertex u : S) {
        g.check_vertex(u);
        for (Vertex v : g.neighbors(u))
            if (in_t[v]) ++count;
    }
    return count;
}

// Sparsity of a cut: E(S, V-S) / ((d/n)|S||V-S|).
inline Ratio sparsity(const Graph& g, const VertexSet& S, int d) {
    if (S.empty() || (int)S.size() >= g.n())
        throw std::invalid_argument("sparsity: S must be a proper nonempty subset");
    if (d <= 0) throw std::invalid_argument("sparsity: d must be positive");
    std::vector<char> in_s(g.n() + 1, 0);
    for (Vertex v : S) {
        g.check_vertex(v);
        in_s[v] = 1;
    }
    long long cross = 0;
    for (Vertex u : S)
        for (Vertex v : g.neighbors(u))
            if (!in_s[v]) ++cross;
    long long s = (long long)S.size();
    return Ratio(cross * g.n(), d * s * (g.n() - s));
}

inline std::vector<VertexSet> connected_components(const Graph& g) {
    std::vector<char> seen(g.n() + 1, 0);
    std::vector<VertexSet> comps;
    std::vector<Vertex> stack;
    for (Vertex s = 1; s <= g.n(); ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (Vertex v : g.neighbors(u))
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
        comps.emplace_back(std::move(comp));
    }
    return comps;
}

// Induced subgraph plus the map from new ids (1..|S|) back to original ids.
struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_original;  // to_original[i-1] = original id of new vertex i
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& S) {
    std::vector<int> new_id(g.n() + 1, 0);
    int next = 1;
    for (Vertex v : S) {
        g.check_vertex(v);
        new_id[v] = next++;
    }
    std::vector<Edge> edges;
    for (Vertex u : S)
        for (Vertex v : g.neighbors(u))
            if (v > u && new_id[v]) edges.push_back({new_id[u], new_id[v]});
    InducedSubgraph out;
    out.graph = Graph::from_edges((int)S.size(), std::move(edges));
    out.to_original.assign(S.begin(), S.end());
    return out;
}

// Legality check; edges with a free endpoint are never violations.
struct LegalityReport {
    bool legal = true;
    std::vector<Edge> violations;  // sorted
};

inline LegalityReport is_legal_coloring(const Graph& g, const Coloring& c) {
    if (c.n() != g.n()) throw std::invalid_argument("is_legal_coloring: length mismatch");
    LegalityReport r;
    for (auto [u, v] : g.edges())
        if (c.of(u) != 0 && c.of(u) == c.of(v)) r.violations.push_back({u, v});
    r.legal = r.violations.empty();
    return r;
}

struct CapExceeded {
    long long partial_count;  // colorings seen before giving up
};
using ColoringCount = std::variant<long long, CapExceeded>;

namespace detail {

// Vertex order for backtracking: BFS from a max-degree vertex, components in
// sequence, so colored neighbors constrain each newly considered vertex.
inline std::vector<Vertex> search_order(const Graph& g) {
    std::vector<Vertex> order;
    std::vector<char> seen(g.n() + 1, 0);
    std::vector<Vertex> by_degree(g.n());
    std::iota(by_degree.begin(), by_degree.end(), 1);
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    for (Vertex s : by_degree) {
        if (seen[s]) continue;
        std::queue<Vertex> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            order.push_back(u);
            for (Vertex v : g.neighbors(u))
                if (!seen[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
        }
    }
    return order;
}

// Enumerates legal total k-colorings in the induced search order; the visitor
// returns false to stop the enumeration.
inline bool enumerate_k_colorings(const Graph& g, int k,
                                  const std::function<bool(const std::vector<int>&)>& visit) {
    int n = g.n();
    if (n == 0) return visit({});
    std::vector<Vertex> order = search_order(g);
    std::vector<int> color(n + 1, 0);
    std::vector<int> choice(n, 0);
    int depth = 0;
    while (depth >= 0) {
        if (depth == n) {
            std::vector<int> assign(n);
            for (Vertex v = 1; v <= n; ++v) assign[v - 1] = color[v];
            if (!visit(assign)) return false;
            --depth;
            continue;
        }
        Vertex v = order[depth];
        int c = ++choice[depth];
        if (c > k) {
            choice[depth] = 0;
            color[v] = 0;
            --depth;
            continue;
        }
        bool ok = true;
        for (Vertex u : g.neighbors(v))
            if (color[u] == c) {
                ok = false;
                break;
            }
        if (ok) {
            color[v] = c;
            ++depth;
        }
    }
    return true;
}

}  // namespace detail

// Exact count of legal total k-colorings (label permutations counted
// separately), stopping early once the count exceeds cap.
inline ColoringCount count_k_colorings(const Graph& g, int k, long long cap = 10'000'000,
                                       int guard_n = 32) {
    if (g.n() > guard_n) throw std::invalid_argument("count_k_colorings: n exceeds guard");
    if (k < 1) throw std::invalid_argument("count_k_colorings: k must be >= 1");
    long long count = 0;
    bool finished = detail::enumerate_k_colorings(g, k, [&](const std::vector<int>&) {
        ++count;
        return count <= cap;
    });
    if (!finished) return CapExceeded{count};
    return count;
}

namespace detail {

// Sound 3-coloring simplification: if adjacent u, v both have degree 3 and
// share their two remaining neighbors x, y, then every legal 3-coloring has
// color(x) == color(y) (otherwise u and v would both need the third color),
// and conversely any coloring with x, y alike extends to u, v. So u, v can
// be dropped and y merged into x. Gadget-style graphs collapse to their
// quotient under this rule; if x and y are adjacent the graph has no
// 3-coloring at all.
struct TwinContraction {
    struct Event {
        Vertex u, v, x, y;
    };
    int n = 0;
    std::vector<int> parent;          // union-find over merged vertices
    std::vector<char> removed;        // u, v of fired events
    std::vector<Event> events;
    bool infeasible = false;
    std::vector<std::vector<Vertex>> adj;  // current adjacency over representatives

    int find(int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); }

    explicit TwinContraction(const Graph& g) : n(g.n()) {
        parent.resize(n + 1);
        std::iota(parent.begin(), parent.end(), 0);
        removed.assign(n + 1, 0);
        adj.assign(n + 1, {});
        for (Vertex v = 1; v <= n; ++v)
            adj[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());

        bool changed = true;
        while (changed && !infeasible) {
            changed = false;
            for (Vertex u = 1; u <= n && !infeasible; ++u) {
                if (removed[u] || find(u) != u || adj[u].size() != 3) continue;
                for (Vertex v : std::vector<Vertex>(adj[u])) {
                    if (removed[v] || adj[v].size() != 3) continue;
                    std::vector<Vertex> nu, nv;
                    for (Vertex w : adj[u])
                        if (w != v) nu.push_back(w);
                    for (Vertex w : adj[v])
                        if (w != u) nv.push_back(w);
                    std::sort(nu.begin(), nu.end());
                    std::sort(nv.begin(), nv.end());
                    if (nu != nv || nu.size() != 2) continue;
                    Vertex x = nu[0], y = nu[1];
                    events.push_back({u, v, x, y});
                    removed[u] = removed[v] = 1;
                    detach(u);
                    detach(v);
                    if (has_edge(x, y)) {
                        infeasible = true;  // x and y must match but are adjacent
                        break;
                    }
                    merge(x, y);
                    changed = true;
                    break;
                }
            }
        }
    }

    void detach(Vertex v) {
        for (Vertex w : adj[v]) std::erase(adj[w], v);
        adj[v].clear();
    }
    bool has_edge(Vertex a, Vertex b) const {
        return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
    }
    void merge(Vertex x, Vertex y) {  // y into x
        for (Vertex w : adj[y]) {
            std::erase(adj[w], y);
            if (w != x && !has_edge(x, w)) {
                adj[x].push_back(w);
                adj[w].push_back(x);
            }
        }
        adj[y].clear();
        parent[y] = x;
    }
};

}  // namespace detail

// Decision-only variant used by the forge on reduction outputs too large for
// count_k_colorings. Adjacent-twin contraction (k = 3, no partial input)
// followed by most-constrained-first branching with forward checking.
inline std::optional<Coloring> find_k_coloring(const Graph& g, int k,
                                               const Coloring* partial = nullptr);

inline std::optional<Coloring> find_k_coloring(const Graph& g, int k, const Coloring* partial) {
    if (k == 3 && !partial && g.n() > 0) {
        detail::TwinContraction tc(g);
        if (tc.infeasible) return std::nullopt;
        if (!tc.events.empty()) {
            // solve the contracted graph (representatives only), then expand
            std::vector<Vertex> reps;
            std::vector<int> new_id(g.n() + 1, 0);
            for (Vertex v = 1; v <= g.n(); ++v)
                if (!tc.removed[v] && tc.find(v) == v) {
                    reps.push_back(v);
                    new_id[v] = (int)reps.size();
                }
            std::vector<Edge> edges;
            for (Vertex v : reps)
                for (Vertex w : tc.adj[v])
                    if (w > v) edges.push_back({new_id[v], new_id[w]});
            auto sub = find_k_coloring(Graph::from_edges((int)reps.size(), std::move(edges)), 3);
            if (!sub) return std::nullopt;

            std::vector<int> color(g.n() + 1, 0);
            for (Vertex v = 1; v <= g.n(); ++v)
                if (!tc.removed[v]) color[v] = sub->of(new_id[tc.find(v)]);
            for (auto it = tc.events.rbegin(); it != tc.events.rend(); ++it) {
                int cx = color[tc.find(it->x)];
                int first = 0, second = 0;
                for (int c = 1; c <= 3; ++c)
                    if (c != cx) (first == 0 ? first : second) = c;
                color[it->u] = first;
                color[it->v] = second;
            }
            std::vector<int> assign(g.n());
            for (Vertex v = 1; v <= g.n(); ++v) assign[v - 1] = color[v];
            return Coloring(3, std::move(assign));
        }
    }
    int n = g.n();
    std::vector<int> color(n + 1, 0);
    if (partial) {
        if (partial->n() != n) throw std::invalid_argument("find_k_coloring: length mismatch");
        for (Vertex v = 1; v <= n; ++v) color[v] = partial->of(v);
    }
    // allowed[v] = bitmask of colors not used by colored neighbors
    std::vector<uint32_t> allowed(n + 1, (1u << k) - 1);
    for (Vertex v = 1; v <= n; ++v)
        if (color[v])
            for (Vertex u : g.neighbors(v)) allowed[u] &= ~(1u << (color[v] - 1));
    for (Vertex v = 1; v <= n; ++v)
        if (color[v] && !(allowed[v] & (1u << (color[v] - 1)))) return std::nullopt;

    struct Move {
        Vertex v;
        std::vector<std::pair<Vertex, uint32_t>> undo;
    };
    std::vector<Move> trail;
    std::vector<int> tried(n + 1, 0);

    auto pick = [&]() -> Vertex {
        Vertex best = 0;
        int best_opts = k + 1;
        for (Vertex v = 1; v <= n; ++v) {
            if (color[v]) continue;
            int opts = std::popcount(allowed[v]);
            if (opts < best_opts) {
                best_opts = opts;
                best = v;
                if (opts <= 1) break;
            }
        }
        return best;
    };

    Vertex v = pick();
    if (v == 0) {
        std::vector<int> assign(n);
        for (Vertex u = 1; u <= n; ++u) assign[u - 1] = color[u];
        return Coloring(k, std::move(assign));
    }
    while (true) {
        int c = 0;
        for (c = tried[v] + 1; c <= k; ++c)
            if (allowed[v] & (1u << (c - 1))) break;
        if (c > k) {
            // backtrack
            tried[v] = 0;
            if (trail.empty()) return std::nullopt;
            Move mv = std::move(trail.back());
            trail.pop_back();
            for (auto& [u, mask] : mv.undo) allowed[u] = mask;
            color[mv.v] = 0;
            v = mv.v;
            continue;
        }
        tried[v] = c;
        Move mv;
        mv.v = v;
        color[v] = c;
        bool dead = false;
        for (Vertex u : g.neighbors(v)) {
            if (color[u]) continue;
            uint32_t before = allowed[u];
            uint32_t after = before & ~(1u << (c - 1));
            if (after != before) {
                mv.undo.push_back({u, before});
                allowed[u] = after;
                if (after == 0) dead = true;
            }
        }
        if (dead) {
            for (auto& [u, mask] : mv.undo) allowed[u] = mask;
            color[v] = 0;
            continue;
        }
        trail.push_back(std::move(mv));
        Vertex nxt = pick();
        if (nxt == 0) {
            std::vector<int> assign(n);
            for (Vertex u = 1; u <= n; ++u) assign[u - 1] = color[u];
            return Coloring(k, std::move(assign));
        }
        v = nxt;
    }
}

namespace detail {

// Dinic max-flow on small integer-capacity networks.
class Dinic {
public:
    explicit Dinic(int num_nodes) : head_(num_nodes, -1), level_(num_nodes), it_(num_nodes) {}

    void add_edge(int u, int v, long long cap, long long rev_cap = 0) {
        edges_.push_back({v, head_[u], cap});
        head_[u] = (int)edges_.size() - 1;
        edges_.push_back({u, head_[v], rev_cap});
        head_[v] = (int)edges_.size() - 1;
    }

    long long max_flow(int s, int t) {
        long long flow = 0;
        while (bfs(s, t)) {
            it_ = head_;
            while (long long pushed = dfs(s, t, INF)) flow += pushed;
        }
        return flow;
    }

    // s-side of the min cut after max_flow; call only after max_flow.
    std::vector<char> min_cut_side(int s) {
        std::vector<char> side(head_.size(), 0);
        std::vector<int> stack{s};
        side[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int e = head_[u]; e >= 0; e = edges_[e].next)
                if (edges_[e].cap > 0 && !side[edges_[e].to]) {
                    side[edges_[e].to] = 1;
                    stack.push_back(edges_[e].to);
                }
        }
        return side;
    }

private:
    static constexpr long long INF = (1ll << 62);
    struct E {
        int to, next;
        long long cap;
    };
    std::vector<E> edges_;
    std::vector<int> head_, level_, it_;

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        q.push(s);
        level_[s] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int e = head_[u]; e >= 0; e = edges_[e].next)
                if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
                    level_[edges_[e].to] = level_[u] + 1;
                    q.push(edges_[e].to);
                }
        }
        return level_[t] >= 0;
    }

    long long dfs(int u, int t, long long limit) {
        if (u == t || limit == 0) return limit;
        for (int& e = it_[u]; e >= 0; e = edges_[e].next) {
            auto& ed = edges_[e];
            if (ed.cap > 0 && level_[ed.to] == level_[u] + 1) {
                long long pushed = dfs(ed.to, t, std::min(limit, ed.cap));
                if (pushed > 0) {
                    ed.cap -= pushed;
                    edges_[e ^ 1].cap += pushed;
                    return pushed;
                }
            }
        }
        return 0;
    }
};

// Goldberg feasibility test: is there S with e(S)/|S| > num/den? If so,
// returns such an S (the s-side of a min cut); otherwise nullopt.
inline std::optional<std::vector<Vertex>> denser_subgraph(const Graph& g, long long num,
                                                          long long den) {
    int n = g.n();
    long long m = g.m();
    if (m == 0) return std::nullopt;
    int s = 0, t = n + 1;
    Dinic net(n + 2);
    for (Vertex v = 1; v <= n; ++v) {
        net.add_edge(s, v, m * den);
        net.add_edge(v, t, m * den + 2 * num - (long long)g.degree(v) * den);
    }
    for (auto [u, v] : g.edges()) net.add_edge(u, v, den, den);
    long long flow = net.max_flow(s, t);
    if (flow >= (long long)n * m * den) return std::nullopt;
    auto side = net.min_cut_side(s);
    std::vector<Vertex> S;
    for (Vertex v = 1; v <= n; ++v)
        if (side[v]) S.push_back(v);
    if (S.empty()) return std::nullopt;
    return S;
}

inline long long internal_edges(const Graph& g, const std::vector<Vertex>& S) {
    std::vector<char> in(g.n() + 1, 0);
    for (Vertex v : S) in[v] = 1;
    long long e = 0;
    for (auto [u, v] : g.edges())
        if (in[u] && in[v]) ++e;
    return e;
}

}  // namespace detail

struct DensestSubgraph {
    VertexSet vertices;
    Ratio density;  // average degree 2|E(S)|/|S| of the returned set
};

// Exact maximum-average-degree subgraph. Exhaustive over subsets for n <= 22,
// min-cut feasibility search above that; the two paths agree on overlapping
// sizes (tested).
inline DensestSubgraph max_density_subgraph(const Graph& g, int exhaustive_limit = 22) {
    if (g.n() < 1) throw std::invalid_argument("max_density_subgraph: empty graph");
    if (g.n() <= exhaustive_limit) {
        int n = g.n();
        // incremental subset walk: process vertex i in/out recursively
        std::vector<Vertex> cur;
        std::vector<Vertex> best{1};
        long long best_e = 0;  // edges in best
        std::vector<int> deg_into(n + 1, 0);
        long long cur_e = 0;
        auto better = [&](long long e, size_t s) {
            // 2e/s > 2be/bs  <=>  e*bs > be*s
            return e * (long long)best.size() > best_e * (long long)s;
        };
        std::function<void(Vertex)> rec = [&](Vertex v) {
            if (v > n) return;
            rec(v + 1);  // exclude v
            long long gained = deg_into[v];
            cur_e += gained;
            cur.push_back(v);
            for (Vertex u : g.neighbors(v)) deg_into[u]++;
            if (better(cur_e, cur.size())) {
                best = cur;
                best_e = cur_e;
            }
            rec(v + 1);  // include v
            for (Vertex u : g.neighbors(v)) deg_into[u]--;
            cur.pop_back();
            cur_e -= gained;
        };
        rec(1);
        return {VertexSet(best), Ratio(2 * best_e, (long long)best.size())};
    }

    // Iterative improvement with Goldberg's min-cut feasibility test.
    std::vector<Vertex> best(g.n());
    std::iota(best.begin(), best.end(), 1);
    long long best_e = g.m();
    if (best_e == 0) return {VertexSet({1}), Ratio(0, 1)};
    while (true) {
        auto improved = detail::denser_subgraph(g, best_e, (long long)best.size());
        if (!improved) break;
        long long e = detail::internal_edges(g, *improved);
        // guaranteed strict improvement by the cut construction
        best = std::move(*improved);
        best_e = e;
    }
    return {VertexSet(best), Ratio(2 * best_e, (long long)best.size())};
}

}  // namespace hkc
