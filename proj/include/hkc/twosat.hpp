#pragma once

#include <optional>
#include <sstream>
#include <vector>

#include "hkc/graph.hpp"

namespace hkc {

// A literal is a signed variable id: +i means x_i, -i means not x_i (i >= 1).
using Literal = int;

struct TwoSatInstance {
    int num_vars = 0;
    std::vector<std::pair<Literal, Literal>> clauses;

    void add_clause(Literal a, Literal b) { clauses.push_back({a, b}); }
};

// Implication-graph / SCC decision procedure. The returned assignment is
// verified against every clause before being handed back.
inline std::optional<std::vector<bool>> solve_2sat(const TwoSatInstance& inst) {
    int n = inst.num_vars;
    auto node = [&](Literal l) {
        int v = l > 0 ? l : -l;
        if (v < 1 || v > n) throw std::invalid_argument("solve_2sat: literal out of range");
        return 2 * (v - 1) + (l > 0 ? 0 : 1);
    };
    int num_nodes = 2 * n;
    std::vector<std::vector<int>> adj(num_nodes);
    for (auto [a, b] : inst.clauses) {
        adj[node(-a)].push_back(node(b));  // !a -> b
        adj[node(-b)].push_back(node(a));  // !b -> a
    }

    // iterative Tarjan
    std::vector<int> comp(num_nodes, -1), low(num_nodes), disc(num_nodes, -1), stk;
    std::vector<char> on_stack(num_nodes, 0);
    int timer = 0, num_comp = 0;
    struct Frame {
        int v;
        size_t child;
    };
    std::vector<Frame> frames;
    for (int root = 0; root < num_nodes; ++root) {
        if (disc[root] != -1) continue;
        frames.push_back({root, 0});
        while (!frames.empty()) {
            auto& [v, child] = frames.back();
            if (child == 0) {
                disc[v] = low[v] = timer++;
                stk.push_back(v);
                on_stack[v] = 1;
            }
            if (child < adj[v].size()) {
                int u = adj[v][child++];
                if (disc[u] == -1) {
                    frames.push_back({u, 0});
                } else if (on_stack[u]) {
                    low[v] = std::min(low[v], disc[u]);
                }
            } else {
                if (low[v] == disc[v]) {
                    while (true) {
                        int u = stk.back();
                        stk.pop_back();
                        on_stack[u] = 0;
                        comp[u] = num_comp;
                        if (u == v) break;
                    }
                    ++num_comp;
                }
                int finished = v;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().v] = std::min(low[frames.back().v], low[finished]);
            }
        }
    }

    std::vector<bool> assign(n + 1, false);
    for (int v = 1; v <= n; ++v) {
        int pos = comp[2 * (v - 1)], neg = comp[2 * (v - 1) + 1];
        if (pos == neg) return std::nullopt;
        // Tarjan numbers components in reverse topological order, so the
        // component finished later comes earlier in topological order.
        assign[v] = pos < neg;
    }
    for (auto [a, b] : inst.clauses) {
        auto val = [&](Literal l) { return l > 0 ? assign[l] : !assign[-l]; };
        if (!val(a) && !val(b)) throw std::logic_error("solve_2sat: produced assignment fails");
    }
    return assign;
}

// Text form for test fixtures: "p cnf <vars> <clauses>" then one
// "<lit> <lit> 0" line per clause.
inline std::string twosat_to_string(const TwoSatInstance& inst) {
    std::ostringstream out;
    out << "p cnf " << inst.num_vars << ' ' << inst.clauses.size() << '\n';
    for (auto [a, b] : inst.clauses) out << a << ' ' << b << " 0\n";
    return out.str();
}

inline TwoSatInstance twosat_from_string(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    TwoSatInstance inst;
    long long clauses = -1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, cnf;
            if (!(ls >> p >> cnf >> inst.num_vars >> clauses) || cnf != "cnf")
                throw std::runtime_error("twosat parse error: bad problem line");
            continue;
        }
        Literal a, b;
        int zero;
        if (!(ls >> a >> b >> zero) || zero != 0)
            throw std::runtime_error("twosat parse error: clauses must have two literals");
        inst.add_clause(a, b);
    }
    if (clauses >= 0 && (long long)inst.clauses.size() != clauses)
        throw std::runtime_error("twosat parse error: clause count mismatch");
    return inst;
}

// List-coloring problem with lists of size at most two per free vertex.
struct ListColoringProblem {
    Graph graph;
    Coloring fixed;                            // partial; 0 = free
    std::vector<std::vector<int>> lists;       // lists[v-1], empty for fixed vertices
};

struct ListsTwoSat {
    TwoSatInstance instance;
    std::vector<int> var_of;                   // var_of[v-1], 0 if v fixed
    std::vector<std::pair<int, int>> choices;  // per var: color if true / if false

    // Inverts a satisfying assignment into a completion of `fixed`.
    Coloring decode(const ListColoringProblem& p, const std::vector<bool>& assign) const {
        Coloring out = p.fixed;
        for (int v = 1; v <= p.graph.n(); ++v) {
            int var = var_of[v - 1];
            if (var == 0) continue;
            auto [ct, cf] = choices[var - 1];
            out.set(v, assign[var] ? ct : cf);
        }
        return out;
    }
};

// One boolean variable per listed vertex: true picks the first list color,
// false the second. Size-1 lists get a forced-literal clause pair. Edge
// constraints forbid every conflicting color pair. The fixed part must be
// legal on its own; an already-monochromatic fixed edge means no completion
// can exist and is rejected here like an empty list.
inline ListsTwoSat lists_to_2sat(const ListColoringProblem& p) {
    int n = p.graph.n();
    if (p.fixed.n() != n || (int)p.lists.size() != n)
        throw std::invalid_argument("lists_to_2sat: length mismatch");
    if (!is_legal_coloring(p.graph, p.fixed).legal)
        throw std::invalid_argument("lists_to_2sat: fixed part is not legal");
    ListsTwoSat out;
    out.var_of.assign(n, 0);
    for (int v = 1; v <= n; ++v) {
        if (p.fixed.of(v) != 0) continue;
        const auto& lst = p.lists[v - 1];
        if (lst.empty()) throw std::invalid_argument("lists_to_2sat: empty list");
        if (lst.size() > 2) throw std::invalid_argument("lists_to_2sat: list larger than two");
        out.choices.push_back({lst[0], lst.size() == 2 ? lst[1] : lst[0]});
        out.var_of[v - 1] = (int)out.choices.size();
        if (lst.size() == 1) {
            int var = out.var_of[v - 1];
            out.instance.clauses.push_back({var, var});  // forced true
        }
    }
    out.instance.num_vars = (int)out.choices.size();

    // literal meaning "vertex v takes color c"; nullopt if v cannot take c
    auto lit_for = [&](Vertex v, int c) -> std::optional<Literal> {
        int var = out.var_of[v - 1];
        auto [ct, cf] = out.choices[var - 1];
        if (c == ct) return var;
        if (c == cf) return -var;
        return std::nullopt;
    };

    for (auto [u, v] : p.graph.edges()) {
        bool u_free = p.fixed.of(u) == 0, v_free = p.fixed.of(v) == 0;
        if (u_free && v_free) {
            for (int cu : p.lists[u - 1])
                for (int cv : p.lists[v - 1])
                    if (cu == cv) {
                        auto lu = lit_for(u, cu), lv = lit_for(v, cv);
                        out.instance.add_clause(-*lu, -*lv);
                    }
        } else if (u_free != v_free) {
            Vertex f = u_free ? u : v;
            int c = p.fixed.of(u_free ? v : u);
            if (auto l = lit_for(f, c)) out.instance.add_clause(-*l, -*l);
        }
    }
    return out;
}

}  // namespace hkc
