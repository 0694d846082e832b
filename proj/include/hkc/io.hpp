#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hkc/graph.hpp"

namespace hkc::io {

// Graph text format (DIMACS-like):
//   p edge <n> <m>
//   e <u> <v>        (1 <= u < v <= n, lexicographically sorted)
// Coloring text format: n lines "<v> <c>", c in {0..k}.

inline std::string graph_to_string(const Graph& g) {
    std::ostringstream out;
    out << "p edge " << g.n() << ' ' << g.m() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
    return out.str();
}

inline Graph graph_from_stream(std::istream& in) {
    std::string line;
    int n = -1;
    long long m = -1;
    std::vector<Edge> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            std::string fmt;
            if (!(ls >> fmt >> n >> m) || fmt != "edge")
                throw std::runtime_error("graph parse error at line " + std::to_string(lineno) +
                                         ": bad problem line");
        } else if (tag == "e") {
            int u, v;
            if (!(ls >> u >> v))
                throw std::runtime_error("graph parse error at line " + std::to_string(lineno) +
                                         ": bad edge line");
            edges.push_back({u, v});
        } else {
            throw std::runtime_error("graph parse error at line " + std::to_string(lineno) +
                                     ": unknown record '" + tag + "'");
        }
    }
    if (n < 0) throw std::runtime_error("graph parse error: missing problem line");
    if (m >= 0 && (long long)edges.size() != m)
        throw std::runtime_error("graph parse error: edge count mismatch");
    return Graph::from_edges(n, std::move(edges));
}

inline std::string coloring_to_string(const Coloring& c) {
    std::ostringstream out;
    for (int v = 1; v <= c.n(); ++v) out << v << ' ' << c.of(v) << '\n';
    return out.str();
}

inline Coloring coloring_from_stream(std::istream& in, int k) {
    std::string line;
    std::vector<std::pair<int, int>> rows;
    int lineno = 0;
    int max_v = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        int v, c;
        if (!(ls >> v >> c))
            throw std::runtime_error("coloring parse error at line " + std::to_string(lineno));
        rows.push_back({v, c});
        max_v = std::max(max_v, v);
    }
    if ((int)rows.size() != max_v)
        throw std::runtime_error("coloring parse error: vertex count mismatch");
    std::vector<int> assign(max_v, -1);
    for (auto [v, c] : rows) {
        if (v < 1 || v > max_v || assign[v - 1] != -1)
            throw std::runtime_error("coloring parse error: bad or repeated vertex id " +
                                     std::to_string(v));
        assign[v - 1] = c;
    }
    int kk = k;
    if (kk <= 0)
        for (int c : assign) kk = std::max(kk, c);
    return Coloring(std::max(kk, 1), std::move(assign));
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Graph read_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    return graph_from_stream(in);
}

inline Coloring read_coloring(const std::filesystem::path& path, int k = 0) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    return coloring_from_stream(in, k);
}

}  // namespace hkc::io
