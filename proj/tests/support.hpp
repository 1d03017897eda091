#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "hydro/graph.hpp"
#include "hydro/io.hpp"

namespace hydro::testing {

// u -a-> v -b-> w -c-> v -d-> u
inline Graph figure_eight() {
    return parse_graph("nodes u v w\narc a u v\narc b v w\narc c w v\narc d v u\n").graph;
}

// two cycles through x1 -e1-> x2: one via p, one via q
inline Graph twin_cycle() {
    return parse_graph("nodes x1 x2 p q\n"
                       "arc e1 x1 x2\narc e2 x2 p\narc e3 p x1\narc e4 x2 q\narc e5 q x1\n")
        .graph;
}

// figure eight plus a detour v -g1-> z -g2-> w
inline Graph figure_eight_detour() {
    return parse_graph("nodes u v w z\narc a u v\narc b v w\narc c w v\narc d v u\narc g1 v z\narc g2 z w\n").graph;
}

inline ArcId arc(const Graph& g, const std::string& name) { return *g.find_arc(name); }
inline NodeId node(const Graph& g, const std::string& name) { return *g.find_node(name); }

inline Walk walk(const Graph& g, const std::string& names) { return parse_walk(g, names); }

inline std::vector<std::string> names(const Graph& g, const Walk& w) {
    std::vector<std::string> out;
    for (ArcId e : w.arcs) out.push_back(g.arc_name(e));
    return out;
}

inline std::vector<std::vector<std::string>> names(const Graph& g, const std::vector<Walk>& ws) {
    std::vector<std::vector<std::string>> out;
    for (const auto& w : ws) out.push_back(names(g, w));
    return out;
}

inline ElementSet elements(const Graph& g, const std::vector<std::string>& list) {
    ElementSet s(g.element_count(), 0);
    for (const auto& name : list) {
        if (auto v = g.find_node(name)) s[g.node_elem(*v)] = 1;
        else s[g.arc_elem(*g.find_arc(name))] = 1;
    }
    return s;
}

// Hamiltonian cycle over a random permutation plus m - n random arcs
// (parallel arcs and loops allowed). m > n keeps it from being a cycle.
inline Graph random_strong_graph(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    Graph g(n);
    std::vector<NodeId> order(n);
    for (NodeId v = 0; v < n; ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < n; ++i) g.add_arc(order[i], order[(i + 1) % n]);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    while (g.arc_count() < m) g.add_arc(pick(rng), pick(rng));
    return g;
}

// Random walk from a random arc, stopping early only at dead ends.
inline Walk random_walk(std::mt19937_64& rng, const Graph& g, std::size_t len) {
    std::uniform_int_distribution<ArcId> first(0, static_cast<ArcId>(g.arc_count() - 1));
    Walk w;
    w.arcs.push_back(first(rng));
    while (w.size() < len) {
        auto out = g.out_arcs(g.head(w.back()));
        if (out.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
        w.arcs.push_back(out[pick(rng)]);
    }
    return w;
}

// `count` cycles of `len` arcs; cycle i+1 starts at a node of cycle i.
inline Graph path_of_cycles(std::size_t count, std::size_t len) {
    Graph g;
    NodeId anchor = g.add_node();
    for (std::size_t c = 0; c < count; ++c) {
        NodeId start = anchor, prev = anchor;
        for (std::size_t i = 1; i < len; ++i) {
            NodeId v = g.add_node();
            g.add_arc(prev, v);
            prev = v;
            if (i == len / 2) anchor = v;
        }
        g.add_arc(prev, start);
    }
    return g;
}

} // namespace hydro::testing
