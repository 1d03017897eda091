#include "hydro/walk_cover.hpp"

#include <algorithm>
#include <deque>

#include "hydro/errors.hpp"

namespace hydro {

std::size_t MaxFlow::add_edge(std::uint32_t u, std::uint32_t v, std::uint64_t cap) {
    std::size_t id = edges_.size();
    edges_.push_back({v, cap, 0});
    adj_[u].push_back(static_cast<std::uint32_t>(id));
    edges_.push_back({u, 0, 0});
    adj_[v].push_back(static_cast<std::uint32_t>(id + 1));
    return id;
}

std::uint64_t MaxFlow::run(std::uint32_t s, std::uint32_t t) {
    std::uint64_t total = 0;
    std::vector<std::uint32_t> via(adj_.size());
    while (true) {
        std::fill(via.begin(), via.end(), kNone);
        std::deque<std::uint32_t> queue{s};
        via[s] = kNone - 1;
        while (!queue.empty() && via[t] == kNone) {
            std::uint32_t u = queue.front();
            queue.pop_front();
            for (std::uint32_t id : adj_[u]) {
                const Edge& e = edges_[id];
                if (via[e.to] != kNone || e.cap - e.flow == 0) continue;
                via[e.to] = id;
                queue.push_back(e.to);
            }
        }
        if (via[t] == kNone) return total;
        std::uint64_t push = kInfinite;
        for (std::uint32_t v = t; v != s;) {
            const Edge& e = edges_[via[v]];
            push = std::min(push, e.cap - e.flow);
            v = edges_[via[v] ^ 1].to;
        }
        for (std::uint32_t v = t; v != s;) {
            edges_[via[v]].flow += push;
            edges_[via[v] ^ 1].flow -= push; // wraps; only differences matter
            v = edges_[via[v] ^ 1].to;
        }
        total += push;
    }
}

WalkCoverResult min_walk_cover(const Graph& g, const ElementSet& sub, const ArcSet& required,
                               const CoverBoundary& boundary) {
    const std::size_t ne = g.element_count();
    std::vector<std::uint32_t> local(ne, kNone);
    std::vector<std::size_t> elems;
    for (std::size_t x = 0; x < ne; ++x)
        if (sub[x]) {
            local[x] = static_cast<std::uint32_t>(elems.size());
            elems.push_back(x);
        }
    bool any_required = false;
    for (ArcId e = 0; e < g.arc_count(); ++e)
        if (required[e] && sub[g.arc_elem(e)]) any_required = true;
    if (!any_required) return {0};

    // Element digraph of the subgraph.
    std::vector<std::vector<std::uint32_t>> adj(elems.size());
    for (ArcId e = 0; e < g.arc_count(); ++e) {
        std::size_t x = g.arc_elem(e);
        if (!sub[x]) continue;
        if (sub[g.tail(e)]) adj[local[g.tail(e)]].push_back(local[x]);
        if (sub[g.head(e)]) adj[local[x]].push_back(local[g.head(e)]);
    }
    std::size_t nc = 0;
    auto comp = scc_of(adj, &nc);

    auto in_context = [&](std::size_t x) {
        return boundary.context ? (*boundary.context)[x] && !sub[x] : !sub[x];
    };
    std::vector<char> req(nc, 0), src(nc, 0), snk(nc, 0);
    for (std::size_t i = 0; i < elems.size(); ++i) {
        std::size_t x = elems[i];
        bool from_outside = false, to_outside = false;
        if (g.elem_is_arc(x)) {
            ArcId e = g.elem_arc(x);
            if (required[e]) req[comp[i]] = 1;
            from_outside = in_context(g.tail(e));
            to_outside = in_context(g.head(e));
        } else {
            auto v = static_cast<NodeId>(x);
            for (ArcId e : g.in_arcs(v)) from_outside |= in_context(g.arc_elem(e));
            for (ArcId e : g.out_arcs(v)) to_outside |= in_context(g.arc_elem(e));
            for (NodeId s : boundary.starts) from_outside |= s == v;
            for (NodeId t : boundary.ends) to_outside |= t == v;
        }
        if (from_outside) src[comp[i]] = 1;
        if (to_outside) snk[comp[i]] = 1;
    }

    std::vector<std::vector<std::uint32_t>> dag(nc), rdag(nc);
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::uint32_t j : adj[i])
            if (comp[i] != comp[j]) dag[comp[i]].push_back(comp[j]);
    for (std::uint32_t c = 0; c < nc; ++c) {
        std::sort(dag[c].begin(), dag[c].end());
        dag[c].erase(std::unique(dag[c].begin(), dag[c].end()), dag[c].end());
        for (std::uint32_t d : dag[c]) rdag[d].push_back(c);
    }

    // BFS trees from the sources and towards the sinks.
    auto bfs = [&](const std::vector<std::vector<std::uint32_t>>& a, const std::vector<char>& seed) {
        std::vector<std::uint32_t> parent(nc, kNone);
        std::deque<std::uint32_t> queue;
        for (std::uint32_t c = 0; c < nc; ++c)
            if (seed[c]) {
                parent[c] = c;
                queue.push_back(c);
            }
        while (!queue.empty()) {
            auto c = queue.front();
            queue.pop_front();
            for (auto d : a[c])
                if (parent[d] == kNone) {
                    parent[d] = c;
                    queue.push_back(d);
                }
        }
        return parent;
    };
    auto from_src = bfs(dag, src);
    auto to_snk = bfs(rdag, snk);
    for (std::uint32_t c = 0; c < nc; ++c)
        if (req[c] && (from_src[c] == kNone || to_snk[c] == kNone)) return {kInfinite};

    // Flow network: component c is in-node 2c and out-node 2c+1.
    const auto S = static_cast<std::uint32_t>(2 * nc), T = S + 1;
    struct OrigEdge {
        std::uint32_t u, v;
        std::uint64_t lower, flow;
    };
    std::vector<OrigEdge> edges;
    std::vector<std::size_t> through(nc), source_edge(nc, kNone), sink_edge(nc, kNone);
    std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> link(nc);
    for (std::uint32_t c = 0; c < nc; ++c) {
        through[c] = edges.size();
        edges.push_back({2 * c, 2 * c + 1, static_cast<std::uint64_t>(req[c]), 0});
        if (src[c]) {
            source_edge[c] = edges.size();
            edges.push_back({S, 2 * c, 0, 0});
        }
        if (snk[c]) {
            sink_edge[c] = edges.size();
            edges.push_back({2 * c + 1, T, 0, 0});
        }
        for (std::uint32_t d : dag[c]) {
            link[c].push_back({d, edges.size()});
            edges.push_back({2 * c + 1, 2 * d, 0, 0});
        }
    }
    auto link_edge = [&](std::uint32_t c, std::uint32_t d) {
        for (auto [to, id] : link[c])
            if (to == d) return id;
        return std::size_t{kNone};
    };

    // A feasible flow: one source-to-sink path through every required part.
    std::uint64_t value = 0;
    for (std::uint32_t c = 0; c < nc; ++c) {
        if (!req[c]) continue;
        ++value;
        edges[through[c]].flow++;
        std::uint32_t x = c;
        while (from_src[x] != x) {
            std::uint32_t p = from_src[x];
            edges[link_edge(p, x)].flow++;
            edges[through[p]].flow++;
            x = p;
        }
        edges[source_edge[x]].flow++;
        x = c;
        while (to_snk[x] != x) {
            std::uint32_t nx = to_snk[x];
            edges[link_edge(x, nx)].flow++;
            edges[through[nx]].flow++;
            x = nx;
        }
        edges[sink_edge[x]].flow++;
    }

    // Push back as much as the lower bounds allow.
    MaxFlow mf(2 * nc + 2);
    for (const auto& e : edges) {
        mf.add_edge(e.u, e.v, kInfinite / 4);
        if (e.flow > e.lower) mf.add_edge(e.v, e.u, e.flow - e.lower);
    }
    std::uint64_t back = mf.run(T, S);
    return {value - back};
}

StInducedView st_restricted_reachability(const Graph& g, const Hydrostructure& h, NodeId s, NodeId t) {
    if (s >= g.node_count() || t >= g.node_count()) throw ModelError("s or t is not a node");
    StInducedView v;
    v.r_plus_s = pattern_avoiding_reach(g, h.walk.arcs, {false, s}, true);
    v.r_minus_t = pattern_avoiding_reach(g, h.walk.arcs, {false, t}, false);
    const std::size_t ne = g.element_count();
    v.st_induced_subgraph.assign(ne, 0);
    v.st_induced_river.assign(ne, 0);
    for (std::size_t x = 0; x < ne; ++x) {
        v.st_induced_subgraph[x] = v.r_plus_s[x] && v.r_minus_t[x];
        v.st_induced_river[x] = v.st_induced_subgraph[x] && h.part(x) == Part::River;
    }
    return v;
}

StInducedView st_restricted_reachability(const Graph& g, const Walk& w, NodeId s, NodeId t) {
    return st_restricted_reachability(g, build_hydrostructure(g, w), s, t);
}

} // namespace hydro
