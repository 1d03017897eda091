#include "hydro/hydrostructure.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "hydro/errors.hpp"

namespace hydro {

const char* part_name(Part p) {
    switch (p) {
    case Part::Sea: return "sea";
    case Part::Cloud: return "cloud";
    case Part::Vapor: return "vapor";
    case Part::River: return "river";
    }
    return "?";
}

std::vector<std::size_t> Hydrostructure::elements(Part p) const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < in_r_plus.size(); ++x)
        if (part(x) == p) out.push_back(x);
    return out;
}

ElementSet Hydrostructure::mask(Part p) const {
    ElementSet m(in_r_plus.size(), 0);
    for (std::size_t x = 0; x < m.size(); ++x) m[x] = part(x) == p;
    return m;
}

bool Hydrostructure::empty(Part p) const {
    for (std::size_t x = 0; x < in_r_plus.size(); ++x)
        if (part(x) == p) return false;
    return true;
}

namespace {

// Alg. 1 in one direction. Forward: seed the first arc, never take the
// last one. Backward is the same on the reversed graph, done in place.
ElementSet restricted_reach(const Graph& g, const Walk& w, bool forward, bool* avertible) {
    if (w.size() < 2) throw ModelError("hydrostructure needs a walk with at least two arcs");
    const std::size_t n = g.node_count();
    ElementSet all(g.element_count(), 1);
    auto report = [&](bool a) {
        if (avertible) *avertible = a;
    };

    std::vector<char> in_z(n, 0);
    for (NodeId z : internal_nodes(g, w)) {
        if (in_z[z]) { // the interior is not an open path
            report(true);
            return all;
        }
        in_z[z] = 1;
    }
    std::vector<char> in_w(g.arc_count(), 0);
    for (ArcId e : w.arcs) in_w[e] = 1;

    const ArcId first = forward ? w.front() : w.back();
    const ArcId last = forward ? w.back() : w.front();
    auto next_node = [&](ArcId e) { return forward ? g.head(e) : g.tail(e); };
    auto leave = [&](NodeId v) { return forward ? g.out_arcs(v) : g.in_arcs(v); };

    ElementSet r(g.element_count(), 0);
    r[g.arc_elem(first)] = 1;
    std::vector<NodeId> queue;
    queue.reserve(n);
    NodeId start = next_node(first);
    r[start] = 1;
    queue.push_back(start);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        for (ArcId e : leave(queue[qi])) {
            if (e == last || r[g.arc_elem(e)]) continue;
            r[g.arc_elem(e)] = 1;
            NodeId v = next_node(e);
            if (!in_w[e] && in_z[v]) { // re-entry
                report(true);
                return all;
            }
            if (!r[v]) {
                r[v] = 1;
                queue.push_back(v);
            }
        }
    }
    report(false);
    return r;
}

} // namespace

ElementSet restricted_forward_reachability(const Graph& g, const Walk& w, bool* avertible) {
    return restricted_reach(g, w, true, avertible);
}

ElementSet restricted_backward_reachability(const Graph& g, const Walk& w, bool* avertible) {
    return restricted_reach(g, w, false, avertible);
}

ElementSet walk_interior(const Graph& g, const Walk& w) {
    ElementSet z(g.element_count(), 0);
    for (std::size_t i = 1; i < w.size(); ++i) z[g.tail(w.arcs[i])] = 1;
    for (std::size_t i = 1; i + 1 < w.size(); ++i) z[g.arc_elem(w.arcs[i])] = 1;
    return z;
}

Hydrostructure build_hydrostructure(const Graph& g, const Walk& w) {
    require_walk(g, w);
    Hydrostructure h;
    h.walk = w;
    bool av_plus = false, av_minus = false;
    h.in_r_plus = restricted_forward_reachability(g, w, &av_plus);
    h.in_r_minus = restricted_backward_reachability(g, w, &av_minus);
    h.bridge_like = !av_plus && !av_minus;
    if (!h.bridge_like) { // one direction noticed it; both are G then
        std::fill(h.in_r_plus.begin(), h.in_r_plus.end(), 1);
        std::fill(h.in_r_minus.begin(), h.in_r_minus.end(), 1);
    }
    return h;
}

SplitArc split_single_arc(const Graph& g, ArcId e) {
    SplitArc s;
    for (NodeId v = 0; v < g.node_count(); ++v) s.graph.add_node(g.node_name(v));
    s.dummy = s.graph.add_node("x_" + g.arc_name(e));
    for (ArcId f = 0; f < g.arc_count(); ++f) {
        if (f == e)
            s.graph.add_arc(g.tail(e), s.dummy, g.arc_name(e));
        else
            s.graph.add_arc(g.tail(f), g.head(f), g.arc_name(f));
    }
    ArcId second = s.graph.add_arc(s.dummy, g.head(e), g.arc_name(e) + "'");
    s.walk.arcs = {e, second};
    return s;
}

HydroSccView hydro_scc_view(const Graph& g, const Hydrostructure& h) {
    if (!h.bridge_like) throw ModelError("SCC view is only defined for bridge-like walks");
    const Walk& w = h.walk;
    HydroSccView v;
    const std::size_t ne = g.element_count();
    v.sea_related.assign(ne, 0);
    v.cloud_related.assign(ne, 0);
    const std::size_t a = g.arc_elem(w.front()), b = g.arc_elem(w.back());

    // The sea-related SCC is the SCC of a among the elements of R+; when the
    // sea is more than a it is the sea plus the walk prefix to the last
    // split node. A self-loop a can form one on its own.
    auto scc_around = [&](const ElementSet& within, std::size_t seed, ElementSet& out) {
        std::vector<std::uint32_t> local(ne, kNone);
        std::vector<std::size_t> elems;
        for (std::size_t x = 0; x < ne; ++x)
            if (within[x]) {
                local[x] = static_cast<std::uint32_t>(elems.size());
                elems.push_back(x);
            }
        std::vector<std::vector<std::uint32_t>> adj(elems.size());
        for (ArcId e = 0; e < g.arc_count(); ++e) {
            std::size_t x = g.arc_elem(e);
            if (!within[x]) continue;
            if (within[g.tail(e)]) adj[local[g.tail(e)]].push_back(local[x]);
            if (within[g.head(e)]) adj[local[x]].push_back(local[g.head(e)]);
        }
        auto comp = scc_of(adj);
        std::size_t size = 0;
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (comp[i] == comp[local[seed]]) {
                out[elems[i]] = 1;
                ++size;
            }
        if (size > 1) return true;
        out[seed] = 0;
        return false;
    };
    v.has_sea_related = scc_around(h.in_r_plus, a, v.sea_related);
    v.has_cloud_related = scc_around(h.in_r_minus, b, v.cloud_related);

    // SCCs of the River subgraph.
    const std::size_t n = g.node_count();
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (ArcId e = 0; e < g.arc_count(); ++e) {
        NodeId t = g.tail(e), hd = g.head(e);
        if (h.part(g.arc_elem(e)) == Part::River && h.part(t) == Part::River && h.part(hd) == Part::River)
            adj[t].push_back(hd);
    }
    auto comp = scc_of(adj);
    std::unordered_map<std::uint32_t, std::uint32_t> index;
    v.river_scc_of.assign(ne, kNone);
    for (ArcId e = 0; e < g.arc_count(); ++e) {
        NodeId t = g.tail(e), hd = g.head(e);
        if (h.part(g.arc_elem(e)) != Part::River || h.part(t) != Part::River || h.part(hd) != Part::River)
            continue;
        if (comp[t] != comp[hd]) continue;
        auto [it, fresh] = index.emplace(comp[t], static_cast<std::uint32_t>(v.river_sccs.size()));
        if (fresh) v.river_sccs.emplace_back(ne, 0);
        v.river_sccs[it->second][g.arc_elem(e)] = 1;
        v.river_scc_of[g.arc_elem(e)] = it->second;
    }
    for (NodeId u = 0; u < n; ++u) {
        if (h.part(u) != Part::River) continue;
        if (auto it = index.find(comp[u]); it != index.end()) {
            v.river_sccs[it->second][u] = 1;
            v.river_scc_of[u] = it->second;
        }
    }
    return v;
}

ElementSet pattern_avoiding_reach(const Graph& g, const std::vector<ArcId>& pattern_in, ReachSeed seed,
                                  bool forward, const ArcSet* visible) {
    std::vector<ArcId> pattern = pattern_in;
    if (!forward) std::reverse(pattern.begin(), pattern.end());
    const std::size_t p = pattern.size();
    std::vector<std::size_t> fail(p, 0);
    for (std::size_t i = 1, k = 0; i < p; ++i) {
        while (k > 0 && pattern[i] != pattern[k]) k = fail[k - 1];
        if (pattern[i] == pattern[k]) ++k;
        fail[i] = k;
    }
    auto step = [&](std::size_t q, ArcId e) -> std::size_t {
        if (visible && !(*visible)[e]) return q;
        while (q > 0 && pattern[q] != e) q = fail[q - 1];
        return pattern[q] == e ? q + 1 : 0;
    };
    auto next_node = [&](ArcId e) { return forward ? g.head(e) : g.tail(e); };
    auto leave = [&](NodeId v) { return forward ? g.out_arcs(v) : g.in_arcs(v); };

    ElementSet r(g.element_count(), 0);
    if (p == 0) return r; // every walk contains the empty pattern
    std::vector<char> seen(g.node_count() * p, 0);
    std::vector<std::pair<NodeId, std::size_t>> queue;
    auto visit = [&](NodeId v, std::size_t q) {
        r[v] = 1;
        if (!seen[v * p + q]) {
            seen[v * p + q] = 1;
            queue.push_back({v, q});
        }
    };
    if (seed.is_arc) {
        std::size_t q = step(0, seed.id);
        if (q == p) return r;
        r[g.arc_elem(seed.id)] = 1;
        visit(next_node(seed.id), q);
    } else {
        visit(seed.id, 0);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        auto [v, q] = queue[qi];
        for (ArcId e : leave(v)) {
            std::size_t q2 = step(q, e);
            if (q2 == p) continue;
            r[g.arc_elem(e)] = 1;
            visit(next_node(e), q2);
        }
    }
    return r;
}

std::vector<std::vector<ArcId>> visible_adjacency(const Graph& g, const ArcSet& f_vis) {
    std::vector<std::vector<ArcId>> adj(g.arc_count());
    std::unordered_map<NodeId, std::vector<ArcId>> from_node;
    auto reach = [&](NodeId start) -> const std::vector<ArcId>& {
        if (auto it = from_node.find(start); it != from_node.end()) return it->second;
        std::vector<char> seen(g.node_count(), 0);
        std::vector<NodeId> queue{start};
        seen[start] = 1;
        std::vector<ArcId> found;
        for (std::size_t qi = 0; qi < queue.size(); ++qi)
            for (ArcId f : g.out_arcs(queue[qi])) {
                if (f_vis[f]) {
                    found.push_back(f);
                } else if (!seen[g.head(f)]) {
                    seen[g.head(f)] = 1;
                    queue.push_back(g.head(f));
                }
            }
        std::sort(found.begin(), found.end());
        found.erase(std::unique(found.begin(), found.end()), found.end());
        return from_node.emplace(start, std::move(found)).first->second;
    };
    for (ArcId e = 0; e < g.arc_count(); ++e)
        if (f_vis[e]) adj[e] = reach(g.head(e));
    return adj;
}

std::vector<ArcId> visible_subsequence(const Walk& w, const ArcSet& f_vis) {
    std::vector<ArcId> v;
    for (ArcId e : w.arcs)
        if (f_vis[e]) v.push_back(e);
    return v;
}

Hydrostructure build_visible_hydrostructure(const Graph& g, const Walk& w, const ArcSet& f_vis) {
    require_walk(g, w);
    if (!f_vis[w.front()] || !f_vis[w.back()]) throw ModelError("walk endpoints must be visible");
    Hydrostructure h;
    h.walk = w;
    auto pattern = visible_subsequence(w, f_vis);
    h.in_r_plus = pattern_avoiding_reach(g, pattern, {true, w.front()}, true, &f_vis);
    h.in_r_minus = pattern_avoiding_reach(g, pattern, {true, w.back()}, false, &f_vis);
    h.bridge_like = !h.in_r_plus[g.arc_elem(w.back())];
    return h;
}

} // namespace hydro
