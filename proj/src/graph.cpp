#include "hydro/graph.hpp"

#include <algorithm>
#include <stack>

#include "hydro/errors.hpp"

namespace hydro {

Graph::Graph(std::size_t nodes) {
    for (std::size_t i = 0; i < nodes; ++i) add_node();
}

NodeId Graph::add_node(std::string name) {
    auto id = static_cast<NodeId>(out_.size());
    out_.emplace_back();
    in_.emplace_back();
    if (!name.empty()) node_index_.emplace(name, id);
    node_names_.push_back(std::move(name));
    return id;
}

ArcId Graph::add_arc(NodeId tail, NodeId head, std::string name) {
    auto id = static_cast<ArcId>(arcs_.size());
    arcs_.push_back({tail, head});
    out_[tail].push_back(id);
    in_[head].push_back(id);
    if (!name.empty()) arc_index_.emplace(name, id);
    arc_names_.push_back(std::move(name));
    return id;
}

std::string Graph::node_name(NodeId v) const {
    if (!node_names_[v].empty()) return node_names_[v];
    return "n" + std::to_string(v);
}

std::string Graph::arc_name(ArcId e) const {
    if (!arc_names_[e].empty()) return arc_names_[e];
    return "e" + std::to_string(e);
}

std::string Graph::elem_name(std::size_t x) const {
    return elem_is_arc(x) ? arc_name(elem_arc(x)) : node_name(static_cast<NodeId>(x));
}

std::optional<NodeId> Graph::find_node(const std::string& name) const {
    if (auto it = node_index_.find(name); it != node_index_.end()) return it->second;
    for (NodeId v = 0; v < node_count(); ++v)
        if (node_names_[v].empty() && node_name(v) == name) return v;
    return std::nullopt;
}

std::optional<ArcId> Graph::find_arc(const std::string& name) const {
    if (auto it = arc_index_.find(name); it != arc_index_.end()) return it->second;
    for (ArcId e = 0; e < arc_count(); ++e)
        if (arc_names_[e].empty() && arc_name(e) == name) return e;
    return std::nullopt;
}

Graph Graph::reversed() const {
    Graph r;
    for (NodeId v = 0; v < node_count(); ++v) r.add_node(node_names_[v]);
    for (ArcId e = 0; e < arc_count(); ++e) r.add_arc(arcs_[e].head, arcs_[e].tail, arc_names_[e]);
    return r;
}

bool Graph::is_strongly_connected() const {
    if (node_count() == 0) return false;
    std::size_t count = 0;
    std::vector<std::vector<std::uint32_t>> adj(node_count());
    for (const auto& a : arcs_) adj[a.tail].push_back(a.head);
    scc_of(adj, &count);
    return count == 1;
}

bool Graph::is_cycle() const {
    if (arcs_.empty()) return false;
    for (NodeId v = 0; v < node_count(); ++v)
        if (in_[v].size() != 1 || out_[v].size() != 1) return false;
    return is_strongly_connected();
}

ArcSet all_arcs(const Graph& g) { return ArcSet(g.arc_count(), 1); }

ArcSet arc_set(const Graph& g, std::initializer_list<ArcId> arcs) {
    ArcSet s(g.arc_count(), 0);
    for (ArcId e : arcs) s[e] = 1;
    return s;
}

Walk Walk::slice(std::size_t from, std::size_t to) const {
    Walk w;
    w.arcs.assign(arcs.begin() + static_cast<std::ptrdiff_t>(from),
                  arcs.begin() + static_cast<std::ptrdiff_t>(to));
    return w;
}

bool is_walk_in(const Graph& g, const Walk& w) {
    if (w.arcs.empty()) return false;
    for (ArcId e : w.arcs)
        if (e >= g.arc_count()) return false;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (g.head(w.arcs[i - 1]) != g.tail(w.arcs[i])) return false;
    if (w.closed && (w.size() < 2 || g.head(w.back()) != g.tail(w.front()))) return false;
    return true;
}

void require_walk(const Graph& g, const Walk& w) {
    if (!is_walk_in(g, w)) throw ModelError("not a walk in the graph");
}

std::vector<NodeId> internal_nodes(const Graph& g, const Walk& w) {
    std::vector<NodeId> z;
    for (std::size_t i = 1; i < w.size(); ++i) z.push_back(g.tail(w.arcs[i]));
    return z;
}

WalkAnatomy heart_and_wings(const Graph& g, const Walk& w) {
    const std::size_t len = w.size();
    std::size_t i = 0;
    std::size_t j = len - 1;
    for (std::size_t p = 0; p < len; ++p)
        if (g.is_join_arc(w.arcs[p])) {
            i = p;
            break;
        }
    for (std::size_t p = len; p-- > 0;)
        if (g.is_split_arc(w.arcs[p])) {
            j = p;
            break;
        }
    WalkAnatomy a;
    a.trivial = i >= j;
    a.heart_begin = a.trivial ? j : i;
    a.heart_end = (a.trivial ? i : j) + 1;
    a.left_wing = w.slice(0, a.heart_begin);
    a.heart = w.slice(a.heart_begin, a.heart_end);
    a.right_wing = w.slice(a.heart_end, len);
    return a;
}

Walk univocal_extension(const Graph& g, const Walk& w) {
    std::vector<ArcId> left;
    NodeId v = g.tail(w.front());
    // In a non-cycle strongly connected graph both loops stop on their own;
    // the step cap only protects against cycle components.
    for (std::size_t steps = 0; g.in_degree(v) == 1 && steps < g.arc_count(); ++steps) {
        ArcId e = g.in_arcs(v)[0];
        left.push_back(e);
        v = g.tail(e);
    }
    Walk u;
    u.arcs.assign(left.rbegin(), left.rend());
    u.arcs.insert(u.arcs.end(), w.arcs.begin(), w.arcs.end());
    v = g.head(w.back());
    for (std::size_t steps = 0; g.out_degree(v) == 1 && steps < g.arc_count(); ++steps) {
        ArcId e = g.out_arcs(v)[0];
        u.arcs.push_back(e);
        v = g.head(e);
    }
    return u;
}

bool is_subwalk(const Walk& inner, const Walk& outer) {
    const std::size_t n = inner.size();
    const std::size_t m = outer.size();
    if (n == 0) return true;
    if (m == 0) return false;
    if (!outer.closed) {
        if (n > m) return false;
        return std::search(outer.arcs.begin(), outer.arcs.end(), inner.arcs.begin(),
                           inner.arcs.end()) != outer.arcs.end();
    }
    for (std::size_t p = 0; p < m; ++p) {
        std::size_t k = 0;
        while (k < n && inner.arcs[k] == outer.arcs[(p + k) % m]) ++k;
        if (k == n) return true;
    }
    return false;
}

std::vector<Walk> maximal_unitigs(const Graph& g) {
    // An arc continues into the next one when its head has in- and
    // out-degree one.
    auto through = [&](NodeId v) { return g.in_degree(v) == 1 && g.out_degree(v) == 1; };
    std::vector<char> used(g.arc_count(), 0);
    std::vector<Walk> out;
    for (ArcId e = 0; e < g.arc_count(); ++e) {
        if (used[e] || through(g.tail(e))) continue;
        Walk w;
        ArcId cur = e;
        while (true) {
            w.arcs.push_back(cur);
            used[cur] = 1;
            NodeId h = g.head(cur);
            if (!through(h)) break;
            cur = g.out_arcs(h)[0];
        }
        out.push_back(std::move(w));
    }
    // Whatever is left lies on isolated cycles of through-nodes.
    for (ArcId e = 0; e < g.arc_count(); ++e) {
        if (used[e]) continue;
        Walk w;
        w.closed = true;
        ArcId cur = e;
        while (!used[cur]) {
            used[cur] = 1;
            w.arcs.push_back(cur);
            cur = g.out_arcs(g.head(cur))[0];
        }
        out.push_back(std::move(w));
    }
    return out;
}

std::vector<std::uint32_t> scc_of(const std::vector<std::vector<std::uint32_t>>& adj,
                                  std::size_t* count) {
    // Iterative Tarjan. Tarjan emits components in reverse topological
    // order, so ids are flipped at the end.
    const std::size_t n = adj.size();
    std::vector<std::uint32_t> index(n, kNone), low(n, 0), comp(n, kNone);
    std::vector<std::uint32_t> stack;
    std::vector<char> on_stack(n, 0);
    std::vector<std::pair<std::uint32_t, std::size_t>> call;
    std::uint32_t next = 0, found = 0;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != kNone) continue;
        call.push_back({root, 0});
        index[root] = low[root] = next++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& [v, pos] = call.back();
            if (pos < adj[v].size()) {
                std::uint32_t w = adj[v][pos++];
                if (index[w] == kNone) {
                    index[w] = low[w] = next++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            std::uint32_t done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = found;
                } while (w != done);
                ++found;
            }
        }
    }
    for (auto& c : comp) c = found - 1 - c;
    if (count) *count = found;
    return comp;
}

SccDecomposition scc_decompose(const Graph& g) {
    std::vector<std::vector<std::uint32_t>> adj(g.node_count());
    for (const auto& a : g.arcs()) adj[a.tail].push_back(a.head);
    SccDecomposition d;
    d.component = scc_of(adj, &d.count);
    d.dag_out.assign(d.count, {});
    d.arc_is_intra.assign(g.arc_count(), 0);
    for (ArcId e = 0; e < g.arc_count(); ++e) {
        auto ct = d.component[g.tail(e)], ch = d.component[g.head(e)];
        if (ct == ch) {
            d.arc_is_intra[e] = 1;
        } else {
            auto& o = d.dag_out[ct];
            if (std::find(o.begin(), o.end(), ch) == o.end()) o.push_back(ch);
        }
    }
    for (auto& o : d.dag_out) std::sort(o.begin(), o.end());
    return d;
}

NodeCentric node_centric_transform(const Graph& g, const std::vector<NodeId>& marked) {
    NodeCentric nc;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        nc.graph.add_node(g.node_name(v) + "_in");
        nc.graph.add_node(g.node_name(v) + "_out");
    }
    for (NodeId v = 0; v < g.node_count(); ++v)
        nc.node_arc.push_back(nc.graph.add_arc(2 * v, 2 * v + 1, g.node_name(v)));
    for (ArcId e = 0; e < g.arc_count(); ++e)
        nc.arc_image.push_back(nc.graph.add_arc(2 * g.tail(e) + 1, 2 * g.head(e), g.arc_name(e)));
    nc.marked.assign(nc.graph.arc_count(), 0);
    for (NodeId v : marked) nc.marked[nc.node_arc[v]] = 1;
    return nc;
}

StSets st_sets_transform(const Graph& g, const std::vector<NodeId>& sources,
                         const std::vector<NodeId>& targets) {
    if (sources.empty() || targets.empty()) throw ModelError("source and target sets must be non-empty");
    StSets r;
    for (NodeId v = 0; v < g.node_count(); ++v) r.graph.add_node(g.node_name(v));
    for (ArcId e = 0; e < g.arc_count(); ++e) r.graph.add_arc(g.tail(e), g.head(e), g.arc_name(e));
    r.s = r.graph.add_node("s*");
    r.t = r.graph.add_node("t*");
    for (NodeId v : sources) r.graph.add_arc(r.s, v, "s*>" + g.node_name(v));
    for (NodeId v : targets) r.graph.add_arc(v, r.t, g.node_name(v) + ">t*");
    r.f_cov.assign(r.graph.arc_count(), 0);
    for (ArcId e = 0; e < g.arc_count(); ++e) r.f_cov[e] = 1;
    return r;
}

Subgraph induced_subgraph(const Graph& g, const std::vector<char>& keep_node,
                          const std::vector<char>* keep_arc) {
    Subgraph s;
    s.node_to_sub.assign(g.node_count(), kNone);
    s.arc_to_sub.assign(g.arc_count(), kNone);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!keep_node[v]) continue;
        s.node_to_sub[v] = s.graph.add_node(g.node_name(v));
        s.sub_to_node.push_back(v);
    }
    for (ArcId e = 0; e < g.arc_count(); ++e) {
        if (keep_arc && !(*keep_arc)[e]) continue;
        if (!keep_node[g.tail(e)] || !keep_node[g.head(e)]) continue;
        s.arc_to_sub[e] = s.graph.add_arc(s.node_to_sub[g.tail(e)], s.node_to_sub[g.head(e)], g.arc_name(e));
        s.sub_to_arc.push_back(e);
    }
    return s;
}

} // namespace hydro
