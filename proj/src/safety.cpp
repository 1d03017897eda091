#include "hydro/safety.hpp"

#include <algorithm>
#include <numeric>

#include "hydro/errors.hpp"

namespace hydro {

namespace {

void say(std::string* why, std::string msg) {
    if (why) *why = std::move(msg);
}

bool all_set(const ArcSet& s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c != 0; });
}

bool none_set(const ArcSet& s) {
    return std::none_of(s.begin(), s.end(), [](char c) { return c != 0; });
}

bool is_finite(std::uint64_t k) { return k != kUnbounded; }

// Plain or visible flavour of the building blocks.
struct Ctx {
    const Graph& g;
    const ArcSet* vis = nullptr;

    Hydrostructure hydro(const Walk& w) const {
        return vis ? build_visible_hydrostructure(g, w, *vis) : build_hydrostructure(g, w);
    }
    WalkAnatomy anatomy(const Walk& w) const {
        return vis ? visible_heart_and_wings(g, w, *vis) : heart_and_wings(g, w);
    }
    std::vector<ArcId> pattern(const Walk& w) const { return vis ? visible_subsequence(w, *vis) : w.arcs; }
    ElementSet reach_from(const Walk& w, NodeId v, bool forward) const {
        return pattern_avoiding_reach(g, pattern(w), {false, v}, forward, vis);
    }
};

std::uint64_t river_cover(const Graph& g, const Hydrostructure& h) {
    return min_walk_cover(g, h.mask(Part::River), all_arcs(g)).size;
}

bool circular_ctx(const Ctx& c, const Walk& w, std::uint64_t k, std::string* why) {
    WalkAnatomy an = c.anatomy(w);
    if (an.trivial) {
        say(why, "trivial walk");
        return true;
    }
    Hydrostructure h = c.hydro(an.heart);
    if (!h.bridge_like) {
        say(why, "heart is avertible: its vapor is the whole graph");
        return false;
    }
    if (k == 1) {
        say(why, "vapor of the heart is a path");
        return true;
    }
    if (!h.empty(Part::River)) {
        say(why, "vapor of the heart is a path and its river is non-empty");
        return true;
    }
    say(why, "river of the heart is empty: two closed walks can cover sea and cloud separately");
    return false;
}

std::vector<NodeId> wing_nodes_left(const Graph& g, const Walk& wing) {
    std::vector<NodeId> v;
    for (ArcId e : wing.arcs) v.push_back(g.head(e));
    return v;
}

std::vector<NodeId> wing_nodes_right(const Graph& g, const Walk& wing) {
    std::vector<NodeId> v;
    for (ArcId e : wing.arcs) v.push_back(g.tail(e));
    return v;
}

bool contains(const std::vector<NodeId>& v, NodeId x) { return std::find(v.begin(), v.end(), x) != v.end(); }

bool linear_core_ctx(const Ctx& c, const Walk& w, std::uint64_t k, NodeId s, NodeId t, std::string* why) {
    const Graph& g = c.g;
    if (c.pattern(w).size() == 1) {
        say(why, "single arc");
        return true;
    }
    k = normalize_linear_k(g, k);
    Hydrostructure h = c.hydro(w);
    WalkAnatomy an = c.anatomy(w);
    if (!h.in_r_minus[s]) {
        say(why, "(b) s is not in R-");
        return true;
    }
    if (!h.in_r_plus[t]) {
        say(why, "(c) t is not in R+");
        return true;
    }
    if (an.trivial)
        for (std::size_t p = an.heart_begin; p < an.heart_end; ++p)
            if (!suffix_prefix_covered_at(g, w, p, s, t)) {
                say(why, "(d) heart arc " + g.arc_name(w.arcs[p]) + " is not s-t suffix-prefix covered");
                return true;
            }
    if (is_finite(k)) {
        auto size = river_cover(g, h);
        if (size > k) {
            say(why, "(a) the river needs " + (size == kInfinite ? std::string("unboundedly many")
                                                                 : std::to_string(size)) +
                         " walks");
            return true;
        }
    }
    say(why, "none of the conditions holds");
    return false;
}

bool linear_ctx(const Ctx& c, const Walk& w, std::uint64_t k, NodeId s, NodeId t, std::string* why) {
    const Graph& g = c.g;
    WalkAnatomy an = c.anatomy(w);
    if (an.trivial) return linear_core_ctx(c, w, k, s, t, why);
    k = normalize_linear_k(g, k);
    const Walk& heart = an.heart;
    Hydrostructure h = c.hydro(heart);
    if (!h.bridge_like) {
        say(why, "heart is avertible");
        return false;
    }
    std::string inner;
    if (!linear_core_ctx(c, heart, k, s, t, &inner)) {
        say(why, "heart is not safe: " + inner);
        return false;
    }
    if (is_finite(k)) {
        auto size = river_cover(g, h);
        if (size > k) {
            say(why, "wings (a): the river of the heart needs more than k walks");
            return true;
        }
    }
    auto left = wing_nodes_left(g, an.left_wing);
    auto right = wing_nodes_right(g, an.right_wing);
    auto z = internal_nodes(g, heart);
    bool s_left = contains(left, s), t_right = contains(right, t);
    if (!s_left && !t_right) {
        say(why, "heart safe and neither s nor t lies in the wings");
        return true;
    }
    if (s_left && t_right) {
        say(why, "s lies in the left wing and t in the right wing");
        return false;
    }
    if (s_left) {
        if (h.in_r_plus[t]) {
            say(why, "s in the left wing but t is in R+ of the heart");
            return false;
        }
        if (contains(z, s)) {
            say(why, "s in the left wing and inside the heart");
            return false;
        }
        say(why, "s in the left wing, t not in R+ of the heart, s not in the heart");
        return true;
    }
    if (h.in_r_minus[s]) {
        say(why, "t in the right wing but s is in R- of the heart");
        return false;
    }
    if (contains(z, t)) {
        say(why, "t in the right wing and inside the heart");
        return false;
    }
    say(why, "t in the right wing, s not in R- of the heart, t not in the heart");
    return true;
}

struct Split {
    SplitArc split;
    ArcSet f_cov;
    ArcSet f_vis;
};

Split split_with_sets(const Graph& g, ArcId e, const ArcSet& f_cov, const ArcSet* f_vis) {
    Split s{split_single_arc(g, e), f_cov, f_vis ? *f_vis : all_arcs(g)};
    s.f_cov.push_back(f_cov[e]);
    s.f_vis.push_back(s.f_vis[e]);
    return s;
}

bool covering_circular_ctx(const Ctx& c, const Walk& w, std::uint64_t k, const ArcSet& f, std::string* why) {
    const Graph& g = c.g;
    if (none_set(f)) {
        say(why, "empty covering set: nothing is safe");
        return false;
    }
    if (w.size() == 1) {
        Split sp = split_with_sets(g, w.front(), f, c.vis);
        Ctx c2{sp.split.graph, c.vis ? &sp.f_vis : nullptr};
        return covering_circular_ctx(c2, sp.split.walk, k, sp.f_cov, why);
    }
    if (!circular_ctx(c, w, 1, nullptr)) {
        say(why, "not 1-circular safe under full covering");
        return false;
    }
    WalkAnatomy an = c.anatomy(w);
    if (an.trivial)
        for (std::size_t p = an.heart_begin; p < an.heart_end; ++p)
            if (f[w.arcs[p]]) {
                say(why, "(c) trivial heart contains covering arc " + g.arc_name(w.arcs[p]));
                return true;
            }
    Hydrostructure h = c.hydro(an.trivial ? w : an.heart);
    if (!h.bridge_like) {
        say(why, "avertible trivial walk with an uncovered heart: one covered SCC");
        return false;
    }
    HydroSccView view = hydro_scc_view(g, h);
    std::uint64_t count = 0;
    for (const auto& scc : view.river_sccs) {
        bool covered = false;
        for (ArcId e = 0; e < g.arc_count(); ++e) covered |= f[e] && scc[g.arc_elem(e)];
        count += covered;
    }
    std::vector<ArcId> sea_f, cloud_f;
    for (ArcId e = 0; e < g.arc_count(); ++e) {
        if (!f[e]) continue;
        if (view.has_sea_related && view.sea_related[g.arc_elem(e)]) sea_f.push_back(e);
        if (view.has_cloud_related && view.cloud_related[g.arc_elem(e)]) cloud_f.push_back(e);
    }
    count += !sea_f.empty();
    count += !cloud_f.empty();
    if (!sea_f.empty() && sea_f == cloud_f) --count;
    if (is_finite(k) && k < count) {
        say(why, "(a) " + std::to_string(count) + " covered SCCs exceed k");
        return true;
    }
    // An arc outside every covered SCC cannot be reached by a closed walk
    // that stays inside one. Besides river arcs this catches a or b when the
    // sea or cloud is only that arc.
    for (ArcId e = 0; e < g.arc_count(); ++e) {
        std::size_t x = g.arc_elem(e);
        if (!f[e] || view.river_scc_of[x] != kNone) continue;
        if ((view.has_sea_related && view.sea_related[x]) || (view.has_cloud_related && view.cloud_related[x]))
            continue;
        say(why, "(b) covering arc " + g.arc_name(e) + " lies outside every covered SCC");
        return true;
    }
    say(why, std::to_string(count) + " covered SCCs can be covered separately");
    return false;
}

// Weakly connected components over the elements of `sub`.
std::vector<std::size_t> element_wcc(const Graph& g, const ElementSet& sub) {
    std::vector<std::size_t> parent(g.element_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto join = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
    for (ArcId e = 0; e < g.arc_count(); ++e) {
        std::size_t x = g.arc_elem(e);
        if (!sub[x]) continue;
        if (sub[g.tail(e)]) join(x, g.tail(e));
        if (sub[g.head(e)]) join(x, g.head(e));
    }
    for (std::size_t x = 0; x < parent.size(); ++x) parent[x] = find(x);
    return parent;
}

struct StView {
    Hydrostructure h;
    ElementSet r_plus_s, r_minus_t, sub, river;
};

StView st_view(const Ctx& c, const Walk& w, NodeId s, NodeId t) {
    StView v{c.hydro(w), c.reach_from(w, s, true), c.reach_from(w, t, false), {}, {}};
    const std::size_t ne = c.g.element_count();
    v.sub.assign(ne, 0);
    v.river.assign(ne, 0);
    for (std::size_t x = 0; x < ne; ++x) {
        v.sub[x] = v.r_plus_s[x] && v.r_minus_t[x];
        v.river[x] = v.sub[x] && v.h.part(x) == Part::River;
    }
    return v;
}

std::uint64_t st_river_cover(const Graph& g, const StView& v, const ArcSet& f, NodeId s, NodeId t) {
    CoverBoundary b{v.sub, {s}, {t}};
    return min_walk_cover(g, v.river, f, b).size;
}

bool covering_core_ctx(const Ctx& c, const Walk& w, std::uint64_t k, NodeId s, NodeId t, const ArcSet& f,
                       std::string* why) {
    const Graph& g = c.g;
    StView v = st_view(c, w, s, t);
    WalkAnatomy an = c.anatomy(w);
    auto comp = element_wcc(g, v.sub);
    if (!v.sub[s] || !v.sub[t] || comp[s] != comp[t]) {
        say(why, "(b) s and t are not together in the st-induced subgraph");
        return true;
    }
    for (ArcId e = 0; e < g.arc_count(); ++e)
        if (f[e] && (!v.sub[g.arc_elem(e)] || comp[g.arc_elem(e)] != comp[s])) {
            say(why, "(b) covering arc " + g.arc_name(e) + " is outside the WCC of s and t");
            return true;
        }
    if (an.trivial)
        for (std::size_t p = an.heart_begin; p < an.heart_end; ++p)
            if (f[w.arcs[p]] && !suffix_prefix_covered_at(g, w, p, s, t)) {
                say(why, "(c) covering heart arc " + g.arc_name(w.arcs[p]) + " is not suffix-prefix covered");
                return true;
            }
    if (is_finite(k)) {
        auto size = st_river_cover(g, v, f, s, t);
        if (size > k) {
            say(why, "(a) covering arcs of the st-induced river need more than k walks");
            return true;
        }
    }
    say(why, "none of the covering conditions holds");
    return false;
}

bool covering_linear_ctx(const Ctx& c, const Walk& w, std::uint64_t k, NodeId s, NodeId t, const ArcSet& f,
                         std::string* why) {
    const Graph& g = c.g;
    if (none_set(f)) {
        say(why, "empty covering set: nothing is safe");
        return false;
    }
    if (w.size() == 1) {
        Split sp = split_with_sets(g, w.front(), f, c.vis);
        Ctx c2{sp.split.graph, c.vis ? &sp.f_vis : nullptr};
        return covering_linear_ctx(c2, sp.split.walk, k, s, t, sp.f_cov, why);
    }
    if (!circular_ctx(c, w, 1, nullptr)) {
        say(why, "not 1-circular safe under full covering");
        return false;
    }
    k = normalize_linear_k(g, k);
    WalkAnatomy an = c.anatomy(w);
    if (an.trivial) return covering_core_ctx(c, w, k, s, t, f, why);

    const Walk& heart = an.heart;
    std::string inner;
    if (!covering_core_ctx(c, heart, k, s, t, f, &inner)) {
        say(why, "heart is not safe: " + inner);
        return false;
    }
    StView v = st_view(c, heart, s, t);
    if (is_finite(k) && st_river_cover(g, v, f, s, t) > k) {
        say(why, "wings (a): covering arcs of the st-induced river need more than k walks");
        return true;
    }
    auto left = wing_nodes_left(g, an.left_wing);
    auto right = wing_nodes_right(g, an.right_wing);
    bool s_left = contains(left, s), t_right = contains(right, t);
    if (!s_left && !t_right) {
        say(why, "heart safe and neither s nor t lies in the wings");
        return true;
    }
    if (s_left && t_right) {
        say(why, "s lies in the left wing and t in the right wing");
        return false;
    }
    if (s_left) {
        if (v.h.in_r_plus[t]) {
            say(why, "s in the left wing but t is in R+ of the heart");
            return false;
        }
        // suffix of the left wing from the first occurrence of s
        std::size_t from = std::find(left.begin(), left.end(), s) - left.begin();
        // A walk may start at s inside the wing and run through the heart and
        // the right wing without completing w.
        ElementSet keep = v.r_minus_t;
        for (std::size_t i = from + 1; i < an.left_wing.size(); ++i) keep[g.arc_elem(an.left_wing.arcs[i])] = 1;
        for (ArcId e : heart.arcs) keep[g.arc_elem(e)] = 1;
        for (ArcId e : an.right_wing.arcs) keep[g.arc_elem(e)] = 1;
        for (ArcId e = 0; e < g.arc_count(); ++e)
            if (f[e] && !keep[g.arc_elem(e)]) {
                say(why, "s in the left wing and covering arc " + g.arc_name(e) + " forces the whole wing");
                return true;
            }
        say(why, "s in the left wing and every covering arc is reachable without the wing prefix");
        return false;
    }
    if (v.h.in_r_minus[s]) {
        say(why, "t in the right wing but s is in R- of the heart");
        return false;
    }
    std::size_t upto = right.size() - 1 - (std::find(right.rbegin(), right.rend(), t) - right.rbegin());
    ElementSet keep = v.r_plus_s;
    for (std::size_t i = 0; i < upto; ++i) keep[g.arc_elem(an.right_wing.arcs[i])] = 1;
    for (ArcId e : heart.arcs) keep[g.arc_elem(e)] = 1;
    for (ArcId e : an.left_wing.arcs) keep[g.arc_elem(e)] = 1;
    for (ArcId e = 0; e < g.arc_count(); ++e)
        if (f[e] && !keep[g.arc_elem(e)]) {
            say(why, "t in the right wing and covering arc " + g.arc_name(e) + " forces the whole wing");
            return true;
        }
    say(why, "t in the right wing and every covering arc is reachable without the wing suffix");
    return false;
}

void reject_cycle(const Graph& g) {
    if (g.is_cycle()) throw ModelError("safety is not defined on a graph that is a single cycle");
}

} // namespace

std::string model_tag(const SafetyModel& m) {
    std::string tag = m.shape == Shape::Circular ? "circular" : "linear";
    tag += ":k=" + (m.k == kUnbounded ? std::string("inf") : std::to_string(m.k));
    if (m.f_cov && !all_set(*m.f_cov)) tag += ":fcov";
    if (m.f_vis && !all_set(*m.f_vis)) tag += ":fvis";
    return tag;
}

std::uint64_t normalize_linear_k(const Graph& g, std::uint64_t k) {
    return k >= g.arc_count() ? kUnbounded : k;
}

bool verify_circular(const Graph& g, const Walk& w, std::uint64_t k, std::string* why) {
    require_walk(g, w);
    reject_cycle(g);
    return circular_ctx({g}, w, k, why);
}

std::pair<Walk, Walk> split_k_circular(const Graph& g, const Walk& w, std::uint64_t k) {
    require_walk(g, w);
    if (k < 2) throw ModelError("split_k_circular needs k >= 2");
    WalkAnatomy an = heart_and_wings(g, w);
    if (an.trivial || !verify_circular(g, w, 1)) throw ModelError("walk must be non-trivial and 1-circular safe");
    if (verify_circular(g, w, k)) throw ModelError("walk is already k-circular safe");
    return {w.slice(0, an.heart_end - 1), w.slice(an.heart_begin + 1, w.size())};
}

bool suffix_prefix_covered_at(const Graph& g, const Walk& w, std::size_t pos, NodeId s, NodeId t) {
    // Internal node i (1-based over arcs) is tail(w_i).
    std::size_t s_first = kNone, t_last = kNone;
    for (std::size_t i = 1; i < w.size(); ++i) {
        NodeId z = g.tail(w.arcs[i]);
        if (z == s && s_first == kNone) s_first = i;
        if (z == t) t_last = i;
    }
    if (s_first != kNone && pos >= s_first) return true;
    if (t_last != kNone && pos < t_last) return true;
    return false;
}

bool suffix_prefix_covered(const Graph& g, const Walk& w, ArcId e, NodeId s, NodeId t) {
    WalkAnatomy an = heart_and_wings(g, w);
    for (std::size_t p = an.heart_begin; p < an.heart_end; ++p)
        if (w.arcs[p] == e) return suffix_prefix_covered_at(g, w, p, s, t);
    throw ModelError("arc is not in the heart of the walk");
}

bool verify_linear_core(const Graph& g, const Walk& w, std::uint64_t k, NodeId s, NodeId t, std::string* why) {
    require_walk(g, w);
    reject_cycle(g);
    return linear_core_ctx({g}, w, k, s, t, why);
}

bool verify_linear(const Graph& g, const Walk& w, std::uint64_t k, NodeId s, NodeId t, std::string* why) {
    require_walk(g, w);
    reject_cycle(g);
    if (s >= g.node_count() || t >= g.node_count()) throw ModelError("s or t is not a node");
    return linear_ctx({g}, w, k, s, t, why);
}

SequenceDecomposition sequence_decomposition(const Graph& g, NodeId s, NodeId t) {
    SccDecomposition scc = scc_decompose(g);
    const std::size_t c = scc.count;
    SequenceDecomposition d;
    d.component = scc.component;
    d.arc_is_intra = scc.arc_is_intra;
    d.nodes.assign(c, {});
    for (NodeId v = 0; v < g.node_count(); ++v) d.nodes[scc.component[v]].push_back(v);
    d.inter.assign(c > 0 ? c - 1 : 0, kNone);
    for (ArcId e = 0; e < g.arc_count(); ++e) {
        if (scc.arc_is_intra[e]) continue;
        auto from = scc.component[g.tail(e)], to = scc.component[g.head(e)];
        if (to != from + 1) throw InfeasibleError("the SCCs do not form a path");
        if (d.inter[from] != kNone) throw InfeasibleError("two arcs join the same pair of consecutive SCCs");
        d.inter[from] = e;
    }
    for (ArcId e : d.inter)
        if (e == kNone) throw InfeasibleError("the SCCs do not form a path");
    if (scc.component[s] != 0 || scc.component[t] != c - 1)
        throw InfeasibleError("s must lie in the source SCC and t in the sink SCC");
    d.entry.resize(c);
    d.exit.resize(c);
    d.form.resize(c);
    for (std::size_t i = 0; i < c; ++i) {
        d.entry[i] = i == 0 ? s : g.head(d.inter[i - 1]);
        d.exit[i] = i + 1 == c ? t : g.tail(d.inter[i]);
    }
    std::vector<std::size_t> arcs(c, 0);
    std::vector<char> simple(c, 1);
    std::vector<std::size_t> in(g.node_count(), 0), out(g.node_count(), 0);
    for (ArcId e = 0; e < g.arc_count(); ++e)
        if (scc.arc_is_intra[e]) {
            ++arcs[scc.component[g.tail(e)]];
            ++out[g.tail(e)];
            ++in[g.head(e)];
        }
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (in[v] != 1 || out[v] != 1) simple[scc.component[v]] = 0;
    for (std::size_t i = 0; i < c; ++i)
        d.form[i] = arcs[i] == 0 ? SccForm::SingleNode : simple[i] ? SccForm::Cycle : SccForm::General;
    return d;
}

Walk inter_scc_univocal_extension(const Graph& g, const SequenceDecomposition& d, ArcId e) {
    if (d.arc_is_intra[e]) throw ModelError("arc is not inter-SCC");
    const std::size_t c = d.nodes.size();
    std::vector<ArcId> y{e};
    auto ci = d.component[g.tail(e)];
    while (d.form[ci] == SccForm::SingleNode && ci > 0) {
        y.insert(y.begin(), d.inter[ci - 1]);
        --ci;
    }
    const auto first_scc = ci;
    ci = d.component[g.head(e)];
    while (d.form[ci] == SccForm::SingleNode && ci + 1 < c) {
        y.push_back(d.inter[ci]);
        ++ci;
    }
    const auto last_scc = ci;

    auto intra_out = [&](NodeId v) {
        std::vector<ArcId> r;
        for (ArcId a : g.out_arcs(v))
            if (d.arc_is_intra[a]) r.push_back(a);
        return r;
    };
    auto intra_in = [&](NodeId v) {
        std::vector<ArcId> r;
        for (ArcId a : g.in_arcs(v))
            if (d.arc_is_intra[a]) r.push_back(a);
        return r;
    };

    // Z: univocal inside the SCC after Y, at most two visits to its exit.
    std::vector<ArcId> z;
    {
        NodeId cur = g.head(y.back());
        NodeId exit = d.exit[last_scc];
        int visits = cur == exit;
        for (std::size_t steps = 0; visits < 2 && steps <= g.arc_count(); ++steps) {
            auto outs = intra_out(cur);
            if (outs.size() != 1) break;
            z.push_back(outs[0]);
            cur = g.head(outs[0]);
            visits += cur == exit;
        }
    }
    // X: R-univocal inside the SCC before Y, at most two visits to its entry.
    std::vector<ArcId> x;
    {
        NodeId cur = g.tail(y.front());
        NodeId entry = d.entry[first_scc];
        int visits = cur == entry;
        for (std::size_t steps = 0; visits < 2 && steps <= g.arc_count(); ++steps) {
            auto ins = intra_in(cur);
            if (ins.size() != 1) break;
            x.push_back(ins[0]);
            cur = g.tail(ins[0]);
            visits += cur == entry;
        }
        std::reverse(x.begin(), x.end());
    }
    Walk u;
    u.arcs = x;
    u.arcs.insert(u.arcs.end(), y.begin(), y.end());
    u.arcs.insert(u.arcs.end(), z.begin(), z.end());
    return u;
}

bool verify_linear_general(const Graph& g, const Walk& w, std::uint64_t k, NodeId s, NodeId t, std::string* why) {
    require_walk(g, w);
    if (s >= g.node_count() || t >= g.node_count()) throw ModelError("s or t is not a node");
    if (g.is_strongly_connected()) return verify_linear(g, w, k, s, t, why);
    k = normalize_linear_k(g, k);
    if (k == 1) {
        SequenceDecomposition d = sequence_decomposition(g, s, t);
        for (ArcId e : d.inter)
            if (is_subwalk(w, inter_scc_univocal_extension(g, d, e))) {
                say(why, "subwalk of the inter-SCC univocal extension of " + g.arc_name(e));
                return true;
            }
        auto comp = d.component[g.tail(w.front())];
        for (ArcId e : w.arcs)
            if (!d.arc_is_intra[e] || d.component[g.tail(e)] != comp) {
                say(why, "crosses SCCs outside every inter-SCC univocal extension");
                return false;
            }
        if (d.form[comp] != SccForm::General) {
            say(why, "inside a cycle SCC but outside the inter-SCC univocal extensions");
            return false;
        }
        std::vector<char> keep(g.node_count(), 0);
        for (NodeId v : d.nodes[comp]) keep[v] = 1;
        Subgraph sub = induced_subgraph(g, keep);
        Walk sw;
        for (ArcId e : w.arcs) sw.arcs.push_back(sub.arc_to_sub[e]);
        std::string inner;
        bool ok = verify_linear(sub.graph, sw, 1, sub.node_to_sub[d.entry[comp]], sub.node_to_sub[d.exit[comp]],
                                &inner);
        say(why, "inside its SCC between entry and exit points: " + inner);
        return ok;
    }
    if (k != kUnbounded) throw ModelError("non-strongly-connected linear models support only k=1 and k=inf");
    Graph closed = g;
    closed.add_arc(t, s, "t>s");
    if (!closed.is_strongly_connected()) throw InfeasibleError("the arcs cannot be covered by s-t walks");
    if (closed.is_cycle()) {
        say(why, "the graph is a single s-t path, which every solution traverses whole");
        return true;
    }
    std::string inner;
    bool ok = verify_linear(closed, w, kUnbounded, s, t, &inner);
    say(why, "with the arc (t,s) added: " + inner);
    return ok;
}

bool verify_covering_circular(const Graph& g, const Walk& w, std::uint64_t k, const ArcSet& f_cov,
                              std::string* why) {
    require_walk(g, w);
    reject_cycle(g);
    return covering_circular_ctx({g}, w, k, f_cov, why);
}

bool verify_covering_linear(const Graph& g, const Walk& w, std::uint64_t k, NodeId s, NodeId t,
                            const ArcSet& f_cov, std::string* why) {
    require_walk(g, w);
    reject_cycle(g);
    if (s >= g.node_count() || t >= g.node_count()) throw ModelError("s or t is not a node");
    return covering_linear_ctx({g}, w, k, s, t, f_cov, why);
}

WalkAnatomy visible_heart_and_wings(const Graph& g, const Walk& w, const ArcSet& f_vis) {
    auto adj = visible_adjacency(g, f_vis);
    std::vector<std::size_t> vin(g.arc_count(), 0);
    for (ArcId e = 0; e < g.arc_count(); ++e)
        for (ArcId f : adj[e]) ++vin[f];
    auto join = [&](ArcId e) {
        return std::any_of(adj[e].begin(), adj[e].end(), [&](ArcId f) { return vin[f] > 1; });
    };
    auto split = [&](ArcId e) {
        for (ArcId p = 0; p < g.arc_count(); ++p)
            if (adj[p].size() > 1 && std::find(adj[p].begin(), adj[p].end(), e) != adj[p].end()) return true;
        return false;
    };
    std::vector<std::size_t> pos;
    for (std::size_t p = 0; p < w.size(); ++p)
        if (f_vis[w.arcs[p]]) pos.push_back(p);
    if (pos.empty()) throw ModelError("walk has no visible arc");
    std::size_t i = pos.front(), j = pos.back();
    for (std::size_t p : pos)
        if (join(w.arcs[p])) {
            i = p;
            break;
        }
    for (auto it = pos.rbegin(); it != pos.rend(); ++it)
        if (split(w.arcs[*it])) {
            j = *it;
            break;
        }
    WalkAnatomy a;
    a.trivial = i >= j;
    a.heart_begin = a.trivial ? j : i;
    a.heart_end = (a.trivial ? i : j) + 1;
    a.left_wing = w.slice(0, a.heart_begin);
    a.heart = w.slice(a.heart_begin, a.heart_end);
    a.right_wing = w.slice(a.heart_end, w.size());
    return a;
}

bool verify_visible(const Graph& g, const Walk& w, const SafetyModel& m, std::string* why) {
    require_walk(g, w);
    reject_cycle(g);
    ArcSet vis = m.f_vis ? *m.f_vis : all_arcs(g);
    if (!vis[w.front()] || !vis[w.back()]) throw ModelError("walk endpoints must be visible");
    if (!g.is_strongly_connected()) throw ModelError("visibility models need a strongly connected graph");
    Ctx c{g, &vis};
    bool covering = m.f_cov && !all_set(*m.f_cov);
    if (m.shape == Shape::Circular)
        return covering ? covering_circular_ctx(c, w, m.k, *m.f_cov, why) : circular_ctx(c, w, m.k, why);
    return covering ? covering_linear_ctx(c, w, m.k, m.s, m.t, *m.f_cov, why)
                    : linear_ctx(c, w, m.k, m.s, m.t, why);
}

bool verify(const Graph& g, const Walk& w, const SafetyModel& m, std::string* why) {
    require_walk(g, w);
    reject_cycle(g);
    if (m.f_cov && none_set(*m.f_cov)) {
        say(why, "empty covering set: nothing is safe");
        return false;
    }
    if (m.f_vis && !all_set(*m.f_vis)) return verify_visible(g, w, m, why);
    bool covering = m.f_cov && !all_set(*m.f_cov);
    bool strong = g.is_strongly_connected();
    if (m.shape == Shape::Circular) {
        if (!strong) throw InfeasibleError("circular models need a strongly connected graph");
        return covering ? verify_covering_circular(g, w, m.k, *m.f_cov, why) : verify_circular(g, w, m.k, why);
    }
    if (!strong) {
        if (covering) throw ModelError("subset covering needs a strongly connected graph");
        return verify_linear_general(g, w, m.k, m.s, m.t, why);
    }
    return covering ? verify_covering_linear(g, w, m.k, m.s, m.t, *m.f_cov, why)
                    : verify_linear(g, w, m.k, m.s, m.t, why);
}

} // namespace hydro
