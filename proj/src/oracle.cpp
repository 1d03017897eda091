#include "hydro/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "hydro/errors.hpp"

namespace hydro {

namespace {

// delta[q][a]: length of the longest prefix of p that is a suffix of
// p[0..q) + a. Invisible arcs leave the state alone. The accept state has
// no outgoing transitions; callers never step from it.
std::vector<std::vector<std::uint32_t>> matcher(const std::vector<ArcId>& p, std::size_t arcs,
                                                const ArcSet* visible) {
    const std::size_t len = p.size();
    std::vector<std::vector<std::uint32_t>> delta(len, std::vector<std::uint32_t>(arcs, 0));
    for (std::size_t q = 0; q < len; ++q)
        for (ArcId a = 0; a < arcs; ++a) {
            if (visible && !(*visible)[a]) {
                delta[q][a] = static_cast<std::uint32_t>(q);
                continue;
            }
            std::vector<ArcId> text(p.begin(), p.begin() + q);
            text.push_back(a);
            for (std::size_t k = std::min(len, text.size());; --k) {
                if (std::equal(p.begin(), p.begin() + k, text.end() - k)) {
                    delta[q][a] = static_cast<std::uint32_t>(k);
                    break;
                }
                if (k == 0) break;
            }
        }
    return delta;
}

std::vector<ArcId> visible_only(const Walk& w, const ArcSet& vis) {
    std::vector<ArcId> p;
    for (ArcId e : w.arcs)
        if (vis[e]) p.push_back(e);
    return p;
}

} // namespace

SafetyOracle::SafetyOracle(const Graph& g, const Walk& w, const ArcSet& f_cov, const ArcSet& f_vis,
                           const OracleLimits& limits)
    : g_(g), limits_(limits) {
    if (g.arc_count() > limits.max_arcs) throw ModelError("oracle refuses graphs with more than " +
                                                          std::to_string(limits.max_arcs) + " arcs");
    if (w.size() > limits.max_walk) throw ModelError("oracle refuses walks longer than " +
                                                     std::to_string(limits.max_walk));
    if (!is_walk_in(g, w)) throw ModelError("not a walk in the graph");
    auto p = visible_only(w, f_vis);
    if (p.empty()) throw ModelError("walk has no visible arc");
    accept_ = static_cast<std::uint32_t>(p.size());
    delta_ = matcher(p, g.arc_count(), &f_vis);

    bit_.assign(g.arc_count(), kNone);
    for (ArcId e = 0; e < g.arc_count(); ++e)
        if (f_cov[e]) bit_[e] = nbits_++;
    if (nbits_ > limits.max_required) throw ModelError("oracle refuses more than " +
                                                       std::to_string(limits.max_required) + " required arcs");
    full_ = (1u << nbits_) - 1;

    // Closed walks: a cycle (v,q) -> (v,q) of the product that never accepts.
    const std::size_t n = g.node_count(), states = accept_, masks = std::size_t{1} << nbits_;
    closed_masks_.assign(masks, 0);
    std::vector<char> seen(n * states * masks);
    auto id = [&](NodeId v, std::uint32_t q, std::uint32_t m) { return (v * states + q) * masks + m; };
    for (NodeId v = 0; v < n; ++v)
        for (std::uint32_t q = 0; q < states; ++q) {
            std::fill(seen.begin(), seen.end(), 0);
            std::deque<std::tuple<NodeId, std::uint32_t, std::uint32_t>> queue{{v, q, 0}};
            seen[id(v, q, 0)] = 1;
            while (!queue.empty()) {
                auto [x, qs, m] = queue.front();
                queue.pop_front();
                for (ArcId e : g.out_arcs(x)) {
                    std::uint32_t q2 = delta_[qs][e];
                    if (q2 == accept_) continue;
                    std::uint32_t m2 = bit_[e] == kNone ? m : m | (1u << bit_[e]);
                    NodeId y = g.head(e);
                    if (y == v && q2 == q) closed_masks_[m2] = 1;
                    if (!seen[id(y, q2, m2)]) {
                        seen[id(y, q2, m2)] = 1;
                        queue.emplace_back(y, q2, m2);
                    }
                }
            }
        }
    linear_masks_.resize(n);
}

const std::vector<std::vector<char>>& SafetyOracle::from_source(NodeId s) const {
    auto& out = linear_masks_[s];
    if (!out.empty()) return out;
    const std::size_t n = g_.node_count(), states = accept_, masks = std::size_t{1} << nbits_;
    out.assign(n, std::vector<char>(masks, 0));
    std::vector<char> seen(n * states * masks, 0);
    auto id = [&](NodeId v, std::uint32_t q, std::uint32_t m) { return (v * states + q) * masks + m; };
    std::deque<std::tuple<NodeId, std::uint32_t, std::uint32_t>> queue{{s, 0, 0}};
    seen[id(s, 0, 0)] = 1;
    out[s][0] = 1;
    while (!queue.empty()) {
        auto [x, q, m] = queue.front();
        queue.pop_front();
        for (ArcId e : g_.out_arcs(x)) {
            std::uint32_t q2 = delta_[q][e];
            if (q2 == accept_) continue;
            std::uint32_t m2 = bit_[e] == kNone ? m : m | (1u << bit_[e]);
            NodeId y = g_.head(e);
            if (!seen[id(y, q2, m2)]) {
                seen[id(y, q2, m2)] = 1;
                out[y][m2] = 1;
                queue.emplace_back(y, q2, m2);
            }
        }
    }
    return out;
}

// Whether at most k achievable masks (k = kInfinite: any number) union to
// the full mask.
bool SafetyOracle::coverable(const std::vector<char>& achievable, std::uint64_t k) const {
    if (k != kUnbounded && k > limits_.max_k) throw ModelError("oracle refuses k above " +
                                                              std::to_string(limits_.max_k));
    std::vector<std::uint32_t> singles;
    for (std::uint32_t m = 0; m < achievable.size(); ++m)
        if (achievable[m]) singles.push_back(m);
    std::vector<char> reach(achievable.size(), 0);
    reach[0] = 1;
    for (std::uint64_t round = 0; k == kUnbounded || round < k; ++round) {
        if (reach[full_]) return true;
        auto next = reach;
        bool grew = false;
        for (std::uint32_t m = 0; m < reach.size(); ++m)
            if (reach[m])
                for (std::uint32_t a : singles)
                    if (!next[m | a]) next[m | a] = grew = true;
        reach.swap(next);
        if (!grew) break;
    }
    return reach[full_];
}

bool SafetyOracle::circular(std::uint64_t k) const { return !coverable(closed_masks_, k); }

bool SafetyOracle::linear(std::uint64_t k, NodeId s, NodeId t) const {
    if (s >= g_.node_count() || t >= g_.node_count()) throw ModelError("s or t is not a node");
    return !coverable(from_source(s)[t], k);
}

bool oracle_safe(const Graph& g, const Walk& w, const SafetyModel& model, const OracleLimits& limits) {
    ArcSet f_cov = model.f_cov ? *model.f_cov : ArcSet(g.arc_count(), 1);
    ArcSet f_vis = model.f_vis ? *model.f_vis : ArcSet(g.arc_count(), 1);
    SafetyOracle o(g, w, f_cov, f_vis, limits);
    return model.shape == Shape::Circular ? o.circular(model.k) : o.linear(model.k, model.s, model.t);
}

namespace {

ElementSet oracle_reach(const Graph& g, const Walk& w, bool forward) {
    if (w.size() < 2) throw ModelError("restricted reachability needs at least two arcs");
    std::vector<ArcId> p = w.arcs;
    if (!forward) std::reverse(p.begin(), p.end());
    auto delta = matcher(p, g.arc_count(), nullptr);
    const std::uint32_t accept = static_cast<std::uint32_t>(p.size());
    auto step_node = [&](ArcId e) { return forward ? g.head(e) : g.tail(e); };
    auto leave = [&](NodeId v) { return forward ? g.out_arcs(v) : g.in_arcs(v); };

    ElementSet r(g.element_count(), 0);
    std::vector<char> seen(g.node_count() * accept, 0);
    std::deque<std::pair<NodeId, std::uint32_t>> queue;
    ArcId first = p.front();
    std::uint32_t q1 = delta[0][first];
    r[g.arc_elem(first)] = 1;
    r[step_node(first)] = 1;
    seen[step_node(first) * accept + q1] = 1;
    queue.emplace_back(step_node(first), q1);
    while (!queue.empty()) {
        auto [v, q] = queue.front();
        queue.pop_front();
        for (ArcId e : leave(v)) {
            std::uint32_t q2 = delta[q][e];
            if (q2 == accept) continue;
            r[g.arc_elem(e)] = 1;
            NodeId y = step_node(e);
            r[y] = 1;
            if (!seen[y * accept + q2]) {
                seen[y * accept + q2] = 1;
                queue.emplace_back(y, q2);
            }
        }
    }
    return r;
}

} // namespace

ElementSet oracle_r_plus(const Graph& g, const Walk& w) { return oracle_reach(g, w, true); }
ElementSet oracle_r_minus(const Graph& g, const Walk& w) { return oracle_reach(g, w, false); }

std::uint64_t oracle_min_walk_cover(const Graph& g, const ElementSet& sub, const ArcSet& required,
                                    const CoverBoundary& boundary) {
    std::vector<std::uint32_t> bit(g.arc_count(), kNone);
    std::uint32_t nbits = 0;
    for (ArcId e = 0; e < g.arc_count(); ++e)
        if (required[e] && sub[g.arc_elem(e)]) bit[e] = nbits++;
    if (nbits == 0) return 0;
    if (nbits > 10) throw ModelError("oracle refuses more than 10 required arcs");
    const std::uint32_t full = (1u << nbits) - 1;

    auto outside = [&](std::size_t x) { return boundary.context ? (*boundary.context)[x] && !sub[x] : !sub[x]; };
    auto listed = [](const std::vector<NodeId>& v, std::size_t x) {
        return std::find(v.begin(), v.end(), static_cast<NodeId>(x)) != v.end();
    };
    auto can_start = [&](std::size_t x) {
        if (g.elem_is_arc(x)) return outside(g.tail(g.elem_arc(x)));
        for (ArcId e : g.in_arcs(static_cast<NodeId>(x)))
            if (outside(g.arc_elem(e))) return true;
        return listed(boundary.starts, x);
    };
    auto can_end = [&](std::size_t x) {
        if (g.elem_is_arc(x)) return outside(g.head(g.elem_arc(x)));
        for (ArcId e : g.out_arcs(static_cast<NodeId>(x)))
            if (outside(g.arc_elem(e))) return true;
        return listed(boundary.ends, x);
    };
    auto successors = [&](std::size_t x) {
        std::vector<std::size_t> out;
        if (g.elem_is_arc(x)) {
            out.push_back(g.head(g.elem_arc(x)));
        } else {
            for (ArcId e : g.out_arcs(static_cast<NodeId>(x))) out.push_back(g.arc_elem(e));
        }
        return out;
    };
    auto with = [&](std::uint32_t m, std::size_t x) {
        return g.elem_is_arc(x) && bit[g.elem_arc(x)] != kNone ? m | (1u << bit[g.elem_arc(x)]) : m;
    };

    const std::size_t ne = g.element_count(), masks = std::size_t{1} << nbits;
    std::vector<char> achievable(masks, 0);
    for (std::size_t x0 = 0; x0 < ne; ++x0) {
        if (!sub[x0] || !can_start(x0)) continue;
        std::vector<char> seen(ne * masks, 0);
        std::deque<std::pair<std::size_t, std::uint32_t>> queue;
        std::uint32_t m0 = with(0, x0);
        seen[x0 * masks + m0] = 1;
        queue.emplace_back(x0, m0);
        while (!queue.empty()) {
            auto [x, m] = queue.front();
            queue.pop_front();
            if (can_end(x)) achievable[m] = 1;
            for (std::size_t y : successors(x)) {
                if (!sub[y]) continue;
                std::uint32_t m2 = with(m, y);
                if (!seen[y * masks + m2]) {
                    seen[y * masks + m2] = 1;
                    queue.emplace_back(y, m2);
                }
            }
        }
    }
    // Iterative deepening on the number of walks.
    std::vector<char> reach(masks, 0);
    reach[0] = 1;
    for (std::uint64_t j = 1; j <= nbits; ++j) {
        auto next = reach;
        for (std::uint32_t m = 0; m < masks; ++m)
            if (reach[m])
                for (std::uint32_t a = 0; a < masks; ++a)
                    if (achievable[a]) next[m | a] = 1;
        reach.swap(next);
        if (reach[full]) return j;
    }
    return kInfinite;
}

std::vector<Graph> enumerate_small_graphs(std::size_t max_nodes, std::size_t max_arcs) {
    if (max_nodes > 4 || max_arcs > 6) throw ModelError("small graph enumeration is capped at 4 nodes, 6 arcs");
    std::vector<Graph> out;
    for (std::size_t n = 1; n <= max_nodes; ++n) {
        const std::size_t types = n * n;
        for (std::size_t m = 1; m <= max_arcs; ++m) {
            std::vector<std::size_t> pick(m, 0); // non-decreasing type indices
            while (true) {
                Graph g(n);
                for (std::size_t i = 0; i < m; ++i)
                    g.add_arc(static_cast<NodeId>(pick[i] / n), static_cast<NodeId>(pick[i] % n));
                if (g.is_strongly_connected() && !g.is_cycle()) out.push_back(std::move(g));
                std::size_t i = m;
                while (i > 0 && pick[i - 1] == types - 1) --i;
                if (i == 0) break;
                ++pick[i - 1];
                for (std::size_t j = i; j < m; ++j) pick[j] = pick[i - 1];
            }
        }
    }
    return out;
}

std::vector<Walk> enumerate_walks(const Graph& g, std::size_t max_len) {
    std::vector<Walk> out;
    std::vector<ArcId> cur;
    std::function<void()> extend = [&]() {
        out.push_back({cur, false});
        if (cur.size() == max_len) return;
        for (ArcId e : g.out_arcs(g.head(cur.back()))) {
            cur.push_back(e);
            extend();
            cur.pop_back();
        }
    };
    for (ArcId e = 0; e < g.arc_count(); ++e) {
        cur = {e};
        extend();
    }
    return out;
}

SelftestReport oracle_selftest(std::size_t max_nodes, std::size_t max_arcs, std::size_t max_walk) {
    SelftestReport r;
    const std::uint64_t ks[] = {1, 2, kUnbounded};
    auto describe = [](const Graph& g, const Walk& w, const std::string& model, bool verdict) {
        std::string out = model + " arcs:";
        for (const auto& a : g.arcs()) out += " (" + std::to_string(a.tail) + "," + std::to_string(a.head) + ")";
        out += " walk:";
        for (ArcId e : w.arcs) out += " " + std::to_string(e);
        return out + (verdict ? " verifier=safe" : " verifier=unsafe");
    };
    for (const auto& g : enumerate_small_graphs(max_nodes, max_arcs)) {
        ++r.graphs;
        std::vector<ArcSet> fs{all_arcs(g)};
        for (ArcId e = 0; e < g.arc_count(); ++e) fs.push_back(arc_set(g, {e}));
        for (const auto& w : enumerate_walks(g, max_walk)) {
            ++r.walks;
            for (std::size_t fi = 0; fi < fs.size(); ++fi) {
                const ArcSet& f = fs[fi];
                SafetyOracle oracle(g, w, f, all_arcs(g));
                auto check = [&](bool verdict, bool truth, const std::string& model) {
                    ++r.checks;
                    if (verdict == truth) return;
                    ++r.mismatches;
                    if (r.failures.size() < 10) r.failures.push_back(describe(g, w, model, verdict));
                };
                const std::string fcov = fi == 0 ? "" : ":fcov={" + std::to_string(fi - 1) + "}";
                for (std::uint64_t k : ks) {
                    const std::string kk = k == kUnbounded ? "inf" : std::to_string(k);
                    bool v = fi == 0 ? verify_circular(g, w, k) : verify_covering_circular(g, w, k, f);
                    check(v, oracle.circular(k), "circular:k=" + kk + fcov);
                    for (NodeId s = 0; s < g.node_count(); ++s)
                        for (NodeId t = 0; t < g.node_count(); ++t) {
                            bool lv = fi == 0 ? verify_linear(g, w, k, s, t) : verify_covering_linear(g, w, k, s, t, f);
                            check(lv, oracle.linear(k, s, t),
                                  "linear:k=" + kk + ":s=" + std::to_string(s) + ":t=" + std::to_string(t) + fcov);
                        }
                }
            }
        }
    }
    return r;
}

} // namespace hydro
