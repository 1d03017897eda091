#include "hydro/enumeration.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "hydro/errors.hpp"

namespace hydro {

namespace {

std::vector<ArcId> shortest_path(const Graph& g, NodeId from, NodeId to) {
    if (from == to) return {};
    std::vector<ArcId> via(g.node_count(), kNone);
    std::vector<char> seen(g.node_count(), 0);
    std::deque<NodeId> queue{from};
    seen[from] = 1;
    while (!queue.empty() && !seen[to]) {
        NodeId v = queue.front();
        queue.pop_front();
        for (ArcId e : g.out_arcs(v))
            if (!seen[g.head(e)]) {
                seen[g.head(e)] = 1;
                via[g.head(e)] = e;
                queue.push_back(g.head(e));
            }
    }
    if (!seen[to]) throw InfeasibleError("graph is not strongly connected");
    std::vector<ArcId> path;
    for (NodeId v = to; v != from; v = g.tail(via[v])) path.push_back(via[v]);
    std::reverse(path.begin(), path.end());
    return path;
}

void require_enumerable(const Graph& g) {
    if (g.is_cycle()) throw ModelError("safety is not defined on a graph that is a single cycle");
    if (!g.is_strongly_connected()) throw InfeasibleError("circular models need a strongly connected graph");
}

} // namespace

Walk candidate_circular_walk(const Graph& g) {
    if (g.arc_count() == 0) throw ModelError("graph has no arcs");
    if (!g.is_strongly_connected()) throw InfeasibleError("graph is not strongly connected");
    Walk w;
    w.closed = true;
    const std::size_t m = g.arc_count();
    for (ArcId e = 0; e < m; ++e) {
        w.arcs.push_back(e);
        auto link = shortest_path(g, g.head(e), g.tail(static_cast<ArcId>((e + 1) % m)));
        w.arcs.insert(w.arcs.end(), link.begin(), link.end());
    }
    return w;
}

std::vector<Walk> two_pointer(const Walk& host, const WalkPredicate& safe) {
    const std::size_t len = host.size();
    std::vector<ArcId> text = host.arcs;
    // Safe walks on a closed host can run past one period; allow two.
    if (host.closed && len > 1)
        for (int r = 0; r < 2; ++r) text.insert(text.end(), host.arcs.begin(), host.arcs.end());
    const std::size_t cap = host.closed ? 2 * len : len;

    auto window = [&](std::size_t i, std::size_t j) {
        Walk w;
        w.arcs.assign(text.begin() + i, text.begin() + j);
        return w;
    };
    std::vector<Walk> out;
    std::set<std::vector<ArcId>> seen;
    std::size_t j = 0, last_end = 0;
    bool emitted = false;
    for (std::size_t i = 0; i < len; ++i) {
        j = std::max(j, i);
        while (j < text.size() && j - i < cap && safe(window(i, j + 1))) ++j;
        if (j > i && (!emitted || j > last_end)) {
            Walk w = window(i, j);
            if (seen.insert(w.arcs).second) out.push_back(std::move(w));
            last_end = j;
            emitted = true;
        }
    }
    return out;
}

std::vector<Walk> maximal_only(std::vector<Walk> walks) {
    for (auto& w : walks) w.closed = false;
    std::sort(walks.begin(), walks.end(), [](const Walk& a, const Walk& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.arcs < b.arcs;
    });
    walks.erase(std::unique(walks.begin(), walks.end()), walks.end());
    std::vector<Walk> out;
    for (const auto& w : walks) {
        bool inside = false;
        for (const auto& v : out)
            if (is_subwalk(w, v)) {
                inside = true;
                break;
            }
        if (!inside) out.push_back(w);
    }
    std::stable_sort(out.begin(), out.end(), [](const Walk& a, const Walk& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        if (a.front() != b.front()) return a.front() < b.front();
        return a.arcs < b.arcs;
    });
    return out;
}

std::vector<Walk> enumerate_maximal_circular(const Graph& g, std::uint64_t k) {
    require_enumerable(g);
    std::vector<Walk> one;
    for (ArcId e = 0; e < g.arc_count(); ++e) one.push_back(univocal_extension(g, Walk{{e}, false}));
    for (auto& w : two_pointer(candidate_circular_walk(g), [&](const Walk& w) { return verify_circular(g, w, 1); }))
        one.push_back(std::move(w));
    one = maximal_only(std::move(one));
    if (k == 1) return one;

    std::vector<Walk> out;
    for (auto& w : one) {
        if (verify_circular(g, w, k)) {
            out.push_back(std::move(w));
        } else {
            auto [left, right] = split_k_circular(g, w, k);
            out.push_back(std::move(left));
            out.push_back(std::move(right));
        }
    }
    return maximal_only(std::move(out));
}

namespace {

std::vector<Walk> linear_strong(const Graph& g, std::uint64_t k, NodeId s, NodeId t) {
    auto safe = [&](const Walk& w) { return verify_linear(g, w, k, s, t); };
    std::vector<Walk> out;
    for (auto& host : enumerate_maximal_circular(g, 1)) {
        if (safe(host)) {
            out.push_back(std::move(host));
            continue;
        }
        for (auto& w : two_pointer(host, safe)) out.push_back(std::move(w));
    }
    return maximal_only(std::move(out));
}

std::vector<Walk> linear_general(const Graph& g, std::uint64_t k, NodeId s, NodeId t) {
    k = normalize_linear_k(g, k);
    if (k == kUnbounded) {
        Graph closed = g;
        const ArcId back = closed.add_arc(t, s, "t>s");
        if (!closed.is_strongly_connected()) throw InfeasibleError("the arcs cannot be covered by s-t walks");
        if (closed.is_cycle()) { // a single s-t path
            Walk path;
            for (NodeId v = s; v != t; v = g.head(path.back())) path.arcs.push_back(g.out_arcs(v)[0]);
            return {path};
        }
        std::vector<Walk> out;
        for (const auto& w : linear_strong(closed, kUnbounded, s, t)) {
            Walk piece;
            for (ArcId e : w.arcs) {
                if (e != back) {
                    piece.arcs.push_back(e);
                } else if (!piece.empty()) {
                    out.push_back(std::move(piece));
                    piece = {};
                }
            }
            if (!piece.empty()) out.push_back(std::move(piece));
        }
        return maximal_only(std::move(out));
    }
    if (k != 1) throw ModelError("non-strongly-connected linear models support only k=1 and k=inf");
    SequenceDecomposition d = sequence_decomposition(g, s, t);
    std::vector<Walk> out;
    for (ArcId e : d.inter) out.push_back(inter_scc_univocal_extension(g, d, e));
    for (std::size_t c = 0; c < d.nodes.size(); ++c) {
        if (d.form[c] != SccForm::General) continue;
        std::vector<char> keep(g.node_count(), 0);
        for (NodeId v : d.nodes[c]) keep[v] = 1;
        Subgraph sub = induced_subgraph(g, keep);
        for (const auto& w : linear_strong(sub.graph, 1, sub.node_to_sub[d.entry[c]], sub.node_to_sub[d.exit[c]])) {
            Walk back;
            for (ArcId e : w.arcs) back.arcs.push_back(sub.sub_to_arc[e]);
            out.push_back(std::move(back));
        }
    }
    return maximal_only(std::move(out));
}

} // namespace

std::vector<Walk> enumerate_maximal_linear(const Graph& g, std::uint64_t k, NodeId s, NodeId t) {
    if (s >= g.node_count() || t >= g.node_count()) throw ModelError("s or t is not a node");
    if (g.is_cycle()) throw ModelError("safety is not defined on a graph that is a single cycle");
    if (g.is_strongly_connected()) return linear_strong(g, k, s, t);
    return linear_general(g, k, s, t);
}

std::vector<Walk> enumerate_maximal(const Graph& g, const SafetyModel& model) {
    auto all = [](const ArcSet& a) { return std::all_of(a.begin(), a.end(), [](char c) { return c != 0; }); };
    if (model.f_vis && !all(*model.f_vis)) throw ModelError("enumeration is not available for visibility models");
    if (!model.f_cov || all(*model.f_cov)) {
        return model.shape == Shape::Circular ? enumerate_maximal_circular(g, model.k)
                                              : enumerate_maximal_linear(g, model.k, model.s, model.t);
    }
    require_enumerable(g);
    if (std::none_of(model.f_cov->begin(), model.f_cov->end(), [](char c) { return c != 0; })) return {};
    // Subset-covering safe walks are subwalks of 1-circular safe walks.
    SafetyModel m = model;
    m.f_vis.reset();
    auto safe = [&](const Walk& w) { return verify(g, w, m); };
    std::vector<Walk> out;
    for (const auto& host : enumerate_maximal_circular(g, 1))
        for (auto& w : two_pointer(host, safe)) out.push_back(std::move(w));
    return maximal_only(std::move(out));
}

namespace {

bool position_in(const std::vector<std::uint32_t>& ps, std::size_t lo, std::size_t hi) {
    for (std::uint32_t p : ps)
        if (p >= lo && p <= hi) return true;
    return false;
}

} // namespace

bool IncrementalAnnotation::in_interior(std::size_t x, std::size_t i, std::size_t j) const {
    return x < node_count && position_in(positions[x], i, j - 1);
}

bool IncrementalAnnotation::in_r_plus(std::size_t x, std::size_t i, std::size_t j) const {
    if (x >= node_count ? position_in(positions[x], i, j - 1) : in_interior(x, i, j)) return true;
    return split_prefix[j + 1] > split_prefix[i + 1] && entry[x] != kNone && entry[x] <= j;
}

bool IncrementalAnnotation::in_r_minus(std::size_t x, std::size_t i, std::size_t j) const {
    if (x >= node_count ? position_in(positions[x], i + 1, j) : in_interior(x, i, j)) return true;
    return join_prefix[j] > join_prefix[i] && exit[x] != kNone && exit[x] >= i;
}

namespace {

// One interrupted traversal over the split arcs of the host (forward) or
// its join arcs (backward, walking the host from the end). The arc of the
// current step is held back and released at the next step.
std::vector<std::uint32_t> sibling_marks(const Graph& g, const Walk& host, bool forward) {
    const std::size_t len = host.size();
    std::vector<std::uint32_t> mark(g.element_count(), kNone);
    std::vector<ArcId> held;
    std::vector<NodeId> queue;
    auto leave = [&](NodeId v) { return forward ? g.out_arcs(v) : g.in_arcs(v); };
    auto far = [&](ArcId e) { return forward ? g.head(e) : g.tail(e); };
    for (std::size_t step = 0; step + 1 < len; ++step) {
        const std::size_t p = forward ? step + 1 : len - 2 - step;
        const ArcId cur = host.arcs[p];
        if (forward ? !g.is_split_arc(cur) : !g.is_join_arc(cur)) continue;
        const auto tag = static_cast<std::uint32_t>(p);
        queue.clear();
        auto visit = [&](NodeId v) {
            if (mark[v] == kNone) {
                mark[v] = tag;
                queue.push_back(v);
            }
        };
        auto take = [&](ArcId e) {
            if (mark[g.arc_elem(e)] != kNone) return;
            if (e == cur) {
                if (std::find(held.begin(), held.end(), e) == held.end()) held.push_back(e);
                return;
            }
            mark[g.arc_elem(e)] = tag;
            visit(far(e));
        };
        std::vector<ArcId> released;
        released.swap(held);
        for (ArcId e : released) take(e);
        visit(forward ? g.tail(cur) : g.head(cur));
        for (std::size_t qi = 0; qi < queue.size(); ++qi)
            for (ArcId e : leave(queue[qi])) take(e);
    }
    return mark;
}

} // namespace

IncrementalAnnotation incremental_annotation(const Graph& g, const Walk& host) {
    require_walk(g, host);
    if (host.size() < 2) throw ModelError("annotation needs a host with at least two arcs");
    IncrementalAnnotation a;
    a.host = host;
    a.host.closed = false;
    a.node_count = g.node_count();
    const std::size_t len = host.size();
    a.positions.assign(g.element_count(), {});
    for (std::size_t p = 0; p < len; ++p) {
        a.positions[g.arc_elem(host.arcs[p])].push_back(static_cast<std::uint32_t>(p));
        if (p + 1 < len) a.positions[g.head(host.arcs[p])].push_back(static_cast<std::uint32_t>(p));
    }
    a.split_prefix.assign(len + 1, 0);
    a.join_prefix.assign(len + 1, 0);
    for (std::size_t p = 0; p < len; ++p) {
        a.split_prefix[p + 1] = a.split_prefix[p] + g.is_split_arc(host.arcs[p]);
        a.join_prefix[p + 1] = a.join_prefix[p] + g.is_join_arc(host.arcs[p]);
    }
    a.entry = sibling_marks(g, host, true);
    a.exit = sibling_marks(g, host, false);
    return a;
}

namespace {

template <class F>
void for_preds(const Graph& g, std::size_t x, F f) {
    if (g.elem_is_arc(x)) {
        f(g.node_elem(g.tail(g.elem_arc(x))));
    } else {
        for (ArcId e : g.in_arcs(static_cast<NodeId>(x))) f(g.arc_elem(e));
    }
}

template <class F>
void for_succs(const Graph& g, std::size_t x, F f) {
    if (g.elem_is_arc(x)) {
        f(g.node_elem(g.head(g.elem_arc(x))));
    } else {
        for (ArcId e : g.out_arcs(static_cast<NodeId>(x))) f(g.arc_elem(e));
    }
}

} // namespace

RiverStats river_stats(const Graph& g, const ElementSet& river) {
    RiverStats s;
    for (std::size_t x = 0; x < g.element_count(); ++x) {
        if (!river[x]) continue;
        std::size_t in = 0, out = 0;
        for_preds(g, x, [&](std::size_t y) { in += river[y] != 0; });
        for_succs(g, x, [&](std::size_t y) { out += river[y] != 0; });
        ++s.elements;
        s.incidences += out;
        s.sources += in == 0;
        s.sinks += out == 0;
        s.violators += in >= 2 || out >= 2;
    }
    return s;
}

RiverStream::RiverStream(const Graph& g, const IncrementalAnnotation& a)
    : g_(g), a_(a), by_entry_(a.host.size() + 1), by_exit_(a.host.size() + 1), in_(g.element_count(), 0),
      indeg_(g.element_count(), 0), outdeg_(g.element_count(), 0) {
    for (std::size_t x = 0; x < g.element_count(); ++x) {
        if (a.entry[x] != kNone) by_entry_[a.entry[x]].push_back(x);
        if (a.exit[x] != kNone) by_exit_[a.exit[x]].push_back(x);
    }
}

bool RiverStream::member(std::size_t x, std::size_t i, std::size_t j) const {
    return !a_.in_r_plus(x, i, j) && !a_.in_r_minus(x, i, j);
}

void RiverStream::count(std::size_t x, int sign) {
    auto add = [&](std::size_t& c, bool cond) {
        if (cond) c = sign > 0 ? c + 1 : c - 1;
    };
    add(stats_.sources, indeg_[x] == 0);
    add(stats_.sinks, outdeg_[x] == 0);
    add(stats_.violators, indeg_[x] >= 2 || outdeg_[x] >= 2);
}

void RiverStream::toggle(std::size_t x) {
    const bool adding = !in_[x];
    if (!adding) count(x, -1);
    indeg_[x] = outdeg_[x] = 0;
    for_preds(g_, x, [&](std::size_t y) {
        if (!in_[y]) return;
        count(y, -1);
        adding ? ++outdeg_[y] : --outdeg_[y];
        count(y, +1);
        ++indeg_[x];
        adding ? ++stats_.incidences : --stats_.incidences;
    });
    for_succs(g_, x, [&](std::size_t y) {
        if (!in_[y]) return;
        count(y, -1);
        adding ? ++indeg_[y] : --indeg_[y];
        count(y, +1);
        ++outdeg_[x];
        adding ? ++stats_.incidences : --stats_.incidences;
    });
    if (adding) {
        in_[x] = 1;
        ++stats_.elements;
        count(x, +1);
    } else {
        in_[x] = 0;
        --stats_.elements;
    }
}

void RiverStream::set_window(std::size_t i, std::size_t j) {
    const std::size_t len = a_.host.size();
    if (i >= j || j >= len) throw ModelError("window must satisfy i < j < host length");
    if (!started_) {
        for (std::size_t x = 0; x < g_.element_count(); ++x)
            if (member(x, i, j)) toggle(x);
        started_ = true;
        i_ = i;
        j_ = j;
        return;
    }
    std::vector<std::size_t> cand;
    auto positions = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t p = lo; p <= hi && p < len; ++p) {
            ArcId e = a_.host.arcs[p];
            cand.push_back(g_.arc_elem(e));
            cand.push_back(g_.tail(e));
            cand.push_back(g_.head(e));
        }
    };
    positions(std::min(i_, i), std::max(i_, i));
    positions(std::min(j_, j), std::max(j_, j));
    auto buckets = [&](const std::vector<std::vector<std::size_t>>& b, std::size_t lo, std::size_t hi) {
        for (std::size_t p = lo; p <= hi && p < b.size(); ++p) cand.insert(cand.end(), b[p].begin(), b[p].end());
    };
    const bool split_old = a_.split_prefix[j_ + 1] > a_.split_prefix[i_ + 1];
    const bool split_new = a_.split_prefix[j + 1] > a_.split_prefix[i + 1];
    if (split_old && split_new)
        buckets(by_entry_, std::min(j_, j) + 1, std::max(j_, j));
    else if (split_old || split_new)
        buckets(by_entry_, 0, std::max(j_, j));
    const bool join_old = a_.join_prefix[j_] > a_.join_prefix[i_];
    const bool join_new = a_.join_prefix[j] > a_.join_prefix[i];
    if (join_old && join_new) {
        if (i != i_) buckets(by_exit_, std::min(i_, i), std::max(i_, i) - 1);
    } else if (join_old || join_new) {
        buckets(by_exit_, std::min(i_, i), len);
    }
    for (std::size_t x : cand)
        if (member(x, i, j) != (in_[x] != 0)) toggle(x);
    i_ = i;
    j_ = j;
}

WorstCase worst_case_family(std::size_t n, std::size_t m) {
    if (n < 2 || m < 1 || m > n * n) throw ModelError("worst-case family needs n >= 2 and 1 <= m <= n^2");
    WorstCase wc;
    Graph& g = wc.graph;
    std::vector<NodeId> x(n + 1);
    for (std::size_t p = 0; p <= n; ++p) x[p] = g.add_node("x" + std::to_string(p));
    const std::size_t a = std::min(n, m);
    std::vector<NodeId> l(a), r(a);
    for (std::size_t p = 0; p < a; ++p) l[p] = g.add_node("l" + std::to_string(p));
    for (std::size_t q = 0; q < a; ++q) r[q] = g.add_node("r" + std::to_string(q));
    std::vector<ArcId> path;
    for (std::size_t p = 1; p <= n; ++p) path.push_back(g.add_arc(x[p - 1], x[p], "g" + std::to_string(p)));
    std::vector<ArcId> f(a), f2(a);
    for (std::size_t p = 0; p < a; ++p) f[p] = g.add_arc(x[n], l[p], "f" + std::to_string(p));
    for (std::size_t q = 0; q < a; ++q) f2[q] = g.add_arc(r[q], x[0], "f'" + std::to_string(q));
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t p = i % a, q = (p + i / a) % a;
        ArcId e = g.add_arc(l[p], r[q], "e" + std::to_string(i));
        Walk w;
        w.arcs = path;
        w.arcs.push_back(f[p]);
        w.arcs.push_back(e);
        w.arcs.push_back(f2[q]);
        w.arcs.insert(w.arcs.end(), path.begin(), path.end());
        wc.walks.push_back(std::move(w));
    }
    if (a == 1) g.add_arc(x[n], x[0], "chord");
    wc.x0 = x[0];
    wc.xn = x[n];
    return wc;
}

} // namespace hydro
