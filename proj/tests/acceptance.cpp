// One PASS/FAIL line per acceptance criterion. Exit status is the number
// of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "hydro/enumeration.hpp"
#include "hydro/errors.hpp"
#include "hydro/hydrostructure.hpp"
#include "hydro/oracle.hpp"
#include "hydro/safety.hpp"
#include "support.hpp"

using namespace hydro;
using namespace hydro::testing;

namespace {

// Pinned tolerances.
constexpr double kMaxScalingExponent = 1.2;
constexpr double kMaxSecondsAt1e5 = 1.0;
constexpr std::uint64_t kSeed = 20240531;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& run) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = run();
    } catch (const std::exception& ex) {
        o = {false, std::string("exception: ") + ex.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %-28s %s  %s (%.1fs)\n", id, name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
}

std::string counts(std::size_t checks, std::size_t bad) {
    return std::to_string(checks) + " checks, " + std::to_string(bad) + " violations";
}

// Greedy random extension that keeps the host bridge-like.
Walk bridge_like_host(std::mt19937_64& rng, const Graph& g, std::size_t max_len) {
    for (int attempt = 0; attempt < 50; ++attempt) {
        Walk w = random_walk(rng, g, 1);
        while (w.size() < max_len) {
            auto out = g.out_arcs(g.head(w.back()));
            std::vector<ArcId> options(out.begin(), out.end());
            std::shuffle(options.begin(), options.end(), rng);
            bool grown = false;
            for (ArcId e : options) {
                Walk next = w;
                next.arcs.push_back(e);
                if (build_hydrostructure(g, next).bridge_like) {
                    w = std::move(next);
                    grown = true;
                    break;
                }
            }
            if (!grown) break;
        }
        if (w.size() >= 2) return w;
    }
    return {};
}

// Criterion-2 corpus: 1,000 random strongly connected graphs, 10 walks
// each. Uniform random walks on these graphs are rarely bridge-like, so
// half of the walks are grown greedily to stay bridge-like.
struct Corpus {
    std::vector<Graph> graphs;
    std::vector<std::vector<Walk>> walks;
};

const Corpus& corpus() {
    static const Corpus c = [] {
        Corpus c;
        std::mt19937_64 rng(kSeed);
        for (int i = 0; i < 1000; ++i) {
            std::size_t n = std::uniform_int_distribution<std::size_t>(2, 50)(rng);
            std::size_t m = std::uniform_int_distribution<std::size_t>(n + 1, 200)(rng);
            c.graphs.push_back(random_strong_graph(rng, n, m));
            std::vector<Walk> ws;
            for (int j = 0; j < 10; ++j) {
                std::size_t len = std::uniform_int_distribution<std::size_t>(2, 12)(rng);
                Walk w = j % 2 ? bridge_like_host(rng, c.graphs.back(), len) : Walk{};
                ws.push_back(w.empty() ? random_walk(rng, c.graphs.back(), len) : w);
            }
            c.walks.push_back(std::move(ws));
        }
        return c;
    }();
    return c;
}

Outcome oracle_equivalence() {
    SelftestReport r = oracle_selftest(3, 5, 4);
    std::string detail = std::to_string(r.graphs) + " graphs, " + std::to_string(r.walks) + " walks, " +
                         std::to_string(r.checks) + " verdicts, " + std::to_string(r.mismatches) + " mismatches";
    for (const auto& f : r.failures) std::printf("    mismatch %s\n", f.c_str());
    return {r.checks > 0 && r.mismatches == 0, detail};
}

bool allowed_pair(Part x, Part y, bool x_is_first_arc, bool y_is_last_arc) {
    using enum Part;
    if (x == Vapor && y == Cloud) return y_is_last_arc;
    if (x == Sea && y == Vapor) return x_is_first_arc;
    return (x == Cloud && y == Vapor) || (x == Vapor && y == Sea) || (x == Cloud && y == River) ||
           (x == River && y == Sea) || (x == Cloud && y == Sea);
}

Outcome hydrostructure_axioms() {
    const Corpus& c = corpus();
    std::size_t checks = 0, bad = 0, bridge_like = 0;
    for (std::size_t gi = 0; gi < c.graphs.size(); ++gi) {
        const Graph& g = c.graphs[gi];
        for (const Walk& w : c.walks[gi]) {
            Hydrostructure h = build_hydrostructure(g, w);
            bridge_like += h.bridge_like;
            // Partition exactness: Alg. 1 sets equal the definition-level ones.
            ElementSet plus = pattern_avoiding_reach(g, w.arcs, {true, w.front()}, true);
            ElementSet minus = pattern_avoiding_reach(g, w.arcs, {true, w.back()}, false);
            ++checks;
            bad += plus != h.in_r_plus || minus != h.in_r_minus;
            std::size_t total = 0;
            for (Part p : {Part::Sea, Part::Cloud, Part::Vapor, Part::River}) total += h.elements(p).size();
            ++checks;
            bad += total != g.element_count();
            // Bridge-like iff Vapor is exactly the internal path, which has
            // to be an open path in the first place.
            std::vector<NodeId> z = internal_nodes(g, w);
            std::sort(z.begin(), z.end());
            bool open_path = std::adjacent_find(z.begin(), z.end()) == z.end();
            ++checks;
            bad += h.bridge_like != (open_path && h.mask(Part::Vapor) == walk_interior(g, w));
            if (!h.bridge_like) {
                ++checks;
                bad += !(h.empty(Part::Sea) && h.empty(Part::Cloud) && h.empty(Part::River));
                continue;
            }
            ++checks;
            bad += !h.in(g.arc_elem(w.front()), Part::Sea) || !h.in(g.arc_elem(w.back()), Part::Cloud);
            // Incident pairs crossing parts, over the element digraph.
            for (ArcId e = 0; e < g.arc_count(); ++e) {
                const std::size_t xe = g.arc_elem(e);
                const std::pair<std::size_t, std::size_t> pairs[2] = {{g.node_elem(g.tail(e)), xe},
                                                                       {xe, g.node_elem(g.head(e))}};
                for (auto [x, y] : pairs) {
                    if (h.part(x) == h.part(y)) continue;
                    ++checks;
                    bool first = x == g.arc_elem(w.front()), last = y == g.arc_elem(w.back());
                    bad += !allowed_pair(h.part(x), h.part(y), first, last);
                }
            }
        }
    }
    return {bad == 0, counts(checks, bad) + ", " + std::to_string(bridge_like) + " bridge-like walks"};
}

Outcome figure_eight_facts() {
    Graph g = figure_eight();
    std::vector<std::string> missed;
    auto expect = [&](bool ok, const char* what) {
        if (!ok) missed.push_back(what);
    };
    Walk ab = walk(g, "a b");
    expect(verify_circular(g, ab, 1), "[a,b] 1-circular safe");
    expect(!verify_circular(g, ab, 2), "[a,b] 2-circular unsafe");
    auto one = enumerate_maximal_circular(g, 1);
    bool two_of_four = one.size() == 2 && one[0].size() == 4 && one[1].size() == 4;
    expect(two_of_four, "k=1 yields two walks of four arcs");
    auto two = enumerate_maximal_circular(g, 2);
    std::vector<Walk> want{univocal_extension(g, walk(g, "d a")), univocal_extension(g, walk(g, "b c"))};
    auto sorted = [](std::vector<Walk> v) {
        std::sort(v.begin(), v.end(), [](const Walk& x, const Walk& y) { return x.arcs < y.arcs; });
        return v;
    };
    expect(sorted(two) == sorted(want), "k=2 yields U([d,a]) and U([b,c])");
    expect(verify_linear(g, ab, 1, node(g, "u"), node(g, "w")), "linear s=u t=w safe");
    expect(!verify_linear(g, ab, 1, node(g, "w"), node(g, "u")), "linear s=w t=u unsafe");
    std::string detail = "6 facts";
    for (const auto& m : missed) detail += "; wrong: " + m;
    return {missed.empty(), detail};
}

Outcome bound_checks() {
    const Corpus& c = corpus();
    std::size_t checks = 0, bad = 0, walks = 0;
    for (const Graph& g : c.graphs) {
        auto reported = enumerate_maximal_circular(g, 1);
        walks += reported.size();
        ++checks;
        bad += reported.size() > g.arc_count();
        for (const Walk& u : maximal_unitigs(g)) {
            ++checks;
            bool inside = false;
            for (const Walk& w : reported) inside = inside || is_subwalk(u, w);
            bad += !inside;
        }
    }
    return {bad == 0, counts(checks, bad) + ", " + std::to_string(walks) + " maximal 1-circular walks"};
}

Outcome k_equivalence() {
    std::size_t checks = 0, bad = 0;
    for (const Graph& g : enumerate_small_graphs(3, 5)) {
        const std::uint64_t m = g.arc_count();
        for (const Walk& w : enumerate_walks(g, 4)) {
            bool c2 = verify_circular(g, w, 2);
            for (std::uint64_t k : {std::uint64_t{3}, std::uint64_t{17}, kUnbounded}) {
                ++checks;
                bad += verify_circular(g, w, k) != c2;
            }
            for (NodeId s = 0; s < g.node_count(); ++s)
                for (NodeId t = 0; t < g.node_count(); ++t) {
                    bool lm = verify_linear(g, w, m, s, t);
                    for (std::uint64_t k : {m + 1, kUnbounded}) {
                        ++checks;
                        bad += verify_linear(g, w, k, s, t) != lm;
                    }
                }
        }
    }
    return {checks > 0 && bad == 0, counts(checks, bad)};
}

Outcome incremental_equals_batch() {
    const Corpus& c = corpus();
    std::mt19937_64 rng(kSeed + 6);
    std::size_t hosts = 0, windows = 0, bad = 0, longest = 0;
    // Sparse graphs carry the long bridge-like walks; best of five tries each.
    std::vector<std::size_t> order(c.graphs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const Graph &gx = c.graphs[x], &gy = c.graphs[y];
        return gx.arc_count() * gy.node_count() < gy.arc_count() * gx.node_count();
    });
    for (std::size_t gi : order) {
        if (hosts == 100) break;
        const Graph& g = c.graphs[gi];
        Walk host;
        for (int attempt = 0; attempt < 5; ++attempt) {
            Walk w = bridge_like_host(rng, g, 100);
            if (w.size() > host.size()) host = std::move(w);
        }
        if (host.empty()) continue;
        ++hosts;
        longest = std::max(longest, host.size());
        IncrementalAnnotation a = incremental_annotation(g, host);
        auto check = [&](RiverStream& stream, std::size_t i, std::size_t j) {
            Hydrostructure h = build_hydrostructure(g, host.slice(i, j + 1));
            stream.set_window(i, j);
            ++windows;
            bool ok = stream.stats() == river_stats(g, h.mask(Part::River));
            for (std::size_t x = 0; x < g.element_count(); ++x)
                ok = ok && a.in_r_plus(x, i, j) == (h.in_r_plus[x] != 0) &&
                     a.in_r_minus(x, i, j) == (h.in_r_minus[x] != 0) &&
                     stream.in_river(x) == h.in(x, Part::River);
            bad += !ok;
        };
        RiverStream prefixes(g, a);
        for (std::size_t j = 1; j < host.size(); ++j) check(prefixes, 0, j);
        // The two-pointer order: both ends only move forward.
        RiverStream sweep(g, a);
        for (std::size_t i = 0, j = 1; i + 1 < host.size(); ++i) {
            j = std::max(j, i + 1);
            check(sweep, i, j);
            if (j + 1 < host.size()) check(sweep, i, ++j);
        }
    }
    std::string detail = std::to_string(hosts) + " hosts (longest " + std::to_string(longest) + "), " +
                         std::to_string(windows) + " windows, " + std::to_string(bad) + " disagreements";
    return {hosts == 100 && bad == 0, detail};
}

Outcome worst_case_growth() {
    const std::pair<std::size_t, std::size_t> sizes[] = {{4, 8}, {6, 18}, {8, 32}};
    std::string detail;
    bool ok = true;
    std::size_t previous = 0;
    for (auto [n, m] : sizes) {
        WorstCase wc = worst_case_family(n, m);
        const Graph& g = wc.graph;
        std::size_t unsafe = 0;
        for (const Walk& w : wc.walks) {
            unsafe += !verify_circular(g, w, 1) || !verify_circular(g, w, 2);
            unsafe += !verify_linear(g, w, 1, wc.x0, wc.xn) || !verify_linear(g, w, kUnbounded, wc.x0, wc.xn);
        }
        std::size_t total = 0;
        for (const Walk& w : enumerate_maximal_circular(g, 1)) total += w.size();
        // At least m(2n+3) >= 2mn arcs, and strictly growing.
        bool here = unsafe == 0 && total >= m * (2 * n + 3) && total >= 2 * m * n && total > previous;
        ok = ok && here;
        previous = total;
        detail += "(n=" + std::to_string(n) + ",m=" + std::to_string(m) + ") total " + std::to_string(total) +
                  " >= " + std::to_string(m * (2 * n + 3)) + (unsafe ? " with unsafe W_i" : "") + "; ";
    }
    return {ok, detail};
}

Outcome performance() {
    std::vector<double> xs, ys;
    double at_max = 0;
    for (std::size_t cycles : {100, 300, 1000, 3000, 10000}) {
        Graph g = path_of_cycles(cycles, 10);
        // From the middle cycle into the next one through their shared
        // node: bridge-like, with everything before it in the Sea and
        // everything after it in the Cloud.
        const std::size_t c = cycles / 2;
        Walk w;
        w.arcs = {static_cast<ArcId>(c * 10 + 4), static_cast<ArcId>((c + 1) * 10)};
        if (!build_hydrostructure(g, w).bridge_like) return {false, "timed walk is not bridge-like"};
        // Small instances are batched so every sample is a few ms of work.
        const std::size_t batch = std::max<std::size_t>(1, 100000 / g.arc_count());
        double best = 1e9;
        for (int rep = 0; rep < 7; ++rep) {
            std::size_t sink = 0;
            auto t0 = std::chrono::steady_clock::now();
            for (std::size_t b = 0; b < batch; ++b) sink += build_hydrostructure(g, w).elements(Part::Sea).size();
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / batch;
            if (sink == 0) return {false, "empty Sea"};
            best = std::min(best, secs);
        }
        xs.push_back(std::log(static_cast<double>(g.arc_count())));
        ys.push_back(std::log(std::max(best, 1e-7)));
        at_max = best;
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i] / xs.size(), my += ys[i] / ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
    double slope = sxy / sxx;
    char buf[128];
    std::snprintf(buf, sizeof buf, "fit exponent %.2f (max %.1f), %.4fs at m=1e5 (max %.1fs)", slope,
                  kMaxScalingExponent, at_max, kMaxSecondsAt1e5);
    return {slope <= kMaxScalingExponent && at_max < kMaxSecondsAt1e5, buf};
}

// Chain of 2-4 blocks (single node, cycle or small strong graph) joined by
// forward arcs; `parallel_bridges` occasionally doubles a joining arc.
struct Chain {
    Graph g;
    NodeId s = 0, t = 0;
};

Chain random_chain(std::mt19937_64& rng, std::size_t max_block, bool parallel_bridges) {
    Chain c;
    auto uni = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    std::size_t blocks = uni(2, 4);
    std::vector<std::vector<NodeId>> members;
    for (std::size_t b = 0; b < blocks; ++b) {
        std::vector<NodeId> vs;
        std::size_t kind = uni(0, 2);
        std::size_t size = kind == 0 ? 1 : uni(1, max_block);
        for (std::size_t i = 0; i < size; ++i) vs.push_back(c.g.add_node());
        if (kind == 1) {
            for (std::size_t i = 0; i < size; ++i) c.g.add_arc(vs[i], vs[(i + 1) % size]);
        } else if (kind == 2) {
            for (std::size_t i = 0; i < size; ++i) c.g.add_arc(vs[i], vs[(i + 1) % size]);
            for (std::size_t extra = uni(1, 2); extra > 0; --extra) c.g.add_arc(vs[uni(0, size - 1)], vs[uni(0, size - 1)]);
        }
        members.push_back(vs);
    }
    for (std::size_t b = 0; b + 1 < blocks; ++b) {
        std::size_t bridges = parallel_bridges && uni(0, 3) == 0 ? 2 : 1;
        for (std::size_t i = 0; i < bridges; ++i)
            c.g.add_arc(members[b][uni(0, members[b].size() - 1)], members[b + 1][uni(0, members[b + 1].size() - 1)]);
    }
    c.s = members.front()[uni(0, members.front().size() - 1)];
    c.t = members.back()[uni(0, members.back().size() - 1)];
    return c;
}

Outcome infinity_reduction() {
    std::mt19937_64 rng(kSeed + 9);
    std::size_t graphs = 0, checks = 0, bad = 0;
    while (graphs < 50) {
        Chain c = random_chain(rng, 6, true);
        if (c.g.arc_count() == 0 || c.g.is_strongly_connected()) continue;
        Graph closed = c.g;
        closed.add_arc(c.t, c.s);
        if (!closed.is_strongly_connected() || closed.is_cycle()) continue;
        ++graphs;
        for (int i = 0; i < 40; ++i) {
            Walk w = random_walk(rng, c.g, std::uniform_int_distribution<std::size_t>(1, 6)(rng));
            ++checks;
            bad += verify_linear_general(c.g, w, kUnbounded, c.s, c.t) != verify_linear(closed, w, kUnbounded, c.s, c.t);
        }
    }
    // k = 1 against the oracle on small chains.
    std::size_t small = 0, oracle_checks = 0, oracle_bad = 0;
    OracleLimits limits;
    while (small < 200) {
        Chain c = random_chain(rng, 3, true);
        if (c.g.arc_count() == 0 || c.g.arc_count() > limits.max_arcs || c.g.is_strongly_connected()) continue;
        try {
            sequence_decomposition(c.g, c.s, c.t);
        } catch (const InfeasibleError&) {
            continue;
        }
        ++small;
        for (const Walk& w : enumerate_walks(c.g, 4)) {
            SafetyOracle oracle(c.g, w, all_arcs(c.g), all_arcs(c.g), limits);
            ++oracle_checks;
            oracle_bad += verify_linear_general(c.g, w, 1, c.s, c.t) != oracle.linear(1, c.s, c.t);
        }
    }
    std::string detail = "k=inf: " + std::to_string(graphs) + " graphs, " + counts(checks, bad) +
                         "; k=1: " + std::to_string(small) + " graphs, " + counts(oracle_checks, oracle_bad);
    return {bad == 0 && oracle_bad == 0 && oracle_checks > 0, detail};
}

Outcome degeneration() {
    std::size_t checks = 0, bad = 0;
    const std::uint64_t ks[] = {1, 2, kUnbounded};
    for (const Graph& g : enumerate_small_graphs(3, 5)) {
        const ArcSet all = all_arcs(g);
        for (const Walk& w : enumerate_walks(g, 4)) {
            for (std::uint64_t k : ks) {
                SafetyModel m;
                m.k = k;
                m.f_vis = all;
                bool plain = verify_circular(g, w, k);
                checks += 2;
                bad += verify_covering_circular(g, w, k, all) != plain;
                bad += verify_visible(g, w, m) != plain;
                m.shape = Shape::Linear;
                for (NodeId s = 0; s < g.node_count(); ++s)
                    for (NodeId t = 0; t < g.node_count(); ++t) {
                        m.s = s;
                        m.t = t;
                        bool lin = verify_linear(g, w, k, s, t);
                        checks += 2;
                        bad += verify_covering_linear(g, w, k, s, t, all) != lin;
                        bad += verify_visible(g, w, m) != lin;
                    }
            }
        }
    }
    return {checks > 0 && bad == 0, counts(checks, bad)};
}

} // namespace

int main() {
    report(1, "oracle equivalence", oracle_equivalence);
    report(2, "hydrostructure axioms", hydrostructure_axioms);
    report(3, "figure-eight fixture", figure_eight_facts);
    report(4, "1-circular bounds", bound_checks);
    report(5, "k-equivalence", k_equivalence);
    report(6, "incremental = batch", incremental_equals_batch);
    report(7, "worst-case growth", worst_case_growth);
    report(8, "performance sanity", performance);
    report(9, "infinity-st reduction", infinity_reduction);
    report(10, "degeneration", degeneration);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures;
}
