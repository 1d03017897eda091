#include <doctest.h>

#include "hydro/errors.hpp"
#include "hydro/hydrostructure.hpp"
#include "hydro/oracle.hpp"
#include "support.hpp"

using namespace hydro;
using namespace hydro::testing;

namespace {

ElementSet all_elements(const Graph& g) { return ElementSet(g.element_count(), 1); }

} // namespace

TEST_SUITE("hydrostructure") {

TEST_CASE("forward and backward restricted reachability on the figure eight") {
    Graph g = figure_eight();
    Walk ab = walk(g, "a b");
    CHECK(restricted_forward_reachability(g, ab) == elements(g, {"a", "v", "d", "u"}));
    CHECK(restricted_backward_reachability(g, ab) == elements(g, {"b", "v", "c", "w"}));
    Walk da = walk(g, "d a");
    CHECK(restricted_forward_reachability(g, da) == elements(g, {"d", "u"}));
    CHECK(restricted_backward_reachability(g, da) == elements(g, {"u", "a"}));
}

TEST_CASE("detour makes the twin cycle walk avertible") {
    Graph g = twin_cycle();
    Walk w = walk(g, "e3 e1 e2");
    bool avertible = false;
    CHECK(restricted_forward_reachability(g, w, &avertible) == all_elements(g));
    CHECK(avertible);
    CHECK(restricted_backward_reachability(g, w) == all_elements(g));
}

TEST_CASE("partition of the figure eight") {
    Graph g = figure_eight();
    Hydrostructure ab = build_hydrostructure(g, walk(g, "a b"));
    CHECK(ab.bridge_like);
    CHECK(ab.mask(Part::Sea) == elements(g, {"a", "d", "u"}));
    CHECK(ab.mask(Part::Vapor) == elements(g, {"v"}));
    CHECK(ab.mask(Part::Cloud) == elements(g, {"b", "c", "w"}));
    CHECK(ab.empty(Part::River));

    Hydrostructure da = build_hydrostructure(g, walk(g, "d a"));
    CHECK(da.bridge_like);
    CHECK(da.mask(Part::Sea) == elements(g, {"d"}));
    CHECK(da.mask(Part::Vapor) == elements(g, {"u"}));
    CHECK(da.mask(Part::Cloud) == elements(g, {"a"}));
    CHECK(da.mask(Part::River) == elements(g, {"v", "b", "c", "w"}));
}

TEST_CASE("avertible walk is all vapor") {
    Graph g = twin_cycle();
    Hydrostructure h = build_hydrostructure(g, walk(g, "e3 e1 e2"));
    CHECK_FALSE(h.bridge_like);
    CHECK(h.mask(Part::Vapor) == all_elements(g));
    CHECK(h.empty(Part::Sea));
    CHECK(h.empty(Part::Cloud));
    CHECK(h.empty(Part::River));
}

TEST_CASE("twin cycle, bridge-like prefix") {
    // Leaving x1 is forced onto e1, so only e3 stays in the Sea; the
    // branch through q leads back into x1 and sits in the Cloud.
    Graph g = twin_cycle();
    Hydrostructure h = build_hydrostructure(g, walk(g, "e3 e1"));
    CHECK(h.bridge_like);
    CHECK(h.mask(Part::Sea) == elements(g, {"e3"}));
    CHECK(h.mask(Part::Vapor) == elements(g, {"x1"}));
    CHECK(h.mask(Part::Cloud) == elements(g, {"e1", "x2", "e4", "q", "e5"}));
    CHECK(h.mask(Part::River) == elements(g, {"p", "e2"}));
    HydroSccView v = hydro_scc_view(g, h);
    CHECK(v.river_sccs.empty());
    CHECK_FALSE(v.has_sea_related);
}

TEST_CASE("splitting a single arc") {
    Graph g = figure_eight();
    SplitArc s = split_single_arc(g, arc(g, "a"));
    CHECK(s.graph.node_count() == 4);
    CHECK(s.graph.arc_count() == 5);
    REQUIRE(s.walk.size() == 2);
    CHECK(s.graph.tail(s.walk.arcs[0]) == node(g, "u"));
    CHECK(s.graph.head(s.walk.arcs[0]) == s.dummy);
    CHECK(s.graph.head(s.walk.arcs[1]) == node(g, "v"));

    Graph loop = parse_graph("nodes v w\narc l v v\narc x v w\narc y w v\n").graph;
    SplitArc sl = split_single_arc(loop, arc(loop, "l"));
    CHECK(sl.graph.tail(sl.walk.arcs[0]) == node(loop, "v"));
    CHECK(sl.graph.head(sl.walk.arcs[1]) == node(loop, "v"));

    // Contracting the dummy gives the original arc list back.
    for (ArcId e = 0; e < g.arc_count(); ++e) {
        if (e == arc(g, "a")) continue;
        CHECK(s.graph.tail(e) == g.tail(e));
        CHECK(s.graph.head(e) == g.head(e));
    }
}

TEST_CASE("related SCCs") {
    Graph g = figure_eight();
    HydroSccView ab = hydro_scc_view(g, build_hydrostructure(g, walk(g, "a b")));
    CHECK(ab.has_sea_related);
    CHECK(ab.sea_related == elements(g, {"u", "a", "d", "v"}));
    CHECK(ab.has_cloud_related);
    CHECK(ab.cloud_related == elements(g, {"v", "b", "c", "w"}));
    CHECK(ab.river_sccs.empty());

    HydroSccView da = hydro_scc_view(g, build_hydrostructure(g, walk(g, "d a")));
    CHECK_FALSE(da.has_sea_related);
    REQUIRE(da.river_sccs.size() == 1);
    CHECK(da.river_sccs[0] == elements(g, {"v", "b", "c", "w"}));

    Graph tc = twin_cycle();
    CHECK_THROWS_AS(hydro_scc_view(tc, build_hydrostructure(tc, walk(tc, "e3 e1 e2"))), ModelError);
}

TEST_CASE("visible adjacency") {
    Graph g = figure_eight();
    ArcSet vis = arc_set(g, {arc(g, "a"), arc(g, "b"), arc(g, "d")});
    auto adj = visible_adjacency(g, vis);
    auto sorted = [](std::vector<ArcId> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    // b runs into w, the invisible c carries on to v, where b and d leave
    CHECK(sorted(adj[arc(g, "b")]) == std::vector<ArcId>{arc(g, "b"), arc(g, "d")});
    CHECK(sorted(adj[arc(g, "a")]) == std::vector<ArcId>{arc(g, "b"), arc(g, "d")});
    CHECK(adj[arc(g, "d")] == std::vector<ArcId>{arc(g, "a")});

    auto full = visible_adjacency(g, all_arcs(g));
    for (ArcId e = 0; e < g.arc_count(); ++e) {
        auto out = g.out_arcs(g.head(e));
        CHECK(sorted(full[e]) == sorted({out.begin(), out.end()}));
    }
    auto none = visible_adjacency(g, ArcSet(g.arc_count(), 0));
    for (const auto& l : none) CHECK(l.empty());
}

TEST_CASE("visible hydrostructure with everything visible") {
    for (const Graph& g : enumerate_small_graphs(3, 4))
        for (const Walk& w : enumerate_walks(g, 3)) {
            if (w.size() < 2) continue;
            Hydrostructure a = build_hydrostructure(g, w);
            Hydrostructure b = build_visible_hydrostructure(g, w, all_arcs(g));
            CHECK(a.in_r_plus == b.in_r_plus);
            CHECK(a.in_r_minus == b.in_r_minus);
            CHECK(a.bridge_like == b.bridge_like);
        }
}

TEST_CASE("visible endpoints are required") {
    Graph g = figure_eight_detour();
    ArcSet vis = arc_set(g, {arc(g, "a"), arc(g, "c")});
    CHECK_THROWS_AS(build_visible_hydrostructure(g, walk(g, "a b"), vis), ModelError);
}

TEST_CASE("detour around the figure eight") {
    // The detour v-z-w lets a walk leave a for w without b, even when the
    // detour is invisible: the visible sequence a c b never has a next to b.
    Graph g = figure_eight_detour();
    ArcSet vis = arc_set(g, {arc(g, "a"), arc(g, "b"), arc(g, "c"), arc(g, "d")});
    Hydrostructure plain = build_hydrostructure(g, walk(g, "a b"));
    Hydrostructure visible = build_visible_hydrostructure(g, walk(g, "a b"), vis);
    CHECK_FALSE(plain.bridge_like);
    CHECK_FALSE(visible.bridge_like);
}

TEST_CASE("Alg. 1 equals definition-level reachability") {
    for (const Graph& g : enumerate_small_graphs(3, 5))
        for (const Walk& w : enumerate_walks(g, 4)) {
            if (w.size() < 2) continue;
            Hydrostructure h = build_hydrostructure(g, w);
            CHECK(h.in_r_plus == oracle_r_plus(g, w));
            CHECK(h.in_r_minus == oracle_r_minus(g, w));
        }
}

TEST_CASE("bridge-like walks separate Sea from Cloud") {
    // Every walk from a Sea arc to a Cloud arc contains w.
    for (const Graph& g : enumerate_small_graphs(3, 5)) {
        auto walks = enumerate_walks(g, 6);
        for (const Walk& w : enumerate_walks(g, 3)) {
            if (w.size() < 2) continue;
            Hydrostructure h = build_hydrostructure(g, w);
            if (!h.bridge_like) continue;
            for (const Walk& x : walks) {
                if (!h.in(g.arc_elem(x.front()), Part::Sea) || !h.in(g.arc_elem(x.back()), Part::Cloud)) continue;
                CHECK(is_subwalk(w, x));
            }
        }
    }
}

}
