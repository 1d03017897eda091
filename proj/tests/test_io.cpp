#include <doctest.h>

#include "hydro/errors.hpp"
#include "hydro/io.hpp"
#include "support.hpp"

using namespace hydro;
using namespace hydro::testing;

TEST_SUITE("io") {

TEST_CASE("hydrostructure json round trip") {
    for (const Graph& g : {figure_eight(), twin_cycle(), figure_eight_detour()})
        for (ArcId e = 0; e < g.arc_count(); ++e)
            for (ArcId f : g.out_arcs(g.head(e))) {
                Walk w{{e, f}};
                Hydrostructure h = build_hydrostructure(g, w);
                nlohmann::json j = hydro_to_json(g, h);
                Hydrostructure back = hydro_from_json(g, nlohmann::json::parse(j.dump()));
                CHECK(back.walk == h.walk);
                CHECK(back.bridge_like == h.bridge_like);
                for (std::size_t x = 0; x < g.element_count(); ++x) CHECK(back.part(x) == h.part(x));
            }
}

TEST_CASE("hydrostructure json layout") {
    Graph g = figure_eight();
    nlohmann::json j = hydro_to_json(g, build_hydrostructure(g, walk(g, "a b")));
    CHECK(j["walk"] == nlohmann::json({"a", "b"}));
    CHECK(j["bridge_like"] == true);
    CHECK(j["sea"] == nlohmann::json({"u", "a", "d"}));
    CHECK(j["cloud"] == nlohmann::json({"w", "b", "c"}));
    CHECK(j["vapor"] == nlohmann::json({"v"}));
    CHECK(j["river"].empty());
}

TEST_CASE("broken json is rejected") {
    Graph g = figure_eight();
    nlohmann::json j = hydro_to_json(g, build_hydrostructure(g, walk(g, "a b")));
    nlohmann::json missing = j;
    missing["vapor"] = nlohmann::json::array();
    CHECK_THROWS_AS(hydro_from_json(g, missing), ParseError);
    nlohmann::json unknown = j;
    unknown["river"] = {"zzz"};
    CHECK_THROWS_AS(hydro_from_json(g, unknown), ParseError);
}

TEST_CASE("walk list json") {
    Graph g = figure_eight();
    SafetyModel m;
    m.shape = Shape::Linear;
    m.k = kUnbounded;
    m.s = node(g, "u");
    m.t = node(g, "w");
    nlohmann::json j = walks_to_json(g, m, {walk(g, "a b")});
    CHECK(j["k"] == "inf");
    CHECK(j["s"] == "u");
    CHECK(j["t"] == "w");
    CHECK(j["walks"] == nlohmann::json::array({{"a", "b"}}));
}

}
