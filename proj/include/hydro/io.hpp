#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hydro/graph.hpp"
#include "hydro/hydrostructure.hpp"
#include "hydro/safety.hpp"

namespace hydro {

struct GraphFile {
    Graph graph;
    ArcSet f_cov; // all arcs when no line carries C
    ArcSet f_vis; // all arcs when no line carries V
    bool cov_flagged = false;
    bool vis_flagged = false;
};

// nodes <names...>
// arc <name> <tail> <head> [C] [V]
// Blank lines and '#' comments are skipped. Throws ParseError.
GraphFile parse_graph(std::string_view text);
GraphFile read_graph_file(const std::string& path);

std::string format_graph(const Graph& g, const ArcSet* f_cov = nullptr, const ArcSet* f_vis = nullptr);

// "walk a b c [closed]"; the leading keyword is optional.
Walk parse_walk(const Graph& g, std::string_view text);
std::string format_walk(const Graph& g, const Walk& w);

std::vector<std::string> element_names(const Graph& g, const std::vector<std::size_t>& elements);

nlohmann::json hydro_to_json(const Graph& g, const Hydrostructure& h);
// Inverse of hydro_to_json for the same graph. Throws ParseError.
Hydrostructure hydro_from_json(const Graph& g, const nlohmann::json& j);

nlohmann::json walks_to_json(const Graph& g, const SafetyModel& model, const std::vector<Walk>& walks);

} // namespace hydro
