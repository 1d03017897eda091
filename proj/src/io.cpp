#include "hydro/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "hydro/errors.hpp"

namespace hydro {

namespace {

std::vector<std::string> tokens(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

} // namespace

GraphFile parse_graph(std::string_view text) {
    GraphFile f;
    Graph& g = f.graph;
    bool have_nodes = false;
    std::vector<char> cov, vis;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto t = tokens(line);
        if (t.empty()) continue;
        if (t[0] == "nodes") {
            if (have_nodes) fail(lineno, "second nodes line");
            have_nodes = true;
            for (std::size_t i = 1; i < t.size(); ++i) {
                if (g.find_node(t[i])) fail(lineno, "duplicate node '" + t[i] + "'");
                g.add_node(t[i]);
            }
        } else if (t[0] == "arc") {
            if (!have_nodes) fail(lineno, "arc before the nodes line");
            if (t.size() < 4 || t.size() > 6) fail(lineno, "expected: arc <name> <tail> <head> [C] [V]");
            if (g.find_arc(t[1])) fail(lineno, "duplicate arc '" + t[1] + "'");
            // The JSON dump lists nodes and arcs by name in one list.
            if (g.find_node(t[1])) fail(lineno, "arc name '" + t[1] + "' is also a node name");
            auto tail = g.find_node(t[2]);
            auto head = g.find_node(t[3]);
            if (!tail) fail(lineno, "undeclared node '" + t[2] + "'");
            if (!head) fail(lineno, "undeclared node '" + t[3] + "'");
            bool c = false, v = false;
            for (std::size_t i = 4; i < t.size(); ++i) {
                if (t[i] == "C" && !c) c = true;
                else if (t[i] == "V" && !v) v = true;
                else fail(lineno, "unknown arc flag '" + t[i] + "'");
            }
            g.add_arc(*tail, *head, t[1]);
            cov.push_back(c);
            vis.push_back(v);
            f.cov_flagged |= c;
            f.vis_flagged |= v;
        } else {
            fail(lineno, "unknown directive '" + t[0] + "'");
        }
    }
    if (!have_nodes) throw ParseError("missing nodes line");
    if (g.arc_count() == 0) throw ParseError("graph has no arcs");
    f.f_cov = f.cov_flagged ? cov : all_arcs(g);
    f.f_vis = f.vis_flagged ? vis : all_arcs(g);
    return f;
}

GraphFile read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

std::string format_graph(const Graph& g, const ArcSet* f_cov, const ArcSet* f_vis) {
    std::string out = "nodes";
    for (NodeId v = 0; v < g.node_count(); ++v) out += " " + g.node_name(v);
    out += "\n";
    for (ArcId e = 0; e < g.arc_count(); ++e) {
        out += "arc " + g.arc_name(e) + " " + g.node_name(g.tail(e)) + " " + g.node_name(g.head(e));
        if (f_cov && (*f_cov)[e]) out += " C";
        if (f_vis && (*f_vis)[e]) out += " V";
        out += "\n";
    }
    return out;
}

Walk parse_walk(const Graph& g, std::string_view text) {
    auto t = tokens(text);
    Walk w;
    std::size_t i = 0;
    if (!t.empty() && t[0] == "walk") i = 1;
    if (!t.empty() && t.back() == "closed") {
        w.closed = true;
        t.pop_back();
    }
    for (; i < t.size(); ++i) {
        auto e = g.find_arc(t[i]);
        if (!e) throw ParseError("walk names unknown arc '" + t[i] + "'");
        w.arcs.push_back(*e);
    }
    if (w.empty()) throw ParseError("walk has no arcs");
    if (!is_walk_in(g, w)) throw ParseError("arcs do not form a walk");
    return w;
}

std::string format_walk(const Graph& g, const Walk& w) {
    std::string out;
    for (ArcId e : w.arcs) {
        if (!out.empty()) out += ' ';
        out += g.arc_name(e);
    }
    return out;
}

std::vector<std::string> element_names(const Graph& g, const std::vector<std::size_t>& elements) {
    std::vector<std::string> out;
    for (std::size_t x : elements) out.push_back(g.elem_name(x));
    return out;
}

nlohmann::json hydro_to_json(const Graph& g, const Hydrostructure& h) {
    std::vector<std::string> walk;
    for (ArcId e : h.walk.arcs) walk.push_back(g.arc_name(e));
    return {
        {"walk", walk},
        {"bridge_like", h.bridge_like},
        {"sea", element_names(g, h.elements(Part::Sea))},
        {"cloud", element_names(g, h.elements(Part::Cloud))},
        {"vapor", element_names(g, h.elements(Part::Vapor))},
        {"river", element_names(g, h.elements(Part::River))},
    };
}

Hydrostructure hydro_from_json(const Graph& g, const nlohmann::json& j) {
    Hydrostructure h;
    try {
        std::string walk;
        for (const auto& name : j.at("walk")) walk += name.get<std::string>() + " ";
        h.walk = parse_walk(g, walk);
        h.bridge_like = j.at("bridge_like").get<bool>();
        h.in_r_plus.assign(g.element_count(), 0);
        h.in_r_minus.assign(g.element_count(), 0);
        std::vector<char> seen(g.element_count(), 0);
        auto lookup = [&](const std::string& name) -> std::size_t {
            if (auto v = g.find_node(name)) return g.node_elem(*v);
            if (auto e = g.find_arc(name)) return g.arc_elem(*e);
            throw ParseError("unknown element '" + name + "'");
        };
        for (auto [key, plus, minus] : {std::tuple{"sea", 1, 0}, std::tuple{"cloud", 0, 1},
                                        std::tuple{"vapor", 1, 1}, std::tuple{"river", 0, 0}}) {
            for (const auto& name : j.at(key)) {
                std::size_t x = lookup(name.get<std::string>());
                if (seen[x]) throw ParseError("element listed twice: " + g.elem_name(x));
                seen[x] = 1;
                h.in_r_plus[x] = static_cast<char>(plus);
                h.in_r_minus[x] = static_cast<char>(minus);
            }
        }
        for (char s : seen)
            if (!s) throw ParseError("partition does not cover every element");
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("bad hydrostructure json: ") + ex.what());
    }
    return h;
}

nlohmann::json walks_to_json(const Graph& g, const SafetyModel& model, const std::vector<Walk>& walks) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& w : walks) {
        std::vector<std::string> names;
        for (ArcId e : w.arcs) names.push_back(g.arc_name(e));
        list.push_back(names);
    }
    nlohmann::json out = {
        {"model", model_tag(model)},
        {"shape", model.shape == Shape::Circular ? "circular" : "linear"},
        {"k", model.k == kUnbounded ? nlohmann::json("inf") : nlohmann::json(model.k)},
        {"walks", list},
    };
    if (model.shape == Shape::Linear) {
        out["s"] = g.node_name(model.s);
        out["t"] = g.node_name(model.t);
    }
    return out;
}

} // namespace hydro
