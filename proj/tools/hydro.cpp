#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hydro/enumeration.hpp"
#include "hydro/errors.hpp"
#include "hydro/hydrostructure.hpp"
#include "hydro/io.hpp"
#include "hydro/oracle.hpp"
#include "hydro/safety.hpp"

using namespace hydro;

namespace {

enum Exit { kOk = 0, kUnsafe = 1, kUsage = 2, kInfeasible = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string graph_path;
    std::string walk;
    std::string shape = "circular";
    std::string k = "1";
    std::string s, t;
    bool fcov_flags = false;
    bool fvis_flags = false;
    std::string node_centric;
    std::string sources, targets;
    bool json = false;
    bool explain = false;
};

// The graph the model actually runs on, after the optional reductions.
struct Instance {
    Graph graph;
    SafetyModel model;
};

std::vector<std::string> split_list(const std::string& text) {
    std::string t = text;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::uint64_t parse_k(const std::string& text) {
    if (text == "inf") return kUnbounded;
    std::size_t used = 0;
    unsigned long long k = 0;
    try {
        k = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || k == 0) throw UsageError("--k takes a positive integer or inf");
    return k;
}

NodeId node_named(const Graph& g, const std::string& name) {
    auto v = g.find_node(name);
    if (!v) throw UsageError("no node named '" + name + "'");
    return *v;
}

std::vector<NodeId> nodes_named(const Graph& g, const std::string& list) {
    std::vector<NodeId> out;
    for (const auto& name : split_list(list)) out.push_back(node_named(g, name));
    return out;
}

Instance build_instance(const Options& o) {
    GraphFile file = read_graph_file(o.graph_path);
    const Graph& g = file.graph;
    Instance in;
    SafetyModel& m = in.model;
    if (o.shape == "circular") m.shape = Shape::Circular;
    else if (o.shape == "linear") m.shape = Shape::Linear;
    else throw UsageError("--shape is circular or linear");
    m.k = parse_k(o.k);

    const bool st_sets = !o.sources.empty() || !o.targets.empty();
    if (st_sets && !o.node_centric.empty()) throw UsageError("--node-centric and --sources/--targets do not combine");
    if (m.shape == Shape::Linear && !st_sets && (o.s.empty() || o.t.empty()))
        throw UsageError("linear shape needs --s and --t (or --sources and --targets)");
    if (m.shape == Shape::Circular && (st_sets || !o.s.empty() || !o.t.empty()))
        throw UsageError("--s/--t/--sources/--targets apply to the linear shape only");

    if (!o.node_centric.empty()) {
        if (o.fvis_flags) throw UsageError("--node-centric does not take visibility flags");
        NodeCentric nc = node_centric_transform(g, nodes_named(g, o.node_centric));
        ArcSet cov = nc.marked;
        if (o.fcov_flags)
            for (ArcId e = 0; e < g.arc_count(); ++e)
                if (file.f_cov[e]) cov[nc.arc_image[e]] = 1;
        if (m.shape == Shape::Linear) {
            m.s = 2 * node_named(g, o.s);
            m.t = 2 * node_named(g, o.t) + 1;
        }
        m.f_cov = cov;
        in.graph = std::move(nc.graph);
        return in;
    }
    if (st_sets) {
        if (o.sources.empty() || o.targets.empty()) throw UsageError("--sources and --targets go together");
        if (!o.s.empty() || !o.t.empty()) throw UsageError("--s/--t and --sources/--targets do not combine");
        if (o.fvis_flags) throw UsageError("--sources/--targets do not take visibility flags");
        StSets st = st_sets_transform(g, nodes_named(g, o.sources), nodes_named(g, o.targets));
        ArcSet cov = st.f_cov;
        if (o.fcov_flags)
            for (ArcId e = 0; e < g.arc_count(); ++e) cov[e] = file.f_cov[e];
        m.s = st.s;
        m.t = st.t;
        m.f_cov = cov;
        in.graph = std::move(st.graph);
        return in;
    }
    if (m.shape == Shape::Linear) {
        m.s = node_named(g, o.s);
        m.t = node_named(g, o.t);
    }
    if (o.fcov_flags) m.f_cov = file.f_cov;
    if (o.fvis_flags) m.f_vis = file.f_vis;
    in.graph = std::move(file.graph);
    return in;
}

Walk walk_of(const Options& o, const Graph& g) {
    if (o.walk.empty()) throw UsageError("--walk is required");
    return parse_walk(g, o.walk);
}

std::string summary(const Hydrostructure& h) {
    auto size = [&](Part p) { return std::to_string(h.elements(p).size()); };
    return std::string("bridge_like=") + (h.bridge_like ? "yes" : "no") + " sea=" + size(Part::Sea) +
           " cloud=" + size(Part::Cloud) + " vapor=" + size(Part::Vapor) + " river=" + size(Part::River);
}

int report_verdict(const Options& o, const Instance& in, const Walk& w, bool safe, const std::string& why) {
    const char* verdict = safe ? "SAFE" : "UNSAFE";
    if (o.json) {
        nlohmann::json j = {{"verdict", verdict}, {"model", model_tag(in.model)}, {"walk", format_walk(in.graph, w)}};
        if (o.explain) {
            j["explain"] = why;
            j["hydrostructure"] = hydro_to_json(in.graph, build_hydrostructure(in.graph, w));
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << verdict << "\n";
        if (o.explain) {
            if (!why.empty()) std::cout << "because: " << why << "\n";
            std::cout << "hydrostructure: " << summary(build_hydrostructure(in.graph, w)) << "\n";
        }
    }
    return safe ? kOk : kUnsafe;
}

int cmd_verify(const Options& o) {
    Instance in = build_instance(o);
    Walk w = walk_of(o, in.graph);
    std::string why;
    bool safe = verify(in.graph, w, in.model, &why);
    return report_verdict(o, in, w, safe, why);
}

int cmd_oracle(const Options& o) {
    Instance in = build_instance(o);
    Walk w = walk_of(o, in.graph);
    bool safe = oracle_safe(in.graph, w, in.model);
    return report_verdict(o, in, w, safe, "exhaustive search");
}

int cmd_enumerate(const Options& o) {
    Instance in = build_instance(o);
    auto walks = enumerate_maximal(in.graph, in.model);
    if (o.json) {
        std::cout << walks_to_json(in.graph, in.model, walks).dump(2) << "\n";
        return kOk;
    }
    const std::string tag = model_tag(in.model);
    for (const auto& w : walks) std::cout << "safe " << tag << " " << format_walk(in.graph, w) << "\n";
    return kOk;
}

int cmd_hydro(const Options& o) {
    GraphFile file = read_graph_file(o.graph_path);
    Walk w = walk_of(o, file.graph);
    Hydrostructure h = build_hydrostructure(file.graph, w);
    if (o.json || !o.explain) {
        std::cout << hydro_to_json(file.graph, h).dump(2) << "\n";
    } else {
        std::cout << summary(h) << "\n";
    }
    return kOk;
}

int cmd_selftest(std::size_t nodes, std::size_t arcs, std::size_t len) {
    SelftestReport r = oracle_selftest(nodes, arcs, len);
    std::cout << "graphs " << r.graphs << " walks " << r.walks << " checks " << r.checks << " mismatches "
              << r.mismatches << "\n";
    for (const auto& f : r.failures) std::cout << "mismatch " << f << "\n";
    std::cout << (r.mismatches == 0 ? "PASS" : "FAIL") << "\n";
    return r.mismatches == 0 ? kOk : kUnsafe;
}

int cmd_worstcase(std::size_t n, std::size_t m, const std::string& out_path) {
    WorstCase wc = worst_case_family(n, m);
    std::ostringstream out;
    out << "# worst case family n=" << n << " m=" << m << ", linear check with s=" << wc.graph.node_name(wc.x0)
        << " t=" << wc.graph.node_name(wc.xn) << "\n";
    out << format_graph(wc.graph);
    for (const auto& w : wc.walks) out << "# walk " << format_walk(wc.graph, w) << "\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << out.str();
    } else {
        std::ofstream f(out_path);
        if (!f) throw UsageError("cannot write " + out_path);
        f << out.str();
    }
    return kOk;
}

void model_options(CLI::App* sub, Options& o, bool with_walk) {
    sub->add_option("graph", o.graph_path, "graph file")->required();
    if (with_walk) sub->add_option("--walk", o.walk, "arc names, space separated, optional trailing 'closed'");
    sub->add_option("--shape", o.shape, "circular or linear");
    sub->add_option("--k", o.k, "number of walks, or inf");
    sub->add_option("--s", o.s, "start node (linear)");
    sub->add_option("--t", o.t, "end node (linear)");
    sub->add_flag("--fcov-from-file-flags", o.fcov_flags, "cover only the arcs marked C");
    sub->add_flag("--fvis-from-file-flags", o.fvis_flags, "only the arcs marked V are visible");
    sub->add_option("--node-centric", o.node_centric, "cover these nodes instead of arcs (comma separated)");
    sub->add_option("--sources", o.sources, "walks may start at any of these nodes");
    sub->add_option("--targets", o.targets, "walks may end at any of these nodes");
    sub->add_flag("--json", o.json, "machine-readable output");
    sub->add_flag("--explain", o.explain, "print the reason and a hydrostructure summary");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Safe walks of arc-covering models"};
    app.require_subcommand(1);
    Options o;
    std::size_t st_nodes = 3, st_arcs = 5, st_len = 4;
    std::size_t wc_n = 4, wc_m = 8;
    std::string wc_out;

    auto* verify_cmd = app.add_subcommand("verify", "decide safety of one walk");
    model_options(verify_cmd, o, true);
    auto* enum_cmd = app.add_subcommand("enumerate", "list all maximal safe walks");
    model_options(enum_cmd, o, false);
    auto* hydro_cmd = app.add_subcommand("hydro", "dump the hydrostructure of a walk");
    hydro_cmd->add_option("graph", o.graph_path)->required();
    hydro_cmd->add_option("--walk", o.walk)->required();
    hydro_cmd->add_flag("--json", o.json, "machine-readable output");
    hydro_cmd->add_flag("--explain", o.explain, "one-line summary instead of the partition");
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force verdict on a small instance");
    model_options(oracle_cmd, o, true);
    auto* self_cmd = app.add_subcommand("selftest", "verifier against oracle on all small graphs");
    self_cmd->add_option("--max-nodes", st_nodes)->check(CLI::Range(1, 4));
    self_cmd->add_option("--max-arcs", st_arcs)->check(CLI::Range(1, 6));
    self_cmd->add_option("--max-walk", st_len)->check(CLI::Range(1, 6));
    auto* wc_cmd = app.add_subcommand("gen-worstcase", "write a graph whose safe walks total about m*n arcs");
    wc_cmd->add_option("--n", wc_n)->required();
    wc_cmd->add_option("--m", wc_m)->required();
    wc_cmd->add_option("--out", wc_out, "output file, stdout by default");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (verify_cmd->parsed()) return cmd_verify(o);
        if (enum_cmd->parsed()) return cmd_enumerate(o);
        if (hydro_cmd->parsed()) return cmd_hydro(o);
        if (oracle_cmd->parsed()) return cmd_oracle(o);
        if (self_cmd->parsed()) return cmd_selftest(st_nodes, st_arcs, st_len);
        if (wc_cmd->parsed()) return cmd_worstcase(wc_n, wc_m, wc_out);
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
