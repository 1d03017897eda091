#pragma once

#include <vector>

#include "hydro/graph.hpp"

namespace hydro {

enum class Part : std::uint8_t { Sea, Cloud, Vapor, River };

const char* part_name(Part p);

struct Hydrostructure {
    Walk walk;
    ElementSet in_r_plus;
    ElementSet in_r_minus;
    bool bridge_like = false;

    Part part(std::size_t x) const {
        if (in_r_plus[x]) return in_r_minus[x] ? Part::Vapor : Part::Sea;
        return in_r_minus[x] ? Part::Cloud : Part::River;
    }
    bool in(std::size_t x, Part p) const { return part(x) == p; }
    std::vector<std::size_t> elements(Part p) const;
    ElementSet mask(Part p) const;
    bool empty(Part p) const;
};

// R+(w), computed by a single traversal from the first arc that never
// takes the last one; re-entry into the walk means the walk is avertible
// and the answer is the whole graph. `avertible`, when given, reports it.
ElementSet restricted_forward_reachability(const Graph& g, const Walk& w, bool* avertible = nullptr);
ElementSet restricted_backward_reachability(const Graph& g, const Walk& w, bool* avertible = nullptr);

Hydrostructure build_hydrostructure(const Graph& g, const Walk& w);

// Elements of the interior Z of w = aZb.
ElementSet walk_interior(const Graph& g, const Walk& w);

struct SplitArc {
    Graph graph;
    Walk walk;
    NodeId dummy = 0;
};

// e = (u,v) becomes (u,x_e),(x_e,v); the two halves take the ids e and
// m (the new last arc), so every other arc keeps its id.
SplitArc split_single_arc(const Graph& g, ArcId e);

struct HydroSccView {
    ElementSet sea_related;   // SCC of the first arc inside R+, empty if a is on no cycle there
    ElementSet cloud_related; // SCC of the last arc inside R-, likewise
    bool has_sea_related = false;
    bool has_cloud_related = false;
    // Maximal SCCs of the River that contain at least one arc.
    std::vector<ElementSet> river_sccs;
    // Per element: index into river_sccs or kNone.
    std::vector<std::uint32_t> river_scc_of;
};

HydroSccView hydro_scc_view(const Graph& g, const Hydrostructure& h);

// Definition-level restricted reachability for a pattern, by traversal of
// the product of the graph with a string matcher for the pattern. With a
// visibility mask only visible arcs advance the matcher. Seeds are either
// a node (empty walk) or an arc (walk starting with it).
struct ReachSeed {
    bool is_arc = false;
    std::uint32_t id = 0;
};
ElementSet pattern_avoiding_reach(const Graph& g, const std::vector<ArcId>& pattern, ReachSeed seed,
                                  bool forward, const ArcSet* visible = nullptr);

// Visible adjacency: for every visible arc e, the visible arcs f with a
// path head(e) -> tail(f) through invisible arcs only.
std::vector<std::vector<ArcId>> visible_adjacency(const Graph& g, const ArcSet& f_vis);

std::vector<ArcId> visible_subsequence(const Walk& w, const ArcSet& f_vis);

// Hydrostructure under visibility: R+ and R- keep the elements reachable
// by walks whose visible subsequence avoids that of w.
Hydrostructure build_visible_hydrostructure(const Graph& g, const Walk& w, const ArcSet& f_vis);

} // namespace hydro
