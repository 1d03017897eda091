#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hydro/graph.hpp"
#include "hydro/hydrostructure.hpp"
#include "hydro/safety.hpp"

namespace hydro {

// Closed arc-covering walk: arcs in ascending id order, consecutive ones
// joined by BFS shortest paths (lowest arc id wins ties).
Walk candidate_circular_walk(const Graph& g);

using WalkPredicate = std::function<bool(const Walk&)>;

// Maximal safe subwalks of `host` under a subwalk-monotone predicate. A
// closed host is scanned cyclically, windows at most one period long.
// Equal subwalks are reported once.
std::vector<Walk> two_pointer(const Walk& host, const WalkPredicate& safe);

// Drops duplicates and walks that are subwalks of others, then sorts by
// length (longest first), first arc id, and the arc sequence.
std::vector<Walk> maximal_only(std::vector<Walk> walks);

std::vector<Walk> enumerate_maximal_circular(const Graph& g, std::uint64_t k);

// Strongly connected graphs take any k. Other graphs go through the
// non-strongly-connected verifier and accept k = 1 and k = infinity.
std::vector<Walk> enumerate_maximal_linear(const Graph& g, std::uint64_t k, NodeId s, NodeId t);

// Any non-visibility model, including subset covering.
std::vector<Walk> enumerate_maximal(const Graph& g, const SafetyModel& model);

// Per-element annotation of a bridge-like host h_0..h_{L-1}. entry[x] is
// the first split arc position p >= 1 with x reachable from tail(h_p)
// without h_p; exit[x] is the last join arc position p <= L-2 with x
// reaching head(h_p) without h_p. kNone means never.
struct IncrementalAnnotation {
    Walk host;
    std::vector<std::uint32_t> entry;
    std::vector<std::uint32_t> exit;
    std::vector<std::uint32_t> split_prefix; // split arcs among h_0..h_{p-1}
    std::vector<std::uint32_t> join_prefix;
    // Host positions of each element: arcs by index, nodes as head(h_p).
    std::vector<std::vector<std::uint32_t>> positions;
    std::size_t node_count = 0;

    // Membership for the window h_i..h_j, i < j.
    bool in_r_plus(std::size_t x, std::size_t i, std::size_t j) const;
    bool in_r_minus(std::size_t x, std::size_t i, std::size_t j) const;
    bool in_interior(std::size_t x, std::size_t i, std::size_t j) const; // node of Z
};

IncrementalAnnotation incremental_annotation(const Graph& g, const Walk& host);

struct RiverStats {
    std::size_t elements = 0;
    std::size_t incidences = 0;
    std::size_t sources = 0;   // in-degree zero
    std::size_t sinks = 0;     // out-degree zero
    std::size_t violators = 0; // in- or out-degree at least two

    bool nonempty() const { return elements > 0; }
    bool is_path() const {
        return elements > 0 && sources == 1 && sinks == 1 && violators == 0 && incidences + 1 == elements;
    }
    bool operator==(const RiverStats&) const = default;
};

// Degree counters of the River over the element digraph.
RiverStats river_stats(const Graph& g, const ElementSet& river);

// River of a sliding window over an annotated host. Moving the window only
// touches elements whose membership can change: host positions between
// the old and new bounds and the entry/exit buckets in between.
class RiverStream {
  public:
    RiverStream(const Graph& g, const IncrementalAnnotation& a);
    void set_window(std::size_t i, std::size_t j);
    const RiverStats& stats() const { return stats_; }
    bool in_river(std::size_t x) const { return in_[x] != 0; }

  private:
    bool member(std::size_t x, std::size_t i, std::size_t j) const;
    void toggle(std::size_t x);
    void count(std::size_t x, int sign);

    const Graph& g_;
    const IncrementalAnnotation& a_;
    std::vector<std::vector<std::size_t>> by_entry_, by_exit_;
    std::vector<char> in_;
    std::vector<std::uint32_t> indeg_, outdeg_;
    RiverStats stats_;
    std::size_t i_ = 0, j_ = 0;
    bool started_ = false;
};

// Path g_1..g_n from x_0 to x_n, a = min(n, m) left and right nodes, arcs
// f_p = (x_n, l_p), f'_q = (r_q, x_0), and m bipartite arcs e_i. When a is
// 1 a chord (x_n, x_0) keeps the graph from being a cycle.
struct WorstCase {
    Graph graph;
    std::vector<Walk> walks; // W_i = g_1..g_n f e_i f' g_1..g_n
    NodeId x0 = 0;
    NodeId xn = 0;
};

WorstCase worst_case_family(std::size_t n, std::size_t m);

} // namespace hydro
