#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hydro/graph.hpp"
#include "hydro/safety.hpp"
#include "hydro/walk_cover.hpp"

namespace hydro {

// Brute-force ground truth. Nothing here calls into the fast paths.

struct OracleLimits {
    std::size_t max_arcs = 12;
    std::size_t max_required = 12;
    std::size_t max_walk = 8;
    std::uint64_t max_k = 4; // or unbounded
};

// Decides safety by searching for a covering collection of at most k walks
// that all avoid w. Single-walk feasibility is reachability in the product
// of the graph with a string matcher for w and a mask of covered arcs;
// the collection step is a set cover over the achievable masks. Closed
// walks are read periodically. Results are shared across k and (s,t).
class SafetyOracle {
  public:
    SafetyOracle(const Graph& g, const Walk& w, const ArcSet& f_cov, const ArcSet& f_vis,
                 const OracleLimits& limits = {});

    bool circular(std::uint64_t k) const;
    bool linear(std::uint64_t k, NodeId s, NodeId t) const;

  private:
    bool coverable(const std::vector<char>& masks, std::uint64_t k) const;
    const std::vector<std::vector<char>>& from_source(NodeId s) const;

    const Graph& g_;
    std::vector<std::vector<std::uint32_t>> delta_; // [state][arc]
    std::uint32_t accept_ = 0;
    std::vector<std::uint32_t> bit_; // per arc: bit index or kNone
    std::uint32_t full_ = 0;
    std::uint32_t nbits_ = 0;
    std::vector<char> closed_masks_;
    mutable std::vector<std::vector<std::vector<char>>> linear_masks_; // [s][t][mask]
    OracleLimits limits_;
};

// Throws ModelError when the instance exceeds the limits.
bool oracle_safe(const Graph& g, const Walk& w, const SafetyModel& model, const OracleLimits& limits = {});

// Definition-level restricted reachability: elements reachable by a walk
// that starts with the first arc of w (ends with the last one, backward)
// and does not contain w.
ElementSet oracle_r_plus(const Graph& g, const Walk& w);
ElementSet oracle_r_minus(const Graph& g, const Walk& w);

// Minimum number of element walks inside `sub`, starting and ending on the
// boundary described by `boundary`, that together cover `required`.
// kInfinite when impossible.
std::uint64_t oracle_min_walk_cover(const Graph& g, const ElementSet& sub, const ArcSet& required,
                                    const CoverBoundary& boundary = {});

// Every strongly connected, non-cycle multigraph with 1..max_nodes nodes and
// 1..max_arcs arcs, one per multiset of (tail, head) pairs. Deterministic.
std::vector<Graph> enumerate_small_graphs(std::size_t max_nodes, std::size_t max_arcs);

struct SelftestReport {
    std::size_t graphs = 0;
    std::size_t walks = 0;
    std::size_t checks = 0;
    std::size_t mismatches = 0;
    std::vector<std::string> failures; // the first few, human readable
};

// Verifier against oracle on every small graph, every walk up to max_walk
// arcs, circular and linear (all s,t) with k in {1, 2, inf}, F_cov all arcs
// or a single arc.
SelftestReport oracle_selftest(std::size_t max_nodes = 3, std::size_t max_arcs = 5, std::size_t max_walk = 4);

// All walks of 1..max_len arcs, in lexicographic arc-id order.
std::vector<Walk> enumerate_walks(const Graph& g, std::size_t max_len);

} // namespace hydro
