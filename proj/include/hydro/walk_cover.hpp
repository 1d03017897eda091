#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "hydro/graph.hpp"
#include "hydro/hydrostructure.hpp"

namespace hydro {

constexpr std::uint64_t kInfinite = std::numeric_limits<std::uint64_t>::max();

struct WalkCoverResult {
    std::uint64_t size = 0; // kInfinite when no cover exists inside the subgraph
    bool feasible() const { return size != kInfinite; }
};

// Where cover walks may start and end. A walk inside `sub` starts at an
// element of `sub` that has an incidence predecessor in `context` (or at
// one of `starts`), and ends symmetrically. With no context given, the
// complement of `sub` is used.
struct CoverBoundary {
    std::optional<ElementSet> context;
    std::vector<NodeId> starts;
    std::vector<NodeId> ends;
};

// Minimum number of walks inside `sub` covering every arc of `required`
// that lies in `sub`. Minimum flow with unit lower bounds on the required
// parts of the SCC condensation of `sub`, reduced to a max-flow.
WalkCoverResult min_walk_cover(const Graph& g, const ElementSet& sub, const ArcSet& required,
                               const CoverBoundary& boundary = {});

struct StInducedView {
    ElementSet r_plus_s;
    ElementSet r_minus_t;
    ElementSet st_induced_subgraph;
    ElementSet st_induced_river;
};

StInducedView st_restricted_reachability(const Graph& g, const Walk& w, NodeId s, NodeId t);
StInducedView st_restricted_reachability(const Graph& g, const Hydrostructure& h, NodeId s, NodeId t);

// Small max-flow used by the cover computation. Capacities saturate at
// kInfinite.
class MaxFlow {
  public:
    explicit MaxFlow(std::size_t n) : adj_(n) {}
    std::size_t add_edge(std::uint32_t u, std::uint32_t v, std::uint64_t cap);
    std::uint64_t run(std::uint32_t s, std::uint32_t t);
    std::uint64_t flow(std::size_t edge) const { return edges_[edge].flow; }

  private:
    struct Edge {
        std::uint32_t to;
        std::uint64_t cap;
        std::uint64_t flow;
    };
    std::vector<Edge> edges_;
    std::vector<std::vector<std::uint32_t>> adj_;
};

} // namespace hydro
