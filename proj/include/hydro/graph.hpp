#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hydro {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Per-element flags over the unified index space: nodes first, then arcs.
using ElementSet = std::vector<char>;
// Per-arc flags.
using ArcSet = std::vector<char>;

struct Arc {
    NodeId tail;
    NodeId head;
};

// Directed multigraph. Arc identity is the arc id; parallel arcs and
// self-loops are fine.
class Graph {
  public:
    Graph() = default;
    explicit Graph(std::size_t nodes);

    NodeId add_node(std::string name = {});
    ArcId add_arc(NodeId tail, NodeId head, std::string name = {});

    std::size_t node_count() const { return out_.size(); }
    std::size_t arc_count() const { return arcs_.size(); }
    std::size_t element_count() const { return out_.size() + arcs_.size(); }

    NodeId tail(ArcId e) const { return arcs_[e].tail; }
    NodeId head(ArcId e) const { return arcs_[e].head; }
    const std::vector<Arc>& arcs() const { return arcs_; }

    std::span<const ArcId> out_arcs(NodeId v) const { return out_[v]; }
    std::span<const ArcId> in_arcs(NodeId v) const { return in_[v]; }
    std::size_t out_degree(NodeId v) const { return out_[v].size(); }
    std::size_t in_degree(NodeId v) const { return in_[v].size(); }

    bool is_join_node(NodeId v) const { return in_[v].size() > 1; }
    bool is_split_node(NodeId v) const { return out_[v].size() > 1; }
    bool is_join_arc(ArcId e) const { return is_join_node(head(e)); }
    bool is_split_arc(ArcId e) const { return is_split_node(tail(e)); }

    // Element index helpers.
    std::size_t node_elem(NodeId v) const { return v; }
    std::size_t arc_elem(ArcId e) const { return out_.size() + e; }
    bool elem_is_arc(std::size_t x) const { return x >= out_.size(); }
    ArcId elem_arc(std::size_t x) const { return static_cast<ArcId>(x - out_.size()); }

    // Names default to "n<id>" / "e<id>" when none were given.
    std::string node_name(NodeId v) const;
    std::string arc_name(ArcId e) const;
    std::string elem_name(std::size_t x) const;
    std::optional<NodeId> find_node(const std::string& name) const;
    std::optional<ArcId> find_arc(const std::string& name) const;

    // Graph with every arc reversed; ids and names are kept.
    Graph reversed() const;

    // True iff the graph is strongly connected and every node has in- and
    // out-degree one. Safety is not defined on such graphs.
    bool is_cycle() const;
    bool is_strongly_connected() const;

  private:
    std::vector<Arc> arcs_;
    std::vector<std::vector<ArcId>> out_;
    std::vector<std::vector<ArcId>> in_;
    std::vector<std::string> node_names_;
    std::vector<std::string> arc_names_;
    std::unordered_map<std::string, NodeId> node_index_;
    std::unordered_map<std::string, ArcId> arc_index_;
};

ArcSet all_arcs(const Graph& g);
ArcSet arc_set(const Graph& g, std::initializer_list<ArcId> arcs);

// Walks are arc sequences. A closed walk returns to its start and is read
// cyclically.
struct Walk {
    std::vector<ArcId> arcs;
    bool closed = false;

    std::size_t size() const { return arcs.size(); }
    bool empty() const { return arcs.empty(); }
    ArcId front() const { return arcs.front(); }
    ArcId back() const { return arcs.back(); }
    Walk slice(std::size_t from, std::size_t to) const; // [from, to), open
    bool operator==(const Walk&) const = default;
};

bool is_walk_in(const Graph& g, const Walk& w);
void require_walk(const Graph& g, const Walk& w); // throws ModelError

// Internal node sequence: head(w_1), ..., tail(w_l). For a single arc it is
// empty.
std::vector<NodeId> internal_nodes(const Graph& g, const Walk& w);

struct WalkAnatomy {
    Walk left_wing;
    Walk heart;
    Walk right_wing;
    bool trivial = true;
    std::size_t heart_begin = 0; // position of the heart inside the walk
    std::size_t heart_end = 0;   // one past the last heart arc
};

WalkAnatomy heart_and_wings(const Graph& g, const Walk& w);

Walk univocal_extension(const Graph& g, const Walk& w);

// Contiguous occurrence. For a closed outer walk the match may run over
// the seam, any number of times (the outer walk is read periodically).
bool is_subwalk(const Walk& inner, const Walk& outer);

// Maximal unitigs: maximal walks whose internal nodes have in- and
// out-degree one. Closed when the unitig is an isolated cycle.
std::vector<Walk> maximal_unitigs(const Graph& g);

struct SccDecomposition {
    std::vector<std::uint32_t> component; // per node
    std::size_t count = 0;
    // Component ids are numbered in topological order of the condensation
    // (sources first).
    std::vector<std::vector<std::uint32_t>> dag_out;
    std::vector<char> arc_is_intra;
};

SccDecomposition scc_decompose(const Graph& g);

// Tarjan over a plain adjacency-list digraph; returns component ids in
// topological order of the condensation (sources first).
std::vector<std::uint32_t> scc_of(const std::vector<std::vector<std::uint32_t>>& adj,
                                  std::size_t* count = nullptr);

struct NodeCentric {
    Graph graph;
    ArcSet marked;                 // node-arcs of the marked nodes
    std::vector<ArcId> node_arc;   // node -> its node-arc
    std::vector<ArcId> arc_image;  // original arc -> new arc
};

// Every node v becomes v_in -> v_out; original arcs go v_out -> w_in.
NodeCentric node_centric_transform(const Graph& g, const std::vector<NodeId>& marked);

struct StSets {
    Graph graph;
    NodeId s = 0;
    NodeId t = 0;
    ArcSet f_cov; // the original arcs only
};

StSets st_sets_transform(const Graph& g, const std::vector<NodeId>& sources,
                         const std::vector<NodeId>& targets);

// Induced subgraph on a node subset; arcs with both endpoints kept.
struct Subgraph {
    Graph graph;
    std::vector<NodeId> node_to_sub; // kNone when dropped
    std::vector<ArcId> arc_to_sub;   // kNone when dropped
    std::vector<NodeId> sub_to_node;
    std::vector<ArcId> sub_to_arc;
};

Subgraph induced_subgraph(const Graph& g, const std::vector<char>& keep_node,
                          const std::vector<char>* keep_arc = nullptr);

} // namespace hydro
