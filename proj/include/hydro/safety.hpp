#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hydro/graph.hpp"
#include "hydro/hydrostructure.hpp"
#include "hydro/walk_cover.hpp"

namespace hydro {

// k = infinity.
constexpr std::uint64_t kUnbounded = kInfinite;

enum class Shape { Circular, Linear };

struct SafetyModel {
    Shape shape = Shape::Circular;
    std::uint64_t k = 1;
    NodeId s = 0;
    NodeId t = 0;
    std::optional<ArcSet> f_cov; // unset: every arc
    std::optional<ArcSet> f_vis; // unset: every arc
};

std::string model_tag(const SafetyModel& m);

// Linear models do not distinguish k >= m from k = infinity.
std::uint64_t normalize_linear_k(const Graph& g, std::uint64_t k);

// Every verifier optionally explains itself through `why`.

bool verify_circular(const Graph& g, const Walk& w, std::uint64_t k, std::string* why = nullptr);

// w = X aZb Y with heart aZb; returns (X aZ, Zb Y).
std::pair<Walk, Walk> split_k_circular(const Graph& g, const Walk& w, std::uint64_t k);

// Whether the arc at position `pos` of w lies in the maximal suffix that
// starts at s or the maximal prefix that ends at t, both taken over the
// internal nodes of w.
bool suffix_prefix_covered_at(const Graph& g, const Walk& w, std::size_t pos, NodeId s, NodeId t);
bool suffix_prefix_covered(const Graph& g, const Walk& w, ArcId e, NodeId s, NodeId t);

bool verify_linear_core(const Graph& g, const Walk& w, std::uint64_t k, NodeId s, NodeId t,
                        std::string* why = nullptr);
bool verify_linear(const Graph& g, const Walk& w, std::uint64_t k, NodeId s, NodeId t,
                   std::string* why = nullptr);

enum class SccForm { SingleNode, Cycle, General };

struct SequenceDecomposition {
    std::vector<std::uint32_t> component; // per node, in sequence order
    std::vector<std::vector<NodeId>> nodes;
    std::vector<ArcId> inter; // inter[i] joins component i to i+1
    std::vector<NodeId> entry;
    std::vector<NodeId> exit;
    std::vector<SccForm> form;
    std::vector<char> arc_is_intra;
};

SequenceDecomposition sequence_decomposition(const Graph& g, NodeId s, NodeId t);
Walk inter_scc_univocal_extension(const Graph& g, const SequenceDecomposition& d, ArcId e);

// k in {1, infinity}; the graph need not be strongly connected.
bool verify_linear_general(const Graph& g, const Walk& w, std::uint64_t k, NodeId s, NodeId t,
                           std::string* why = nullptr);

bool verify_covering_circular(const Graph& g, const Walk& w, std::uint64_t k, const ArcSet& f_cov,
                              std::string* why = nullptr);
bool verify_covering_linear(const Graph& g, const Walk& w, std::uint64_t k, NodeId s, NodeId t,
                            const ArcSet& f_cov, std::string* why = nullptr);

// Visibility model, optionally combined with subset covering.
bool verify_visible(const Graph& g, const Walk& w, const SafetyModel& model, std::string* why = nullptr);

// Dispatches on the model. Rejects cycle graphs; circular models need a
// strongly connected graph.
bool verify(const Graph& g, const Walk& w, const SafetyModel& model, std::string* why = nullptr);

// Anatomy under visible adjacency: joins and splits are counted among
// visible arcs only. Positions refer to the full walk.
WalkAnatomy visible_heart_and_wings(const Graph& g, const Walk& w, const ArcSet& f_vis);

} // namespace hydro
