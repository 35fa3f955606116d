#pragma once

#include "loopforge/exactq/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace loopforge::fatgraph {

using HalfEdge = std::size_t;

enum class Valence { Relaxed, Strict };

/// Ribbon graph in half-edge form. An oriented edge is named by its source
/// half-edge; its reversal is the paired half-edge.
///
/// Vertices list their half-edges in cyclic (counterclockwise) order. In
/// strict mode every vertex is at least trivalent; relaxed mode admits any
/// positive valence, which chord diagrams and collapses need.
class FatGraph {
public:
    FatGraph(std::vector<std::string> names, const std::vector<std::pair<std::string, std::string>>& edges,
             const std::vector<std::vector<std::string>>& vertices, Valence mode = Valence::Relaxed);

    /// Index-based constructor; `involution[h]` is the partner of h.
    FatGraph(std::vector<std::string> names, std::vector<HalfEdge> involution,
             std::vector<std::vector<HalfEdge>> vertices, Valence mode = Valence::Relaxed);

    std::size_t half_edge_count() const { return names_.size(); }
    std::size_t edge_count() const { return names_.size() / 2; }
    std::size_t vertex_count() const { return vertices_.size(); }

    const std::string& name(HalfEdge h) const { return names_[h]; }
    HalfEdge find(const std::string& name) const;
    HalfEdge reverse(HalfEdge h) const { return involution_[h]; }
    std::size_t vertex_of(HalfEdge h) const { return vertex_of_[h]; }
    /// Cyclic successor of h at its vertex.
    HalfEdge next_at_vertex(HalfEdge h) const;
    /// Boundary successor: the cyclic successor, at the target vertex, of the reversal.
    HalfEdge boundary_next(HalfEdge h) const { return next_at_vertex(involution_[h]); }
    /// Edge index: edges are numbered by their smaller half-edge, in order.
    std::size_t edge_of(HalfEdge h) const { return edge_of_[h]; }

    const std::vector<std::string>& names() const { return names_; }
    const std::vector<HalfEdge>& involution() const { return involution_; }
    const std::vector<std::vector<HalfEdge>>& vertices() const { return vertices_; }

    bool is_connected() const;
    /// Throws MalformedGraph when a vertex has fewer than three half-edges.
    void validate_strict() const;

    // Optional metric and marking data; carried through but unused by the
    // topological computations.
    std::map<std::string, exactq::Rational> lengths;
    std::map<std::string, std::string> edge_labels;
    std::vector<std::string> markings;

private:
    void build_indices(Valence mode);

    std::vector<std::string> names_;
    std::vector<HalfEdge> involution_;
    std::vector<std::vector<HalfEdge>> vertices_;
    std::vector<std::size_t> vertex_of_;
    std::vector<std::size_t> position_;
    std::vector<std::size_t> edge_of_;
};

/// Boundary cycles as sequences of oriented edges (source half-edges).
/// Cycles are listed by their smallest half-edge index and start there.
struct BoundaryPartition {
    std::vector<std::vector<HalfEdge>> cycles;
};

BoundaryPartition boundary_cycles(const FatGraph& g);

/// |V| - |E|
long long euler_characteristic(const FatGraph& g);

struct SurfaceType {
    std::size_t genus = 0;
    std::size_t boundary_components = 0;
    friend bool operator==(const SurfaceType&, const SurfaceType&) = default;
};

/// Solves chi = 2 - 2g - n. Throws Disconnected or NonIntegralGenus.
SurfaceType genus(const FatGraph& g);

struct ChordType {
    std::size_t genus = 0;
    std::size_t p = 0;
    std::size_t q = 0;
    friend bool operator==(const ChordType&, const ChordType&) = default;
};

struct ChordDiagram {
    FatGraph graph;
    BoundaryPartition cycles;
    std::vector<std::size_t> incoming;  ///< indices into cycles
    std::vector<std::size_t> outgoing;
    std::vector<bool> circular;         ///< per edge index; false means ghost
    ChordType type;
};

/// Checks the Sullivan chord diagram conditions for the given incoming
/// boundary cycles. Throws InvalidChordDiagram with the violated condition.
ChordDiagram validate_chord_diagram(const FatGraph& g, const std::vector<std::size_t>& incoming);

struct ReducedDiagram {
    FatGraph graph;
    BoundaryPartition cycles;
    std::vector<std::size_t> incoming;
    std::vector<std::size_t> outgoing;
};

/// Collapses every ghost component to a vertex. The result keeps genus and
/// boundary count, and an oriented edge lies on an incoming cycle iff its
/// reversal lies on an outgoing one (checked; InvalidChordDiagram otherwise).
ReducedDiagram reduce_chord_diagram(const ChordDiagram& c);

/// Cycles rendered with half-edge names, each rotated to start at its
/// lexicographically smallest name, sorted. Used to compare partitions.
std::vector<std::vector<std::string>> normalized_cycles(const FatGraph& g, const BoundaryPartition& p);

/// Contracts one non-loop edge, merging the cyclic orders of its endpoints.
FatGraph contract_edge(const FatGraph& g, HalfEdge h);

}  // namespace loopforge::fatgraph
