#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vessel/geometry.hpp"

namespace vessel {

// A centerline sample: position plus local vessel radius. Node ids are the
// indices into VesselGraph::nodes(), dense in 0..N-1. z stays 0.0 for 2D data.
struct VesselNode {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double r = 1.0;

  Vec3 position() const { return {x, y, z}; }
};

// Directed segment between centerline samples. The weight is always the
// radius of the source node, so thicker vessels carry heavier edges.
struct VesselEdge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  double weight = 0.0;
};

using IdPair = std::pair<std::uint32_t, std::uint32_t>;

// Immutable directed graph over vessel nodes. Adjacency is kept in CSR form
// (offsets + edge indices grouped by source) and always mirrors the edge list.
class VesselGraph {
public:
  VesselGraph() = default;

  // Builds the adjacency for the given parts without checking invariants;
  // `validate` reports violations for graphs assembled this way. Edges are
  // stored sorted by (from, to) so equal graphs serialize identically.
  static VesselGraph from_parts(std::vector<VesselNode> nodes,
                                std::vector<VesselEdge> edges);

  const std::vector<VesselNode>& nodes() const { return nodes_; }
  const std::vector<VesselEdge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  const VesselNode& node(std::uint32_t id) const { return nodes_[id]; }

  // Indices into edges() of the outgoing edges of `id`.
  std::span<const std::uint32_t> out_edges(std::uint32_t id) const {
    return {adj_edges_.data() + adj_offsets_[id],
            adj_edges_.data() + adj_offsets_[id + 1]};
  }

  // Largest node radius, 0.0 for an empty graph. Cached at construction.
  double max_radius() const { return max_radius_; }

private:
  std::vector<VesselNode> nodes_;
  std::vector<VesselEdge> edges_;
  std::vector<std::uint32_t> adj_offsets_;  // node_count()+1 entries
  std::vector<std::uint32_t> adj_edges_;    // edge indices grouped by source
  double max_radius_ = 0.0;
};

// Connect i->j and j->i whenever |p_i - p_j| <= r_i + r_j + delta: nodes link
// when their discs (spheres) touch, with `delta` of slack.
struct ProximityPolicy {
  double delta = 0.5;
};

// Builds a graph from bare nodes using the touching-disc proximity rule.
// Throws EmptyInput / InvalidRadius.
VesselGraph build_graph(std::vector<VesselNode> nodes, ProximityPolicy policy);

// Builds a graph from nodes plus an explicit edge list (e.g. parent links
// from synthesis). Edge weights are derived from source radii; duplicate
// pairs collapse to one edge. Throws EmptyInput / InvalidRadius / InvalidEdge.
VesselGraph build_graph(std::vector<VesselNode> nodes,
                        std::span<const IdPair> explicit_edges);

// Weakly connected components with deterministic labels: scanning node ids in
// order, the first node of an unseen component claims the next label.
struct ComponentLabeling {
  std::vector<std::uint32_t> label;       // per node
  std::vector<std::uint32_t> sizes;       // per component
  std::vector<double> radius_sums;        // per component
  std::uint32_t largest = 0;  // max size; ties: larger radius sum, then lower id

  std::uint32_t component_count() const {
    return static_cast<std::uint32_t>(sizes.size());
  }
};

ComponentLabeling connected_components(const VesselGraph& graph);

struct ValidationIssue {
  enum class Kind {
    InvalidRadius,
    InvalidEdgeEndpoint,
    SelfLoop,
    WeightMismatch,
    DuplicateEdge,
    AdjacencyMismatch,
  };
  Kind kind;
  std::uint64_t offender;  // node id or edge index, see message
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool valid() const { return issues.empty(); }
};

// Checks every type invariant; never throws. An empty report means the graph
// is well-formed.
ValidationReport validate(const VesselGraph& graph);

}  // namespace vessel
