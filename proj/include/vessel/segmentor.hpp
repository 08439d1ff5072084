#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vessel/graph.hpp"
#include "vessel/raster.hpp"

namespace vessel::segmentor {

struct RootPolicy {
  enum class Kind { MaxRadius, Coordinate, NodeId };
  Kind kind = Kind::MaxRadius;
  Vec3 coordinate{};
  std::uint32_t node_id = 0;
  double snap_distance = 16.0;

  static RootPolicy max_radius() { return {}; }
  static RootPolicy at_coordinate(const Vec3& p, double snap = 16.0) {
    return {Kind::Coordinate, p, 0, snap};
  }
  static RootPolicy at_node(std::uint32_t id) {
    return {Kind::NodeId, {}, id, 0.0};
  }
};

struct MaskRequest {
  bool enabled = false;
  raster::Dims dims{};
};

struct SegmentorConfig {
  double r_min_ratio = 0.2;
  RootPolicy root{};
  MaskRequest mask{};
};

struct SegmentationResult {
  VesselGraph main_graph;
  std::vector<std::uint32_t> visited_order;  // main_graph ids, DFS preorder
  std::uint32_t pruned_components = 0;
  double r_max_observed = 0.0;
  std::optional<raster::RasterMask> mask;
};

// Keeps exactly { i : r_i >= ratio * r_max } plus edges between retained
// nodes; ids are compacted preserving order. r_max is taken over the input.
// Throws InvalidRatio outside [0,1], EmptyInput on an empty graph.
VesselGraph filter_by_radius(const VesselGraph& graph, double ratio);

// Restricts to the largest weakly connected component, resolves the root
// inside it, then walks depth-first visiting neighbors thickest-first
// (descending target radius, ties ascending id). The result graph is the
// subgraph induced by the visited set, ids compacted in ascending order
// of the input ids; visited_order uses the result numbering. Root policy
// ids refer to this function's input graph. Throws EmptyAfterFilter on an
// empty input, RootNotFound when a coordinate root snaps to nothing within
// snap_distance or a node_id root lies outside the largest component.
SegmentationResult dfs_extract(const VesselGraph& graph,
                               const SegmentorConfig& config);

// filter_by_radius -> dfs_extract -> optional rasterization.
SegmentationResult segment(const VesselGraph& graph,
                           const SegmentorConfig& config);

// Proximity-builds the graph first.
SegmentationResult segment(std::vector<VesselNode> nodes,
                           const SegmentorConfig& config,
                           ProximityPolicy proximity = {});

// Mean absolute per-cell difference / 255, in [0,1]. ShapeMismatch on
// differing dims.
double structural_consistency(const raster::RasterMask& a,
                              const raster::RasterMask& b);

}  // namespace vessel::segmentor
