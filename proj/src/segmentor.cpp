#include "vessel/segmentor.hpp"

#include <algorithm>
#include <cstdint>

#include "vessel/error.hpp"

namespace vessel::segmentor {

VesselGraph filter_by_radius(const VesselGraph& graph, double ratio) {
  if (!(ratio >= 0.0) || !(ratio <= 1.0)) {
    fail(ErrorCode::InvalidRatio, "ratio must lie in [0,1]");
  }
  if (graph.empty()) fail(ErrorCode::EmptyInput, "empty graph");

  const double threshold = ratio * graph.max_radius();
  std::vector<std::uint32_t> remap(graph.node_count(), UINT32_MAX);
  std::vector<VesselNode> nodes;
  for (std::uint32_t i = 0; i < graph.node_count(); ++i) {
    if (graph.node(i).r >= threshold) {
      remap[i] = static_cast<std::uint32_t>(nodes.size());
      nodes.push_back(graph.node(i));
    }
  }

  std::vector<VesselEdge> edges;
  for (const VesselEdge& e : graph.edges()) {
    if (remap[e.from] != UINT32_MAX && remap[e.to] != UINT32_MAX) {
      edges.push_back({remap[e.from], remap[e.to], e.weight});
    }
  }
  return VesselGraph::from_parts(std::move(nodes), std::move(edges));
}

namespace {

std::uint32_t resolve_root(const VesselGraph& graph, const ComponentLabeling& comps,
                           const RootPolicy& policy) {
  const std::uint32_t n = static_cast<std::uint32_t>(graph.node_count());
  switch (policy.kind) {
    case RootPolicy::Kind::MaxRadius: {
      std::uint32_t best = UINT32_MAX;
      for (std::uint32_t i = 0; i < n; ++i) {
        if (comps.label[i] != comps.largest) continue;
        if (best == UINT32_MAX || graph.node(i).r > graph.node(best).r) best = i;
      }
      return best;
    }
    case RootPolicy::Kind::Coordinate: {
      std::uint32_t best = UINT32_MAX;
      double best_d2 = 0.0;
      for (std::uint32_t i = 0; i < n; ++i) {
        if (comps.label[i] != comps.largest) continue;
        const double d2 = norm_squared(graph.node(i).position() - policy.coordinate);
        if (best == UINT32_MAX || d2 < best_d2) {
          best = i;
          best_d2 = d2;
        }
      }
      if (best == UINT32_MAX ||
          best_d2 > policy.snap_distance * policy.snap_distance) {
        fail(ErrorCode::RootNotFound,
             "no retained node within snap_distance of the root coordinate");
      }
      return best;
    }
    case RootPolicy::Kind::NodeId: {
      if (policy.node_id >= n || comps.label[policy.node_id] != comps.largest) {
        fail(ErrorCode::RootNotFound,
             "root node id is not part of the largest component");
      }
      return policy.node_id;
    }
  }
  fail(ErrorCode::InvalidParams, "unknown root policy");
}

}  // namespace

SegmentationResult dfs_extract(const VesselGraph& graph,
                               const SegmentorConfig& config) {
  if (graph.empty()) {
    fail(ErrorCode::EmptyAfterFilter, "no nodes satisfy the radius constraint");
  }

  const ComponentLabeling comps = connected_components(graph);
  const std::uint32_t root = resolve_root(graph, comps, config.root);
  const std::uint32_t n = static_cast<std::uint32_t>(graph.node_count());

  // Thickest target first; the edge weight is the source radius, shared by
  // every out-edge of a node, so ordering keys on the target radius. Edges
  // are stored sorted by source, so each node's targets are one contiguous
  // run of a single flat buffer, sorted in place.
  std::vector<std::uint32_t> targets(graph.edge_count());
  std::vector<std::uint32_t> offsets(n + 1, 0);
  for (const VesselEdge& e : graph.edges()) ++offsets[e.from + 1];
  for (std::uint32_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    targets[i] = graph.edges()[i].to;
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    std::sort(targets.begin() + offsets[v], targets.begin() + offsets[v + 1],
              [&graph](std::uint32_t l, std::uint32_t r) {
                const double rl = graph.node(l).r, rr = graph.node(r).r;
                return rl != rr ? rl > rr : l < r;
              });
  }

  std::vector<std::uint8_t> visited(n, 0);
  std::vector<std::uint32_t> order;
  order.reserve(n);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> frames;  // node, next child
  frames.reserve(64);
  visited[root] = 1;
  order.push_back(root);
  frames.emplace_back(root, offsets[root]);
  while (!frames.empty()) {
    auto& [v, next] = frames.back();
    if (next == offsets[v + 1]) {
      frames.pop_back();
      continue;
    }
    const std::uint32_t u = targets[next++];
    if (!visited[u]) {
      visited[u] = 1;
      order.push_back(u);
      frames.emplace_back(u, offsets[u]);
    }
  }

  SegmentationResult result;
  result.pruned_components = comps.component_count() - 1;
  result.r_max_observed = graph.max_radius();

  // Everything visited means the induced subgraph is the input itself and
  // the id compaction is the identity.
  if (order.size() == n) {
    result.main_graph = graph;
    result.visited_order = std::move(order);
    return result;
  }

  std::vector<std::uint32_t> remap(n, UINT32_MAX);
  std::vector<VesselNode> nodes;
  nodes.reserve(order.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    if (visited[i]) {
      remap[i] = static_cast<std::uint32_t>(nodes.size());
      nodes.push_back(graph.node(i));
    }
  }
  std::vector<VesselEdge> edges;
  for (const VesselEdge& e : graph.edges()) {
    if (visited[e.from] && visited[e.to]) {
      edges.push_back({remap[e.from], remap[e.to], e.weight});
    }
  }

  result.main_graph = VesselGraph::from_parts(std::move(nodes), std::move(edges));
  result.visited_order.reserve(order.size());
  for (std::uint32_t old_id : order) result.visited_order.push_back(remap[old_id]);
  return result;
}

SegmentationResult segment(const VesselGraph& graph, const SegmentorConfig& config) {
  SegmentationResult result =
      dfs_extract(filter_by_radius(graph, config.r_min_ratio), config);
  result.r_max_observed = graph.max_radius();
  if (config.mask.enabled) {
    const raster::Dims dims = config.mask.dims;
    result.mask = dims.is_2d()
                      ? raster::rasterize_2d(result.main_graph, dims.width, dims.height)
                      : raster::rasterize_3d(result.main_graph, dims);
  }
  return result;
}

SegmentationResult segment(std::vector<VesselNode> nodes,
                           const SegmentorConfig& config, ProximityPolicy proximity) {
  return segment(build_graph(std::move(nodes), proximity), config);
}

double structural_consistency(const raster::RasterMask& a,
                              const raster::RasterMask& b) {
  if (a.dims != b.dims || a.data.size() != b.data.size()) {
    fail(ErrorCode::ShapeMismatch, "masks have different dims");
  }
  if (a.data.empty()) fail(ErrorCode::InvalidParams, "masks have no cells");

  std::uint64_t total = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    total += static_cast<std::uint64_t>(
        a.data[i] > b.data[i] ? a.data[i] - b.data[i] : b.data[i] - a.data[i]);
  }
  return static_cast<double>(total) / (static_cast<double>(a.data.size()) * 255.0);
}

}  // namespace vessel::segmentor
