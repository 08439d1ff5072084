#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vessel/geometry.hpp"
#include "vessel/graph.hpp"

namespace vessel::synthesis {

// The default attractor field sits inset in a 512x512 canvas: growth can
// overshoot the field by at most one step, so trees built from these
// defaults always rasterize onto a 512x512 canvas without refitting.
struct ScaParams {
  double attraction_radius = 24.0;
  double kill_radius = 6.0;
  double step = 2.0;
  std::uint32_t max_iterations = 10000;
  BoundingBox domain{{6.0, 6.0, 0.0}, {506.0, 506.0, 0.0}};
  std::uint32_t attractor_count = 4000;
  std::uint64_t seed = 0;
};

struct TaperParams {
  double terminal_radius = 1.6;
  double murray_exponent = 3.0;
};

struct GroundTruth {
  std::vector<std::uint32_t> main_ids;       // ascending
  std::vector<std::uint32_t> capillary_ids;  // ascending, complement
};

struct ScaResult {
  VesselGraph tree;
  bool stalled = false;
  std::uint32_t iterations = 0;
  std::uint64_t attractors_remaining = 0;
};

// Throws InvalidParams / InvalidDomain when a field is out of range.
void validate_params(const ScaParams& params);

// attractor_count points uniform in the domain, reproducible from seed.
std::vector<Vec3> generate_attractors(const ScaParams& params);

// Mid-height point on the domain's low-x edge.
Vec3 default_root(const BoundingBox& domain);

// Space colonization growth from `root`. Every node has unit radius; each
// iteration advances every influenced node by exactly `step` toward the
// mean direction of its influencing attractors (an attractor influences
// only its nearest node, within attraction_radius). Attractors within
// kill_radius of any node are removed. Stops at max_iterations, attractor
// exhaustion, or a fixed point (nothing grew, nothing died); the latter
// sets `stalled` and the partial tree is still returned.
ScaResult grow_sca(std::span<const Vec3> attractors, const Vec3& root,
                   const ScaParams& params);

// Leaves get terminal_radius; each internal node r = (sum r_child^k)^(1/k),
// where a single-child node copies its child's radius outright so chains
// stay exact. Edge weights are refreshed to the new source radii. Throws
// NotATree unless the input is a single rooted tree (parent->child edges).
VesselGraph assign_radii(const VesselGraph& tree, const TaperParams& params);

// main_ids = { i : r_i >= ratio * r_max }. Throws InvalidRatio outside [0,1].
GroundTruth label_ground_truth(const VesselGraph& tree, double r_min_ratio);

// generate_attractors + grow_sca + assign_radii in one call.
ScaResult generate_tree(const ScaParams& params, const TaperParams& taper);
ScaResult generate_tree(const ScaParams& params, const TaperParams& taper,
                        const Vec3& root);

// Random-attachment tree with Murray radii and uniform node positions in
// a 512x512 square. Exact node count; used by benchmarks and tests.
VesselGraph random_tree(std::uint32_t node_count, std::uint64_t seed,
                        const TaperParams& taper = {});

}  // namespace vessel::synthesis
