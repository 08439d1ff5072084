#include "vessel/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "vessel/error.hpp"
#include "vessel/rng.hpp"

namespace vessel::synthesis {

void validate_params(const ScaParams& params) {
  if (!(params.kill_radius > 0.0) ||
      !(params.kill_radius < params.attraction_radius)) {
    fail(ErrorCode::InvalidParams,
         "requires 0 < kill_radius < attraction_radius");
  }
  if (!(params.step > 0.0)) {
    fail(ErrorCode::InvalidParams, "step must be positive");
  }
  if (params.attractor_count == 0) {
    fail(ErrorCode::InvalidParams, "attractor_count must be positive");
  }
  if (params.max_iterations == 0) {
    fail(ErrorCode::InvalidParams, "max_iterations must be positive");
  }
}

static void check_domain(const BoundingBox& d) {
  if (!(d.width() > 0.0) || !(d.height() > 0.0) || d.depth() < 0.0) {
    fail(ErrorCode::InvalidDomain, "domain has no interior");
  }
}

std::vector<Vec3> generate_attractors(const ScaParams& params) {
  validate_params(params);
  check_domain(params.domain);

  const BoundingBox& d = params.domain;
  Rng rng(params.seed);
  std::vector<Vec3> points(params.attractor_count);
  for (Vec3& p : points) {
    p.x = rng.uniform(d.min.x, d.max.x);
    p.y = rng.uniform(d.min.y, d.max.y);
    p.z = d.is_2d() ? d.min.z : rng.uniform(d.min.z, d.max.z);
  }
  return points;
}

Vec3 default_root(const BoundingBox& domain) {
  return {domain.min.x, (domain.min.y + domain.max.y) / 2.0,
          (domain.min.z + domain.max.z) / 2.0};
}

ScaResult grow_sca(std::span<const Vec3> attractors, const Vec3& root,
                   const ScaParams& params) {
  validate_params(params);

  struct Attractor {
    Vec3 pos;
    std::uint32_t nearest = 0;
    double dist_sq = 0.0;
  };

  const double kill_sq = params.kill_radius * params.kill_radius;
  const double attraction_sq = params.attraction_radius * params.attraction_radius;

  std::vector<VesselNode> nodes{{root.x, root.y, root.z, 1.0}};
  std::vector<VesselEdge> edges;

  std::vector<Attractor> live;
  live.reserve(attractors.size());
  for (const Vec3& a : attractors) {
    live.push_back({a, 0, norm_squared(a - root)});
  }

  std::vector<Vec3> dir_sum;
  std::vector<std::uint8_t> influenced;

  ScaResult result;
  std::uint32_t fresh_from = 0;  // nodes not yet folded into nearest caches
  std::uint32_t iter = 0;
  for (; iter < params.max_iterations && !live.empty(); ++iter) {
    // Nodes are never removed, so each attractor's nearest node can only
    // change when new nodes appear.
    const auto node_count = static_cast<std::uint32_t>(nodes.size());
    if (fresh_from < node_count) {
      for (Attractor& a : live) {
        for (std::uint32_t ni = fresh_from; ni < node_count; ++ni) {
          const double d2 = norm_squared(nodes[ni].position() - a.pos);
          if (d2 < a.dist_sq) {
            a.dist_sq = d2;
            a.nearest = ni;
          }
        }
      }
      fresh_from = node_count;
    }

    const std::size_t before_kill = live.size();
    std::erase_if(live, [kill_sq](const Attractor& a) { return a.dist_sq <= kill_sq; });
    const bool killed = live.size() != before_kill;
    if (live.empty()) break;

    dir_sum.assign(node_count, Vec3{});
    influenced.assign(node_count, 0);
    for (const Attractor& a : live) {
      if (a.dist_sq <= attraction_sq) {
        dir_sum[a.nearest] += normalized(a.pos - nodes[a.nearest].position());
        influenced[a.nearest] = 1;
      }
    }

    bool grew = false;
    for (std::uint32_t ni = 0; ni < node_count; ++ni) {
      if (!influenced[ni]) continue;
      const double len = norm(dir_sum[ni]);
      if (len < 1e-12) continue;  // opposing attractors cancel out
      const Vec3 pos = nodes[ni].position() + dir_sum[ni] * (params.step / len);
      const auto child = static_cast<std::uint32_t>(nodes.size());
      nodes.push_back({pos.x, pos.y, pos.z, 1.0});
      edges.push_back({ni, child, 1.0});
      grew = true;
    }

    if (!grew && !killed) {
      result.stalled = true;
      break;
    }
  }

  result.iterations = iter;
  result.attractors_remaining = live.size();
  result.tree = VesselGraph::from_parts(std::move(nodes), std::move(edges));
  return result;
}

namespace {

// Children-before-parent order plus the root, or throws NotATree.
std::vector<std::uint32_t> topdown_order(const VesselGraph& tree) {
  const std::size_t n = tree.node_count();
  if (n == 0) fail(ErrorCode::EmptyInput, "empty tree");
  if (tree.edge_count() != n - 1) {
    fail(ErrorCode::NotATree, "tree needs exactly node_count - 1 edges");
  }

  std::vector<std::uint32_t> in_deg(n, 0);
  for (const VesselEdge& e : tree.edges()) ++in_deg[e.to];

  std::uint32_t root = UINT32_MAX;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (in_deg[i] == 0) {
      if (root != UINT32_MAX) fail(ErrorCode::NotATree, "multiple roots");
      root = i;
    } else if (in_deg[i] > 1) {
      fail(ErrorCode::NotATree,
           "node " + std::to_string(i) + " has several parents");
    }
  }
  if (root == UINT32_MAX) fail(ErrorCode::NotATree, "no root (cycle)");

  std::vector<std::uint32_t> order;
  order.reserve(n);
  order.push_back(root);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::uint32_t ei : tree.out_edges(order[head])) {
      order.push_back(tree.edges()[ei].to);
    }
  }
  if (order.size() != n) fail(ErrorCode::NotATree, "tree is not connected");
  return order;
}

}  // namespace

VesselGraph assign_radii(const VesselGraph& tree, const TaperParams& params) {
  if (!(params.terminal_radius > 0.0) || !(params.murray_exponent > 0.0)) {
    fail(ErrorCode::InvalidParams,
         "terminal_radius and murray_exponent must be positive");
  }

  const std::vector<std::uint32_t> order = topdown_order(tree);
  const double k = params.murray_exponent;

  std::vector<double> radius(tree.node_count(), 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::uint32_t v = *it;
    const auto kids = tree.out_edges(v);
    if (kids.empty()) {
      radius[v] = params.terminal_radius;
    } else if (kids.size() == 1) {
      radius[v] = radius[tree.edges()[kids[0]].to];
    } else {
      double acc = 0.0;
      for (std::uint32_t ei : kids) acc += std::pow(radius[tree.edges()[ei].to], k);
      radius[v] = std::pow(acc, 1.0 / k);
    }
  }

  std::vector<VesselNode> nodes(tree.nodes());
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].r = radius[i];
  std::vector<VesselEdge> edges(tree.edges());
  for (VesselEdge& e : edges) e.weight = radius[e.from];
  return VesselGraph::from_parts(std::move(nodes), std::move(edges));
}

GroundTruth label_ground_truth(const VesselGraph& tree, double r_min_ratio) {
  if (!(r_min_ratio >= 0.0) || !(r_min_ratio <= 1.0)) {
    fail(ErrorCode::InvalidRatio, "r_min_ratio must lie in [0,1]");
  }
  if (tree.empty()) fail(ErrorCode::EmptyInput, "empty tree");

  const double threshold = r_min_ratio * tree.max_radius();
  GroundTruth gt;
  for (std::uint32_t i = 0; i < tree.node_count(); ++i) {
    (tree.node(i).r >= threshold ? gt.main_ids : gt.capillary_ids).push_back(i);
  }
  return gt;
}

ScaResult generate_tree(const ScaParams& params, const TaperParams& taper) {
  return generate_tree(params, taper, default_root(params.domain));
}

ScaResult generate_tree(const ScaParams& params, const TaperParams& taper,
                        const Vec3& root) {
  const std::vector<Vec3> attractors = generate_attractors(params);
  ScaResult result = grow_sca(attractors, root, params);
  result.tree = assign_radii(result.tree, taper);
  return result;
}

VesselGraph random_tree(std::uint32_t node_count, std::uint64_t seed,
                        const TaperParams& taper) {
  if (node_count == 0) fail(ErrorCode::InvalidParams, "node_count must be positive");

  Rng rng(seed);
  std::vector<VesselNode> nodes(node_count);
  std::vector<VesselEdge> edges;
  edges.reserve(node_count - 1);
  for (std::uint32_t i = 0; i < node_count; ++i) {
    nodes[i] = {rng.uniform(0.0, 512.0), rng.uniform(0.0, 512.0), 0.0, 1.0};
    if (i > 0) edges.push_back({rng.uniform_u32(i), i, 1.0});
  }
  return assign_radii(VesselGraph::from_parts(std::move(nodes), std::move(edges)),
                      taper);
}

}  // namespace vessel::synthesis
