#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "vessel/error.hpp"
#include "vessel/metrics.hpp"
#include "vessel/segmentor.hpp"
#include "vessel/synthesis.hpp"

using namespace vessel;
using namespace vessel::segmentor;

namespace {

template <typename Fn>
ErrorCode thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a vessel::Error");
  return ErrorCode::EmptyInput;
}

VesselGraph radii_chain(const std::vector<double>& radii) {
  std::vector<VesselNode> nodes;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    nodes.push_back({double(i) * 10.0, 0.0, 0.0, radii[i]});
  }
  std::vector<IdPair> edges;
  for (std::uint32_t i = 1; i < radii.size(); ++i) edges.push_back({i - 1, i});
  return build_graph(std::move(nodes), std::span(edges));
}

std::vector<double> sorted_radii(const VesselGraph& g) {
  std::vector<double> out;
  for (const VesselNode& n : g.nodes()) out.push_back(n.r);
  std::sort(out.begin(), out.end());
  return out;
}

bool same_node(const VesselNode& a, const VesselNode& b) {
  return a.x == b.x && a.y == b.y && a.z == b.z && a.r == b.r;
}

synthesis::ScaParams small_sca() {
  synthesis::ScaParams p;
  p.domain = {{6.0, 6.0, 0.0}, {122.0, 122.0, 0.0}};
  p.attractor_count = 300;
  p.seed = 11;
  return p;
}

}  // namespace

TEST_CASE("radius filter keeps the documented subset") {
  const VesselGraph g = radii_chain({1.0, 2.0, 3.0, 10.0});
  const VesselGraph kept = filter_by_radius(g, 0.2);
  CHECK(sorted_radii(kept) == std::vector<double>{2.0, 3.0, 10.0});
  // r == threshold is retained: 0.2 * 10 = 2 exactly.
  CHECK(kept.node(0).r == 2.0);
  // Only the edges between survivors remain, renumbered.
  CHECK(kept.edge_count() == 2);
  for (const VesselEdge& e : kept.edges()) {
    CHECK(e.weight == kept.node(e.from).r);
  }
}

TEST_CASE("radius filter extremes") {
  const VesselGraph g = radii_chain({1.0, 2.0, 3.0, 10.0});
  CHECK(filter_by_radius(g, 0.0).node_count() == 4);
  const VesselGraph top = filter_by_radius(g, 1.0);
  CHECK(top.node_count() == 1);
  CHECK(top.node(0).r == 10.0);
}

TEST_CASE("radius filter rejects ratios outside the unit interval") {
  const VesselGraph g = radii_chain({1.0, 2.0});
  CHECK(thrown_code([&] { filter_by_radius(g, -0.1); }) == ErrorCode::InvalidRatio);
  CHECK(thrown_code([&] { filter_by_radius(g, 1.5); }) == ErrorCode::InvalidRatio);
  CHECK(thrown_code([&] { filter_by_radius(g, std::nan("")); }) ==
        ErrorCode::InvalidRatio);
  CHECK(thrown_code([&] {
          filter_by_radius(VesselGraph::from_parts({}, {}), 0.5);
        }) == ErrorCode::EmptyInput);
}

TEST_CASE("radius filter is invariant under uniform radius scaling") {
  const std::vector<double> radii{0.7, 1.9, 2.0, 4.4, 9.3, 10.0};
  const VesselGraph g = radii_chain(radii);
  std::vector<double> scaled = radii;
  for (double& r : scaled) r *= 7.5;
  const VesselGraph gs = radii_chain(scaled);

  for (const double ratio : {0.0, 0.19, 0.2, 0.5, 0.95, 1.0}) {
    CAPTURE(ratio);
    const VesselGraph a = filter_by_radius(g, ratio);
    const VesselGraph b = filter_by_radius(gs, ratio);
    REQUIRE(a.node_count() == b.node_count());
    for (std::uint32_t i = 0; i < a.node_count(); ++i) {
      CHECK(a.node(i).x == b.node(i).x);
    }
  }
}

TEST_CASE("dfs walks a chain from the thick end") {
  const VesselGraph g = radii_chain({3.0, 2.0, 1.0});
  const SegmentationResult res = dfs_extract(g, {});
  CHECK(res.visited_order == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(res.pruned_components == 0);
  CHECK(res.main_graph.node_count() == 3);
  CHECK(res.r_max_observed == 3.0);
}

TEST_CASE("dfs exhausts the thicker branch before the thinner one") {
  // Root 0 forks to 1 (r=3, children 2,3) and 4 (r=5, children 5,6).
  const std::vector<VesselNode> nodes{
      {0, 0, 0, 10.0},  {10, 10, 0, 3.0}, {20, 10, 0, 2.0}, {20, 14, 0, 1.0},
      {10, -10, 0, 5.0}, {20, -10, 0, 4.0}, {20, -14, 0, 2.5},
  };
  const std::vector<IdPair> edges{{0, 1}, {0, 4}, {1, 2}, {1, 3}, {4, 5}, {4, 6}};
  const VesselGraph g = build_graph(nodes, std::span(edges));
  const SegmentationResult res = dfs_extract(g, {});
  CHECK(res.visited_order ==
        std::vector<std::uint32_t>{0, 4, 5, 6, 1, 2, 3});
}

TEST_CASE("dfs visits exactly the nodes reachable from the root") {
  for (const std::uint64_t seed : {101ull, 102ull, 103ull}) {
    CAPTURE(seed);
    const VesselGraph g = synthesis::random_tree(200, seed);
    std::uint32_t root = 0;
    for (std::uint32_t i = 1; i < g.node_count(); ++i) {
      if (g.node(i).r > g.node(root).r) root = i;
    }
    const std::vector<std::uint32_t> expected = oracle::reachable(g, root);

    const SegmentationResult res = dfs_extract(g, {});
    REQUIRE(res.main_graph.node_count() == expected.size());
    // Extraction compacts ids in ascending input order; the oracle's list is
    // sorted, so positions line up pairwise.
    for (std::size_t k = 0; k < expected.size(); ++k) {
      CHECK(same_node(res.main_graph.node(static_cast<std::uint32_t>(k)),
                      g.node(expected[k])));
    }
  }
}

TEST_CASE("secondary components are counted, not visited") {
  std::vector<VesselNode> nodes{
      {0, 0, 0, 5.0}, {10, 0, 0, 4.0}, {20, 0, 0, 3.0},  // main chain
      {300, 300, 0, 2.0},                                // isolated
      {500, 500, 0, 1.0},                                // isolated
  };
  const std::vector<IdPair> edges{{0, 1}, {1, 2}};
  const VesselGraph g = build_graph(nodes, std::span(edges));
  const SegmentationResult res = dfs_extract(g, {});
  CHECK(res.main_graph.node_count() == 3);
  CHECK(res.pruned_components == 2);
}

TEST_CASE("dfs on an empty graph reports an empty filter result") {
  CHECK(thrown_code([&] { dfs_extract(VesselGraph::from_parts({}, {}), {}); }) ==
        ErrorCode::EmptyAfterFilter);
}

TEST_CASE("root resolution failures") {
  std::vector<VesselNode> nodes{
      {0, 0, 0, 5.0}, {10, 0, 0, 4.0}, {20, 0, 0, 3.0}, {300, 300, 0, 2.0}};
  const std::vector<IdPair> edges{{0, 1}, {1, 2}};
  const VesselGraph g = build_graph(nodes, std::span(edges));

  SegmentorConfig far{};
  far.root = RootPolicy::at_coordinate({100.0, 100.0, 0.0});
  CHECK(thrown_code([&] { dfs_extract(g, far); }) == ErrorCode::RootNotFound);

  SegmentorConfig outside{};
  outside.root = RootPolicy::at_node(3);  // not in the largest component
  CHECK(thrown_code([&] { dfs_extract(g, outside); }) == ErrorCode::RootNotFound);

  SegmentorConfig missing{};
  missing.root = RootPolicy::at_node(99);
  CHECK(thrown_code([&] { dfs_extract(g, missing); }) == ErrorCode::RootNotFound);
}

TEST_CASE("coordinate roots snap to the nearest retained node") {
  const VesselGraph g = radii_chain({3.0, 2.0, 1.0});  // x = 0, 10, 20
  SegmentorConfig config{};
  config.root = RootPolicy::at_coordinate({12.0, 1.0, 0.0});
  const SegmentationResult res = dfs_extract(g, config);
  // Node 1 is closest; only its directed tail is reachable.
  CHECK(res.main_graph.node_count() == 2);
  CHECK(res.main_graph.node(res.visited_order[0]).x == 10.0);
}

TEST_CASE("ratio one leaves a single-node graph when the maximum is unique") {
  const VesselGraph g = radii_chain({1.0, 2.0, 3.0, 10.0});
  SegmentorConfig config{};
  config.r_min_ratio = 1.0;
  const SegmentationResult res = segment(g, config);
  CHECK(res.main_graph.node_count() == 1);
  CHECK(res.main_graph.edge_count() == 0);
  CHECK(res.main_graph.node(0).r == 10.0);
  CHECK(res.visited_order == std::vector<std::uint32_t>{0});
}

TEST_CASE("segment composes the filter and the walk") {
  const VesselGraph g = synthesis::random_tree(300, 7);
  SegmentorConfig config{};
  config.r_min_ratio = 0.35;
  const SegmentationResult whole = segment(g, config);
  const SegmentationResult manual = dfs_extract(filter_by_radius(g, 0.35), config);

  CHECK(whole.visited_order == manual.visited_order);
  CHECK(whole.pruned_components == manual.pruned_components);
  REQUIRE(whole.main_graph.node_count() == manual.main_graph.node_count());
  for (std::uint32_t i = 0; i < whole.main_graph.node_count(); ++i) {
    CHECK(same_node(whole.main_graph.node(i), manual.main_graph.node(i)));
  }
  CHECK(whole.r_max_observed == g.max_radius());
}

TEST_CASE("ratio zero reproduces a grown tree exactly") {
  const synthesis::ScaResult grown = synthesis::generate_tree(small_sca(), {});
  REQUIRE(grown.tree.node_count() > 50);

  SegmentorConfig config{};
  config.r_min_ratio = 0.0;
  const SegmentationResult res = segment(grown.tree, config);
  CHECK(res.main_graph.node_count() == grown.tree.node_count());
  CHECK(res.main_graph.edge_count() == grown.tree.edge_count());
}

TEST_CASE("segmentation recovers the radius-labeled main subtree") {
  const synthesis::ScaResult grown = synthesis::generate_tree(small_sca(), {});
  const double ratio = 0.2;
  const synthesis::GroundTruth truth =
      synthesis::label_ground_truth(grown.tree, ratio);
  REQUIRE(!truth.main_ids.empty());

  SegmentorConfig config{};
  config.r_min_ratio = ratio;
  const SegmentationResult res = segment(grown.tree, config);

  // Radii never grow from root to leaf, so the retained set is connected and
  // the walk covers all of it; compaction keeps ascending id order.
  REQUIRE(res.main_graph.node_count() == truth.main_ids.size());
  for (std::size_t k = 0; k < truth.main_ids.size(); ++k) {
    CHECK(same_node(res.main_graph.node(static_cast<std::uint32_t>(k)),
                    grown.tree.node(truth.main_ids[k])));
  }
}

TEST_CASE("segment can rasterize its result") {
  const synthesis::ScaResult grown = synthesis::generate_tree(small_sca(), {});
  SegmentorConfig config{};
  config.r_min_ratio = 0.2;
  config.mask = {true, {128, 128, 1}};
  const SegmentationResult res = segment(grown.tree, config);
  REQUIRE(res.mask.has_value());
  const raster::RasterMask direct = raster::rasterize_2d(res.main_graph, 128, 128);
  CHECK(res.mask->data == direct.data);
}

TEST_CASE("structural consistency of identical and opposite masks") {
  raster::RasterMask zeros = raster::RasterMask::zeros({32, 32, 1});
  CHECK(structural_consistency(zeros, zeros) == 0.0);

  raster::RasterMask full = zeros;
  for (auto& v : full.data) v = 255;
  CHECK(structural_consistency(zeros, full) == 1.0);

  raster::RasterMask spots = zeros;
  for (std::uint32_t i = 0; i < 64; ++i) spots.data[i * 16] = 255;
  CHECK(structural_consistency(zeros, spots) == 0.0625);

  raster::RasterMask other = raster::RasterMask::zeros({16, 16, 1});
  CHECK(thrown_code([&] { structural_consistency(zeros, other); }) ==
        ErrorCode::ShapeMismatch);
}
