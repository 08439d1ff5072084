#include "vessel/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "vessel/error.hpp"
#include "vessel/io.hpp"
#include "vessel/metrics.hpp"
#include "vessel/segmentor.hpp"

namespace vessel::calibration {

RadiusStats radius_stats(std::span<const VesselNode> nodes) {
  if (nodes.empty()) fail(ErrorCode::EmptyInput, "no nodes");

  RadiusStats stats;
  stats.count = nodes.size();
  double sum = 0.0;
  for (const VesselNode& n : nodes) {
    sum += n.r;
    stats.r_max = std::max(stats.r_max, n.r);
  }
  stats.mean = sum / static_cast<double>(nodes.size());

  double sq = 0.0;
  for (const VesselNode& n : nodes) {
    const double d = n.r - stats.mean;
    sq += d * d;
  }
  stats.std_dev = std::sqrt(sq / static_cast<double>(nodes.size()));

  for (const VesselNode& n : nodes) {
    std::size_t bin = 0;
    if (stats.r_max > 0.0) {
      bin = std::min<std::size_t>(
          kHistogramBins - 1,
          static_cast<std::size_t>(std::floor(n.r / stats.r_max * kHistogramBins)));
    }
    ++stats.histogram[bin];
  }
  return stats;
}

double derive_rmin(const RadiusStats& stats, RminStrategy strategy) {
  switch (strategy) {
    case RminStrategy::Fixed:
      return 0.2;
    case RminStrategy::MeanOverMax:
      if (stats.r_max <= 0.0) {
        fail(ErrorCode::DegenerateStats, "r_max must be positive");
      }
      return std::clamp(stats.mean / stats.r_max, 0.0, 1.0);
  }
  fail(ErrorCode::InvalidParams, "unknown strategy");
}

namespace {

// Subgraph of strictly sub-threshold nodes.
VesselGraph capillary_subgraph(const VesselGraph& graph, double threshold) {
  std::vector<std::uint32_t> remap(graph.node_count(), UINT32_MAX);
  std::vector<VesselNode> nodes;
  for (std::uint32_t i = 0; i < graph.node_count(); ++i) {
    if (graph.node(i).r < threshold) {
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

}  // namespace

CoverageReport capillary_coverage(const VesselGraph& graph, double ratio,
                                  std::uint32_t width, std::uint32_t height) {
  if (!(ratio >= 0.0) || !(ratio <= 1.0)) {
    fail(ErrorCode::InvalidRatio, "ratio must lie in [0,1]");
  }

  const double cells =
      static_cast<double>(raster::Dims{width, height, 1}.cell_count());
  const raster::RasterMask full = raster::rasterize_2d(graph, width, height);
  const raster::RasterMask capillary = raster::rasterize_2d(
      capillary_subgraph(graph, ratio * graph.max_radius()), width, height);

  CoverageReport report;
  report.capillary_fraction = static_cast<double>(capillary.nonzero_count()) / cells;
  report.vessel_fraction = static_cast<double>(full.nonzero_count()) / cells;
  return report;
}

double derive_rmin_coverage_target(const VesselGraph& graph, std::uint32_t width,
                                   std::uint32_t height, double target_fraction,
                                   std::uint32_t iterations) {
  if (!(target_fraction >= 0.0) || !(target_fraction <= 1.0)) {
    fail(ErrorCode::InvalidParams, "target_fraction must lie in [0,1]");
  }
  if (graph.empty()) fail(ErrorCode::EmptyInput, "empty graph");
  if (graph.max_radius() <= 0.0) {
    fail(ErrorCode::DegenerateStats, "r_max must be positive");
  }

  const auto reaches = [&](double ratio) {
    return capillary_coverage(graph, ratio, width, height).capillary_fraction >=
           target_fraction;
  };
  if (target_fraction == 0.0) return 0.0;
  if (!reaches(1.0)) return 1.0;

  // Capillary coverage is non-decreasing in the ratio; keep hi feasible.
  double lo = 0.0, hi = 1.0;
  for (std::uint32_t i = 0; i < iterations; ++i) {
    const double mid = (lo + hi) / 2.0;
    (reaches(mid) ? hi : lo) = mid;
  }
  return hi;
}

SensitivityCurve sensitivity_sweep(const VesselGraph& graph,
                                   const raster::RasterMask& truth_mask,
                                   std::span<const double> ratios) {
  if (ratios.empty()) fail(ErrorCode::InvalidParams, "no ratios");
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (!(ratios[i] >= 0.0) || !(ratios[i] <= 1.0)) {
      fail(ErrorCode::InvalidRatio, "ratios must lie in [0,1]");
    }
    if (i > 0 && !(ratios[i] > ratios[i - 1])) {
      fail(ErrorCode::InvalidParams, "ratios must be strictly increasing");
    }
  }

  SensitivityCurve curve;
  curve.samples.reserve(ratios.size());
  for (const double ratio : ratios) {
    segmentor::SegmentorConfig config;
    config.r_min_ratio = ratio;
    config.mask = {true, truth_mask.dims};
    const segmentor::SegmentationResult result = segmentor::segment(graph, config);

    SweepSample sample;
    sample.ratio = ratio;
    sample.retained_nodes = segmentor::filter_by_radius(graph, ratio).node_count();
    sample.iou = metrics::iou(*result.mask, truth_mask);
    sample.dice = metrics::dice(*result.mask, truth_mask);
    curve.samples.push_back(sample);
  }
  return curve;
}

std::string curve_to_csv(const SensitivityCurve& curve) {
  std::string out = "ratio,iou,dice,retained_nodes\n";
  for (const SweepSample& s : curve.samples) {
    out += io::format_double(s.ratio);
    out += ',';
    out += io::format_double(s.iou);
    out += ',';
    out += io::format_double(s.dice);
    out += ',';
    out += std::to_string(s.retained_nodes);
    out += '\n';
  }
  return out;
}

}  // namespace vessel::calibration
