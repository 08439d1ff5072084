#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vessel/graph.hpp"
#include "vessel/raster.hpp"

namespace vessel::calibration {

inline constexpr std::size_t kHistogramBins = 64;

struct RadiusStats {
  double mean = 0.0;
  double std_dev = 0.0;  // population
  double r_max = 0.0;
  std::uint64_t count = 0;
  std::array<std::uint64_t, kHistogramBins> histogram{};  // uniform over [0, r_max]
};

enum class RminStrategy { Fixed, MeanOverMax };

struct CoverageReport {
  double capillary_fraction = 0.0;  // sub-threshold raster cells / canvas cells
  double vessel_fraction = 0.0;     // full raster cells / canvas cells
};

struct SweepSample {
  double ratio = 0.0;
  double iou = 0.0;
  double dice = 0.0;
  std::uint64_t retained_nodes = 0;  // post-filter count, pre component pruning
};

struct SensitivityCurve {
  std::vector<SweepSample> samples;
};

// Exact mean / population std / max plus a 64-bin histogram over [0, r_max].
// Throws EmptyInput.
RadiusStats radius_stats(std::span<const VesselNode> nodes);

// Fixed -> 0.2. MeanOverMax -> mean / r_max clamped to [0,1]. Throws
// DegenerateStats when r_max = 0.
double derive_rmin(const RadiusStats& stats, RminStrategy strategy);

// Smallest ratio whose capillary coverage reaches target_fraction, by
// bisection (capillary coverage is non-decreasing in the ratio). Returns
// 1.0 when even full filtering stays below the target.
double derive_rmin_coverage_target(const VesselGraph& graph, std::uint32_t width,
                                   std::uint32_t height, double target_fraction,
                                   std::uint32_t iterations = 40);

// Rasterizes the sub-threshold subgraph ({ i : r_i < ratio * r_max }) and
// the full graph on the same canvas; fractions are of the whole canvas.
CoverageReport capillary_coverage(const VesselGraph& graph, double ratio,
                                  std::uint32_t width, std::uint32_t height);

// segment() at each ratio against truth_mask. Ratios must be strictly
// increasing, each in [0,1]. retained_nodes comes from filter_by_radius,
// so it is non-increasing along the curve.
SensitivityCurve sensitivity_sweep(const VesselGraph& graph,
                                   const raster::RasterMask& truth_mask,
                                   std::span<const double> ratios);

// Header "ratio,iou,dice,retained_nodes", one sample per line, shortest
// round-trip number formatting.
std::string curve_to_csv(const SensitivityCurve& curve);

}  // namespace vessel::calibration
