#pragma once

#include <cstdint>
#include <vector>

#include "vessel/graph.hpp"

namespace vessel::raster {

struct Dims {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t depth = 1;  // 1 = 2D

  bool is_2d() const { return depth <= 1; }
  std::uint64_t cell_count() const {
    return static_cast<std::uint64_t>(width) * height * depth;
  }
  bool operator==(const Dims&) const = default;
};

struct RasterMask {
  Dims dims;
  std::vector<std::uint8_t> data;  // x-fastest, then y, then z

  static RasterMask zeros(Dims dims);
  std::uint64_t index(std::uint32_t x, std::uint32_t y, std::uint32_t z = 0) const {
    return x + static_cast<std::uint64_t>(dims.width) *
                   (y + static_cast<std::uint64_t>(dims.height) * z);
  }
  std::uint8_t at(std::uint32_t x, std::uint32_t y, std::uint32_t z = 0) const {
    return data[index(x, y, z)];
  }
  std::uint64_t nonzero_count() const;
};

struct StyleParams {
  double noise_sigma = 0.0;
  double contrast_gamma = 1.0;
  double background_level = 0.0;
  std::uint64_t seed = 0;
};

// True when the cell center (x+0.5, y+0.5[, z+0.5]) lies strictly inside
// the capsule spanned by the edge endpoints with linearly interpolated
// radius. Shared by the rasterizer and exposed for direct tests.
bool point_in_capsule(const Vec3& p, const Vec3& a, const Vec3& b, double ra,
                      double rb);

// Draw every edge as a capsule; cells strictly inside become 255. With
// fit=false, any node center outside the canvas volume raises OutOfBounds.
// With fit=true the graph (inflated by its radii) is uniformly scaled and
// translated into the canvas first.
RasterMask rasterize_2d(const VesselGraph& graph, std::uint32_t width,
                        std::uint32_t height, bool fit = false);
RasterMask rasterize_3d(const VesselGraph& graph, Dims dims, bool fit = false);

// Deterministic tone mapping with speckle. Per cell:
//   out = clamp(round(bg + (255-bg)*(v/255)^gamma + sigma*z), 0, 255)
// with z a seeded standard Gaussian draw in cell order. A binary mask
// re-binarized at (bg+255)/2 is recovered exactly whenever every realized
// |sigma*z| stays below half the vessel/background gap.
RasterMask style_adapt(const RasterMask& mask, const StyleParams& params);

// value >= threshold -> 255 else 0.
RasterMask re_binarize(const RasterMask& image, double threshold);

// Dark-channel dehazing for grayscale images. Atmospheric light A is the
// brightest input value; transmission t = clamp(1 - dark/A, 0.1, 1) with
// dark = min over the centered patch (clipped at borders);
// out = clamp(round((v - A)/t + A), 0, 255). A == 0 returns the input.
// patch_size must be odd and >= 1, otherwise InvalidParams.
RasterMask dark_channel_dehaze(const RasterMask& image, std::uint32_t patch_size);

// out = clamp(round(v + amount*(v - blur(v, sigma))), 0, 255) with a
// separable Gaussian blur (kernel radius ceil(3*sigma), replicate border).
// sigma must be > 0, otherwise InvalidParams.
RasterMask unsharp_mask(const RasterMask& image, double sigma, double amount);

}  // namespace vessel::raster
