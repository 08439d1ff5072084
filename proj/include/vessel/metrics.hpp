#pragma once

#include "vessel/raster.hpp"

namespace vessel::metrics {

struct SsimParams {
  std::uint32_t window = 11;  // odd
  double gaussian_sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
};

struct MetricReport {
  double iou = 0.0;
  double dice = 0.0;
  double ssim = 0.0;
  double mse = 0.0;
};

// Cell-set metrics treat nonzero cells as members; two empty masks compare
// as 1.0. All throw ShapeMismatch on differing dims.
double iou(const raster::RasterMask& a, const raster::RasterMask& b);
double dice(const raster::RasterMask& a, const raster::RasterMask& b);

// Mean squared gray-level difference.
double mse(const raster::RasterMask& a, const raster::RasterMask& b);

// Mean of the Gaussian-weighted local SSIM map over all fully interior
// window positions. 2D images only. Throws InvalidWindow when the window
// is even, zero, exceeds the image, or the input is 3D.
double ssim(const raster::RasterMask& a, const raster::RasterMask& b,
            const SsimParams& params = {});

MetricReport evaluate(const raster::RasterMask& a, const raster::RasterMask& b,
                      const SsimParams& ssim_params = {});

}  // namespace vessel::metrics
