#include "vessel/metrics.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "vessel/error.hpp"

namespace vessel::metrics {

namespace {

void check_pair(const raster::RasterMask& a, const raster::RasterMask& b) {
  if (a.dims != b.dims || a.data.size() != b.data.size()) {
    fail(ErrorCode::ShapeMismatch, "images have different dims");
  }
  if (a.data.empty()) fail(ErrorCode::InvalidParams, "images have no cells");
}

struct Overlap {
  std::uint64_t a = 0, b = 0, both = 0;
};

Overlap count_overlap(const raster::RasterMask& a, const raster::RasterMask& b) {
  Overlap o;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const bool in_a = a.data[i] != 0, in_b = b.data[i] != 0;
    o.a += in_a;
    o.b += in_b;
    o.both += in_a && in_b;
  }
  return o;
}

// Gaussian-weighted local sums over every fully interior window, computed
// separably: horizontal pass then vertical pass.
std::vector<double> local_sums(const std::vector<double>& img, std::uint32_t w,
                               std::uint32_t h, const std::vector<double>& kernel) {
  const std::uint32_t k = static_cast<std::uint32_t>(kernel.size());
  const std::uint32_t ow = w - k + 1, oh = h - k + 1;
  std::vector<double> rows(static_cast<std::size_t>(ow) * h);
  for (std::uint32_t y = 0; y < h; ++y) {
    for (std::uint32_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (std::uint32_t i = 0; i < k; ++i) acc += kernel[i] * img[y * w + x + i];
      rows[y * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (std::uint32_t y = 0; y < oh; ++y) {
    for (std::uint32_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (std::uint32_t i = 0; i < k; ++i) acc += kernel[i] * rows[(y + i) * ow + x];
      out[y * ow + x] = acc;
    }
  }
  return out;
}

}  // namespace

double iou(const raster::RasterMask& a, const raster::RasterMask& b) {
  check_pair(a, b);
  const Overlap o = count_overlap(a, b);
  const std::uint64_t uni = o.a + o.b - o.both;
  if (uni == 0) return 1.0;
  return static_cast<double>(o.both) / static_cast<double>(uni);
}

double dice(const raster::RasterMask& a, const raster::RasterMask& b) {
  check_pair(a, b);
  const Overlap o = count_overlap(a, b);
  if (o.a + o.b == 0) return 1.0;
  return 2.0 * static_cast<double>(o.both) / static_cast<double>(o.a + o.b);
}

double mse(const raster::RasterMask& a, const raster::RasterMask& b) {
  check_pair(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
    acc += d * d;
  }
  return acc / static_cast<double>(a.data.size());
}

double ssim(const raster::RasterMask& a, const raster::RasterMask& b,
            const SsimParams& params) {
  check_pair(a, b);
  if (!a.dims.is_2d()) fail(ErrorCode::InvalidWindow, "ssim expects 2D images");
  const std::uint32_t w = a.dims.width, h = a.dims.height;
  const std::uint32_t win = params.window;
  if (win == 0 || win % 2 == 0) fail(ErrorCode::InvalidWindow, "window must be odd");
  if (win > w || win > h) {
    fail(ErrorCode::InvalidWindow, "window exceeds the image");
  }
  if (!(params.gaussian_sigma > 0.0)) {
    fail(ErrorCode::InvalidWindow, "gaussian_sigma must be positive");
  }

  std::vector<double> kernel(win);
  const double half = (win - 1) / 2.0;
  double ksum = 0.0;
  for (std::uint32_t i = 0; i < win; ++i) {
    const double d = i - half;
    kernel[i] = std::exp(-d * d / (2.0 * params.gaussian_sigma * params.gaussian_sigma));
    ksum += kernel[i];
  }
  for (double& v : kernel) v /= ksum;

  const std::size_t cells = a.data.size();
  std::vector<double> fa(cells), fb(cells), faa(cells), fbb(cells), fab(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double va = a.data[i], vb = b.data[i];
    fa[i] = va;
    fb[i] = vb;
    faa[i] = va * va;
    fbb[i] = vb * vb;
    fab[i] = va * vb;
  }

  const std::vector<double> mu_a = local_sums(fa, w, h, kernel);
  const std::vector<double> mu_b = local_sums(fb, w, h, kernel);
  const std::vector<double> raw_aa = local_sums(faa, w, h, kernel);
  const std::vector<double> raw_bb = local_sums(fbb, w, h, kernel);
  const std::vector<double> raw_ab = local_sums(fab, w, h, kernel);

  const double c1 = params.k1 * params.dynamic_range * params.k1 * params.dynamic_range;
  const double c2 = params.k2 * params.dynamic_range * params.k2 * params.dynamic_range;

  double total = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a[i], mb = mu_b[i];
    const double var_a = raw_aa[i] - ma * ma;
    const double var_b = raw_bb[i] - mb * mb;
    const double cov = raw_ab[i] - ma * mb;
    total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
             ((ma * ma + mb * mb + c1) * (var_a + var_b + c2));
  }
  return total / static_cast<double>(mu_a.size());
}

MetricReport evaluate(const raster::RasterMask& a, const raster::RasterMask& b,
                      const SsimParams& ssim_params) {
  MetricReport report;
  report.iou = iou(a, b);
  report.dice = dice(a, b);
  report.ssim = ssim(a, b, ssim_params);
  report.mse = mse(a, b);
  return report;
}

}  // namespace vessel::metrics
