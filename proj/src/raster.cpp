#include "vessel/raster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "vessel/error.hpp"
#include "vessel/rng.hpp"

namespace vessel::raster {

RasterMask RasterMask::zeros(Dims dims) {
  RasterMask m;
  m.dims = dims;
  m.data.assign(dims.cell_count(), 0);
  return m;
}

std::uint64_t RasterMask::nonzero_count() const {
  std::uint64_t n = 0;
  for (std::uint8_t v : data) n += v != 0;
  return n;
}

// The capsule is the union of balls B(c(t), r(t)) for t in [0,1] with
// c(t) = a + t(b-a), r(t) = ra + t(rb-ra); p lies inside iff the quadratic
// h(t) = |p-c(t)|^2 - r(t)^2 dips below zero on [0,1].
bool point_in_capsule(const Vec3& p, const Vec3& a, const Vec3& b, double ra,
                      double rb) {
  const Vec3 q = p - a;
  const Vec3 d = b - a;
  const double s = rb - ra;

  const double alpha = norm_squared(d) - s * s;
  const double beta = -2.0 * (dot(q, d) + ra * s);
  const double gamma = norm_squared(q) - ra * ra;

  double best = std::min(gamma, alpha + beta + gamma);
  if (alpha > 0.0) {
    const double t = -beta / (2.0 * alpha);
    if (t > 0.0 && t < 1.0) best = std::min(best, (alpha * t + beta) * t + gamma);
  }
  return best < 0.0;
}

namespace {

void require_inside_canvas(const VesselGraph& graph, const Dims& dims) {
  for (std::uint32_t i = 0; i < graph.node_count(); ++i) {
    const VesselNode& n = graph.node(i);
    const bool ok = n.x >= 0.0 && n.x <= dims.width && n.y >= 0.0 &&
                    n.y <= dims.height &&
                    (dims.is_2d() || (n.z >= 0.0 && n.z <= dims.depth));
    if (!ok) {
      fail(ErrorCode::OutOfBounds, "node " + std::to_string(i) +
                                       " lies outside the canvas; pass fit "
                                       "to rescale");
    }
  }
}

// Uniform scale + per-axis centering of the radius-inflated bounds.
std::vector<VesselNode> fit_nodes(const VesselGraph& graph, const Dims& dims) {
  constexpr double kMargin = 1.0;
  const bool flat = dims.is_2d();

  Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
  for (const VesselNode& n : graph.nodes()) {
    lo.x = std::min(lo.x, n.x - n.r);
    lo.y = std::min(lo.y, n.y - n.r);
    lo.z = std::min(lo.z, n.z - n.r);
    hi.x = std::max(hi.x, n.x + n.r);
    hi.y = std::max(hi.y, n.y + n.r);
    hi.z = std::max(hi.z, n.z + n.r);
  }

  double scale = 1e300;
  const auto consider = [&scale](double extent, double size) {
    if (extent > 0.0 && size > 2.0 * kMargin) {
      scale = std::min(scale, (size - 2.0 * kMargin) / extent);
    }
  };
  consider(hi.x - lo.x, dims.width);
  consider(hi.y - lo.y, dims.height);
  if (!flat) consider(hi.z - lo.z, dims.depth);
  if (scale >= 1e300 || !(scale > 0.0)) scale = 1.0;

  const auto place = [scale](double v, double low, double extent, double size) {
    return (v - low) * scale + (size - extent * scale) / 2.0;
  };
  std::vector<VesselNode> out(graph.nodes());
  for (VesselNode& n : out) {
    n.x = place(n.x, lo.x, hi.x - lo.x, dims.width);
    n.y = place(n.y, lo.y, hi.y - lo.y, dims.height);
    n.z = flat ? n.z : place(n.z, lo.z, hi.z - lo.z, dims.depth);
    n.r *= scale;
  }
  return out;
}

RasterMask rasterize(const VesselGraph& graph, Dims dims, bool fit) {
  if (dims.width == 0 || dims.height == 0 || dims.depth == 0) {
    fail(ErrorCode::InvalidParams, "canvas has no cells");
  }

  RasterMask mask = RasterMask::zeros(dims);
  if (graph.empty()) return mask;

  std::vector<VesselNode> nodes;
  if (fit) {
    nodes = fit_nodes(graph, dims);
  } else {
    require_inside_canvas(graph, dims);
    nodes = graph.nodes();
  }

  const bool flat = dims.is_2d();
  const auto clamp_lo = [](double v) {
    return static_cast<std::int64_t>(std::max(0.0, std::floor(v) - 1.0));
  };
  for (const VesselEdge& e : graph.edges()) {
    VesselNode na = nodes[e.from];
    VesselNode nb = nodes[e.to];
    if (flat) na.z = nb.z = 0.0;
    const Vec3 a = na.position();
    const Vec3 b = nb.position();

    const std::int64_t x0 = clamp_lo(std::min(a.x - na.r, b.x - nb.r));
    const std::int64_t y0 = clamp_lo(std::min(a.y - na.r, b.y - nb.r));
    const std::int64_t z0 = flat ? 0 : clamp_lo(std::min(a.z - na.r, b.z - nb.r));
    const auto clamp_hi = [](double v, std::uint32_t size) {
      return static_cast<std::int64_t>(
          std::min<double>(size - 1, std::max(0.0, std::ceil(v) + 1.0)));
    };
    const std::int64_t x1 = clamp_hi(std::max(a.x + na.r, b.x + nb.r), dims.width);
    const std::int64_t y1 = clamp_hi(std::max(a.y + na.r, b.y + nb.r), dims.height);
    const std::int64_t z1 =
        flat ? 0 : clamp_hi(std::max(a.z + na.r, b.z + nb.r), dims.depth);

    for (std::int64_t z = z0; z <= z1; ++z) {
      for (std::int64_t y = y0; y <= y1; ++y) {
        for (std::int64_t x = x0; x <= x1; ++x) {
          const Vec3 center{x + 0.5, y + 0.5, flat ? 0.0 : z + 0.5};
          if (point_in_capsule(center, a, b, na.r, nb.r)) {
            mask.data[mask.index(static_cast<std::uint32_t>(x),
                                 static_cast<std::uint32_t>(y),
                                 static_cast<std::uint32_t>(z))] = 255;
          }
        }
      }
    }
  }
  return mask;
}

void require_2d(const RasterMask& image, const char* op) {
  if (!image.dims.is_2d()) {
    fail(ErrorCode::InvalidParams, std::string(op) + " expects a 2D image");
  }
  if (image.data.size() != image.dims.cell_count()) {
    fail(ErrorCode::ShapeMismatch, "mask data does not match its dims");
  }
}

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(
      std::clamp<long long>(std::llround(v), 0, 255));
}

}  // namespace

RasterMask rasterize_2d(const VesselGraph& graph, std::uint32_t width,
                        std::uint32_t height, bool fit) {
  return rasterize(graph, Dims{width, height, 1}, fit);
}

RasterMask rasterize_3d(const VesselGraph& graph, Dims dims, bool fit) {
  if (dims.depth <= 1) fail(ErrorCode::InvalidParams, "3D raster needs depth > 1");
  return rasterize(graph, dims, fit);
}

RasterMask style_adapt(const RasterMask& mask, const StyleParams& params) {
  if (!(params.noise_sigma >= 0.0) || !(params.contrast_gamma > 0.0) ||
      !(params.background_level >= 0.0) || !(params.background_level <= 255.0)) {
    fail(ErrorCode::InvalidParams, "style parameters out of range");
  }
  require_2d(mask, "style_adapt");

  const double bg = params.background_level;
  const double gain = 255.0 - bg;
  Rng rng(params.seed);

  RasterMask out;
  out.dims = mask.dims;
  out.data.resize(mask.data.size());
  for (std::size_t i = 0; i < mask.data.size(); ++i) {
    double level = bg + gain * std::pow(mask.data[i] / 255.0, params.contrast_gamma);
    if (params.noise_sigma > 0.0) level += params.noise_sigma * rng.gaussian();
    out.data[i] = to_byte(level);
  }
  return out;
}

RasterMask re_binarize(const RasterMask& image, double threshold) {
  RasterMask out;
  out.dims = image.dims;
  out.data.resize(image.data.size());
  for (std::size_t i = 0; i < image.data.size(); ++i) {
    out.data[i] = image.data[i] >= threshold ? 255 : 0;
  }
  return out;
}

RasterMask dark_channel_dehaze(const RasterMask& image, std::uint32_t patch_size) {
  if (patch_size == 0 || patch_size % 2 == 0) {
    fail(ErrorCode::InvalidParams, "patch_size must be odd");
  }
  require_2d(image, "dark_channel_dehaze");

  double atmosphere = 0.0;
  for (std::uint8_t v : image.data) atmosphere = std::max(atmosphere, double(v));
  if (atmosphere == 0.0) return image;

  const std::int64_t w = image.dims.width;
  const std::int64_t h = image.dims.height;
  const std::int64_t half = patch_size / 2;

  // Separable min filter, window clipped at the borders.
  std::vector<std::uint8_t> rows(image.data.size());
  for (std::int64_t y = 0; y < h; ++y) {
    for (std::int64_t x = 0; x < w; ++x) {
      std::uint8_t m = 255;
      for (std::int64_t i = std::max<std::int64_t>(0, x - half);
           i <= std::min(w - 1, x + half); ++i) {
        m = std::min(m, image.data[y * w + i]);
      }
      rows[y * w + x] = m;
    }
  }
  std::vector<std::uint8_t> dark(image.data.size());
  for (std::int64_t y = 0; y < h; ++y) {
    for (std::int64_t x = 0; x < w; ++x) {
      std::uint8_t m = 255;
      for (std::int64_t j = std::max<std::int64_t>(0, y - half);
           j <= std::min(h - 1, y + half); ++j) {
        m = std::min(m, rows[j * w + x]);
      }
      dark[y * w + x] = m;
    }
  }

  RasterMask out;
  out.dims = image.dims;
  out.data.resize(image.data.size());
  for (std::size_t i = 0; i < image.data.size(); ++i) {
    const double t =
        std::clamp(1.0 - dark[i] / atmosphere, 0.1, 1.0);
    out.data[i] = to_byte((image.data[i] - atmosphere) / t + atmosphere);
  }
  return out;
}

RasterMask unsharp_mask(const RasterMask& image, double sigma, double amount) {
  if (!(sigma > 0.0)) fail(ErrorCode::InvalidParams, "sigma must be positive");
  require_2d(image, "unsharp_mask");

  const std::int64_t radius = static_cast<std::int64_t>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (std::int64_t j = -radius; j <= radius; ++j) {
    kernel[j + radius] = std::exp(-(double(j) * j) / (2.0 * sigma * sigma));
    sum += kernel[j + radius];
  }
  for (double& k : kernel) k /= sum;

  const std::int64_t w = image.dims.width;
  const std::int64_t h = image.dims.height;
  const auto clampi = [](std::int64_t v, std::int64_t hi) {
    return std::min(std::max<std::int64_t>(v, 0), hi);
  };

  std::vector<double> rows(image.data.size());
  for (std::int64_t y = 0; y < h; ++y) {
    for (std::int64_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::int64_t j = -radius; j <= radius; ++j) {
        acc += kernel[j + radius] * image.data[y * w + clampi(x + j, w - 1)];
      }
      rows[y * w + x] = acc;
    }
  }
  RasterMask out;
  out.dims = image.dims;
  out.data.resize(image.data.size());
  for (std::int64_t y = 0; y < h; ++y) {
    for (std::int64_t x = 0; x < w; ++x) {
      double blur = 0.0;
      for (std::int64_t j = -radius; j <= radius; ++j) {
        blur += kernel[j + radius] * rows[clampi(y + j, h - 1) * w + x];
      }
      const double v = image.data[y * w + x];
      out.data[y * w + x] = to_byte(v + amount * (v - blur));
    }
  }
  return out;
}

}  // namespace vessel::raster
