#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oracle {

using vessel::IdPair;
using vessel::VesselEdge;
using vessel::VesselGraph;
using vessel::VesselNode;
using vessel::raster::Dims;
using vessel::raster::RasterMask;

std::vector<IdPair> proximity_edges(const std::vector<VesselNode>& nodes, double delta) {
  std::vector<IdPair> out;
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    for (std::uint32_t j = 0; j < nodes.size(); ++j) {
      if (i == j) continue;
      const double dx = nodes[i].x - nodes[j].x;
      const double dy = nodes[i].y - nodes[j].y;
      const double dz = nodes[i].z - nodes[j].z;
      const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
      if (dist <= nodes[i].r + nodes[j].r + delta) out.push_back({i, j});
    }
  }
  return out;
}

namespace {

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

}  // namespace

Components components(std::size_t node_count, const std::vector<VesselEdge>& edges) {
  std::vector<std::uint32_t> parent(node_count);
  std::iota(parent.begin(), parent.end(), 0);
  for (const VesselEdge& e : edges) {
    const std::uint32_t a = find_root(parent, e.from);
    const std::uint32_t b = find_root(parent, e.to);
    if (a != b) parent[a] = b;
  }

  Components out;
  out.label.assign(node_count, 0);
  std::vector<std::uint32_t> canonical;
  for (std::uint32_t v = 0; v < node_count; ++v) {
    const std::uint32_t root = find_root(parent, v);
    auto it = std::find(canonical.begin(), canonical.end(), root);
    if (it == canonical.end()) {
      canonical.push_back(root);
      it = canonical.end() - 1;
    }
    out.label[v] = static_cast<std::uint32_t>(it - canonical.begin());
  }
  out.count = static_cast<std::uint32_t>(canonical.size());
  return out;
}

std::vector<double> murray_radii(const VesselGraph& tree, double terminal_radius,
                                 double murray_exponent) {
  const std::size_t n = tree.node_count();
  std::vector<std::vector<std::uint32_t>> children(n);
  std::vector<int> indegree(n, 0);
  for (const VesselEdge& e : tree.edges()) {
    children[e.from].push_back(e.to);
    ++indegree[e.to];
  }
  for (auto& c : children) std::sort(c.begin(), c.end());

  std::uint32_t root = UINT32_MAX;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) {
      if (root != UINT32_MAX) throw std::runtime_error("oracle: multiple roots");
      root = v;
    }
  }
  if (root == UINT32_MAX) throw std::runtime_error("oracle: no root");

  std::vector<double> radii(n, 0.0);
  // Explicit post-order stack; second visit folds the children.
  std::vector<std::pair<std::uint32_t, bool>> stack{{root, false}};
  while (!stack.empty()) {
    const auto [v, expanded] = stack.back();
    stack.pop_back();
    if (!expanded) {
      stack.push_back({v, true});
      for (const std::uint32_t c : children[v]) stack.push_back({c, false});
      continue;
    }
    if (children[v].empty()) {
      radii[v] = terminal_radius;
    } else if (children[v].size() == 1) {
      radii[v] = radii[children[v][0]];
    } else {
      double sum = 0.0;
      for (const std::uint32_t c : children[v]) {
        sum += std::pow(radii[c], murray_exponent);
      }
      radii[v] = std::pow(sum, 1.0 / murray_exponent);
    }
  }
  return radii;
}

std::vector<std::uint32_t> reachable(const VesselGraph& graph, std::uint32_t root) {
  std::vector<char> seen(graph.node_count(), 0);
  std::vector<std::uint32_t> queue{root};
  seen[root] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t v = queue[head];
    for (const std::uint32_t ei : graph.out_edges(v)) {
      const std::uint32_t to = graph.edges()[ei].to;
      if (!seen[to]) {
        seen[to] = 1;
        queue.push_back(to);
      }
    }
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < graph.node_count(); ++v) {
    if (seen[v]) out.push_back(v);
  }
  return out;
}

namespace {

struct Point {
  double x, y, z;
};

// Strictly inside the swept-sphere capsule: exists t in [0,1] with
// |p - lerp(a,b,t)|^2 < lerp(ra,rb,t)^2. The difference is quadratic in t, so
// checking both ends plus the interior stationary point covers the minimum.
bool inside_capsule(const Point& p, const VesselNode& a, const VesselNode& b, bool flat) {
  const double az = flat ? 0.0 : a.z;
  const double bz = flat ? 0.0 : b.z;
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double dz = bz - az;
  const double s = b.r - a.r;
  const double alpha = dx * dx + dy * dy + dz * dz - s * s;

  const auto eval = [&](double t) {
    const double cx = a.x + t * dx;
    const double cy = a.y + t * dy;
    const double cz = az + t * dz;
    const double r = a.r + t * s;
    const double ex = p.x - cx;
    const double ey = p.y - cy;
    const double ez = p.z - cz;
    return ex * ex + ey * ey + ez * ez - r * r;
  };

  const double h0 = eval(0.0);
  const double h1 = eval(1.0);
  double best = std::min(h0, h1);
  if (alpha > 0.0) {
    const double beta = h1 - h0 - alpha;
    const double t = -beta / (2.0 * alpha);
    if (t > 0.0 && t < 1.0) best = std::min(best, eval(t));
  }
  return best < 0.0;
}

}  // namespace

RasterMask rasterize(const VesselGraph& graph, Dims dims) {
  RasterMask mask = RasterMask::zeros(dims);
  const bool flat = dims.depth == 1;
  for (std::uint32_t z = 0; z < dims.depth; ++z) {
    for (std::uint32_t y = 0; y < dims.height; ++y) {
      for (std::uint32_t x = 0; x < dims.width; ++x) {
        const Point p{x + 0.5, y + 0.5, flat ? 0.0 : z + 0.5};
        for (const VesselEdge& e : graph.edges()) {
          if (inside_capsule(p, graph.node(e.from), graph.node(e.to), flat)) {
            mask.data[mask.index(x, y, z)] = 255;
            break;
          }
        }
      }
    }
  }
  return mask;
}

namespace {

void require_same_dims(const RasterMask& a, const RasterMask& b) {
  if (!(a.dims == b.dims)) throw std::runtime_error("oracle: dims mismatch");
}

}  // namespace

double iou(const RasterMask& a, const RasterMask& b) {
  require_same_dims(a, b);
  std::uint64_t inter = 0;
  std::uint64_t uni = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const bool in_a = a.data[i] != 0;
    const bool in_b = b.data[i] != 0;
    inter += (in_a && in_b) ? 1 : 0;
    uni += (in_a || in_b) ? 1 : 0;
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double dice(const RasterMask& a, const RasterMask& b) {
  require_same_dims(a, b);
  std::uint64_t inter = 0;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const bool in_a = a.data[i] != 0;
    const bool in_b = b.data[i] != 0;
    inter += (in_a && in_b) ? 1 : 0;
    total += (in_a ? 1 : 0) + (in_b ? 1 : 0);
  }
  if (total == 0) return 1.0;
  return 2.0 * static_cast<double>(inter) / static_cast<double>(total);
}

double mse(const RasterMask& a, const RasterMask& b) {
  require_same_dims(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
    sum += d * d;
  }
  return sum / static_cast<double>(a.data.size());
}

double ssim(const RasterMask& a, const RasterMask& b,
            const vessel::metrics::SsimParams& params) {
  require_same_dims(a, b);
  const int w = static_cast<int>(a.dims.width);
  const int h = static_cast<int>(a.dims.height);
  const int k = static_cast<int>(params.window);
  const int c = (k - 1) / 2;

  std::vector<double> kernel(static_cast<std::size_t>(k) * k);
  double total = 0.0;
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < k; ++i) {
      const double d2 = static_cast<double>((i - c) * (i - c) + (j - c) * (j - c));
      kernel[static_cast<std::size_t>(j) * k + i] =
          std::exp(-d2 / (2.0 * params.gaussian_sigma * params.gaussian_sigma));
      total += kernel[static_cast<std::size_t>(j) * k + i];
    }
  }
  for (double& v : kernel) v /= total;

  const double c1 = (params.k1 * params.dynamic_range) * (params.k1 * params.dynamic_range);
  const double c2 = (params.k2 * params.dynamic_range) * (params.k2 * params.dynamic_range);

  double sum = 0.0;
  std::uint64_t windows = 0;
  for (int y0 = 0; y0 + k <= h; ++y0) {
    for (int x0 = 0; x0 + k <= w; ++x0) {
      double mu_a = 0.0, mu_b = 0.0, aa = 0.0, bb = 0.0, ab = 0.0;
      for (int j = 0; j < k; ++j) {
        for (int i = 0; i < k; ++i) {
          const double weight = kernel[static_cast<std::size_t>(j) * k + i];
          const double va = a.data[static_cast<std::size_t>(y0 + j) * w + (x0 + i)];
          const double vb = b.data[static_cast<std::size_t>(y0 + j) * w + (x0 + i)];
          mu_a += weight * va;
          mu_b += weight * vb;
          aa += weight * va * va;
          bb += weight * vb * vb;
          ab += weight * va * vb;
        }
      }
      const double var_a = aa - mu_a * mu_a;
      const double var_b = bb - mu_b * mu_b;
      const double cov = ab - mu_a * mu_b;
      sum += ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
             ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
      ++windows;
    }
  }
  return sum / static_cast<double>(windows);
}

MeanStd welford(const std::vector<double>& values) {
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t n = 0;
  for (const double v : values) {
    ++n;
    const double d = v - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (v - mean);
  }
  MeanStd out;
  out.mean = mean;
  out.std_dev = n > 0 ? std::sqrt(m2 / static_cast<double>(n)) : 0.0;
  return out;
}

std::vector<double> gaussian_blur(const RasterMask& image, double sigma) {
  const int w = static_cast<int>(image.dims.width);
  const int h = static_cast<int>(image.dims.height);
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));

  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  double total = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[static_cast<std::size_t>(i + radius)] =
        std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    total += kernel[static_cast<std::size_t>(i + radius)];
  }
  for (double& v : kernel) v /= total;

  const auto clampi = [](int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); };
  std::vector<double> out(static_cast<std::size_t>(w) * h, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int j = -radius; j <= radius; ++j) {
        for (int i = -radius; i <= radius; ++i) {
          const double weight = kernel[static_cast<std::size_t>(j + radius)] *
                                kernel[static_cast<std::size_t>(i + radius)];
          const int sx = clampi(x + i, w - 1);
          const int sy = clampi(y + j, h - 1);
          acc += weight * image.data[static_cast<std::size_t>(sy) * w + sx];
        }
      }
      out[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  return out;
}

}  // namespace oracle
