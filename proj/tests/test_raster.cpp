#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "oracles.hpp"
#include "vessel/error.hpp"
#include "vessel/metrics.hpp"
#include "vessel/raster.hpp"
#include "vessel/rng.hpp"

using namespace vessel;
using namespace vessel::raster;

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

VesselGraph random_graph(std::uint32_t nodes, std::uint32_t edges, double span,
                         double r_max, std::uint64_t seed, bool flat) {
  Rng rng(seed);
  std::vector<VesselNode> n(nodes);
  for (auto& node : n) {
    node = {rng.uniform(r_max, span - r_max), rng.uniform(r_max, span - r_max),
            flat ? 0.0 : rng.uniform(r_max, span - r_max),
            rng.uniform(0.4, r_max)};
  }
  std::vector<IdPair> pairs;
  while (pairs.size() < edges) {
    const std::uint32_t a = rng.uniform_u32(nodes);
    const std::uint32_t b = rng.uniform_u32(nodes);
    if (a != b) pairs.push_back({a, b});
  }
  return build_graph(std::move(n), std::span(pairs));
}

RasterMask random_image(std::uint32_t w, std::uint32_t h, std::uint64_t seed) {
  RasterMask img = RasterMask::zeros({w, h, 1});
  Rng rng(seed);
  for (auto& v : img.data) v = static_cast<std::uint8_t>(rng.uniform_u32(256));
  return img;
}

}  // namespace

TEST_CASE("empty graph rasterizes to zeros") {
  const VesselGraph g = VesselGraph::from_parts({}, {});
  const RasterMask m = rasterize_2d(g, 16, 16);
  CHECK(m.nonzero_count() == 0);
  CHECK(m.data.size() == 256);
}

TEST_CASE("horizontal capsule matches the per-pixel oracle") {
  const std::vector<VesselNode> nodes{{10, 16, 0, 2.0}, {20, 16, 0, 2.0}};
  const VesselGraph g = build_graph(nodes, std::span<const IdPair>(
                                               std::vector<IdPair>{{0, 1}}));
  const RasterMask fast = rasterize_2d(g, 32, 32);
  const RasterMask slow = oracle::rasterize(g, {32, 32, 1});
  CHECK(fast.data == slow.data);
  CHECK(fast.nonzero_count() > 0);
}

TEST_CASE("random 2d graphs match the per-pixel oracle") {
  for (const std::uint64_t seed : {10ull, 11ull, 12ull, 13ull}) {
    CAPTURE(seed);
    const VesselGraph g = random_graph(12, 18, 64.0, 4.0, seed, true);
    const RasterMask fast = rasterize_2d(g, 64, 64);
    const RasterMask slow = oracle::rasterize(g, {64, 64, 1});
    CHECK(fast.data == slow.data);
  }
}

TEST_CASE("vertical 3d capsule matches the per-voxel oracle") {
  const std::vector<VesselNode> nodes{{8, 8, 3, 1.5}, {8, 8, 12, 2.5}};
  const VesselGraph g = build_graph(nodes, std::span<const IdPair>(
                                               std::vector<IdPair>{{0, 1}}));
  const RasterMask fast = rasterize_3d(g, {16, 16, 16});
  const RasterMask slow = oracle::rasterize(g, {16, 16, 16});
  CHECK(fast.data == slow.data);
  CHECK(fast.nonzero_count() > 0);
}

TEST_CASE("random 3d graphs match the per-voxel oracle") {
  for (const std::uint64_t seed : {21ull, 22ull}) {
    CAPTURE(seed);
    const VesselGraph g = random_graph(8, 12, 24.0, 2.0, seed, false);
    const RasterMask fast = rasterize_3d(g, {24, 24, 24});
    const RasterMask slow = oracle::rasterize(g, {24, 24, 24});
    CHECK(fast.data == slow.data);
  }
}

TEST_CASE("z-projection of a plane-constant volume equals the 2d raster") {
  // All nodes on the z = 8.5 voxel-center plane.
  Rng rng(5);
  std::vector<VesselNode> nodes(10);
  for (auto& n : nodes) {
    n = {rng.uniform(4.0, 28.0), rng.uniform(4.0, 28.0), 8.5, rng.uniform(0.5, 2.5)};
  }
  std::vector<IdPair> pairs;
  for (std::uint32_t i = 1; i < nodes.size(); ++i) pairs.push_back({i - 1, i});
  const VesselGraph g = build_graph(nodes, std::span(pairs));

  const RasterMask volume = rasterize_3d(g, {32, 32, 16});
  const RasterMask flat = rasterize_2d(g, 32, 32);

  RasterMask projected = RasterMask::zeros({32, 32, 1});
  for (std::uint32_t z = 0; z < 16; ++z) {
    for (std::uint32_t y = 0; y < 32; ++y) {
      for (std::uint32_t x = 0; x < 32; ++x) {
        if (volume.at(x, y, z) != 0) projected.data[projected.index(x, y)] = 255;
      }
    }
  }
  CHECK(projected.data == flat.data);
}

TEST_CASE("nodes outside the canvas fail unless fit is requested") {
  const std::vector<VesselNode> nodes{{10, 10, 0, 2.0}, {600, 10, 0, 2.0}};
  const VesselGraph g = build_graph(nodes, std::span<const IdPair>(
                                               std::vector<IdPair>{{0, 1}}));
  CHECK(thrown_code([&] { rasterize_2d(g, 512, 512); }) == ErrorCode::OutOfBounds);
  const RasterMask fitted = rasterize_2d(g, 512, 512, true);
  CHECK(fitted.nonzero_count() > 0);
}

TEST_CASE("style identity parameters return the input") {
  const VesselGraph g = random_graph(10, 14, 64.0, 3.0, 31, true);
  const RasterMask mask = rasterize_2d(g, 64, 64);
  const RasterMask out = style_adapt(mask, {0.0, 1.0, 0.0, 0});
  CHECK(out.data == mask.data);
}

TEST_CASE("noise-free styling re-binarizes back to the mask") {
  const VesselGraph g = random_graph(10, 14, 64.0, 3.0, 32, true);
  const RasterMask mask = rasterize_2d(g, 64, 64);
  for (const double gamma : {0.7, 1.0, 2.2}) {
    for (const double background : {0.0, 40.0, 80.0}) {
      CAPTURE(gamma);
      CAPTURE(background);
      const RasterMask styled = style_adapt(mask, {0.0, gamma, background, 0});
      const RasterMask recovered = re_binarize(styled, (background + 255.0) / 2.0);
      CHECK(recovered.data == mask.data);
    }
  }
}

TEST_CASE("styling is reproducible and similar to its input") {
  const VesselGraph g = random_graph(12, 16, 64.0, 3.0, 33, true);
  const RasterMask mask = rasterize_2d(g, 64, 64);
  const StyleParams params{8.0, 1.0, 20.0, 97};
  const RasterMask a = style_adapt(mask, params);
  const RasterMask b = style_adapt(mask, params);
  CHECK(a.data == b.data);
  CHECK(a.data != mask.data);

  const double similarity = metrics::ssim(a, mask, {});
  CHECK(similarity > 0.0);
  CHECK(similarity < 1.0);
}

TEST_CASE("style parameter validation") {
  const RasterMask mask = RasterMask::zeros({8, 8, 1});
  CHECK(thrown_code([&] { style_adapt(mask, {-1.0, 1.0, 0.0, 0}); }) ==
        ErrorCode::InvalidParams);
  CHECK(thrown_code([&] { style_adapt(mask, {0.0, 0.0, 0.0, 0}); }) ==
        ErrorCode::InvalidParams);
  CHECK(thrown_code([&] { style_adapt(mask, {0.0, 1.0, 300.0, 0}); }) ==
        ErrorCode::InvalidParams);
}

TEST_CASE("dehaze rejects even patches and keeps constants constant") {
  const RasterMask image = random_image(16, 16, 41);
  CHECK(thrown_code([&] { dark_channel_dehaze(image, 4); }) ==
        ErrorCode::InvalidParams);

  RasterMask constant = RasterMask::zeros({16, 16, 1});
  for (auto& v : constant.data) v = 120;
  const RasterMask out = dark_channel_dehaze(constant, 5);
  CHECK(out.data == constant.data);
}

TEST_CASE("dehaze with patch 1 never brightens") {
  const RasterMask image = random_image(32, 32, 42);
  const RasterMask out = dark_channel_dehaze(image, 1);
  for (std::size_t i = 0; i < image.data.size(); ++i) {
    CHECK(out.data[i] <= image.data[i]);
  }
}

TEST_CASE("dehaze inverts an analytically hazed image") {
  // J has a zero in every 7x7 patch and one full-bright pixel pinning the
  // atmosphere estimate; I = 0.6*J + 0.4*255.
  Rng rng(43);
  RasterMask original = RasterMask::zeros({64, 64, 1});
  for (std::uint32_t y = 0; y < 64; ++y) {
    for (std::uint32_t x = 0; x < 64; ++x) {
      original.data[original.index(x, y)] =
          (x % 4 == 0 && y % 4 == 0) ? 0 : static_cast<std::uint8_t>(rng.uniform_u32(256));
    }
  }
  original.data[original.index(1, 1)] = 255;

  RasterMask hazed = RasterMask::zeros({64, 64, 1});
  for (std::size_t i = 0; i < original.data.size(); ++i) {
    hazed.data[i] = static_cast<std::uint8_t>(
        std::llround(0.6 * original.data[i] + 0.4 * 255.0));
  }

  const RasterMask recovered = dark_channel_dehaze(hazed, 7);
  for (std::size_t i = 0; i < original.data.size(); ++i) {
    CHECK(std::abs(int(recovered.data[i]) - int(original.data[i])) <= 2);
  }
}

TEST_CASE("dehaze copies an all-black image") {
  const RasterMask black = RasterMask::zeros({8, 8, 1});
  CHECK(dark_channel_dehaze(black, 3).data == black.data);
}

TEST_CASE("unsharp identity cases") {
  const RasterMask image = random_image(24, 24, 51);
  CHECK(unsharp_mask(image, 1.5, 0.0).data == image.data);

  RasterMask constant = RasterMask::zeros({24, 24, 1});
  for (auto& v : constant.data) v = 77;
  CHECK(unsharp_mask(constant, 2.0, 1.5).data == constant.data);

  CHECK(thrown_code([&] { unsharp_mask(image, 0.0, 1.0); }) ==
        ErrorCode::InvalidParams);
}

TEST_CASE("unsharp matches the dense convolution oracle within one gray level") {
  RasterMask step = RasterMask::zeros({32, 32, 1});
  for (std::uint32_t y = 0; y < 32; ++y) {
    for (std::uint32_t x = 0; x < 32; ++x) {
      step.data[step.index(x, y)] = x < 16 ? 50 : 200;
    }
  }
  const double sigma = 1.0;
  const double amount = 1.0;
  const RasterMask sharpened = unsharp_mask(step, sigma, amount);

  const std::vector<double> blurred = oracle::gaussian_blur(step, sigma);
  bool overshoot = false;
  bool undershoot = false;
  for (std::size_t i = 0; i < step.data.size(); ++i) {
    const double expected = std::clamp(
        std::round(step.data[i] + amount * (step.data[i] - blurred[i])), 0.0, 255.0);
    CHECK(std::abs(sharpened.data[i] - expected) <= 1.0);
    overshoot = overshoot || sharpened.data[i] > 200;
    undershoot = undershoot || (sharpened.data[i] < 50 && step.data[i] == 50);
  }
  CHECK(overshoot);
  CHECK(undershoot);

  const RasterMask noisy = random_image(32, 32, 52);
  const RasterMask out = unsharp_mask(noisy, 1.4, 0.8);
  const std::vector<double> blur2 = oracle::gaussian_blur(noisy, 1.4);
  for (std::size_t i = 0; i < noisy.data.size(); ++i) {
    const double expected = std::clamp(
        std::round(noisy.data[i] + 0.8 * (noisy.data[i] - blur2[i])), 0.0, 255.0);
    CHECK(std::abs(out.data[i] - expected) <= 1.0);
  }
}
