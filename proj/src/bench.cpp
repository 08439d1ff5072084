#include "vessel/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>

#include "vessel/error.hpp"
#include "vessel/segmentor.hpp"
#include "vessel/synthesis.hpp"

namespace vessel::bench {

std::vector<BenchRecord> run_dfs_bench(std::span<const std::uint64_t> sizes,
                                       std::uint32_t reps, std::uint64_t seed) {
  if (reps < 30) fail(ErrorCode::InvalidParams, "need at least 30 repetitions");
  if (sizes.empty()) fail(ErrorCode::InvalidParams, "no sizes given");

  std::vector<BenchRecord> records;
  records.reserve(sizes.size());
  std::uint64_t sink = 0;
  for (const std::uint64_t size : sizes) {
    if (size == 0 || size > UINT32_MAX) {
      fail(ErrorCode::InvalidParams, "sizes must fit an unsigned 32-bit count");
    }
    const VesselGraph tree = synthesis::random_tree(
        static_cast<std::uint32_t>(size), seed ^ (size * 0x9E3779B97F4A7C15ull), {});

    const segmentor::SegmentorConfig config{};
    const auto time_once = [&] {
      const auto start = std::chrono::steady_clock::now();
      const segmentor::SegmentationResult res = segmentor::dfs_extract(tree, config);
      const auto stop = std::chrono::steady_clock::now();
      sink += res.visited_order.size();
      return static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
    };

    for (int warm = 0; warm < 3; ++warm) time_once();
    std::vector<std::uint64_t> ns(reps);
    for (std::uint32_t i = 0; i < reps; ++i) ns[i] = time_once();
    std::sort(ns.begin(), ns.end());

    BenchRecord rec;
    rec.graph_size = size;
    rec.repetitions = reps;
    rec.median_ns = ns[reps / 2];
    rec.p95_ns = ns[(reps * 95 + 99) / 100 - 1];
    records.push_back(rec);
  }
  if (sink == 0) fail(ErrorCode::InvalidParams, "benchmark produced no work");
  return records;
}

std::string bench_to_csv(std::span<const BenchRecord> records) {
  std::string out = "graph_size,median_ns,p95_ns,repetitions\n";
  for (const BenchRecord& r : records) {
    out += std::to_string(r.graph_size);
    out += ',';
    out += std::to_string(r.median_ns);
    out += ',';
    out += std::to_string(r.p95_ns);
    out += ',';
    out += std::to_string(r.repetitions);
    out += '\n';
  }
  return out;
}

}  // namespace vessel::bench
