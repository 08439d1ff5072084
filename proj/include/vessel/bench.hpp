#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vessel::bench {

struct BenchRecord {
  std::uint64_t graph_size = 0;
  std::uint64_t median_ns = 0;
  std::uint64_t p95_ns = 0;
  std::uint32_t repetitions = 0;
};

// Times dfs_extract (max-radius root, no mask) on a fixed-seed random tree
// per size: 3 warmup runs, then `reps` timed runs on one thread. median is
// the upper median, p95 the ceil(0.95*reps)-th order statistic, so
// p95 >= median always. reps < 30 throws InvalidParams.
std::vector<BenchRecord> run_dfs_bench(std::span<const std::uint64_t> sizes,
                                       std::uint32_t reps, std::uint64_t seed);

// Header "graph_size,median_ns,p95_ns,repetitions".
std::string bench_to_csv(std::span<const BenchRecord> records);

}  // namespace vessel::bench
