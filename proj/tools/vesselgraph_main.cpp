// vesselgraph: one binary, subcommand style. JSON on stdout, diagnostics on
// stderr. Exit codes: 0 ok, 2 usage/parse, 3 empty result, 4 shape mismatch,
// 1 unexpected. Everything goes through the C API; no command reimplements
// library logic.
#include "vesselgraph.h"

#include <unistd.h>

#include <charconv>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using ordered_json = nlohmann::ordered_json;

struct CliError {
  vg_status_t status;
  std::string message;
  std::string hint = {};
};

int exit_code_for(vg_status_t status) {
  switch (status) {
    case VG_OK:
      return 0;
    case VG_ERROR_EMPTY_INPUT:
    case VG_ERROR_EMPTY_AFTER_FILTER:
    case VG_ERROR_ROOT_NOT_FOUND:
    case VG_ERROR_DEGENERATE_STATS:
      return 3;
    case VG_ERROR_SHAPE_MISMATCH:
      return 4;
    case VG_ERROR_IO:
    case VG_ERROR_INTERNAL:
      return 1;
    default:
      return 2;
  }
}

int report(const CliError& err) {
  ordered_json out;
  out["error"] = {{"status", vg_status_name(err.status)}, {"message", err.message}};
  std::cout << out.dump() << "\n";
  std::cerr << "error: " << err.message;
  if (!err.hint.empty()) std::cerr << " (" << err.hint << ")";
  std::cerr << "\n";
  return exit_code_for(err.status);
}

void check(vg_status_t status, const std::string& hint = {}) {
  if (status != VG_OK) throw CliError{status, vg_last_error(), hint};
}

[[noreturn]] void usage_error(const std::string& message) {
  throw CliError{VG_ERROR_INVALID_ARGUMENT, message};
}

struct GraphDeleter {
  void operator()(vg_graph* g) const { vg_graph_free(g); }
};
struct MaskDeleter {
  void operator()(vg_mask* m) const { vg_mask_free(m); }
};
struct SegDeleter {
  void operator()(vg_segmentation* s) const { vg_segmentation_free(s); }
};
using GraphPtr = std::unique_ptr<vg_graph, GraphDeleter>;
using MaskPtr = std::unique_ptr<vg_mask, MaskDeleter>;
using SegPtr = std::unique_ptr<vg_segmentation, SegDeleter>;

struct Buffer {
  vg_buffer buf{nullptr, 0};
  Buffer() = default;
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  ~Buffer() { vg_buffer_free(&buf); }
  std::string str() const { return std::string(buf.data, buf.size); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{VG_ERROR_IO, "cannot open " + path};
  std::ostringstream body;
  body << in.rdbuf();
  if (in.bad()) throw CliError{VG_ERROR_IO, "cannot read " + path};
  return body.str();
}

// Temp file + rename so concurrent runs never observe a partial artifact.
void write_file_atomic(const std::string& path, const char* data, size_t size) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp(target);
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError{VG_ERROR_IO, "cannot create " + tmp.string()};
    out.write(data, static_cast<std::streamsize>(size));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw CliError{VG_ERROR_IO, "cannot write " + tmp.string()};
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw CliError{VG_ERROR_IO,
                   "cannot move " + tmp.string() + " to " + path + ": " + ec.message()};
  }
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    const size_t comma = text.find(',', pos);
    out.push_back(text.substr(pos, comma == std::string::npos ? comma : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

double parse_double(const std::string& token, const std::string& what) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    usage_error(what + ": \"" + token + "\" is not a number");
  }
  return value;
}

std::vector<double> parse_csv_doubles(const std::string& text, size_t min_n,
                                      size_t max_n, const std::string& what) {
  const std::vector<std::string> tokens = split_csv(text);
  if (tokens.size() < min_n || tokens.size() > max_n) {
    usage_error(what + " expects " + std::to_string(min_n) + ".." +
                std::to_string(max_n) + " comma-separated numbers");
  }
  std::vector<double> out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) out.push_back(parse_double(t, what));
  return out;
}

template <typename T>
T parse_unsigned(const std::string& token, const std::string& what) {
  T value{};
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value, 10);
  if (ec != std::errc() || ptr != end) {
    usage_error(what + ": \"" + token + "\" is not an unsigned integer");
  }
  return value;
}

struct MaskDims {
  uint32_t width = 0;
  uint32_t height = 0;
  uint32_t depth = 1;
};

MaskDims parse_dims(const std::string& text) {
  const std::vector<std::string> tokens = split_csv(text);
  if (tokens.size() < 2 || tokens.size() > 3) {
    usage_error("--dims expects WIDTH,HEIGHT or WIDTH,HEIGHT,DEPTH");
  }
  MaskDims dims;
  dims.width = parse_unsigned<uint32_t>(tokens[0], "--dims width");
  dims.height = parse_unsigned<uint32_t>(tokens[1], "--dims height");
  if (tokens.size() == 3) dims.depth = parse_unsigned<uint32_t>(tokens[2], "--dims depth");
  if (dims.width == 0 || dims.height == 0 || dims.depth == 0) {
    usage_error("--dims components must be positive");
  }
  return dims;
}

uint64_t resolve_seed(const CLI::Option* flag, uint64_t flag_value) {
  if (flag != nullptr && flag->count() > 0) return flag_value;
  const char* env = std::getenv("VESSELGRAPH_SEED");
  if (env == nullptr || *env == '\0') return flag_value;
  uint64_t value = 0;
  const char* end = env + std::strlen(env);
  const auto [ptr, ec] = std::from_chars(env, end, value, 10);
  if (ec != std::errc() || ptr != end) {
    usage_error(std::string("VESSELGRAPH_SEED: \"") + env +
                "\" is not an unsigned integer");
  }
  return value;
}

constexpr unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

MaskPtr load_mask(const std::string& path) {
  const std::string bytes = read_file(path);
  const bool is_png = bytes.size() >= 8 &&
                      std::memcmp(bytes.data(), kPngSignature, 8) == 0;
  vg_mask* raw = nullptr;
  check(is_png ? vg_mask_decode_png(bytes.data(), bytes.size(), &raw)
               : vg_mask_decode_volume(bytes.data(), bytes.size(), &raw));
  return MaskPtr(raw);
}

// Depth 1 writes PNG, anything deeper writes the raw volume format.
void save_mask(const vg_mask* mask, const std::string& path) {
  uint32_t depth = 1;
  check(vg_mask_dims(mask, nullptr, nullptr, &depth));
  Buffer bytes;
  check(depth <= 1 ? vg_mask_encode_png(mask, &bytes.buf)
                   : vg_mask_encode_volume(mask, &bytes.buf));
  write_file_atomic(path, bytes.buf.data, bytes.buf.size);
}

struct LoadedGraph {
  GraphPtr graph;
  ordered_json meta = ordered_json::object();
  bool has_edges = false;
};

// Files without an edge list get their graph rebuilt from node proximity.
LoadedGraph load_graph(const std::string& path, double delta) {
  const std::string text = read_file(path);
  vg_graph* raw = nullptr;
  Buffer meta;
  int has_edges = 0;
  check(vg_graph_load_json(text.data(), text.size(), &raw, &meta.buf, &has_edges));
  LoadedGraph loaded;
  loaded.graph.reset(raw);
  loaded.has_edges = has_edges != 0;
  loaded.meta = ordered_json::parse(meta.str());

  uint64_t n = 0;
  check(vg_graph_node_count(loaded.graph.get(), &n));
  if (!loaded.has_edges && n > 0) {
    std::vector<double> xs(n), ys(n), zs(n), rs(n);
    check(vg_graph_nodes(loaded.graph.get(), xs.data(), ys.data(), zs.data(), rs.data()));
    vg_graph* rebuilt = nullptr;
    check(vg_graph_build_proximity(xs.data(), ys.data(), zs.data(), rs.data(), n,
                                   delta, &rebuilt));
    loaded.graph.reset(rebuilt);
  }
  return loaded;
}

std::string double_str(double value) {
  char scratch[64];
  const auto [ptr, ec] = std::to_chars(scratch, scratch + sizeof(scratch), value);
  return ec == std::errc() ? std::string(scratch, ptr) : std::string("nan");
}

void emit(const ordered_json& summary) { std::cout << summary.dump() << "\n"; }

// ---------------------------------------------------------------- generate

struct GenerateOpts {
  std::string out;
  uint64_t seed = 0;
  const CLI::Option* seed_flag = nullptr;
  uint32_t attractors = 0;
  double attraction_radius = 0.0;
  double kill_radius = 0.0;
  double step = 0.0;
  uint32_t max_iterations = 0;
  std::string domain_min;
  std::string domain_max;
  std::string root;
  double terminal_radius = 0.0;
  double murray_exponent = 0.0;
  const CLI::Option* attractors_flag = nullptr;
  const CLI::Option* attraction_flag = nullptr;
  const CLI::Option* kill_flag = nullptr;
  const CLI::Option* step_flag = nullptr;
  const CLI::Option* iter_flag = nullptr;
  const CLI::Option* terminal_flag = nullptr;
  const CLI::Option* murray_flag = nullptr;
};

void fill_axis(double target[3], const std::string& text, const std::string& what) {
  const std::vector<double> values = parse_csv_doubles(text, 2, 3, what);
  target[0] = values[0];
  target[1] = values[1];
  target[2] = values.size() == 3 ? values[2] : 0.0;
}

int cmd_generate(const GenerateOpts& o) {
  vg_sca_params sca;
  vg_sca_params_init(&sca);
  if (o.attractors_flag->count() > 0) sca.attractor_count = o.attractors;
  if (o.attraction_flag->count() > 0) sca.attraction_radius = o.attraction_radius;
  if (o.kill_flag->count() > 0) sca.kill_radius = o.kill_radius;
  if (o.step_flag->count() > 0) sca.step = o.step;
  if (o.iter_flag->count() > 0) sca.max_iterations = o.max_iterations;
  if (!o.domain_min.empty()) fill_axis(sca.domain_min, o.domain_min, "--domain-min");
  if (!o.domain_max.empty()) fill_axis(sca.domain_max, o.domain_max, "--domain-max");
  sca.seed = resolve_seed(o.seed_flag, o.seed);

  vg_taper_params taper;
  vg_taper_params_init(&taper);
  if (o.terminal_flag->count() > 0) taper.terminal_radius = o.terminal_radius;
  if (o.murray_flag->count() > 0) taper.murray_exponent = o.murray_exponent;

  double root_xyz[3] = {0.0, 0.0, 0.0};
  const bool has_root = !o.root.empty();
  if (has_root) fill_axis(root_xyz, o.root, "--root");

  vg_graph* raw = nullptr;
  vg_generate_info info{};
  check(vg_generate(&sca, &taper, has_root ? root_xyz : nullptr, &raw, &info));
  GraphPtr graph(raw);

  uint64_t nodes = 0;
  uint64_t edges = 0;
  double r_max = 0.0;
  check(vg_graph_node_count(graph.get(), &nodes));
  check(vg_graph_edge_count(graph.get(), &edges));
  check(vg_graph_max_radius(graph.get(), &r_max));

  ordered_json meta;
  meta["generator"] = "sca";
  meta["seed"] = std::to_string(sca.seed);
  meta["attractors"] = std::to_string(sca.attractor_count);
  meta["attraction_radius"] = double_str(sca.attraction_radius);
  meta["kill_radius"] = double_str(sca.kill_radius);
  meta["step"] = double_str(sca.step);
  meta["terminal_radius"] = double_str(taper.terminal_radius);
  meta["murray_exponent"] = double_str(taper.murray_exponent);
  Buffer file;
  check(vg_graph_save_json(graph.get(), meta.dump().c_str(), &file.buf));
  write_file_atomic(o.out, file.buf.data, file.buf.size);

  ordered_json summary;
  summary["nodes"] = nodes;
  summary["edges"] = edges;
  summary["max_radius"] = r_max;
  summary["stalled"] = info.stalled != 0;
  summary["iterations"] = info.iterations;
  summary["attractors_remaining"] = info.attractors_remaining;
  summary["seed"] = sca.seed;
  summary["out"] = o.out;
  emit(summary);
  return 0;
}

// ----------------------------------------------------------------- segment

struct SegmentOpts {
  std::string in;
  double rmin = 0.2;
  std::string root = "max-radius";
  double snap = 16.0;
  double delta = 0.5;
  std::string json_out;
  std::string mask_out;
  std::string dims = "512,512";
};

void apply_root(vg_segment_config& cfg, const std::string& spec) {
  if (spec == "max-radius") {
    cfg.root_kind = VG_ROOT_MAX_RADIUS;
    return;
  }
  if (spec.rfind("node:", 0) == 0) {
    cfg.root_kind = VG_ROOT_NODE_ID;
    cfg.root_node_id = parse_unsigned<uint32_t>(spec.substr(5), "--root node id");
    return;
  }
  const std::vector<double> xyz =
      parse_csv_doubles(spec, 2, 3, "--root (\"max-radius\", \"node:ID\", or X,Y[,Z])");
  cfg.root_kind = VG_ROOT_COORDINATE;
  cfg.root_xyz[0] = xyz[0];
  cfg.root_xyz[1] = xyz[1];
  cfg.root_xyz[2] = xyz.size() == 3 ? xyz[2] : 0.0;
}

int cmd_segment(const SegmentOpts& o) {
  LoadedGraph in = load_graph(o.in, o.delta);

  vg_segment_config cfg;
  vg_segment_config_init(&cfg);
  cfg.r_min_ratio = o.rmin;
  cfg.snap_distance = o.snap;
  apply_root(cfg, o.root);
  if (!o.mask_out.empty()) {
    const MaskDims dims = parse_dims(o.dims);
    cfg.emit_mask = 1;
    cfg.mask_width = dims.width;
    cfg.mask_height = dims.height;
    cfg.mask_depth = dims.depth;
  }

  vg_segmentation* raw = nullptr;
  check(vg_segment(in.graph.get(), &cfg, &raw));
  SegPtr seg(raw);

  uint64_t retained = 0;
  uint32_t pruned = 0;
  double r_max = 0.0;
  check(vg_segmentation_info(seg.get(), &retained, &pruned, &r_max));

  if (!o.json_out.empty()) {
    vg_graph* main_raw = nullptr;
    check(vg_segmentation_graph(seg.get(), &main_raw));
    GraphPtr main_graph(main_raw);
    ordered_json meta;
    meta["source"] = o.in;
    meta["r_min_ratio"] = double_str(o.rmin);
    Buffer file;
    check(vg_graph_save_json(main_graph.get(), meta.dump().c_str(), &file.buf));
    write_file_atomic(o.json_out, file.buf.data, file.buf.size);
  }
  if (!o.mask_out.empty()) {
    vg_mask* mask_raw = nullptr;
    check(vg_segmentation_mask(seg.get(), &mask_raw));
    MaskPtr mask(mask_raw);
    save_mask(mask.get(), o.mask_out);
  }

  ordered_json summary;
  summary["retained_nodes"] = retained;
  summary["pruned_components"] = pruned;
  summary["r_min_ratio"] = o.rmin;
  summary["r_max"] = r_max;
  if (!o.json_out.empty()) summary["json_out"] = o.json_out;
  if (!o.mask_out.empty()) summary["mask_out"] = o.mask_out;
  emit(summary);
  return 0;
}

// --------------------------------------------------------------- calibrate

struct CalibrateOpts {
  std::string in;
  std::string strategy = "fixed";
  std::string dims = "512,512";
  uint32_t iterations = 40;
  uint32_t sweep = 0;
  std::string truth;
  std::string sweep_out;
  double delta = 0.5;
};

int cmd_calibrate(const CalibrateOpts& o) {
  LoadedGraph in = load_graph(o.in, o.delta);
  const MaskDims dims = parse_dims(o.dims);

  vg_radius_stats stats{};
  check(vg_radius_stats_compute(in.graph.get(), &stats));

  double r_min = 0.0;
  if (o.strategy == "fixed") {
    check(vg_derive_rmin(&stats, VG_RMIN_FIXED, &r_min));
  } else if (o.strategy == "mean-over-max") {
    check(vg_derive_rmin(&stats, VG_RMIN_MEAN_OVER_MAX, &r_min));
  } else if (o.strategy.rfind("coverage:", 0) == 0) {
    const double target = parse_double(o.strategy.substr(9), "--strategy coverage target");
    check(vg_derive_rmin_coverage(in.graph.get(), dims.width, dims.height, target,
                                  o.iterations, &r_min));
  } else {
    usage_error("--strategy must be fixed, mean-over-max, or coverage:TARGET");
  }

  ordered_json summary;
  summary["strategy"] = o.strategy;
  summary["r_min_ratio"] = r_min;
  summary["stats"] = {{"mean", stats.mean},
                      {"std_dev", stats.std_dev},
                      {"r_max", stats.r_max},
                      {"count", stats.count}};
  summary["histogram"] = std::vector<uint64_t>(std::begin(stats.histogram),
                                               std::end(stats.histogram));

  if (o.sweep > 0) {
    if (o.sweep_out.empty()) usage_error("--sweep requires --sweep-out");
    MaskPtr truth;
    if (!o.truth.empty()) {
      truth = load_mask(o.truth);
    } else {
      vg_mask* raw = nullptr;
      check(vg_rasterize(in.graph.get(), dims.width, dims.height, dims.depth, 0, &raw));
      truth.reset(raw);
    }
    std::vector<double> ratios(o.sweep);
    for (uint32_t i = 0; i < o.sweep; ++i) {
      ratios[i] = static_cast<double>(i + 1) / static_cast<double>(o.sweep);
    }
    Buffer csv;
    check(vg_sensitivity_sweep_csv(in.graph.get(), truth.get(), ratios.data(),
                                   ratios.size(), &csv.buf));
    write_file_atomic(o.sweep_out, csv.buf.data, csv.buf.size);
    summary["sweep_rows"] = o.sweep;
    summary["sweep_out"] = o.sweep_out;
  }
  emit(summary);
  return 0;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateOpts {
  std::string pred;
  std::string truth;
  uint32_t window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double range = 255.0;
  const CLI::Option* window_flag = nullptr;
  const CLI::Option* sigma_flag = nullptr;
  const CLI::Option* k1_flag = nullptr;
  const CLI::Option* k2_flag = nullptr;
  const CLI::Option* range_flag = nullptr;
};

int cmd_evaluate(const EvaluateOpts& o) {
  MaskPtr pred = load_mask(o.pred);
  MaskPtr truth = load_mask(o.truth);

  vg_ssim_params ssim;
  vg_ssim_params_init(&ssim);
  if (o.window_flag->count() > 0) ssim.window = o.window;
  if (o.sigma_flag->count() > 0) ssim.gaussian_sigma = o.sigma;
  if (o.k1_flag->count() > 0) ssim.k1 = o.k1;
  if (o.k2_flag->count() > 0) ssim.k2 = o.k2;
  if (o.range_flag->count() > 0) ssim.dynamic_range = o.range;

  vg_metric_report report{};
  check(vg_metrics(pred.get(), truth.get(), &ssim, &report));
  double consistency = 0.0;
  check(vg_structural_consistency(pred.get(), truth.get(), &consistency));

  ordered_json summary;
  summary["iou"] = report.iou;
  summary["dice"] = report.dice;
  summary["ssim"] = report.ssim;
  summary["mse"] = report.mse;
  summary["structural_consistency"] = consistency;
  emit(summary);
  return 0;
}

// ------------------------------------------------------------------ render

struct RenderOpts {
  std::string in;
  std::string out;
  std::string dims = "512,512";
  bool three_d = false;
  bool fit = false;
  bool style = false;
  double background = 0.0;
  double gamma = 1.0;
  double noise_sigma = 0.0;
  uint64_t seed = 0;
  const CLI::Option* seed_flag = nullptr;
  uint32_t dehaze = 0;
  double unsharp_sigma = 0.0;
  double unsharp_amount = 1.0;
  double delta = 0.5;
};

int cmd_render(const RenderOpts& o) {
  LoadedGraph in = load_graph(o.in, o.delta);
  const MaskDims dims = parse_dims(o.dims);
  if (!o.three_d && dims.depth != 1) {
    usage_error("volumetric --dims need --3d");
  }

  vg_mask* raw = nullptr;
  check(vg_rasterize(in.graph.get(), dims.width, dims.height,
                     o.three_d ? dims.depth : 1, o.fit ? 1 : 0, &raw),
        "pass --fit to scale the tree into the canvas");
  MaskPtr image(raw);

  if (o.style) {
    vg_style_params style;
    vg_style_params_init(&style);
    style.background_level = o.background;
    style.contrast_gamma = o.gamma;
    style.noise_sigma = o.noise_sigma;
    style.seed = resolve_seed(o.seed_flag, o.seed);
    vg_mask* styled = nullptr;
    check(vg_style_adapt(image.get(), &style, &styled));
    image.reset(styled);
  }
  if (o.dehaze > 0) {
    vg_mask* dehazed = nullptr;
    check(vg_dark_channel_dehaze(image.get(), o.dehaze, &dehazed));
    image.reset(dehazed);
  }
  if (o.unsharp_sigma > 0.0) {
    vg_mask* sharpened = nullptr;
    check(vg_unsharp_mask(image.get(), o.unsharp_sigma, o.unsharp_amount, &sharpened));
    image.reset(sharpened);
  }

  Buffer bytes;
  check(o.three_d ? vg_mask_encode_volume(image.get(), &bytes.buf)
                  : vg_mask_encode_png(image.get(), &bytes.buf));
  write_file_atomic(o.out, bytes.buf.data, bytes.buf.size);

  uint32_t w = 0;
  uint32_t h = 0;
  uint32_t d = 1;
  check(vg_mask_dims(image.get(), &w, &h, &d));
  std::vector<uint8_t> cells(static_cast<size_t>(w) * h * d);
  check(vg_mask_read(image.get(), cells.data()));
  uint64_t nonzero = 0;
  for (const uint8_t v : cells) nonzero += v != 0 ? 1 : 0;

  ordered_json summary;
  summary["out"] = o.out;
  summary["width"] = w;
  summary["height"] = h;
  summary["depth"] = d;
  summary["nonzero"] = nonzero;
  emit(summary);
  return 0;
}

// ------------------------------------------------------------------- bench

struct BenchOpts {
  std::string sizes;
  uint32_t reps = 50;
  uint64_t seed = 0;
  const CLI::Option* seed_flag = nullptr;
  std::string out;
};

int cmd_bench(const BenchOpts& o) {
  const std::vector<std::string> tokens = split_csv(o.sizes);
  std::vector<uint64_t> sizes;
  sizes.reserve(tokens.size());
  for (const std::string& t : tokens) {
    sizes.push_back(parse_unsigned<uint64_t>(t, "--sizes"));
  }
  const uint64_t seed = resolve_seed(o.seed_flag, o.seed);

  Buffer csv;
  check(vg_bench_dfs_csv(sizes.data(), sizes.size(), o.reps, seed, &csv.buf));
  if (o.out.empty()) {
    std::cout << csv.str();
    return 0;
  }
  write_file_atomic(o.out, csv.buf.data, csv.buf.size);
  ordered_json summary;
  summary["rows"] = sizes.size();
  summary["out"] = o.out;
  emit(summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic vessel trees: generation, segmentation, calibration, metrics"};
  app.set_version_flag("--version", vg_version());
  app.require_subcommand(1);

  GenerateOpts gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "Grow a vessel tree and write it as a JSON vessel file");
  generate->add_option("--out", gen.out, "Output vessel file path")->required();
  gen.seed_flag = generate->add_option("--seed", gen.seed,
                                       "RNG seed (VESSELGRAPH_SEED overrides the default)");
  gen.attractors_flag =
      generate->add_option("--attractors", gen.attractors, "Attractor point count");
  gen.attraction_flag = generate->add_option("--attraction-radius", gen.attraction_radius,
                                             "Attraction radius in pixels");
  gen.kill_flag =
      generate->add_option("--kill-radius", gen.kill_radius, "Kill radius in pixels");
  gen.step_flag = generate->add_option("--step", gen.step, "Growth step length");
  gen.iter_flag = generate->add_option("--max-iterations", gen.max_iterations,
                                       "Iteration cap before reporting a stall");
  generate->add_option("--domain-min", gen.domain_min,
                       "Attractor field lower corner as X,Y[,Z]");
  generate->add_option("--domain-max", gen.domain_max,
                       "Attractor field upper corner as X,Y[,Z]");
  generate->add_option("--root", gen.root, "Root position as X,Y[,Z]");
  gen.terminal_flag = generate->add_option("--terminal-radius", gen.terminal_radius,
                                           "Radius assigned to leaf nodes");
  gen.murray_flag = generate->add_option("--murray-exponent", gen.murray_exponent,
                                         "Branching exponent for parent radii");

  SegmentOpts seg;
  CLI::App* segment = app.add_subcommand(
      "segment", "Extract the main vessel subtree from a vessel file");
  segment->add_option("--in", seg.in, "Input vessel file")->required();
  segment->add_option("--rmin", seg.rmin, "Radius threshold ratio in [0,1]");
  segment->add_option("--root", seg.root,
                      "Root policy: max-radius, node:ID, or X,Y[,Z]");
  segment->add_option("--snap", seg.snap, "Snap distance for coordinate roots");
  segment->add_option("--delta", seg.delta,
                      "Proximity slack when the input file has no edges");
  segment->add_option("--json-out", seg.json_out, "Write the main subtree here");
  segment->add_option("--mask-out", seg.mask_out,
                      "Write a rasterized mask here (PNG at depth 1, volume otherwise)");
  segment->add_option("--dims", seg.dims, "Mask canvas as W,H[,D]");

  CalibrateOpts cal;
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "Radius statistics, threshold derivation, sensitivity sweep");
  calibrate->add_option("--in", cal.in, "Input vessel file")->required();
  calibrate->add_option("--strategy", cal.strategy,
                        "fixed, mean-over-max, or coverage:TARGET");
  calibrate->add_option("--dims", cal.dims,
                        "Canvas for coverage search and default sweep truth");
  calibrate->add_option("--iterations", cal.iterations,
                        "Bisection iterations for coverage:TARGET");
  calibrate->add_option("--sweep", cal.sweep,
                        "Evaluate N evenly spaced ratios and write a CSV curve");
  calibrate->add_option("--truth", cal.truth, "Ground-truth mask for the sweep");
  calibrate->add_option("--sweep-out", cal.sweep_out, "Sweep CSV output path");
  calibrate->add_option("--delta", cal.delta,
                        "Proximity slack when the input file has no edges");

  EvaluateOpts eval;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Compare a predicted mask against a ground-truth mask");
  evaluate->add_option("--pred", eval.pred, "Predicted mask (PNG or volume)")->required();
  evaluate->add_option("--truth", eval.truth, "Ground-truth mask (PNG or volume)")
      ->required();
  eval.window_flag = evaluate->add_option("--window", eval.window, "SSIM window size");
  eval.sigma_flag = evaluate->add_option("--sigma", eval.sigma, "SSIM Gaussian sigma");
  eval.k1_flag = evaluate->add_option("--k1", eval.k1, "SSIM k1 constant");
  eval.k2_flag = evaluate->add_option("--k2", eval.k2, "SSIM k2 constant");
  eval.range_flag = evaluate->add_option("--range", eval.range, "SSIM dynamic range");

  RenderOpts ren;
  CLI::App* render = app.add_subcommand(
      "render", "Rasterize a vessel file to a PNG or volume image");
  render->add_option("--in", ren.in, "Input vessel file")->required();
  render->add_option("--out", ren.out, "Output image path")->required();
  render->add_option("--dims", ren.dims, "Canvas as W,H[,D]");
  render->add_flag("--3d", ren.three_d, "Emit a volume instead of a PNG");
  render->add_flag("--fit", ren.fit, "Scale the tree into the canvas");
  render->add_flag("--style", ren.style, "Apply background/contrast/noise styling");
  render->add_option("--background", ren.background, "Style background level");
  render->add_option("--gamma", ren.gamma, "Style contrast exponent");
  render->add_option("--noise-sigma", ren.noise_sigma, "Style noise sigma");
  ren.seed_flag = render->add_option(
      "--seed", ren.seed, "Style noise seed (VESSELGRAPH_SEED overrides the default)");
  render->add_option("--dehaze", ren.dehaze,
                     "Dark-channel dehaze patch size (odd, 0 disables)");
  render->add_option("--unsharp-sigma", ren.unsharp_sigma,
                     "Unsharp blur sigma (0 disables)");
  render->add_option("--unsharp-amount", ren.unsharp_amount, "Unsharp gain");
  render->add_option("--delta", ren.delta,
                     "Proximity slack when the input file has no edges");

  BenchOpts bench;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Time main-subtree extraction over random trees, emit CSV");
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated node counts")->required();
  bench_cmd->add_option("--reps", bench.reps, "Timed repetitions per size (min 30)");
  bench.seed_flag = bench_cmd->add_option(
      "--seed", bench.seed, "Tree seed (VESSELGRAPH_SEED overrides the default)");
  bench_cmd->add_option("--out", bench.out,
                        "CSV output path (omit to print CSV to stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;
    ordered_json out;
    out["error"] = {{"status", "invalid_argument"}, {"message", e.what()}};
    std::cout << out.dump() << "\n";
    return 2;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (segment->parsed()) return cmd_segment(seg);
    if (calibrate->parsed()) return cmd_calibrate(cal);
    if (evaluate->parsed()) return cmd_evaluate(eval);
    if (render->parsed()) return cmd_render(ren);
    if (bench_cmd->parsed()) return cmd_bench(bench);
  } catch (const CliError& err) {
    return report(err);
  } catch (const std::exception& e) {
    return report(CliError{VG_ERROR_INTERNAL, e.what()});
  }
  return 2;
}
