#include "vesselgraph.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "vessel/bench.hpp"
#include "vessel/calibration.hpp"
#include "vessel/error.hpp"
#include "vessel/graph.hpp"
#include "vessel/io.hpp"
#include "vessel/metrics.hpp"
#include "vessel/raster.hpp"
#include "vessel/segmentor.hpp"
#include "vessel/synthesis.hpp"

extern "C" {
struct vg_graph {
  vessel::VesselGraph impl;
};
struct vg_mask {
  vessel::raster::RasterMask impl;
};
struct vg_segmentation {
  vessel::segmentor::SegmentationResult impl;
};
}

namespace {

thread_local std::string t_last_error;

vg_status_t map_code(vessel::ErrorCode code) {
  using vessel::ErrorCode;
  switch (code) {
    case ErrorCode::EmptyInput: return VG_ERROR_EMPTY_INPUT;
    case ErrorCode::InvalidEdge: return VG_ERROR_INVALID_EDGE;
    case ErrorCode::InvalidRadius: return VG_ERROR_INVALID_RADIUS;
    case ErrorCode::InvalidRatio: return VG_ERROR_INVALID_RATIO;
    case ErrorCode::InvalidParams: return VG_ERROR_INVALID_PARAMS;
    case ErrorCode::InvalidDomain: return VG_ERROR_INVALID_DOMAIN;
    case ErrorCode::NotATree: return VG_ERROR_NOT_A_TREE;
    case ErrorCode::ShapeMismatch: return VG_ERROR_SHAPE_MISMATCH;
    case ErrorCode::OutOfBounds: return VG_ERROR_OUT_OF_BOUNDS;
    case ErrorCode::EmptyAfterFilter: return VG_ERROR_EMPTY_AFTER_FILTER;
    case ErrorCode::RootNotFound: return VG_ERROR_ROOT_NOT_FOUND;
    case ErrorCode::DegenerateStats: return VG_ERROR_DEGENERATE_STATS;
    case ErrorCode::InvalidWindow: return VG_ERROR_INVALID_WINDOW;
    case ErrorCode::IoError: return VG_ERROR_IO;
    case ErrorCode::ParseError: return VG_ERROR_PARSE;
  }
  return VG_ERROR_INTERNAL;
}

template <typename Fn>
vg_status_t guarded(Fn&& fn) {
  try {
    fn();
    return VG_OK;
  } catch (const vessel::Error& e) {
    t_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return VG_ERROR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown failure";
    return VG_ERROR_INTERNAL;
  }
}

vg_status_t bad_argument(const char* message) {
  t_last_error = message;
  return VG_ERROR_INVALID_ARGUMENT;
}

void fill_buffer(vg_buffer* out, const std::string& bytes) {
  char* mem = static_cast<char*>(std::malloc(bytes.size() + 1));
  if (!mem) throw std::bad_alloc();
  std::memcpy(mem, bytes.data(), bytes.size());
  mem[bytes.size()] = '\0';
  out->data = mem;
  out->size = bytes.size();
}

std::vector<vessel::VesselNode> collect_nodes(const double* xs, const double* ys,
                                              const double* zs, const double* rs,
                                              uint64_t node_count) {
  std::vector<vessel::VesselNode> nodes(node_count);
  for (uint64_t i = 0; i < node_count; ++i) {
    nodes[i] = {xs[i], ys[i], zs[i], rs[i]};
  }
  return nodes;
}

vessel::synthesis::ScaParams to_sca(const vg_sca_params* p) {
  if (!p) return {};
  vessel::synthesis::ScaParams out;
  out.attraction_radius = p->attraction_radius;
  out.kill_radius = p->kill_radius;
  out.step = p->step;
  out.max_iterations = p->max_iterations;
  out.domain = {{p->domain_min[0], p->domain_min[1], p->domain_min[2]},
                {p->domain_max[0], p->domain_max[1], p->domain_max[2]}};
  out.attractor_count = p->attractor_count;
  out.seed = p->seed;
  return out;
}

vessel::synthesis::TaperParams to_taper(const vg_taper_params* p) {
  if (!p) return {};
  return {p->terminal_radius, p->murray_exponent};
}

}  // namespace

extern "C" {

const char* vg_version(void) { return "1.0.0"; }

const char* vg_last_error(void) { return t_last_error.c_str(); }

const char* vg_status_name(vg_status_t status) {
  switch (status) {
    case VG_OK: return "ok";
    case VG_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case VG_ERROR_EMPTY_INPUT: return "empty_input";
    case VG_ERROR_INVALID_EDGE: return "invalid_edge";
    case VG_ERROR_INVALID_RADIUS: return "invalid_radius";
    case VG_ERROR_INVALID_RATIO: return "invalid_ratio";
    case VG_ERROR_INVALID_PARAMS: return "invalid_params";
    case VG_ERROR_INVALID_DOMAIN: return "invalid_domain";
    case VG_ERROR_NOT_A_TREE: return "not_a_tree";
    case VG_ERROR_SHAPE_MISMATCH: return "shape_mismatch";
    case VG_ERROR_OUT_OF_BOUNDS: return "out_of_bounds";
    case VG_ERROR_EMPTY_AFTER_FILTER: return "empty_after_filter";
    case VG_ERROR_ROOT_NOT_FOUND: return "root_not_found";
    case VG_ERROR_DEGENERATE_STATS: return "degenerate_stats";
    case VG_ERROR_INVALID_WINDOW: return "invalid_window";
    case VG_ERROR_IO: return "io_error";
    case VG_ERROR_PARSE: return "parse_error";
    case VG_ERROR_INTERNAL: return "internal";
  }
  return "unknown";
}

void vg_buffer_free(vg_buffer* buffer) {
  if (!buffer) return;
  std::free(buffer->data);
  buffer->data = nullptr;
  buffer->size = 0;
}

void vg_graph_free(vg_graph* graph) { delete graph; }
void vg_mask_free(vg_mask* mask) { delete mask; }
void vg_segmentation_free(vg_segmentation* segmentation) { delete segmentation; }

vg_status_t vg_graph_build(const double* xs, const double* ys, const double* zs,
                           const double* rs, uint64_t node_count,
                           const uint32_t* edge_pairs, uint64_t edge_count,
                           vg_graph** out) {
  if (!xs || !ys || !zs || !rs || !out || (edge_count > 0 && !edge_pairs)) {
    return bad_argument("vg_graph_build: null pointer");
  }
  if (node_count > UINT32_MAX) return bad_argument("too many nodes for 32-bit ids");
  return guarded([&] {
    std::vector<vessel::IdPair> pairs(edge_count);
    for (uint64_t i = 0; i < edge_count; ++i) {
      pairs[i] = {edge_pairs[2 * i], edge_pairs[2 * i + 1]};
    }
    *out = new vg_graph{vessel::build_graph(
        collect_nodes(xs, ys, zs, rs, node_count), std::span(pairs))};
  });
}

vg_status_t vg_graph_build_proximity(const double* xs, const double* ys,
                                     const double* zs, const double* rs,
                                     uint64_t node_count, double delta,
                                     vg_graph** out) {
  if (!xs || !ys || !zs || !rs || !out) {
    return bad_argument("vg_graph_build_proximity: null pointer");
  }
  if (node_count > UINT32_MAX) return bad_argument("too many nodes for 32-bit ids");
  return guarded([&] {
    *out = new vg_graph{vessel::build_graph(
        collect_nodes(xs, ys, zs, rs, node_count), vessel::ProximityPolicy{delta})};
  });
}

vg_status_t vg_graph_node_count(const vg_graph* graph, uint64_t* out) {
  if (!graph || !out) return bad_argument("vg_graph_node_count: null pointer");
  *out = graph->impl.node_count();
  return VG_OK;
}

vg_status_t vg_graph_edge_count(const vg_graph* graph, uint64_t* out) {
  if (!graph || !out) return bad_argument("vg_graph_edge_count: null pointer");
  *out = graph->impl.edge_count();
  return VG_OK;
}

vg_status_t vg_graph_max_radius(const vg_graph* graph, double* out) {
  if (!graph || !out) return bad_argument("vg_graph_max_radius: null pointer");
  *out = graph->impl.max_radius();
  return VG_OK;
}

vg_status_t vg_graph_nodes(const vg_graph* graph, double* xs, double* ys,
                           double* zs, double* rs) {
  if (!graph) return bad_argument("vg_graph_nodes: null graph");
  const auto& nodes = graph->impl.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (xs) xs[i] = nodes[i].x;
    if (ys) ys[i] = nodes[i].y;
    if (zs) zs[i] = nodes[i].z;
    if (rs) rs[i] = nodes[i].r;
  }
  return VG_OK;
}

vg_status_t vg_graph_edges(const vg_graph* graph, uint32_t* edge_pairs) {
  if (!graph || !edge_pairs) return bad_argument("vg_graph_edges: null pointer");
  const auto& edges = graph->impl.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edge_pairs[2 * i] = edges[i].from;
    edge_pairs[2 * i + 1] = edges[i].to;
  }
  return VG_OK;
}

vg_status_t vg_graph_save_json(const vg_graph* graph, const char* meta_json,
                               vg_buffer* out) {
  if (!graph || !out) return bad_argument("vg_graph_save_json: null pointer");
  return guarded([&] {
    std::map<std::string, std::string> meta;
    if (meta_json) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(meta_json);
      } catch (const nlohmann::json::exception& e) {
        vessel::fail(vessel::ErrorCode::ParseError,
                     std::string("meta is not valid JSON: ") + e.what());
      }
      if (!doc.is_object()) {
        vessel::fail(vessel::ErrorCode::ParseError, "meta must be a JSON object");
      }
      for (const auto& [k, v] : doc.items()) {
        if (!v.is_string()) {
          vessel::fail(vessel::ErrorCode::ParseError, "meta values must be strings");
        }
        meta[k] = v.get<std::string>();
      }
    }
    fill_buffer(out, vessel::io::save_vessel_file(graph->impl, meta));
  });
}

vg_status_t vg_graph_load_json(const char* text, size_t length, vg_graph** out,
                               vg_buffer* meta_json_out, int* has_edges_out) {
  if (!text || !out) return bad_argument("vg_graph_load_json: null pointer");
  return guarded([&] {
    vessel::io::VesselFile file =
        vessel::io::load_vessel_file(std::string(text, length));
    if (meta_json_out) {
      nlohmann::json meta = nlohmann::json::object();
      for (const auto& [k, v] : file.meta) meta[k] = v;
      fill_buffer(meta_json_out, meta.dump());
    }
    if (has_edges_out) *has_edges_out = file.has_edges ? 1 : 0;
    *out = new vg_graph{std::move(file.graph)};
  });
}

vg_status_t vg_mask_encode_png(const vg_mask* mask, vg_buffer* out) {
  if (!mask || !out) return bad_argument("vg_mask_encode_png: null pointer");
  return guarded([&] { fill_buffer(out, vessel::io::encode_png(mask->impl)); });
}

vg_status_t vg_mask_decode_png(const char* bytes, size_t length, vg_mask** out) {
  if (!bytes || !out) return bad_argument("vg_mask_decode_png: null pointer");
  return guarded([&] {
    *out = new vg_mask{vessel::io::decode_png(std::string(bytes, length))};
  });
}

vg_status_t vg_mask_encode_volume(const vg_mask* mask, vg_buffer* out) {
  if (!mask || !out) return bad_argument("vg_mask_encode_volume: null pointer");
  return guarded([&] { fill_buffer(out, vessel::io::save_volume(mask->impl)); });
}

vg_status_t vg_mask_decode_volume(const char* bytes, size_t length, vg_mask** out) {
  if (!bytes || !out) return bad_argument("vg_mask_decode_volume: null pointer");
  return guarded([&] {
    *out = new vg_mask{vessel::io::load_volume(std::string(bytes, length))};
  });
}

void vg_sca_params_init(vg_sca_params* params) {
  if (!params) return;
  const vessel::synthesis::ScaParams d;
  params->attraction_radius = d.attraction_radius;
  params->kill_radius = d.kill_radius;
  params->step = d.step;
  params->max_iterations = d.max_iterations;
  params->domain_min[0] = d.domain.min.x;
  params->domain_min[1] = d.domain.min.y;
  params->domain_min[2] = d.domain.min.z;
  params->domain_max[0] = d.domain.max.x;
  params->domain_max[1] = d.domain.max.y;
  params->domain_max[2] = d.domain.max.z;
  params->attractor_count = d.attractor_count;
  params->seed = d.seed;
}

void vg_taper_params_init(vg_taper_params* params) {
  if (!params) return;
  const vessel::synthesis::TaperParams d;
  params->terminal_radius = d.terminal_radius;
  params->murray_exponent = d.murray_exponent;
}

vg_status_t vg_generate(const vg_sca_params* params, const vg_taper_params* taper,
                        const double* root_xyz, vg_graph** out,
                        vg_generate_info* info) {
  if (!out) return bad_argument("vg_generate: null output");
  return guarded([&] {
    const vessel::synthesis::ScaParams sca = to_sca(params);
    const vessel::synthesis::TaperParams tp = to_taper(taper);
    vessel::synthesis::ScaResult result =
        root_xyz ? vessel::synthesis::generate_tree(
                       sca, tp, {root_xyz[0], root_xyz[1], root_xyz[2]})
                 : vessel::synthesis::generate_tree(sca, tp);
    if (info) {
      info->stalled = result.stalled ? 1 : 0;
      info->iterations = result.iterations;
      info->attractors_remaining = result.attractors_remaining;
    }
    *out = new vg_graph{std::move(result.tree)};
  });
}

vg_status_t vg_random_tree(uint32_t node_count, uint64_t seed,
                           const vg_taper_params* taper, vg_graph** out) {
  if (!out) return bad_argument("vg_random_tree: null output");
  return guarded([&] {
    *out = new vg_graph{
        vessel::synthesis::random_tree(node_count, seed, to_taper(taper))};
  });
}

vg_status_t vg_label_main(const vg_graph* graph, double ratio, uint8_t* labels) {
  if (!graph || !labels) return bad_argument("vg_label_main: null pointer");
  return guarded([&] {
    const vessel::synthesis::GroundTruth gt =
        vessel::synthesis::label_ground_truth(graph->impl, ratio);
    std::memset(labels, 0, graph->impl.node_count());
    for (const uint32_t id : gt.main_ids) labels[id] = 1;
  });
}

void vg_segment_config_init(vg_segment_config* config) {
  if (!config) return;
  const vessel::segmentor::SegmentorConfig d;
  config->r_min_ratio = d.r_min_ratio;
  config->root_kind = VG_ROOT_MAX_RADIUS;
  config->root_xyz[0] = config->root_xyz[1] = config->root_xyz[2] = 0.0;
  config->root_node_id = 0;
  config->snap_distance = d.root.snap_distance;
  config->emit_mask = 0;
  config->mask_width = 0;
  config->mask_height = 0;
  config->mask_depth = 1;
}

vg_status_t vg_filter_by_radius(const vg_graph* graph, double ratio,
                                vg_graph** out) {
  if (!graph || !out) return bad_argument("vg_filter_by_radius: null pointer");
  return guarded([&] {
    *out = new vg_graph{vessel::segmentor::filter_by_radius(graph->impl, ratio)};
  });
}

vg_status_t vg_segment(const vg_graph* graph, const vg_segment_config* config,
                       vg_segmentation** out) {
  if (!graph || !config || !out) return bad_argument("vg_segment: null pointer");
  return guarded([&] {
    vessel::segmentor::SegmentorConfig cfg;
    cfg.r_min_ratio = config->r_min_ratio;
    switch (config->root_kind) {
      case VG_ROOT_MAX_RADIUS:
        cfg.root = vessel::segmentor::RootPolicy::max_radius();
        break;
      case VG_ROOT_COORDINATE:
        cfg.root = vessel::segmentor::RootPolicy::at_coordinate(
            {config->root_xyz[0], config->root_xyz[1], config->root_xyz[2]},
            config->snap_distance);
        break;
      case VG_ROOT_NODE_ID:
        cfg.root = vessel::segmentor::RootPolicy::at_node(config->root_node_id);
        break;
      default:
        vessel::fail(vessel::ErrorCode::InvalidParams, "unknown root_kind");
    }
    cfg.mask.enabled = config->emit_mask != 0;
    if (cfg.mask.enabled) {
      cfg.mask.dims = {config->mask_width, config->mask_height,
                       config->mask_depth == 0 ? 1 : config->mask_depth};
    }
    *out = new vg_segmentation{vessel::segmentor::segment(graph->impl, cfg)};
  });
}

vg_status_t vg_segmentation_info(const vg_segmentation* segmentation,
                                 uint64_t* retained_nodes,
                                 uint32_t* pruned_components, double* r_max) {
  if (!segmentation) return bad_argument("vg_segmentation_info: null handle");
  if (retained_nodes) *retained_nodes = segmentation->impl.main_graph.node_count();
  if (pruned_components) *pruned_components = segmentation->impl.pruned_components;
  if (r_max) *r_max = segmentation->impl.r_max_observed;
  return VG_OK;
}

vg_status_t vg_segmentation_graph(const vg_segmentation* segmentation,
                                  vg_graph** out) {
  if (!segmentation || !out) {
    return bad_argument("vg_segmentation_graph: null pointer");
  }
  return guarded([&] { *out = new vg_graph{segmentation->impl.main_graph}; });
}

vg_status_t vg_segmentation_visited(const vg_segmentation* segmentation,
                                    uint32_t* order) {
  if (!segmentation || !order) {
    return bad_argument("vg_segmentation_visited: null pointer");
  }
  const auto& visited = segmentation->impl.visited_order;
  std::memcpy(order, visited.data(), visited.size() * sizeof(uint32_t));
  return VG_OK;
}

vg_status_t vg_segmentation_mask(const vg_segmentation* segmentation,
                                 vg_mask** out) {
  if (!segmentation || !out) return bad_argument("vg_segmentation_mask: null pointer");
  if (!segmentation->impl.mask.has_value()) {
    return bad_argument("segmentation was run without emit_mask");
  }
  return guarded([&] { *out = new vg_mask{*segmentation->impl.mask}; });
}

vg_status_t vg_structural_consistency(const vg_mask* a, const vg_mask* b,
                                      double* out) {
  if (!a || !b || !out) return bad_argument("vg_structural_consistency: null pointer");
  return guarded(
      [&] { *out = vessel::segmentor::structural_consistency(a->impl, b->impl); });
}

vg_status_t vg_mask_create(uint32_t width, uint32_t height, uint32_t depth,
                           const uint8_t* cells, vg_mask** out) {
  if (!out) return bad_argument("vg_mask_create: null output");
  return guarded([&] {
    const vessel::raster::Dims dims{width, height, depth == 0 ? 1 : depth};
    if (dims.cell_count() == 0) {
      vessel::fail(vessel::ErrorCode::InvalidParams, "mask has no cells");
    }
    vessel::raster::RasterMask mask = vessel::raster::RasterMask::zeros(dims);
    if (cells) std::memcpy(mask.data.data(), cells, mask.data.size());
    *out = new vg_mask{std::move(mask)};
  });
}

vg_status_t vg_mask_dims(const vg_mask* mask, uint32_t* width, uint32_t* height,
                         uint32_t* depth) {
  if (!mask) return bad_argument("vg_mask_dims: null mask");
  if (width) *width = mask->impl.dims.width;
  if (height) *height = mask->impl.dims.height;
  if (depth) *depth = mask->impl.dims.depth;
  return VG_OK;
}

vg_status_t vg_mask_read(const vg_mask* mask, uint8_t* cells) {
  if (!mask || !cells) return bad_argument("vg_mask_read: null pointer");
  std::memcpy(cells, mask->impl.data.data(), mask->impl.data.size());
  return VG_OK;
}

vg_status_t vg_rasterize(const vg_graph* graph, uint32_t width, uint32_t height,
                         uint32_t depth, int fit, vg_mask** out) {
  if (!graph || !out) return bad_argument("vg_rasterize: null pointer");
  return guarded([&] {
    *out = new vg_mask{
        depth <= 1
            ? vessel::raster::rasterize_2d(graph->impl, width, height, fit != 0)
            : vessel::raster::rasterize_3d(graph->impl, {width, height, depth},
                                           fit != 0)};
  });
}

void vg_style_params_init(vg_style_params* params) {
  if (!params) return;
  const vessel::raster::StyleParams d;
  params->noise_sigma = d.noise_sigma;
  params->contrast_gamma = d.contrast_gamma;
  params->background_level = d.background_level;
  params->seed = d.seed;
}

vg_status_t vg_style_adapt(const vg_mask* mask, const vg_style_params* params,
                           vg_mask** out) {
  if (!mask || !params || !out) return bad_argument("vg_style_adapt: null pointer");
  return guarded([&] {
    *out = new vg_mask{vessel::raster::style_adapt(
        mask->impl, {params->noise_sigma, params->contrast_gamma,
                     params->background_level, params->seed})};
  });
}

vg_status_t vg_re_binarize(const vg_mask* image, double threshold, vg_mask** out) {
  if (!image || !out) return bad_argument("vg_re_binarize: null pointer");
  return guarded(
      [&] { *out = new vg_mask{vessel::raster::re_binarize(image->impl, threshold)}; });
}

vg_status_t vg_dark_channel_dehaze(const vg_mask* image, uint32_t patch_size,
                                   vg_mask** out) {
  if (!image || !out) return bad_argument("vg_dark_channel_dehaze: null pointer");
  return guarded([&] {
    *out = new vg_mask{vessel::raster::dark_channel_dehaze(image->impl, patch_size)};
  });
}

vg_status_t vg_unsharp_mask(const vg_mask* image, double sigma, double amount,
                            vg_mask** out) {
  if (!image || !out) return bad_argument("vg_unsharp_mask: null pointer");
  return guarded([&] {
    *out = new vg_mask{vessel::raster::unsharp_mask(image->impl, sigma, amount)};
  });
}

void vg_ssim_params_init(vg_ssim_params* params) {
  if (!params) return;
  const vessel::metrics::SsimParams d;
  params->window = d.window;
  params->gaussian_sigma = d.gaussian_sigma;
  params->k1 = d.k1;
  params->k2 = d.k2;
  params->dynamic_range = d.dynamic_range;
}

vg_status_t vg_metrics(const vg_mask* a, const vg_mask* b,
                       const vg_ssim_params* ssim_params, vg_metric_report* out) {
  if (!a || !b || !out) return bad_argument("vg_metrics: null pointer");
  return guarded([&] {
    vessel::metrics::SsimParams sp;
    if (ssim_params) {
      sp = {ssim_params->window, ssim_params->gaussian_sigma, ssim_params->k1,
            ssim_params->k2, ssim_params->dynamic_range};
    }
    const vessel::metrics::MetricReport report =
        vessel::metrics::evaluate(a->impl, b->impl, sp);
    out->iou = report.iou;
    out->dice = report.dice;
    out->ssim = report.ssim;
    out->mse = report.mse;
  });
}

vg_status_t vg_radius_stats_compute(const vg_graph* graph, vg_radius_stats* out) {
  if (!graph || !out) return bad_argument("vg_radius_stats_compute: null pointer");
  return guarded([&] {
    const vessel::calibration::RadiusStats stats =
        vessel::calibration::radius_stats(graph->impl.nodes());
    out->mean = stats.mean;
    out->std_dev = stats.std_dev;
    out->r_max = stats.r_max;
    out->count = stats.count;
    static_assert(vessel::calibration::kHistogramBins == 64);
    std::memcpy(out->histogram, stats.histogram.data(), sizeof(out->histogram));
  });
}

vg_status_t vg_derive_rmin(const vg_radius_stats* stats, int strategy, double* out) {
  if (!stats || !out) return bad_argument("vg_derive_rmin: null pointer");
  return guarded([&] {
    vessel::calibration::RadiusStats s;
    s.mean = stats->mean;
    s.std_dev = stats->std_dev;
    s.r_max = stats->r_max;
    s.count = stats->count;
    std::memcpy(s.histogram.data(), stats->histogram, sizeof(stats->histogram));
    switch (strategy) {
      case VG_RMIN_FIXED:
        *out = vessel::calibration::derive_rmin(
            s, vessel::calibration::RminStrategy::Fixed);
        break;
      case VG_RMIN_MEAN_OVER_MAX:
        *out = vessel::calibration::derive_rmin(
            s, vessel::calibration::RminStrategy::MeanOverMax);
        break;
      default:
        vessel::fail(vessel::ErrorCode::InvalidParams, "unknown strategy");
    }
  });
}

vg_status_t vg_derive_rmin_coverage(const vg_graph* graph, uint32_t width,
                                    uint32_t height, double target_fraction,
                                    uint32_t iterations, double* out) {
  if (!graph || !out) return bad_argument("vg_derive_rmin_coverage: null pointer");
  return guarded([&] {
    *out = vessel::calibration::derive_rmin_coverage_target(
        graph->impl, width, height, target_fraction,
        iterations == 0 ? 40 : iterations);
  });
}

vg_status_t vg_capillary_coverage(const vg_graph* graph, double ratio,
                                  uint32_t width, uint32_t height,
                                  double* capillary_fraction,
                                  double* vessel_fraction) {
  if (!graph) return bad_argument("vg_capillary_coverage: null graph");
  return guarded([&] {
    const vessel::calibration::CoverageReport report =
        vessel::calibration::capillary_coverage(graph->impl, ratio, width, height);
    if (capillary_fraction) *capillary_fraction = report.capillary_fraction;
    if (vessel_fraction) *vessel_fraction = report.vessel_fraction;
  });
}

vg_status_t vg_sensitivity_sweep_csv(const vg_graph* graph, const vg_mask* truth,
                                     const double* ratios, uint64_t ratio_count,
                                     vg_buffer* out) {
  if (!graph || !truth || !ratios || !out) {
    return bad_argument("vg_sensitivity_sweep_csv: null pointer");
  }
  return guarded([&] {
    const vessel::calibration::SensitivityCurve curve =
        vessel::calibration::sensitivity_sweep(graph->impl, truth->impl,
                                               std::span(ratios, ratio_count));
    fill_buffer(out, vessel::calibration::curve_to_csv(curve));
  });
}

vg_status_t vg_bench_dfs_csv(const uint64_t* sizes, uint64_t size_count,
                             uint32_t reps, uint64_t seed, vg_buffer* out) {
  if (!sizes || !out) return bad_argument("vg_bench_dfs_csv: null pointer");
  return guarded([&] {
    const std::vector<vessel::bench::BenchRecord> records =
        vessel::bench::run_dfs_bench(std::span(sizes, size_count), reps, seed);
    fill_buffer(out, vessel::bench::bench_to_csv(records));
  });
}

}  // extern "C"
