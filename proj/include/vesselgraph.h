#ifndef VESSELGRAPH_H
#define VESSELGRAPH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Vessel-graph segmentation core. Handles are opaque; every fallible call
 * returns a vg_status_t and reports VG_OK on success. On failure the
 * thread-local message from vg_last_error() describes what went wrong and
 * no output parameter is touched. */

typedef enum vg_status {
  VG_OK = 0,
  VG_ERROR_INVALID_ARGUMENT = 1, /* null handle or malformed call */
  VG_ERROR_EMPTY_INPUT = 2,
  VG_ERROR_INVALID_EDGE = 3,
  VG_ERROR_INVALID_RADIUS = 4,
  VG_ERROR_INVALID_RATIO = 5,
  VG_ERROR_INVALID_PARAMS = 6,
  VG_ERROR_INVALID_DOMAIN = 7,
  VG_ERROR_NOT_A_TREE = 8,
  VG_ERROR_SHAPE_MISMATCH = 9,
  VG_ERROR_OUT_OF_BOUNDS = 10,
  VG_ERROR_EMPTY_AFTER_FILTER = 11,
  VG_ERROR_ROOT_NOT_FOUND = 12,
  VG_ERROR_DEGENERATE_STATS = 13,
  VG_ERROR_INVALID_WINDOW = 14,
  VG_ERROR_IO = 15,
  VG_ERROR_PARSE = 16,
  VG_ERROR_INTERNAL = 99
} vg_status_t;

typedef struct vg_graph vg_graph;
typedef struct vg_mask vg_mask;
typedef struct vg_segmentation vg_segmentation;

/* Heap block owned by the caller after a successful call; release with
 * vg_buffer_free. data is NUL-terminated on top of size for convenience. */
typedef struct vg_buffer {
  char* data;
  size_t size;
} vg_buffer;

const char* vg_version(void);
const char* vg_last_error(void); /* never NULL; empty before any failure */
const char* vg_status_name(vg_status_t status);

void vg_buffer_free(vg_buffer* buffer);
void vg_graph_free(vg_graph* graph);
void vg_mask_free(vg_mask* mask);
void vg_segmentation_free(vg_segmentation* segmentation);

/* ---- graph construction and access ---- */

/* Explicit edges; rejects self loops and bad ids. Duplicate pairs collapse. */
vg_status_t vg_graph_build(const double* xs, const double* ys, const double* zs,
                           const double* rs, uint64_t node_count,
                           const uint32_t* edge_pairs, uint64_t edge_count,
                           vg_graph** out);

/* Connects nodes i, j whenever |pi - pj| <= ri + rj + delta. */
vg_status_t vg_graph_build_proximity(const double* xs, const double* ys,
                                     const double* zs, const double* rs,
                                     uint64_t node_count, double delta,
                                     vg_graph** out);

vg_status_t vg_graph_node_count(const vg_graph* graph, uint64_t* out);
vg_status_t vg_graph_edge_count(const vg_graph* graph, uint64_t* out);
vg_status_t vg_graph_max_radius(const vg_graph* graph, double* out);

/* Caller provides node_count-sized arrays; any may be NULL to skip. */
vg_status_t vg_graph_nodes(const vg_graph* graph, double* xs, double* ys,
                           double* zs, double* rs);
/* Caller provides a 2*edge_count array; pairs land interleaved. */
vg_status_t vg_graph_edges(const vg_graph* graph, uint32_t* edge_pairs);

/* ---- persistence ---- */

/* meta_json: optional flat JSON object of string values, or NULL. */
vg_status_t vg_graph_save_json(const vg_graph* graph, const char* meta_json,
                               vg_buffer* out);
/* meta_json_out/has_edges_out may be NULL when not wanted. */
vg_status_t vg_graph_load_json(const char* text, size_t length, vg_graph** out,
                               vg_buffer* meta_json_out, int* has_edges_out);

vg_status_t vg_mask_encode_png(const vg_mask* mask, vg_buffer* out);
vg_status_t vg_mask_decode_png(const char* bytes, size_t length, vg_mask** out);
vg_status_t vg_mask_encode_volume(const vg_mask* mask, vg_buffer* out);
vg_status_t vg_mask_decode_volume(const char* bytes, size_t length, vg_mask** out);

/* ---- synthetic tree generation ---- */

typedef struct vg_sca_params {
  double attraction_radius;
  double kill_radius;
  double step;
  uint32_t max_iterations;
  double domain_min[3];
  double domain_max[3]; /* max z == min z means a flat 2D field */
  uint32_t attractor_count;
  uint64_t seed;
} vg_sca_params;

typedef struct vg_taper_params {
  double terminal_radius;
  double murray_exponent;
} vg_taper_params;

typedef struct vg_generate_info {
  int stalled;
  uint32_t iterations;
  uint64_t attractors_remaining;
} vg_generate_info;

void vg_sca_params_init(vg_sca_params* params);     /* library defaults */
void vg_taper_params_init(vg_taper_params* params); /* library defaults */

/* Space-colonization growth plus branching-law radii. NULL params or taper
 * mean library defaults; root_xyz of NULL roots the tree at the middle of
 * the domain's low-x edge. info may be NULL. */
vg_status_t vg_generate(const vg_sca_params* params, const vg_taper_params* taper,
                        const double* root_xyz, vg_graph** out,
                        vg_generate_info* info);

/* Random-attachment tree with branching-law radii; taper NULL = defaults. */
vg_status_t vg_random_tree(uint32_t node_count, uint64_t seed,
                           const vg_taper_params* taper, vg_graph** out);

/* labels[i] = 1 where r_i >= ratio * r_max, else 0. node_count entries. */
vg_status_t vg_label_main(const vg_graph* graph, double ratio, uint8_t* labels);

/* ---- segmentation ---- */

typedef enum vg_root_kind {
  VG_ROOT_MAX_RADIUS = 0,
  VG_ROOT_COORDINATE = 1,
  VG_ROOT_NODE_ID = 2
} vg_root_kind_t;

typedef struct vg_segment_config {
  double r_min_ratio;
  int root_kind; /* vg_root_kind_t */
  double root_xyz[3];
  uint32_t root_node_id;
  double snap_distance;
  int emit_mask;
  uint32_t mask_width;
  uint32_t mask_height;
  uint32_t mask_depth; /* 1 = 2D mask */
} vg_segment_config;

void vg_segment_config_init(vg_segment_config* config);

/* Keeps nodes with r >= ratio * r_max plus edges between them. */
vg_status_t vg_filter_by_radius(const vg_graph* graph, double ratio, vg_graph** out);

/* Radius filter, largest weakly connected component, thickest-first DFS. */
vg_status_t vg_segment(const vg_graph* graph, const vg_segment_config* config,
                       vg_segmentation** out);

vg_status_t vg_segmentation_info(const vg_segmentation* segmentation,
                                 uint64_t* retained_nodes,
                                 uint32_t* pruned_components, double* r_max);
/* Fresh handle holding a copy of the extracted main graph. */
vg_status_t vg_segmentation_graph(const vg_segmentation* segmentation,
                                  vg_graph** out);
/* Caller provides a retained_nodes-sized array of result-graph ids. */
vg_status_t vg_segmentation_visited(const vg_segmentation* segmentation,
                                    uint32_t* order);
/* Fails unless the config asked for a mask. */
vg_status_t vg_segmentation_mask(const vg_segmentation* segmentation,
                                 vg_mask** out);

/* Mean absolute cell difference / 255. */
vg_status_t vg_structural_consistency(const vg_mask* a, const vg_mask* b,
                                      double* out);

/* ---- rasterization and image operators ---- */

vg_status_t vg_mask_create(uint32_t width, uint32_t height, uint32_t depth,
                           const uint8_t* cells, vg_mask** out);
vg_status_t vg_mask_dims(const vg_mask* mask, uint32_t* width, uint32_t* height,
                         uint32_t* depth);
/* Caller provides a width*height*depth array; x varies fastest. */
vg_status_t vg_mask_read(const vg_mask* mask, uint8_t* cells);

/* depth = 1 renders flat (z ignored); depth > 1 renders the volume. fit != 0
 * rescales the graph into the canvas instead of failing out-of-bounds. */
vg_status_t vg_rasterize(const vg_graph* graph, uint32_t width, uint32_t height,
                         uint32_t depth, int fit, vg_mask** out);

typedef struct vg_style_params {
  double noise_sigma;
  double contrast_gamma;
  double background_level;
  uint64_t seed;
} vg_style_params;

void vg_style_params_init(vg_style_params* params);

vg_status_t vg_style_adapt(const vg_mask* mask, const vg_style_params* params,
                           vg_mask** out);
vg_status_t vg_re_binarize(const vg_mask* image, double threshold, vg_mask** out);
vg_status_t vg_dark_channel_dehaze(const vg_mask* image, uint32_t patch_size,
                                   vg_mask** out);
vg_status_t vg_unsharp_mask(const vg_mask* image, double sigma, double amount,
                            vg_mask** out);

/* ---- metrics ---- */

typedef struct vg_ssim_params {
  uint32_t window;
  double gaussian_sigma;
  double k1;
  double k2;
  double dynamic_range;
} vg_ssim_params;

typedef struct vg_metric_report {
  double iou;
  double dice;
  double ssim;
  double mse;
} vg_metric_report;

void vg_ssim_params_init(vg_ssim_params* params);

/* ssim_params NULL = defaults (11-tap Gaussian window, sigma 1.5). */
vg_status_t vg_metrics(const vg_mask* a, const vg_mask* b,
                       const vg_ssim_params* ssim_params, vg_metric_report* out);

/* ---- calibration ---- */

typedef struct vg_radius_stats {
  double mean;
  double std_dev; /* population */
  double r_max;
  uint64_t count;
  uint64_t histogram[64]; /* uniform bins over [0, r_max] */
} vg_radius_stats;

typedef enum vg_rmin_strategy {
  VG_RMIN_FIXED = 0,        /* always 0.2 */
  VG_RMIN_MEAN_OVER_MAX = 1 /* mean / r_max, clamped to [0,1] */
} vg_rmin_strategy_t;

vg_status_t vg_radius_stats_compute(const vg_graph* graph, vg_radius_stats* out);
vg_status_t vg_derive_rmin(const vg_radius_stats* stats, int strategy, double* out);
/* Smallest ratio whose capillary coverage reaches target_fraction. */
vg_status_t vg_derive_rmin_coverage(const vg_graph* graph, uint32_t width,
                                    uint32_t height, double target_fraction,
                                    uint32_t iterations, double* out);
vg_status_t vg_capillary_coverage(const vg_graph* graph, double ratio,
                                  uint32_t width, uint32_t height,
                                  double* capillary_fraction,
                                  double* vessel_fraction);
/* CSV "ratio,iou,dice,retained_nodes"; ratios strictly increasing in [0,1]. */
vg_status_t vg_sensitivity_sweep_csv(const vg_graph* graph, const vg_mask* truth,
                                     const double* ratios, uint64_t ratio_count,
                                     vg_buffer* out);

/* ---- benchmark ---- */

/* CSV "graph_size,median_ns,p95_ns,repetitions"; reps >= 30. */
vg_status_t vg_bench_dfs_csv(const uint64_t* sizes, uint64_t size_count,
                             uint32_t reps, uint64_t seed, vg_buffer* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* VESSELGRAPH_H */
