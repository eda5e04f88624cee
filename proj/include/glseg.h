/* glseg — multiclass graph segmentation by Ginzburg-Landau energy
 * minimization with a periodic-well potential.
 *
 * C API of the shared library. All functions returning glseg_status set a
 * thread-local error message retrievable with glseg_last_error() on
 * failure. Objects are opaque handles owned by the caller and released
 * with the matching _free function. Handles are immutable after creation
 * and safe to share across threads.
 */
#ifndef GLSEG_H
#define GLSEG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GLSEG_API __declspec(dllexport)
#else
#define GLSEG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum glseg_status {
  GLSEG_OK = 0,
  GLSEG_ERR_INVALID_ARGUMENT = 1,
  GLSEG_ERR_INVALID_CONFIG = 2,
  GLSEG_ERR_DEGENERATE_SCALE = 3,
  GLSEG_ERR_SIZE_MISMATCH = 4,
  GLSEG_ERR_INVALID_LABEL = 5,
  GLSEG_ERR_FORMAT = 6,
  GLSEG_ERR_IO = 7,
  GLSEG_ERR_DIVERGED = 8,
  GLSEG_ERR_UNKNOWN = 9
} glseg_status;

GLSEG_API const char* glseg_version(void);
GLSEG_API const char* glseg_status_name(glseg_status status);

/* Message for the most recent failure on the calling thread. Valid until
 * the next failing call on the same thread. */
GLSEG_API const char* glseg_last_error(void);

/* ---------- feature matrices ---------- */

typedef struct glseg_features glseg_features;

GLSEG_API glseg_status glseg_features_create(const double* data, uint64_t n,
                                             uint64_t d, glseg_features** out);
GLSEG_API void glseg_features_free(glseg_features* f);
GLSEG_API uint64_t glseg_features_rows(const glseg_features* f);
GLSEG_API uint64_t glseg_features_cols(const glseg_features* f);
/* Row-major n*d array, owned by the handle. */
GLSEG_API const double* glseg_features_data(const glseg_features* f);

/* CSV: one row per point, d numeric columns, optional header. */
GLSEG_API glseg_status glseg_features_read_csv(const char* path,
                                               glseg_features** out);
GLSEG_API glseg_status glseg_features_write_csv(const glseg_features* f,
                                                const char* path);
/* Binary: magic "GLSEGF01", u64-LE n and d, n*d f64-LE row-major. */
GLSEG_API glseg_status glseg_features_read_binary(const char* path,
                                                  glseg_features** out);
GLSEG_API glseg_status glseg_features_write_binary(const glseg_features* f,
                                                   const char* path);

/* ---------- label vectors ---------- */

typedef struct glseg_labels glseg_labels;

GLSEG_API glseg_status glseg_labels_create(const int32_t* data, uint64_t n,
                                           glseg_labels** out);
GLSEG_API void glseg_labels_free(glseg_labels* l);
GLSEG_API uint64_t glseg_labels_size(const glseg_labels* l);
GLSEG_API const int32_t* glseg_labels_data(const glseg_labels* l);

/* CSV `index,label`; indices must cover 0..n-1. Extra columns (e.g. the
 * `u` column of result files) are ignored on read. */
GLSEG_API glseg_status glseg_labels_read_csv(const char* path,
                                             glseg_labels** out);
GLSEG_API glseg_status glseg_labels_write_csv(const glseg_labels* l,
                                              const char* path);

/* ---------- datasets ---------- */

typedef struct glseg_moons_params {
  uint64_t points_per_moon; /* default 500 */
  uint64_t ambient_dim;     /* default 100 */
  double noise_variance;    /* default 0.02, per coordinate */
  uint64_t seed;
} glseg_moons_params;

GLSEG_API void glseg_moons_params_init(glseg_moons_params* params);
GLSEG_API glseg_status glseg_three_moons(const glseg_moons_params* params,
                                         glseg_features** out_features,
                                         glseg_labels** out_truth);

/* Deterministic five-class test image; labels 0..4 <-> pix {0,.25,.5,.75,1}. */
GLSEG_API glseg_status glseg_synthetic_image(uint64_t width, uint64_t height,
                                             glseg_features** out_features,
                                             glseg_labels** out_truth);
GLSEG_API glseg_status glseg_synthetic_image_write_pgm(uint64_t width,
                                                       uint64_t height,
                                                       const char* path);

/* Featurize a binary PGM (P5, maxval 255) into per-pixel rows (x, y, pix),
 * each normalized to [0, 1]; vertex index = row * width + col. */
GLSEG_API glseg_status glseg_image_read_pgm(const char* path,
                                            glseg_features** out_features,
                                            uint64_t* out_width,
                                            uint64_t* out_height);
/* White-on-black membership mask for one class, written as PGM. */
GLSEG_API glseg_status glseg_class_mask_write_pgm(const glseg_labels* labels,
                                                  uint64_t width,
                                                  uint64_t height, int32_t cls,
                                                  const char* path);

/* MNIST-style IDX pair (magic 2051/2049); intensities scaled to [0, 1]. */
GLSEG_API glseg_status glseg_idx_read(const char* images_path,
                                      const char* labels_path,
                                      glseg_features** out_features,
                                      glseg_labels** out_labels);

/* Stratified subsample of per_class rows per class, seeded. */
GLSEG_API glseg_status glseg_subsample_per_class(const glseg_features* f,
                                                 const glseg_labels* labels,
                                                 uint64_t per_class,
                                                 uint64_t seed,
                                                 glseg_features** out_features,
                                                 glseg_labels** out_labels);

/* ---------- PCA ---------- */

typedef struct glseg_pca glseg_pca;

GLSEG_API glseg_status glseg_pca_fit(const glseg_features* f, uint64_t k,
                                     glseg_pca** out);
GLSEG_API void glseg_pca_free(glseg_pca* p);
GLSEG_API uint64_t glseg_pca_components(const glseg_pca* p);
GLSEG_API const double* glseg_pca_explained_variance(const glseg_pca* p);
GLSEG_API glseg_status glseg_pca_project(const glseg_pca* p,
                                         const glseg_features* f,
                                         glseg_features** out);

/* ---------- neighbor graph ---------- */

typedef struct glseg_graph glseg_graph;

/* Locally scaled kNN graph: edges from the union of N-nearest
 * neighborhoods, weights exp(-||xi-xj||^2 / (tau_i tau_j)) with tau the
 * distance to the scale_rank-th neighbor. Requires 1 <= scale_rank <=
 * neighbors < n. */
GLSEG_API glseg_status glseg_graph_build(const glseg_features* f,
                                         uint64_t neighbors,
                                         uint64_t scale_rank,
                                         glseg_graph** out);
GLSEG_API void glseg_graph_free(glseg_graph* g);
GLSEG_API uint64_t glseg_graph_order(const glseg_graph* g);
GLSEG_API uint64_t glseg_graph_edge_count(const glseg_graph* g);
/* Diagnostic edge list: CSV `i,j,w` with i < j. */
GLSEG_API glseg_status glseg_graph_write_edges_csv(const glseg_graph* g,
                                                   const char* path);

/* ---------- fidelity ---------- */

typedef struct glseg_fidelity glseg_fidelity;

GLSEG_API glseg_status glseg_fidelity_create(const uint64_t* indices,
                                             const int32_t* labels,
                                             uint64_t count, double lambda,
                                             glseg_fidelity** out);
/* per_class > 0: stratified sample of that many vertices per class;
 * otherwise a uniform sample of round(fraction * n) vertices. */
GLSEG_API glseg_status glseg_fidelity_sample(const glseg_labels* truth,
                                             int32_t num_classes,
                                             uint64_t per_class,
                                             double fraction, double lambda,
                                             uint64_t seed,
                                             glseg_fidelity** out);
/* Fidelity CSV `index,label`; lambda is supplied by the caller. */
GLSEG_API glseg_status glseg_fidelity_read_csv(const char* path, double lambda,
                                               glseg_fidelity** out);
GLSEG_API void glseg_fidelity_free(glseg_fidelity* f);
GLSEG_API uint64_t glseg_fidelity_count(const glseg_fidelity* f);
GLSEG_API glseg_status glseg_fidelity_entry(const glseg_fidelity* f,
                                            uint64_t i, uint64_t* out_index,
                                            int32_t* out_label);
GLSEG_API glseg_status glseg_fidelity_write_csv(const glseg_fidelity* f,
                                                const char* path);

/* ---------- solver ---------- */

typedef enum glseg_schedule {
  GLSEG_SCHEDULE_FIXED = 0,
  GLSEG_SCHEDULE_ANNEALED = 1
} glseg_schedule;

typedef struct glseg_solver_config {
  int32_t num_classes; /* K >= 2 */
  double dt;           /* time step, > 0 */
  uint64_t max_sweeps; /* fixed schedule: sweep count */
  int32_t schedule;    /* glseg_schedule */
  double eps;          /* fixed schedule */
  double eps0;         /* annealed: start */
  double eps_final;    /* annealed: floor */
  double decrement;    /* annealed: fractional decrease per stage, (0,1) */
  uint64_t sweeps_per_stage; /* annealed */
  uint64_t seed;             /* initialization */
  int32_t threads;           /* sweep parallelism; results do not depend on it */
} glseg_solver_config;

GLSEG_API void glseg_solver_config_init(glseg_solver_config* cfg);

typedef struct glseg_result glseg_result;

GLSEG_API glseg_status glseg_segment(const glseg_graph* graph,
                                     const glseg_fidelity* fidelity,
                                     const glseg_solver_config* cfg,
                                     glseg_result** out);
GLSEG_API void glseg_result_free(glseg_result* r);
GLSEG_API uint64_t glseg_result_size(const glseg_result* r);
GLSEG_API const double* glseg_result_state(const glseg_result* r);
/* Thresholded labels, clamped into [0, K-1]. */
GLSEG_API const int32_t* glseg_result_labels(const glseg_result* r);
GLSEG_API uint64_t glseg_result_iterations(const glseg_result* r);
GLSEG_API double glseg_result_wall_seconds(const glseg_result* r);

/* Energy trace: one row per recorded iteration (row 0 = initial state).
 * Columns: iter, eps, smoothing, potential, fidelity, total. */
GLSEG_API uint64_t glseg_result_trace_length(const glseg_result* r);
GLSEG_API glseg_status glseg_result_trace_row(const glseg_result* r,
                                              uint64_t i, double out_row[6]);

GLSEG_API uint64_t glseg_result_warning_count(const glseg_result* r);
GLSEG_API const char* glseg_result_warning(const glseg_result* r, uint64_t i);

/* Result CSV `index,label,u` and trace CSV
 * `iter,eps,smoothing,potential,fidelity,total`. */
GLSEG_API glseg_status glseg_result_write_csv(const glseg_result* r,
                                              const char* path);
GLSEG_API glseg_status glseg_result_write_trace_csv(const glseg_result* r,
                                                    const char* path);

/* ---------- evaluation ---------- */

/* Fraction of disagreeing indices, ignoring `exclude` (may be NULL). */
GLSEG_API glseg_status glseg_error_rate(const glseg_labels* predicted,
                                        const glseg_labels* truth,
                                        const uint64_t* exclude,
                                        uint64_t exclude_count, double* out);
/* K*K row-major counts; rows = obtained label, columns = true label. */
GLSEG_API glseg_status glseg_confusion(const glseg_labels* predicted,
                                       const glseg_labels* truth,
                                       int32_t num_classes,
                                       uint64_t* out_counts);
GLSEG_API glseg_status glseg_confusion_write_csv(const glseg_labels* predicted,
                                                 const glseg_labels* truth,
                                                 int32_t num_classes,
                                                 const char* path);

typedef struct glseg_run_stats {
  double mean;
  double stddev; /* sample stddev, n-1 denominator; 0 if undefined */
  double best;   /* minimum */
  uint64_t count;
  int32_t stddev_defined;
} glseg_run_stats;

GLSEG_API glseg_status glseg_aggregate(const double* errors, uint64_t count,
                                       glseg_run_stats* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GLSEG_H */
