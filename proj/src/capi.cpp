#include "glseg.h"

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "common.hpp"
#include "datasets.hpp"
#include "eval.hpp"
#include "features.hpp"
#include "graph.hpp"
#include "idx.hpp"
#include "io.hpp"
#include "pca.hpp"
#include "segmenter.hpp"

// Opaque handle types wrap the core value types one-to-one.
struct glseg_features {
  glseg::FeatureMatrix m;
};
struct glseg_labels {
  std::vector<int> v;
  std::vector<int32_t> v32;  // stable buffer handed to callers
  void sync() { v32.assign(v.begin(), v.end()); }
};
struct glseg_graph {
  glseg::NeighborGraph g;
};
struct glseg_fidelity {
  glseg::FidelityData f;
};
struct glseg_pca {
  glseg::PcaModel m;
};
struct glseg_result {
  glseg::SegmentationResult r;
  std::vector<int32_t> labels32;
  void sync() { labels32.assign(r.labels.begin(), r.labels.end()); }
};

namespace {

thread_local std::string t_last_error;

glseg_status to_status(glseg::ErrorCode code) {
  using EC = glseg::ErrorCode;
  switch (code) {
    case EC::invalid_argument: return GLSEG_ERR_INVALID_ARGUMENT;
    case EC::invalid_config: return GLSEG_ERR_INVALID_CONFIG;
    case EC::degenerate_scale: return GLSEG_ERR_DEGENERATE_SCALE;
    case EC::size_mismatch: return GLSEG_ERR_SIZE_MISMATCH;
    case EC::invalid_label: return GLSEG_ERR_INVALID_LABEL;
    case EC::format: return GLSEG_ERR_FORMAT;
    case EC::io: return GLSEG_ERR_IO;
    case EC::diverged: return GLSEG_ERR_DIVERGED;
  }
  return GLSEG_ERR_UNKNOWN;
}

glseg_status set_error(glseg_status status, const char* msg) {
  t_last_error = msg;
  return status;
}

/// Runs fn, translating exceptions into statuses + thread-local message.
template <class Fn>
glseg_status guarded(Fn&& fn) {
  try {
    fn();
    return GLSEG_OK;
  } catch (const glseg::Error& e) {
    t_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return GLSEG_ERR_UNKNOWN;
  } catch (...) {
    t_last_error = "unknown error";
    return GLSEG_ERR_UNKNOWN;
  }
}

bool null_arg(const void* p) { return p == nullptr; }

constexpr const char* kNullMsg = "null argument";

void labeled_out(glseg::LabeledFeatures&& data, glseg_features** out_features,
                 glseg_labels** out_truth) {
  auto f = std::make_unique<glseg_features>();
  f->m = std::move(data.features);
  if (out_truth) {
    auto l = std::make_unique<glseg_labels>();
    l->v = std::move(data.labels);
    l->sync();
    *out_truth = l.release();
  }
  *out_features = f.release();
}

}  // namespace

extern "C" {

const char* glseg_version(void) { return "0.1.0"; }

const char* glseg_status_name(glseg_status status) {
  switch (status) {
    case GLSEG_OK: return "ok";
    case GLSEG_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case GLSEG_ERR_INVALID_CONFIG: return "invalid-configuration";
    case GLSEG_ERR_DEGENERATE_SCALE: return "degenerate-scale";
    case GLSEG_ERR_SIZE_MISMATCH: return "size-mismatch";
    case GLSEG_ERR_INVALID_LABEL: return "invalid-label";
    case GLSEG_ERR_FORMAT: return "format";
    case GLSEG_ERR_IO: return "io";
    case GLSEG_ERR_DIVERGED: return "diverged";
    default: return "unknown";
  }
}

const char* glseg_last_error(void) { return t_last_error.c_str(); }

/* ---------- features ---------- */

glseg_status glseg_features_create(const double* data, uint64_t n, uint64_t d,
                                   glseg_features** out) {
  if (null_arg(data) || null_arg(out))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    auto f = std::make_unique<glseg_features>();
    f->m = glseg::FeatureMatrix(n, d);
    std::memcpy(f->m.values.data(), data, sizeof(double) * n * d);
    f->m.validate();
    *out = f.release();
  });
}

void glseg_features_free(glseg_features* f) { delete f; }

uint64_t glseg_features_rows(const glseg_features* f) {
  return f ? f->m.rows : 0;
}
uint64_t glseg_features_cols(const glseg_features* f) {
  return f ? f->m.cols : 0;
}
const double* glseg_features_data(const glseg_features* f) {
  return f ? f->m.values.data() : nullptr;
}

glseg_status glseg_features_read_csv(const char* path, glseg_features** out) {
  if (null_arg(path) || null_arg(out))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    auto f = std::make_unique<glseg_features>();
    f->m = glseg::read_features_csv(path);
    *out = f.release();
  });
}

glseg_status glseg_features_write_csv(const glseg_features* f,
                                      const char* path) {
  if (null_arg(f) || null_arg(path))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] { glseg::write_features_csv(f->m, path); });
}

glseg_status glseg_features_read_binary(const char* path,
                                        glseg_features** out) {
  if (null_arg(path) || null_arg(out))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    auto f = std::make_unique<glseg_features>();
    f->m = glseg::read_features_binary(path);
    *out = f.release();
  });
}

glseg_status glseg_features_write_binary(const glseg_features* f,
                                         const char* path) {
  if (null_arg(f) || null_arg(path))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] { glseg::write_features_binary(f->m, path); });
}

/* ---------- labels ---------- */

glseg_status glseg_labels_create(const int32_t* data, uint64_t n,
                                 glseg_labels** out) {
  if (null_arg(data) || null_arg(out))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    auto l = std::make_unique<glseg_labels>();
    l->v.assign(data, data + n);
    l->sync();
    *out = l.release();
  });
}

void glseg_labels_free(glseg_labels* l) { delete l; }

uint64_t glseg_labels_size(const glseg_labels* l) { return l ? l->v.size() : 0; }

const int32_t* glseg_labels_data(const glseg_labels* l) {
  return l ? l->v32.data() : nullptr;
}

glseg_status glseg_labels_read_csv(const char* path, glseg_labels** out) {
  if (null_arg(path) || null_arg(out))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    auto l = std::make_unique<glseg_labels>();
    l->v = glseg::read_labels_csv(path);
    l->sync();
    *out = l.release();
  });
}

glseg_status glseg_labels_write_csv(const glseg_labels* l, const char* path) {
  if (null_arg(l) || null_arg(path))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] { glseg::write_labels_csv(l->v, path); });
}

/* ---------- datasets ---------- */

void glseg_moons_params_init(glseg_moons_params* params) {
  if (!params) return;
  params->points_per_moon = 500;
  params->ambient_dim = 100;
  params->noise_variance = 0.02;
  params->seed = 0;
}

glseg_status glseg_three_moons(const glseg_moons_params* params,
                               glseg_features** out_features,
                               glseg_labels** out_truth) {
  if (null_arg(params) || null_arg(out_features))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    glseg::ThreeMoonsParams p;
    p.points_per_moon = params->points_per_moon;
    p.ambient_dim = params->ambient_dim;
    p.noise_variance = params->noise_variance;
    p.seed = params->seed;
    labeled_out(glseg::three_moons(p), out_features, out_truth);
  });
}

glseg_status glseg_synthetic_image(uint64_t width, uint64_t height,
                                   glseg_features** out_features,
                                   glseg_labels** out_truth) {
  if (null_arg(out_features))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    glseg::ImageFeatures img = glseg::synthetic_five_class_image(width, height);
    glseg::LabeledFeatures data{std::move(img.features),
                                std::move(img.ground_truth)};
    labeled_out(std::move(data), out_features, out_truth);
  });
}

glseg_status glseg_synthetic_image_write_pgm(uint64_t width, uint64_t height,
                                             const char* path) {
  if (null_arg(path)) return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    glseg::ImageFeatures img = glseg::synthetic_five_class_image(width, height);
    glseg::write_pgm(glseg::render_labels(img.ground_truth, width, height, 5),
                     path);
  });
}

glseg_status glseg_image_read_pgm(const char* path,
                                  glseg_features** out_features,
                                  uint64_t* out_width, uint64_t* out_height) {
  if (null_arg(path) || null_arg(out_features))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    glseg::Image8 img = glseg::read_pgm(path);
    glseg::ImageFeatures feat = glseg::featurize_image(img);
    if (out_width) *out_width = feat.width;
    if (out_height) *out_height = feat.height;
    auto f = std::make_unique<glseg_features>();
    f->m = std::move(feat.features);
    *out_features = f.release();
  });
}

glseg_status glseg_class_mask_write_pgm(const glseg_labels* labels,
                                        uint64_t width, uint64_t height,
                                        int32_t cls, const char* path) {
  if (null_arg(labels) || null_arg(path))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    glseg::write_pgm(glseg::render_class_mask(labels->v, width, height, cls),
                     path);
  });
}

glseg_status glseg_idx_read(const char* images_path, const char* labels_path,
                            glseg_features** out_features,
                            glseg_labels** out_labels) {
  if (null_arg(images_path) || null_arg(labels_path) ||
      null_arg(out_features) || null_arg(out_labels))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    labeled_out(glseg::load_idx_dataset(images_path, labels_path),
                out_features, out_labels);
  });
}

glseg_status glseg_subsample_per_class(const glseg_features* f,
                                       const glseg_labels* labels,
                                       uint64_t per_class, uint64_t seed,
                                       glseg_features** out_features,
                                       glseg_labels** out_labels) {
  if (null_arg(f) || null_arg(labels) || null_arg(out_features) ||
      null_arg(out_labels))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    labeled_out(glseg::subsample_per_class(f->m, labels->v, per_class, seed),
                out_features, out_labels);
  });
}

/* ---------- PCA ---------- */

glseg_status glseg_pca_fit(const glseg_features* f, uint64_t k,
                           glseg_pca** out) {
  if (null_arg(f) || null_arg(out))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    auto p = std::make_unique<glseg_pca>();
    p->m = glseg::pca_fit(f->m, k);
    *out = p.release();
  });
}

void glseg_pca_free(glseg_pca* p) { delete p; }

uint64_t glseg_pca_components(const glseg_pca* p) {
  return p ? p->m.num_components : 0;
}

const double* glseg_pca_explained_variance(const glseg_pca* p) {
  return p ? p->m.explained_variance.data() : nullptr;
}

glseg_status glseg_pca_project(const glseg_pca* p, const glseg_features* f,
                               glseg_features** out) {
  if (null_arg(p) || null_arg(f) || null_arg(out))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    auto r = std::make_unique<glseg_features>();
    r->m = glseg::pca_project(p->m, f->m);
    *out = r.release();
  });
}

/* ---------- graph ---------- */

glseg_status glseg_graph_build(const glseg_features* f, uint64_t neighbors,
                               uint64_t scale_rank, glseg_graph** out) {
  if (null_arg(f) || null_arg(out))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    auto g = std::make_unique<glseg_graph>();
    glseg::GraphConfig cfg;
    cfg.neighbors = neighbors;
    cfg.scale_rank = scale_rank;
    g->g = glseg::NeighborGraph::build(f->m, cfg);
    *out = g.release();
  });
}

void glseg_graph_free(glseg_graph* g) { delete g; }

uint64_t glseg_graph_order(const glseg_graph* g) {
  return g ? g->g.order() : 0;
}

uint64_t glseg_graph_edge_count(const glseg_graph* g) {
  return g ? g->g.edge_count() : 0;
}

glseg_status glseg_graph_write_edges_csv(const glseg_graph* g,
                                         const char* path) {
  if (null_arg(g) || null_arg(path))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] { glseg::write_edges_csv(g->g, path); });
}

/* ---------- fidelity ---------- */

glseg_status glseg_fidelity_create(const uint64_t* indices,
                                   const int32_t* labels, uint64_t count,
                                   double lambda, glseg_fidelity** out) {
  if ((count > 0 && (null_arg(indices) || null_arg(labels))) || null_arg(out))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    auto f = std::make_unique<glseg_fidelity>();
    f->f.lambda = lambda;
    for (uint64_t i = 0; i < count; ++i)
      f->f.entries.emplace_back(static_cast<std::uint32_t>(indices[i]),
                                static_cast<int>(labels[i]));
    *out = f.release();
  });
}

glseg_status glseg_fidelity_sample(const glseg_labels* truth,
                                   int32_t num_classes, uint64_t per_class,
                                   double fraction, double lambda,
                                   uint64_t seed, glseg_fidelity** out) {
  if (null_arg(truth) || null_arg(out))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    auto f = std::make_unique<glseg_fidelity>();
    f->f = glseg::sample_fidelity(truth->v, num_classes, per_class, fraction,
                                  lambda, seed);
    *out = f.release();
  });
}

glseg_status glseg_fidelity_read_csv(const char* path, double lambda,
                                     glseg_fidelity** out) {
  if (null_arg(path) || null_arg(out))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    auto f = std::make_unique<glseg_fidelity>();
    f->f.entries = glseg::read_fidelity_csv(path);
    f->f.lambda = lambda;
    *out = f.release();
  });
}

void glseg_fidelity_free(glseg_fidelity* f) { delete f; }

uint64_t glseg_fidelity_count(const glseg_fidelity* f) {
  return f ? f->f.entries.size() : 0;
}

glseg_status glseg_fidelity_entry(const glseg_fidelity* f, uint64_t i,
                                  uint64_t* out_index, int32_t* out_label) {
  if (null_arg(f) || null_arg(out_index) || null_arg(out_label))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  if (i >= f->f.entries.size())
    return set_error(GLSEG_ERR_INVALID_ARGUMENT,
                     "fidelity entry index out of range");
  *out_index = f->f.entries[i].first;
  *out_label = f->f.entries[i].second;
  return GLSEG_OK;
}

glseg_status glseg_fidelity_write_csv(const glseg_fidelity* f,
                                      const char* path) {
  if (null_arg(f) || null_arg(path))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] { glseg::write_fidelity_csv(f->f.entries, path); });
}

/* ---------- solver ---------- */

void glseg_solver_config_init(glseg_solver_config* cfg) {
  if (!cfg) return;
  cfg->num_classes = 2;
  cfg->dt = 0.01;
  cfg->max_sweeps = 800;
  cfg->schedule = GLSEG_SCHEDULE_FIXED;
  cfg->eps = 1.0;
  cfg->eps0 = 2.0;
  cfg->eps_final = 0.1;
  cfg->decrement = 0.1;
  cfg->sweeps_per_stage = 40;
  cfg->seed = 0;
  cfg->threads = 1;
}

glseg_status glseg_segment(const glseg_graph* graph,
                           const glseg_fidelity* fidelity,
                           const glseg_solver_config* cfg, glseg_result** out) {
  if (null_arg(graph) || null_arg(fidelity) || null_arg(cfg) || null_arg(out))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    glseg::SolverConfig c;
    c.num_classes = cfg->num_classes;
    c.dt = cfg->dt;
    c.max_sweeps = cfg->max_sweeps;
    c.seed = cfg->seed;
    c.threads = cfg->threads;
    if (cfg->schedule == GLSEG_SCHEDULE_FIXED) {
      c.schedule = glseg::EpsSchedule::fixed(cfg->eps);
    } else if (cfg->schedule == GLSEG_SCHEDULE_ANNEALED) {
      c.schedule = glseg::EpsSchedule::annealed(
          cfg->eps0, cfg->eps_final, cfg->decrement, cfg->sweeps_per_stage);
    } else {
      glseg::fail(glseg::ErrorCode::invalid_config, "unknown schedule kind");
    }
    auto r = std::make_unique<glseg_result>();
    r->r = glseg::run(graph->g, fidelity->f, c);
    r->sync();
    *out = r.release();
  });
}

void glseg_result_free(glseg_result* r) { delete r; }

uint64_t glseg_result_size(const glseg_result* r) {
  return r ? r->r.state.size() : 0;
}

const double* glseg_result_state(const glseg_result* r) {
  return r ? r->r.state.data() : nullptr;
}

const int32_t* glseg_result_labels(const glseg_result* r) {
  return r ? r->labels32.data() : nullptr;
}

uint64_t glseg_result_iterations(const glseg_result* r) {
  return r ? r->r.iterations : 0;
}

double glseg_result_wall_seconds(const glseg_result* r) {
  return r ? r->r.wall_seconds : 0.0;
}

uint64_t glseg_result_trace_length(const glseg_result* r) {
  return r ? r->r.energy_trace.size() : 0;
}

glseg_status glseg_result_trace_row(const glseg_result* r, uint64_t i,
                                    double out_row[6]) {
  if (null_arg(r) || null_arg(out_row))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  if (i >= r->r.energy_trace.size())
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, "trace row out of range");
  const glseg::TraceEntry& t = r->r.energy_trace[i];
  out_row[0] = static_cast<double>(t.iteration);
  out_row[1] = t.eps;
  out_row[2] = t.energy.smoothing;
  out_row[3] = t.energy.potential;
  out_row[4] = t.energy.fidelity;
  out_row[5] = t.energy.total;
  return GLSEG_OK;
}

uint64_t glseg_result_warning_count(const glseg_result* r) {
  return r ? r->r.warnings.size() : 0;
}

const char* glseg_result_warning(const glseg_result* r, uint64_t i) {
  if (!r || i >= r->r.warnings.size()) return nullptr;
  return r->r.warnings[i].c_str();
}

glseg_status glseg_result_write_csv(const glseg_result* r, const char* path) {
  if (null_arg(r) || null_arg(path))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] { glseg::write_result_csv(r->r.labels, r->r.state, path); });
}

glseg_status glseg_result_write_trace_csv(const glseg_result* r,
                                          const char* path) {
  if (null_arg(r) || null_arg(path))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] { glseg::write_trace_csv(r->r.energy_trace, path); });
}

/* ---------- evaluation ---------- */

glseg_status glseg_error_rate(const glseg_labels* predicted,
                              const glseg_labels* truth,
                              const uint64_t* exclude, uint64_t exclude_count,
                              double* out) {
  if (null_arg(predicted) || null_arg(truth) || null_arg(out) ||
      (exclude_count > 0 && null_arg(exclude)))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    std::vector<std::size_t> ex(exclude, exclude + exclude_count);
    *out = glseg::error_rate(predicted->v, truth->v, ex);
  });
}

glseg_status glseg_confusion(const glseg_labels* predicted,
                             const glseg_labels* truth, int32_t num_classes,
                             uint64_t* out_counts) {
  if (null_arg(predicted) || null_arg(truth) || null_arg(out_counts))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    const glseg::ConfusionMatrix m =
        glseg::confusion(predicted->v, truth->v, num_classes);
    for (std::size_t i = 0; i < m.counts.size(); ++i) out_counts[i] = m.counts[i];
  });
}

glseg_status glseg_confusion_write_csv(const glseg_labels* predicted,
                                       const glseg_labels* truth,
                                       int32_t num_classes, const char* path) {
  if (null_arg(predicted) || null_arg(truth) || null_arg(path))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    glseg::write_confusion_csv(
        glseg::confusion(predicted->v, truth->v, num_classes), path);
  });
}

glseg_status glseg_aggregate(const double* errors, uint64_t count,
                             glseg_run_stats* out) {
  if (null_arg(errors) || null_arg(out))
    return set_error(GLSEG_ERR_INVALID_ARGUMENT, kNullMsg);
  return guarded([&] {
    const glseg::RunStatistics s =
        glseg::aggregate({errors, static_cast<std::size_t>(count)});
    out->mean = s.mean;
    out->stddev = s.stddev;
    out->best = s.best;
    out->count = s.count;
    out->stddev_defined = s.stddev_defined ? 1 : 0;
  });
}

} /* extern "C" */
