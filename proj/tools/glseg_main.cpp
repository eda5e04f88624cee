// glseg command-line front end: dataset generation, segmentation runs
// driven by a JSON config, and evaluation against ground truth. Talks to
// the library exclusively through the C API in glseg.h.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glseg.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// exit codes: 0 success, 1 validation error, 2 runtime/numeric error
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void die(int code, const std::string& msg) {
  throw CliError{code, msg};
}

void check(glseg_status status, int exit_code) {
  if (status != GLSEG_OK)
    die(exit_code, std::string(glseg_status_name(status)) + ": " +
                       glseg_last_error());
}

template <class T, void (*Free)(T*)>
using handle = std::unique_ptr<T, decltype([](T* p) { Free(p); })>;

using features_ptr = handle<glseg_features, glseg_features_free>;
using labels_ptr = handle<glseg_labels, glseg_labels_free>;
using graph_ptr = handle<glseg_graph, glseg_graph_free>;
using fidelity_ptr = handle<glseg_fidelity, glseg_fidelity_free>;
using pca_ptr = handle<glseg_pca, glseg_pca_free>;
using result_ptr = handle<glseg_result, glseg_result_free>;

// ---------------------------------------------------------------- config

struct DatasetSpec {
  std::string type;  // three-moons | synthetic-image | image | features | mnist
  // three-moons
  std::uint64_t points_per_moon = 500;
  std::uint64_t ambient_dim = 100;
  double noise_variance = 0.02;
  std::uint64_t seed = 0;
  // synthetic-image / image
  std::uint64_t width = 100, height = 100;
  std::string path;   // image or feature file
  std::string truth;  // optional labels CSV
  // mnist
  std::string images, labels;
  std::uint64_t per_class = 0;  // 0 = keep all
  std::uint64_t sample_seed = 0;
  // any
  std::uint64_t pca = 0;  // 0 = no projection
};

struct FidelitySpec {
  std::uint64_t per_class = 0;
  double fraction = 0.0;
  double lambda = 30.0;
  std::uint64_t seed = 0;
  std::uint64_t sets = 1;
  std::string file;  // explicit fidelity CSV overrides sampling
};

struct RunConfig {
  DatasetSpec dataset;
  std::uint64_t neighbors = 10;
  std::uint64_t scale_rank = 10;
  glseg_solver_config solver{};
  FidelitySpec fidelity;
  std::uint64_t repeat = 1;
  std::uint64_t seed = 0;  // base initialization seed; run r uses seed + r
  std::int32_t threads = 1;
  std::string output = "out";
};

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key))
    die(kExitValidation, "config: missing field " + where + "." + key);
  return j.at(key);
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    die(kExitValidation, "config: bad value for " + where + "." + key);
  }
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) die(kExitValidation, "cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    die(kExitValidation, "config: " + path + " is not valid JSON: " + e.what());
  }

  RunConfig cfg;
  const json& ds = need(j, "dataset", "");
  cfg.dataset.type = need(ds, "type", "dataset").get<std::string>();
  if (cfg.dataset.type == "three-moons") {
    cfg.dataset.points_per_moon =
        get_or<std::uint64_t>(ds, "points_per_moon", 500, "dataset");
    cfg.dataset.ambient_dim =
        get_or<std::uint64_t>(ds, "ambient_dim", 100, "dataset");
    cfg.dataset.noise_variance =
        get_or<double>(ds, "noise_variance", 0.02, "dataset");
    cfg.dataset.seed = get_or<std::uint64_t>(ds, "seed", 0, "dataset");
  } else if (cfg.dataset.type == "synthetic-image") {
    cfg.dataset.width = get_or<std::uint64_t>(ds, "width", 100, "dataset");
    cfg.dataset.height = get_or<std::uint64_t>(ds, "height", 100, "dataset");
  } else if (cfg.dataset.type == "image") {
    cfg.dataset.path = need(ds, "path", "dataset").get<std::string>();
    cfg.dataset.truth = get_or<std::string>(ds, "truth", "", "dataset");
  } else if (cfg.dataset.type == "features") {
    cfg.dataset.path = need(ds, "path", "dataset").get<std::string>();
    cfg.dataset.truth = get_or<std::string>(ds, "truth", "", "dataset");
  } else if (cfg.dataset.type == "mnist") {
    cfg.dataset.images = need(ds, "images", "dataset").get<std::string>();
    cfg.dataset.labels = need(ds, "labels", "dataset").get<std::string>();
    cfg.dataset.per_class =
        get_or<std::uint64_t>(ds, "per_class", 0, "dataset");
    cfg.dataset.sample_seed =
        get_or<std::uint64_t>(ds, "sample_seed", 0, "dataset");
  } else {
    die(kExitValidation,
        "config: dataset.type must be one of three-moons, synthetic-image, "
        "image, features, mnist (got '" +
            cfg.dataset.type + "')");
  }
  cfg.dataset.pca = get_or<std::uint64_t>(ds, "pca", 0, "dataset");

  const json& gr = need(j, "graph", "");
  cfg.neighbors = need(gr, "neighbors", "graph").get<std::uint64_t>();
  cfg.scale_rank = need(gr, "scale_rank", "graph").get<std::uint64_t>();

  glseg_solver_config_init(&cfg.solver);
  const json& so = need(j, "solver", "");
  cfg.solver.num_classes = need(so, "classes", "solver").get<std::int32_t>();
  cfg.solver.dt = get_or<double>(so, "dt", 0.01, "solver");
  const json& sch = need(so, "schedule", "solver");
  const std::string kind = need(sch, "type", "solver.schedule").get<std::string>();
  if (kind == "fixed") {
    cfg.solver.schedule = GLSEG_SCHEDULE_FIXED;
    cfg.solver.eps = need(sch, "eps", "solver.schedule").get<double>();
    cfg.solver.max_sweeps =
        need(sch, "sweeps", "solver.schedule").get<std::uint64_t>();
  } else if (kind == "annealed") {
    cfg.solver.schedule = GLSEG_SCHEDULE_ANNEALED;
    cfg.solver.eps0 = need(sch, "eps0", "solver.schedule").get<double>();
    cfg.solver.eps_final =
        need(sch, "eps_final", "solver.schedule").get<double>();
    cfg.solver.decrement =
        get_or<double>(sch, "decrement", 0.1, "solver.schedule");
    cfg.solver.sweeps_per_stage =
        get_or<std::uint64_t>(sch, "sweeps_per_stage", 40, "solver.schedule");
  } else {
    die(kExitValidation,
        "config: solver.schedule.type must be 'fixed' or 'annealed'");
  }

  const json& fj = need(j, "fidelity", "");
  cfg.fidelity.per_class = get_or<std::uint64_t>(fj, "per_class", 0, "fidelity");
  cfg.fidelity.fraction = get_or<double>(fj, "fraction", 0.0, "fidelity");
  cfg.fidelity.lambda = get_or<double>(fj, "lambda", 30.0, "fidelity");
  cfg.fidelity.seed = get_or<std::uint64_t>(fj, "seed", 0, "fidelity");
  cfg.fidelity.sets = get_or<std::uint64_t>(fj, "sets", 1, "fidelity");
  cfg.fidelity.file = get_or<std::string>(fj, "file", "", "fidelity");
  if (cfg.fidelity.file.empty() && cfg.fidelity.per_class == 0 &&
      cfg.fidelity.fraction <= 0.0)
    die(kExitValidation,
        "config: fidelity needs per_class > 0, fraction > 0, or a file");
  if (cfg.fidelity.sets == 0)
    die(kExitValidation, "config: fidelity.sets must be >= 1");

  cfg.repeat = get_or<std::uint64_t>(j, "repeat", 1, "");
  if (cfg.repeat == 0) die(kExitValidation, "config: repeat must be >= 1");
  cfg.seed = get_or<std::uint64_t>(j, "seed", 0, "");
  cfg.threads = get_or<std::int32_t>(j, "threads", 1, "");
  cfg.output = get_or<std::string>(j, "output", "out", "");
  return cfg;
}

json config_echo(const RunConfig& cfg) {
  json ds{{"type", cfg.dataset.type}};
  if (cfg.dataset.type == "three-moons") {
    ds["points_per_moon"] = cfg.dataset.points_per_moon;
    ds["ambient_dim"] = cfg.dataset.ambient_dim;
    ds["noise_variance"] = cfg.dataset.noise_variance;
    ds["seed"] = cfg.dataset.seed;
  } else if (cfg.dataset.type == "synthetic-image") {
    ds["width"] = cfg.dataset.width;
    ds["height"] = cfg.dataset.height;
  } else if (cfg.dataset.type == "image" || cfg.dataset.type == "features") {
    ds["path"] = cfg.dataset.path;
    if (!cfg.dataset.truth.empty()) ds["truth"] = cfg.dataset.truth;
  } else if (cfg.dataset.type == "mnist") {
    ds["images"] = cfg.dataset.images;
    ds["labels"] = cfg.dataset.labels;
    ds["per_class"] = cfg.dataset.per_class;
    ds["sample_seed"] = cfg.dataset.sample_seed;
  }
  if (cfg.dataset.pca) ds["pca"] = cfg.dataset.pca;

  json sch;
  if (cfg.solver.schedule == GLSEG_SCHEDULE_FIXED)
    sch = {{"type", "fixed"}, {"eps", cfg.solver.eps},
           {"sweeps", cfg.solver.max_sweeps}};
  else
    sch = {{"type", "annealed"},
           {"eps0", cfg.solver.eps0},
           {"eps_final", cfg.solver.eps_final},
           {"decrement", cfg.solver.decrement},
           {"sweeps_per_stage", cfg.solver.sweeps_per_stage}};

  json fid{{"lambda", cfg.fidelity.lambda}};
  if (!cfg.fidelity.file.empty()) {
    fid["file"] = cfg.fidelity.file;
  } else {
    if (cfg.fidelity.per_class)
      fid["per_class"] = cfg.fidelity.per_class;
    else
      fid["fraction"] = cfg.fidelity.fraction;
    fid["seed"] = cfg.fidelity.seed;
    fid["sets"] = cfg.fidelity.sets;
  }

  return json{{"format_version", 1},
              {"dataset", ds},
              {"graph", {{"neighbors", cfg.neighbors},
                         {"scale_rank", cfg.scale_rank}}},
              {"solver", {{"classes", cfg.solver.num_classes},
                          {"dt", cfg.solver.dt},
                          {"schedule", sch}}},
              {"fidelity", fid},
              {"repeat", cfg.repeat},
              {"seed", cfg.seed},
              {"threads", cfg.threads},
              {"output", cfg.output}};
}

// ------------------------------------------------------------- segment

struct LoadedDataset {
  features_ptr features;
  labels_ptr truth;  // may be null
  bool is_image = false;
  std::uint64_t width = 0, height = 0;
};

LoadedDataset load_dataset(const DatasetSpec& ds) {
  LoadedDataset out;
  if (ds.type == "three-moons") {
    glseg_moons_params p;
    glseg_moons_params_init(&p);
    p.points_per_moon = ds.points_per_moon;
    p.ambient_dim = ds.ambient_dim;
    p.noise_variance = ds.noise_variance;
    p.seed = ds.seed;
    glseg_features* f = nullptr;
    glseg_labels* t = nullptr;
    check(glseg_three_moons(&p, &f, &t), kExitValidation);
    out.features.reset(f);
    out.truth.reset(t);
  } else if (ds.type == "synthetic-image") {
    glseg_features* f = nullptr;
    glseg_labels* t = nullptr;
    check(glseg_synthetic_image(ds.width, ds.height, &f, &t), kExitValidation);
    out.features.reset(f);
    out.truth.reset(t);
    out.is_image = true;
    out.width = ds.width;
    out.height = ds.height;
  } else if (ds.type == "image") {
    glseg_features* f = nullptr;
    check(glseg_image_read_pgm(ds.path.c_str(), &f, &out.width, &out.height),
          kExitValidation);
    out.features.reset(f);
    out.is_image = true;
  } else if (ds.type == "features") {
    glseg_features* f = nullptr;
    const bool binary = ds.path.size() >= 4 &&
                        ds.path.compare(ds.path.size() - 4, 4, ".bin") == 0;
    check(binary ? glseg_features_read_binary(ds.path.c_str(), &f)
                 : glseg_features_read_csv(ds.path.c_str(), &f),
          kExitValidation);
    out.features.reset(f);
  } else if (ds.type == "mnist") {
    glseg_features* f = nullptr;
    glseg_labels* t = nullptr;
    check(glseg_idx_read(ds.images.c_str(), ds.labels.c_str(), &f, &t),
          kExitValidation);
    out.features.reset(f);
    out.truth.reset(t);
    if (ds.per_class > 0) {
      glseg_features* fs = nullptr;
      glseg_labels* ts = nullptr;
      check(glseg_subsample_per_class(out.features.get(), out.truth.get(),
                                      ds.per_class, ds.sample_seed, &fs, &ts),
            kExitValidation);
      out.features.reset(fs);
      out.truth.reset(ts);
    }
  }
  if (!ds.truth.empty()) {
    glseg_labels* t = nullptr;
    check(glseg_labels_read_csv(ds.truth.c_str(), &t), kExitValidation);
    out.truth.reset(t);
  }
  if (ds.pca > 0) {
    glseg_pca* p = nullptr;
    check(glseg_pca_fit(out.features.get(), ds.pca, &p), kExitValidation);
    pca_ptr model(p);
    glseg_features* proj = nullptr;
    check(glseg_pca_project(model.get(), out.features.get(), &proj),
          kExitValidation);
    out.features.reset(proj);
  }
  return out;
}

int cmd_segment(const std::string& config_path,
                const std::optional<std::string>& out_override,
                const std::optional<std::uint64_t>& repeat_override,
                const std::optional<std::uint64_t>& seed_override,
                const std::optional<std::int32_t>& threads_override) {
  RunConfig cfg = parse_config(config_path);
  if (out_override) cfg.output = *out_override;
  if (repeat_override) cfg.repeat = *repeat_override;
  if (seed_override) cfg.seed = *seed_override;
  if (threads_override) cfg.threads = *threads_override;
  cfg.solver.threads = cfg.threads;

  LoadedDataset data = load_dataset(cfg.dataset);
  const std::uint64_t n = glseg_features_rows(data.features.get());
  std::printf("dataset: %s, n=%" PRIu64 ", d=%" PRIu64 "\n",
              cfg.dataset.type.c_str(), n,
              glseg_features_cols(data.features.get()));

  graph_ptr graph;
  {
    glseg_graph* g = nullptr;
    check(glseg_graph_build(data.features.get(), cfg.neighbors, cfg.scale_rank,
                            &g),
          kExitValidation);
    graph.reset(g);
  }
  std::printf("graph: %" PRIu64 " vertices, %" PRIu64 " edges\n",
              glseg_graph_order(graph.get()), glseg_graph_edge_count(graph.get()));

  if (cfg.fidelity.file.empty() && !data.truth)
    die(kExitValidation,
        "config: fidelity sampling needs ground truth; this dataset has none "
        "(provide fidelity.file or dataset.truth)");

  fs::create_directories(cfg.output);

  // fidelity sets are sampled lazily and shared by their block of runs
  std::map<std::uint64_t, fidelity_ptr> fidelity_sets;
  const auto fidelity_for = [&](std::uint64_t set) -> glseg_fidelity* {
    auto it = fidelity_sets.find(set);
    if (it != fidelity_sets.end()) return it->second.get();
    glseg_fidelity* f = nullptr;
    if (!cfg.fidelity.file.empty()) {
      check(glseg_fidelity_read_csv(cfg.fidelity.file.c_str(),
                                    cfg.fidelity.lambda, &f),
            kExitValidation);
      return fidelity_sets.emplace(set, fidelity_ptr(f)).first->second.get();
    }
    check(glseg_fidelity_sample(data.truth.get(), cfg.solver.num_classes,
                                cfg.fidelity.per_class, cfg.fidelity.fraction,
                                cfg.fidelity.lambda,
                                cfg.fidelity.seed + set, &f),
          kExitValidation);
    return fidelity_sets.emplace(set, fidelity_ptr(f)).first->second.get();
  };

  std::vector<double> errors_all, errors_excl;
  double best_error = 2.0;
  std::uint64_t best_run = 0;
  labels_ptr best_labels;

  for (std::uint64_t r = 0; r < cfg.repeat; ++r) {
    const std::uint64_t set =
        cfg.fidelity.file.empty() ? r * cfg.fidelity.sets / cfg.repeat : 0;
    glseg_fidelity* fid = fidelity_for(set);

    glseg_solver_config sc = cfg.solver;
    sc.seed = cfg.seed + r;
    glseg_result* raw = nullptr;
    check(glseg_segment(graph.get(), fid, &sc, &raw), kExitRuntime);
    result_ptr result(raw);

    char dirname[32];
    std::snprintf(dirname, sizeof dirname, "run_%03" PRIu64, r);
    const fs::path run_dir = fs::path(cfg.output) / dirname;
    fs::create_directories(run_dir);
    check(glseg_result_write_csv(result.get(), (run_dir / "result.csv").c_str()),
          kExitRuntime);
    check(glseg_result_write_trace_csv(result.get(),
                                       (run_dir / "trace.csv").c_str()),
          kExitRuntime);
    check(glseg_fidelity_write_csv(fid, (run_dir / "fidelity.csv").c_str()),
          kExitRuntime);

    labels_ptr predicted;
    {
      glseg_labels* l = nullptr;
      check(glseg_labels_create(glseg_result_labels(result.get()),
                                glseg_result_size(result.get()), &l),
            kExitRuntime);
      predicted.reset(l);
    }

    if (data.is_image) {
      for (std::int32_t k = 0; k < cfg.solver.num_classes; ++k) {
        char mask[32];
        std::snprintf(mask, sizeof mask, "class_%d.pgm", k);
        check(glseg_class_mask_write_pgm(predicted.get(), data.width,
                                         data.height, k,
                                         (run_dir / mask).c_str()),
              kExitRuntime);
      }
    }

    json meta = config_echo(cfg);
    meta["run_index"] = r;
    meta["run_seed"] = sc.seed;
    meta["fidelity_set"] = set;
    meta["fidelity_seed"] = cfg.fidelity.seed + set;
    meta["fidelity_count"] = glseg_fidelity_count(fid);
    meta["iterations"] = glseg_result_iterations(result.get());
    meta["wall_seconds"] = glseg_result_wall_seconds(result.get());
    json warnings = json::array();
    for (std::uint64_t w = 0; w < glseg_result_warning_count(result.get()); ++w)
      warnings.push_back(glseg_result_warning(result.get(), w));
    meta["warnings"] = warnings;

    double err_all = -1.0;
    if (data.truth) {
      check(glseg_error_rate(predicted.get(), data.truth.get(), nullptr, 0,
                             &err_all),
            kExitRuntime);
      std::vector<std::uint64_t> fid_idx(glseg_fidelity_count(fid));
      for (std::uint64_t p = 0; p < fid_idx.size(); ++p) {
        std::int32_t lbl;
        check(glseg_fidelity_entry(fid, p, &fid_idx[p], &lbl), kExitRuntime);
      }
      double err_excl = 0.0;
      check(glseg_error_rate(predicted.get(), data.truth.get(), fid_idx.data(),
                             fid_idx.size(), &err_excl),
            kExitRuntime);
      errors_all.push_back(err_all);
      errors_excl.push_back(err_excl);
      meta["error_all_points"] = err_all;
      meta["error_excluding_fidelity"] = err_excl;
      if (err_all < best_error) {
        best_error = err_all;
        best_run = r;
        best_labels = std::move(predicted);
      }
      std::printf("run %3" PRIu64 ": error %.4f (%.4f excl. fidelity), %.2fs\n",
                  r, err_all, err_excl,
                  glseg_result_wall_seconds(result.get()));
    } else {
      std::printf("run %3" PRIu64 ": done in %.2fs (no ground truth)\n", r,
                  glseg_result_wall_seconds(result.get()));
    }
    std::ofstream meta_out(run_dir / "metadata.json");
    meta_out << meta.dump(2) << '\n';
    if (!meta_out.good())
      die(kExitRuntime, "cannot write " + (run_dir / "metadata.json").string());
  }

  if (!errors_all.empty()) {
    glseg_run_stats all{}, excl{};
    check(glseg_aggregate(errors_all.data(), errors_all.size(), &all),
          kExitRuntime);
    check(glseg_aggregate(errors_excl.data(), errors_excl.size(), &excl),
          kExitRuntime);
    json agg{{"runs", cfg.repeat},
             {"all_points", {{"errors", errors_all},
                             {"mean", all.mean},
                             {"stddev", all.stddev},
                             {"stddev_defined", all.stddev_defined != 0},
                             {"best", all.best}}},
             {"excluding_fidelity", {{"errors", errors_excl},
                                     {"mean", excl.mean},
                                     {"stddev", excl.stddev},
                                     {"stddev_defined", excl.stddev_defined != 0},
                                     {"best", excl.best}}},
             {"best_run", best_run}};
    std::ofstream agg_out(fs::path(cfg.output) / "aggregate.json");
    agg_out << agg.dump(2) << '\n';
    if (!agg_out.good())
      die(kExitRuntime, "cannot write aggregate.json in " + cfg.output);

    check(glseg_confusion_write_csv(
              best_labels.get(), data.truth.get(), cfg.solver.num_classes,
              (fs::path(cfg.output) / "confusion.csv").c_str()),
          kExitRuntime);
    std::printf(
        "aggregate over %" PRIu64
        " runs: mean error %.4f (stddev %.4f), best %.4f (run %" PRIu64 ")\n",
        cfg.repeat, all.mean, all.stddev, all.best, best_run);
  }
  std::printf("outputs written to %s\n", cfg.output.c_str());
  return 0;
}

// ------------------------------------------------------------- generate

int cmd_generate_moons(const std::string& out_dir, std::uint64_t seed,
                       std::uint64_t points_per_moon, std::uint64_t ambient_dim,
                       double noise_variance, const std::string& format) {
  glseg_moons_params p;
  glseg_moons_params_init(&p);
  p.points_per_moon = points_per_moon;
  p.ambient_dim = ambient_dim;
  p.noise_variance = noise_variance;
  p.seed = seed;
  glseg_features* f = nullptr;
  glseg_labels* t = nullptr;
  check(glseg_three_moons(&p, &f, &t), kExitValidation);
  features_ptr features(f);
  labels_ptr truth(t);

  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  if (format == "binary") {
    check(glseg_features_write_binary(features.get(),
                                      (dir / "features.bin").c_str()),
          kExitRuntime);
  } else {
    check(glseg_features_write_csv(features.get(),
                                   (dir / "features.csv").c_str()),
          kExitRuntime);
  }
  check(glseg_labels_write_csv(truth.get(), (dir / "labels.csv").c_str()),
        kExitRuntime);
  std::printf("three-moons: %" PRIu64 " points, seed %" PRIu64 ", written to %s\n",
              glseg_features_rows(features.get()), seed, out_dir.c_str());
  return 0;
}

int cmd_generate_image(const std::string& out_dir, std::uint64_t width,
                       std::uint64_t height) {
  glseg_features* f = nullptr;
  glseg_labels* t = nullptr;
  check(glseg_synthetic_image(width, height, &f, &t), kExitValidation);
  features_ptr features(f);
  labels_ptr truth(t);

  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  check(glseg_synthetic_image_write_pgm(width, height,
                                        (dir / "image.pgm").c_str()),
        kExitRuntime);
  check(glseg_labels_write_csv(truth.get(), (dir / "labels.csv").c_str()),
        kExitRuntime);
  std::printf("synthetic image: %" PRIu64 "x%" PRIu64 ", written to %s\n",
              width, height, out_dir.c_str());
  return 0;
}

// ------------------------------------------------------------- evaluate

int cmd_evaluate(const std::string& predicted_path,
                 const std::string& truth_path, std::int32_t num_classes,
                 const std::string& exclude_path,
                 const std::string& confusion_path) {
  glseg_labels* p = nullptr;
  check(glseg_labels_read_csv(predicted_path.c_str(), &p), kExitValidation);
  labels_ptr predicted(p);
  glseg_labels* t = nullptr;
  check(glseg_labels_read_csv(truth_path.c_str(), &t), kExitValidation);
  labels_ptr truth(t);

  double err_all = 0.0;
  check(glseg_error_rate(predicted.get(), truth.get(), nullptr, 0, &err_all),
        kExitValidation);
  std::printf("error (all points): %.6f\n", err_all);

  if (!exclude_path.empty()) {
    // exclusion file is index,label CSV; only the indices matter
    std::ifstream in(exclude_path);
    if (!in.good())
      die(kExitValidation, "cannot open exclude file: " + exclude_path);
    std::vector<std::uint64_t> exclude;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      char* end = nullptr;
      const std::uint64_t idx = std::strtoull(line.c_str(), &end, 10);
      if (end == line.c_str()) continue;  // header
      exclude.push_back(idx);
    }
    double err_excl = 0.0;
    check(glseg_error_rate(predicted.get(), truth.get(), exclude.data(),
                           exclude.size(), &err_excl),
          kExitValidation);
    std::printf("error (excluding %zu fidelity points): %.6f\n",
                exclude.size(), err_excl);
  }

  if (!confusion_path.empty()) {
    check(glseg_confusion_write_csv(predicted.get(), truth.get(), num_classes,
                                    confusion_path.c_str()),
          kExitValidation);
    std::printf("confusion matrix written to %s\n", confusion_path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiclass graph segmentation via Ginzburg-Landau energy "
               "minimization"};
  app.require_subcommand(1);
  app.set_version_flag("--version", glseg_version());

  // generate
  CLI::App* generate = app.add_subcommand("generate", "produce a dataset");
  generate->require_subcommand(1);

  std::string gen_out = "data";
  std::uint64_t gen_seed = 0, gen_ppm = 500, gen_dim = 100;
  double gen_noise = 0.02;
  std::string gen_format = "csv";
  CLI::App* gen_moons =
      generate->add_subcommand("three-moons", "three noisy half-circles");
  gen_moons->add_option("--out", gen_out, "output directory")->required();
  gen_moons->add_option("--seed", gen_seed, "random seed");
  gen_moons->add_option("--points-per-moon", gen_ppm, "points per half-circle");
  gen_moons->add_option("--ambient-dim", gen_dim, "embedding dimension");
  gen_moons->add_option("--noise-variance", gen_noise,
                        "Gaussian noise variance per coordinate");
  gen_moons->add_option("--format", gen_format, "features format: csv|binary")
      ->check(CLI::IsMember({"csv", "binary"}));

  std::uint64_t gen_w = 100, gen_h = 100;
  CLI::App* gen_image =
      generate->add_subcommand("image", "five-class synthetic test image");
  gen_image->add_option("--out", gen_out, "output directory")->required();
  gen_image->add_option("--width", gen_w, "image width (>= 50)");
  gen_image->add_option("--height", gen_h, "image height (>= 50)");

  // segment
  std::string seg_config;
  std::optional<std::string> seg_out;
  std::optional<std::uint64_t> seg_repeat, seg_seed;
  std::optional<std::int32_t> seg_threads;
  CLI::App* segment =
      app.add_subcommand("segment", "run segmentation from a JSON config");
  segment->add_option("--config", seg_config, "JSON run configuration")
      ->required();
  segment->add_option("--out", seg_out, "override output directory");
  segment->add_option("--repeat", seg_repeat, "override run count");
  segment->add_option("--seed", seg_seed, "override base seed");
  segment->add_option("--threads", seg_threads, "override worker threads");

  // evaluate
  std::string eval_pred, eval_truth, eval_exclude, eval_confusion;
  std::int32_t eval_classes = 0;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "score labels against ground truth");
  evaluate->add_option("--predicted", eval_pred, "predicted labels CSV")
      ->required();
  evaluate->add_option("--truth", eval_truth, "ground-truth labels CSV")
      ->required();
  evaluate->add_option("--classes", eval_classes, "class count K")->required();
  evaluate->add_option("--exclude", eval_exclude,
                       "fidelity CSV whose indices are excluded from the "
                       "second reported error");
  evaluate->add_option("--confusion", eval_confusion,
                       "write the confusion matrix CSV here");

  try {
    app.parse(argc, argv);
    if (gen_moons->parsed())
      return cmd_generate_moons(gen_out, gen_seed, gen_ppm, gen_dim, gen_noise,
                                gen_format);
    if (gen_image->parsed()) return cmd_generate_image(gen_out, gen_w, gen_h);
    if (segment->parsed())
      return cmd_segment(seg_config, seg_out, seg_repeat, seg_seed,
                         seg_threads);
    if (evaluate->parsed())
      return cmd_evaluate(eval_pred, eval_truth, eval_classes, eval_exclude,
                          eval_confusion);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitValidation;
}
