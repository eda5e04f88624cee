#include "segmenter.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "common.hpp"
#include "potential.hpp"
#include "rng.hpp"

namespace glseg {

void FidelityData::validate(std::size_t n, int num_classes) {
  require(lambda > 0.0 || entries.empty(), ErrorCode::invalid_config,
          "fidelity weight lambda must be positive");
  std::sort(entries.begin(), entries.end());
  for (std::size_t p = 0; p < entries.size(); ++p) {
    const auto& [idx, cls] = entries[p];
    require(idx < n, ErrorCode::invalid_argument,
            "fidelity index " + std::to_string(idx) + " out of range");
    require(cls >= 0 && cls < num_classes, ErrorCode::invalid_label,
            "fidelity label " + std::to_string(cls) + " outside [0, K-1]");
    require(p == 0 || entries[p - 1].first != idx, ErrorCode::invalid_argument,
            "duplicate fidelity entry for vertex " + std::to_string(idx));
  }
}

DenseFidelity DenseFidelity::densify(const FidelityData& fid, std::size_t n) {
  DenseFidelity d;
  d.weight.assign(n, 0.0);
  d.anchor.assign(n, 0.0);
  for (const auto& [idx, cls] : fid.entries) {
    d.weight[idx] = fid.lambda;
    d.anchor[idx] = static_cast<double>(cls);
  }
  return d;
}

void SolverConfig::validate() const {
  require(num_classes >= 2, ErrorCode::invalid_config,
          "class count must be >= 2");
  require(dt > 0.0, ErrorCode::invalid_config, "time step must be positive");
  if (schedule.kind == EpsSchedule::Kind::fixed) {
    require(schedule.eps > 0.0, ErrorCode::invalid_config,
            "eps must be positive");
  } else {
    require(schedule.eps0 > 0.0 && schedule.eps_final > 0.0,
            ErrorCode::invalid_config, "eps values must be positive");
    require(schedule.eps0 > schedule.eps_final, ErrorCode::invalid_config,
            "annealed schedule requires eps0 > eps_final");
    require(schedule.decrement > 0.0 && schedule.decrement < 1.0,
            ErrorCode::invalid_config, "decrement fraction must be in (0, 1)");
    require(schedule.sweeps_per_stage >= 1, ErrorCode::invalid_config,
            "sweeps per stage must be >= 1");
  }
}

std::vector<double> initialize(std::size_t n, int num_classes,
                               std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> u(n);
  for (double& v : u)
    v = rng.uniform(0.0, static_cast<double>(num_classes)) - 0.5;
  return u;
}

EnergyBreakdown energy(std::span<const double> u, const NeighborGraph& graph,
                       const FidelityData& fid, double eps) {
  const std::size_t n = graph.order();
  require(u.size() == n, ErrorCode::size_mismatch,
          "state length does not match graph order");

  double smoothing = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto nbr = graph.neighbors(i);
    const auto what = graph.normalized(i);
    double acc = 0.0;
    for (std::size_t p = 0; p < nbr.size(); ++p) {
      const double r = rho(u[i], u[nbr[p]]);
      acc += what[p] * r * r;
    }
    smoothing += acc;
  }
  smoothing *= 0.5 * eps;

  double potential = 0.0;
  for (std::size_t i = 0; i < n; ++i) potential += well(u[i]);
  potential /= eps;

  double fidelity = 0.0;
  for (const auto& [idx, cls] : fid.entries) {
    const double t = u[idx] - static_cast<double>(cls);
    fidelity += t * t;
  }
  fidelity *= 0.5 * fid.lambda;

  return {smoothing, potential, fidelity, smoothing + potential + fidelity};
}

double gradient_component(std::size_t i, std::span<const double> u,
                          std::span<const long long> labels,
                          const NeighborGraph& graph, const DenseFidelity& fid,
                          double eps) {
  double g = fid.weight[i] * (u[i] - fid.anchor[i]) + well_deriv(u[i]) / eps;
  const int dir = rhat_deriv(u[i]);
  if (dir != 0) {
    const double ri = rhat(u[i]);
    const auto nbr = graph.neighbors(i);
    const auto what = graph.normalized(i);
    double acc = 0.0;
    for (std::size_t p = 0; p < nbr.size(); ++p) {
      const std::uint32_t j = nbr[p];
      const double rj = rhat(u[j]);
      acc += what[p] * (labels[i] != labels[j] ? ri + rj : ri - rj);
    }
    g += 2.0 * eps * static_cast<double>(dir) * acc;
  }
  return g;
}

double greedy_reassign(std::size_t i, double new_frac,
                       std::span<const double> u, const NeighborGraph& graph,
                       int num_classes, const DenseFidelity& fid, double eps) {
  const auto nbr = graph.neighbors(i);
  const auto what = graph.normalized(i);
  double best_cost = 0.0;
  int best_k = 0;
  for (int k = 0; k < num_classes; ++k) {
    const double candidate = static_cast<double>(k) + new_frac;
    double cost = 0.0;
    for (std::size_t p = 0; p < nbr.size(); ++p) {
      const double r = rho(candidate, u[nbr[p]]);
      cost += what[p] * r * r;
    }
    cost *= eps;
    const double anchor_gap = candidate - fid.anchor[i];
    cost += 0.5 * fid.weight[i] * anchor_gap * anchor_gap;
    if (k == 0 || cost < best_cost) {
      best_cost = cost;
      best_k = k;
    }
  }
  return static_cast<double>(best_k) + new_frac;
}

void sweep(std::span<const double> u, std::span<const long long> labels,
           const NeighborGraph& graph, const DenseFidelity& fid,
           const SolverConfig& cfg, double eps, std::size_t iteration,
           std::span<double> out) {
  const std::size_t n = graph.order();
  const double dt = cfg.dt;
  const int threads = std::max(1, cfg.threads);
  (void)threads;

#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    double next = u[i] - dt * gradient_component(i, u, labels, graph, fid, eps);
    if (std::isfinite(next) && label_of(next) != labels[i])
      next = greedy_reassign(i, frac(next), u, graph, cfg.num_classes, fid, eps);
    out[i] = next;
  }

  for (std::size_t i = 0; i < n; ++i)
    require(std::isfinite(out[i]), ErrorCode::diverged,
            "state diverged at iteration " + std::to_string(iteration) +
                ", vertex " + std::to_string(i) +
                "; reduce dt or increase eps");
}

SegmentationResult run(const NeighborGraph& graph, const FidelityData& fid_in,
                       const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t n = graph.order();
  FidelityData fid = fid_in;
  fid.validate(n, cfg.num_classes);

  SegmentationResult result;
  if (fid.entries.empty()) {
    result.warnings.push_back(
        "fidelity set is empty: unsupervised run, labels may drift");
  } else {
    std::vector<bool> seen(cfg.num_classes, false);
    for (const auto& [idx, cls] : fid.entries) seen[cls] = true;
    for (int k = 0; k < cfg.num_classes; ++k)
      if (!seen[k])
        result.warnings.push_back("fidelity set has no vertex of class " +
                                  std::to_string(k));
  }

  const auto t0 = std::chrono::steady_clock::now();
  const DenseFidelity dense = DenseFidelity::densify(fid, n);

  std::vector<double> u = initialize(n, cfg.num_classes, cfg.seed);
  std::vector<double> next(n);
  std::vector<long long> labels(n);
  const auto relabel = [&] {
    for (std::size_t i = 0; i < n; ++i) labels[i] = label_of(u[i]);
  };
  relabel();

  const bool fixed = cfg.schedule.kind == EpsSchedule::Kind::fixed;
  double eps = fixed ? cfg.schedule.eps : cfg.schedule.eps0;

  result.energy_trace.push_back({0, eps, energy(u, graph, fid, eps)});

  std::size_t iteration = 0;
  const auto do_sweep = [&] {
    ++iteration;
    sweep(u, labels, graph, dense, cfg, eps, iteration, next);
    u.swap(next);
    relabel();
    result.energy_trace.push_back({iteration, eps, energy(u, graph, fid, eps)});
  };

  if (fixed) {
    for (std::size_t m = 0; m < cfg.max_sweeps; ++m) do_sweep();
  } else {
    // run a full stage, then decrement; the first stage below eps_final is
    // still run, after which the schedule stops
    for (;;) {
      for (std::size_t s = 0; s < cfg.schedule.sweeps_per_stage; ++s)
        do_sweep();
      if (eps < cfg.schedule.eps_final) break;
      eps *= 1.0 - cfg.schedule.decrement;
    }
  }

  result.state = std::move(u);
  result.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    result.labels[i] = clamp_label(label_of(result.state[i]), cfg.num_classes);
  result.iterations = iteration;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

FidelityData sample_fidelity(std::span<const int> truth, int num_classes,
                             std::size_t per_class, double fraction,
                             double lambda, std::uint64_t seed) {
  const std::size_t n = truth.size();
  require(n > 0, ErrorCode::invalid_argument, "ground truth is empty");
  for (std::size_t i = 0; i < n; ++i)
    require(truth[i] >= 0 && truth[i] < num_classes, ErrorCode::invalid_label,
            "ground-truth label outside [0, K-1] at index " +
                std::to_string(i));

  FidelityData fid;
  fid.lambda = lambda;
  if (per_class > 0) {
    // stratified: an independent stream per class
    for (int k = 0; k < num_classes; ++k) {
      std::vector<std::uint32_t> members;
      for (std::size_t i = 0; i < n; ++i)
        if (truth[i] == k) members.push_back(static_cast<std::uint32_t>(i));
      require(members.size() >= per_class, ErrorCode::invalid_config,
              "class " + std::to_string(k) + " has only " +
                  std::to_string(members.size()) +
                  " members; cannot sample " + std::to_string(per_class));
      Rng rng(seed, static_cast<std::uint64_t>(k));
      rng.shuffle(members);
      for (std::size_t p = 0; p < per_class; ++p)
        fid.entries.emplace_back(members[p], k);
    }
  } else {
    require(fraction > 0.0 && fraction <= 1.0, ErrorCode::invalid_config,
            "fidelity fraction must be in (0, 1]");
    const std::size_t count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(fraction * n)));
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0u);
    Rng rng(seed);
    rng.shuffle(all);
    for (std::size_t p = 0; p < count; ++p)
      fid.entries.emplace_back(all[p], truth[all[p]]);
  }
  fid.validate(n, num_classes);
  return fid;
}

}  // namespace glseg
