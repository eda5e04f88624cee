#ifndef GLSEG_SEGMENTER_HPP
#define GLSEG_SEGMENTER_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace glseg {

/// Known labels for a sparse set of vertices, all sharing one fidelity
/// weight lambda. The anchor value of a fidelity vertex is its class
/// integer.
struct FidelityData {
  std::vector<std::pair<std::uint32_t, int>> entries;  // (vertex, class)
  double lambda = 0.0;

  /// Sorts entries by vertex and checks ranges and duplicates.
  void validate(std::size_t n, int num_classes);
};

/// Per-vertex fidelity weight and anchor, densified for the sweep loop.
struct DenseFidelity {
  std::vector<double> weight;  // lambda or 0
  std::vector<double> anchor;  // class integer, 0 where unused

  static DenseFidelity densify(const FidelityData& fid, std::size_t n);
};

struct EpsSchedule {
  enum class Kind { fixed, annealed };
  Kind kind = Kind::fixed;
  double eps = 1.0;          // fixed
  double eps0 = 2.0;         // annealed start
  double eps_final = 0.1;    // annealed floor
  double decrement = 0.1;    // fractional decrease per stage
  std::size_t sweeps_per_stage = 40;

  static EpsSchedule fixed(double eps) {
    EpsSchedule s;
    s.kind = Kind::fixed;
    s.eps = eps;
    return s;
  }
  static EpsSchedule annealed(double eps0, double eps_final, double decrement,
                              std::size_t sweeps_per_stage) {
    EpsSchedule s;
    s.kind = Kind::annealed;
    s.eps0 = eps0;
    s.eps_final = eps_final;
    s.decrement = decrement;
    s.sweeps_per_stage = sweeps_per_stage;
    return s;
  }
};

struct SolverConfig {
  int num_classes = 2;
  double dt = 0.01;
  std::size_t max_sweeps = 800;  // fixed schedule only
  EpsSchedule schedule = EpsSchedule::fixed(1.0);
  std::uint64_t seed = 0;
  int threads = 1;

  void validate() const;
};

struct EnergyBreakdown {
  double smoothing = 0.0;
  double potential = 0.0;
  double fidelity = 0.0;
  double total = 0.0;
};

struct TraceEntry {
  std::size_t iteration = 0;
  double eps = 0.0;
  EnergyBreakdown energy;
};

struct SegmentationResult {
  std::vector<double> state;
  std::vector<int> labels;  // thresholded and clamped into [0, K-1]
  std::vector<TraceEntry> energy_trace;
  std::size_t iterations = 0;
  double wall_seconds = 0.0;
  std::vector<std::string> warnings;
};

/// Initial state: u_i uniform on (0, K) shifted by -1/2; deterministic in
/// the seed.
std::vector<double> initialize(std::size_t n, int num_classes,
                               std::uint64_t seed);

/// The multiclass energy. Smoothing sums over ordered vertex pairs, so each
/// undirected edge contributes twice:
///   smoothing = eps/2 sum_i sum_j what_ij rho(u_i, u_j)^2
///   potential = 1/(2 eps) sum_i {u_i}^2 ({u_i}-1)^2
///   fidelity  = sum_i lambda_i/2 (u_i - u0_i)^2
EnergyBreakdown energy(std::span<const double> u, const NeighborGraph& graph,
                       const FidelityData& fid, double eps);

/// Exact energy derivative with respect to u_i wherever rho is
/// differentiable:
///   2 eps sum_j what_ij [rhat(u_i) + s_ij rhat(u_j)] rhat'(u_i)
///   + 1/eps F'(u_i) + lambda_i (u_i - u0_i)
/// with s_ij = +1 if the current labels of i and j differ, -1 otherwise.
double gradient_component(std::size_t i, std::span<const double> u,
                          std::span<const long long> labels,
                          const NeighborGraph& graph, const DenseFidelity& fid,
                          double eps);

/// Candidate states k + new_frac for k in [0, K-1]; returns the one
/// minimizing the vertex's local energy
///   eps sum_j what_ij rho(candidate, u_j)^2 + lambda_i/2 (candidate - u0_i)^2,
/// ties to the smallest k. For vertices without fidelity this reduces to
/// minimizing the smoothing sum alone. Without the fidelity term an anchored
/// vertex whose whole neighborhood holds a different label would be thrown
/// back at every crossing, since (r + rj)^2 > (r - rj)^2.
double greedy_reassign(std::size_t i, double new_frac,
                       std::span<const double> u, const NeighborGraph& graph,
                       int num_classes, const DenseFidelity& fid, double eps);

/// One gradient-descent pass over all vertices with greedy class
/// reassignment on label change. Reads only the iteration-m state, writes
/// only the m+1 buffer; result is independent of vertex order and thread
/// count.
void sweep(std::span<const double> u, std::span<const long long> labels,
           const NeighborGraph& graph, const DenseFidelity& fid,
           const SolverConfig& cfg, double eps, std::size_t iteration,
           std::span<double> out);

/// Full minimization: random initialization, then sweeps under the fixed or
/// annealed schedule, recording the energy after every sweep at the eps in
/// force. Runs the full iteration budget; there is no early stopping.
SegmentationResult run(const NeighborGraph& graph, const FidelityData& fid,
                       const SolverConfig& cfg);

/// Stratified (per_class > 0) or uniform (fraction) sampling of fidelity
/// vertices from ground truth; deterministic in the seed.
FidelityData sample_fidelity(std::span<const int> truth, int num_classes,
                             std::size_t per_class, double fraction,
                             double lambda, std::uint64_t seed);

}  // namespace glseg

#endif
