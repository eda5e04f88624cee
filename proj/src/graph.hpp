#ifndef GLSEG_GRAPH_HPP
#define GLSEG_GRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "features.hpp"

namespace glseg {

/// Graph construction parameters: N nearest neighbors define edges, the
/// M-th nearest neighbor defines the local kernel scale. 1 <= M <= N < n.
struct GraphConfig {
  std::size_t neighbors = 10;   // N
  std::size_t scale_rank = 10;  // M
};

/// Symmetric weighted neighbor graph with locally scaled Gaussian weights
///   w_ij = exp(-||x_i - x_j||^2 / (tau_i tau_j)),
/// degrees d_i = sum_j w_ij and normalized affinities
/// what_ij = w_ij / sqrt(d_i d_j). Adjacency is stored CSR-style with
/// neighbor lists sorted by index; both directions of an edge are stored
/// and carry bit-identical weights.
class NeighborGraph {
public:
  /// Edges connect i and j iff one is among the other's N nearest
  /// neighbors (union rule).
  static NeighborGraph build(const FeatureMatrix& features,
                             const GraphConfig& cfg);

  /// Direct construction from an explicit undirected edge list
  /// (i, j, w with i != j, w > 0). For tests and diagnostics.
  static NeighborGraph from_edges(
      std::size_t n,
      const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>&
          edges);

  std::size_t order() const { return degree_.size(); }
  std::size_t edge_count() const { return neighbor_.size() / 2; }

  std::span<const std::uint32_t> neighbors(std::size_t i) const {
    return {neighbor_.data() + offset_[i], offset_[i + 1] - offset_[i]};
  }
  std::span<const double> weights(std::size_t i) const {
    return {weight_.data() + offset_[i], offset_[i + 1] - offset_[i]};
  }
  std::span<const double> normalized(std::size_t i) const {
    return {normalized_.data() + offset_[i], offset_[i + 1] - offset_[i]};
  }

  double degree(std::size_t i) const { return degree_[i]; }
  const std::vector<double>& degrees() const { return degree_; }

private:
  void finalize();  // degrees + normalized affinities from weights

  std::vector<std::size_t> offset_;     // n + 1
  std::vector<std::uint32_t> neighbor_;  // sorted within each row
  std::vector<double> weight_;
  std::vector<double> normalized_;
  std::vector<double> degree_;
};

/// Symmetric normalized Laplacian L_s = I - D^{-1/2} W D^{-1/2}, a view over
/// the graph for diagnostics and spectral property checks; the solver
/// consumes the normalized affinities directly.
class SymmetricLaplacian {
public:
  explicit SymmetricLaplacian(const NeighborGraph& graph) : graph_(graph) {}

  std::size_t order() const { return graph_.order(); }

  /// y = L_s x
  void apply(std::span<const double> x, std::span<double> y) const;

  /// Dense row-major n x n copy, for eigensolver checks at small n.
  std::vector<double> to_dense() const;

private:
  const NeighborGraph& graph_;
};

inline SymmetricLaplacian laplacian(const NeighborGraph& graph) {
  return SymmetricLaplacian(graph);
}

/// Diagnostic edge list export: CSV `i,j,w` with i < j.
void write_edges_csv(const NeighborGraph& graph, const std::string& path);

}  // namespace glseg

#endif
