#ifndef GLSEG_KNN_HPP
#define GLSEG_KNN_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "features.hpp"

namespace glseg {

/// k nearest neighbors of every point, self excluded, sorted by
/// nondecreasing Euclidean distance with ties broken by lower index.
struct KnnResult {
  std::size_t count = 0;  // points
  std::size_t k = 0;
  std::vector<std::uint32_t> indices;  // count * k
  std::vector<double> distances;       // count * k, Euclidean

  std::span<const std::uint32_t> neighbors_of(std::size_t i) const {
    return {indices.data() + i * k, k};
  }
  std::span<const double> distances_of(std::size_t i) const {
    return {distances.data() + i * k, k};
  }
};

/// Exhaustive scan, O(n^2 d). Requires 1 <= k < n.
KnnResult knn_search(const FeatureMatrix& features, std::size_t k);

/// Local scales tau_i = distance from point i to its scale_rank-th closest
/// distinct-index point. A zero scale (duplicated data) is a hard error.
std::vector<double> local_scales(const KnnResult& knn, std::size_t scale_rank);
std::vector<double> local_scales(const FeatureMatrix& features,
                                 std::size_t scale_rank);

}  // namespace glseg

#endif
