#include "knn.hpp"

#include <algorithm>
#include <cmath>

#include "common.hpp"

namespace glseg {

namespace {

inline double squared_distance(const double* a, const double* b,
                               std::size_t d) {
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double t = a[j] - b[j];
    s += t * t;
  }
  return s;
}

}  // namespace

KnnResult knn_search(const FeatureMatrix& features, std::size_t k) {
  features.validate();
  const std::size_t n = features.rows;
  const std::size_t d = features.cols;
  require(k >= 1, ErrorCode::invalid_config, "neighbor count must be >= 1");
  require(k < n, ErrorCode::invalid_config,
          "neighbor count k=" + std::to_string(k) +
              " must be smaller than the number of points n=" +
              std::to_string(n));

  KnnResult result;
  result.count = n;
  result.k = k;
  result.indices.resize(n * k);
  result.distances.resize(n * k);

  const double* data = features.values.data();

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    std::vector<std::pair<double, std::uint32_t>> cand;
    cand.reserve(n - 1);
    const double* xi = data + i * d;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      cand.emplace_back(squared_distance(xi, data + j * d, d),
                        static_cast<std::uint32_t>(j));
    }
    // ties broken by lower index for determinism
    auto less = [](const auto& a, const auto& b) {
      return a.first < b.first || (a.first == b.first && a.second < b.second);
    };
    std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end(), less);
    std::sort(cand.begin(), cand.begin() + k, less);
    for (std::size_t r = 0; r < k; ++r) {
      result.indices[i * k + r] = cand[r].second;
      result.distances[i * k + r] = std::sqrt(cand[r].first);
    }
  }
  return result;
}

std::vector<double> local_scales(const KnnResult& knn, std::size_t scale_rank) {
  require(scale_rank >= 1 && scale_rank <= knn.k, ErrorCode::invalid_config,
          "scale rank must be in [1, k]");
  std::vector<double> tau(knn.count);
  for (std::size_t i = 0; i < knn.count; ++i) {
    tau[i] = knn.distances_of(i)[scale_rank - 1];
    require(tau[i] > 0.0, ErrorCode::degenerate_scale,
            "local scale is zero at point " + std::to_string(i) +
                ": duplicated points; deduplicate or jitter the data");
  }
  return tau;
}

std::vector<double> local_scales(const FeatureMatrix& features,
                                 std::size_t scale_rank) {
  require(scale_rank < features.rows, ErrorCode::invalid_config,
          "scale rank must be smaller than the number of points");
  return local_scales(knn_search(features, scale_rank), scale_rank);
}

}  // namespace glseg
