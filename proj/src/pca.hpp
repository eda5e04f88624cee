#ifndef GLSEG_PCA_HPP
#define GLSEG_PCA_HPP

#include <cstddef>
#include <vector>

#include "features.hpp"

namespace glseg {

/// Principal components of mean-centered data: orthonormal directions as
/// rows, explained variances nonincreasing. Sign convention: the
/// largest-magnitude entry of each component is positive.
struct PcaModel {
  std::size_t input_dim = 0;
  std::size_t num_components = 0;
  std::vector<double> mean;                // input_dim
  std::vector<double> components;          // num_components x input_dim
  std::vector<double> explained_variance;  // num_components, nonincreasing
};

/// Dense eigendecomposition of the (n-1)-normalized covariance.
/// Requires 2 <= n and 1 <= k <= min(n, d).
PcaModel pca_fit(const FeatureMatrix& features, std::size_t k);

/// (x - mean) * components^T, an n x k matrix.
FeatureMatrix pca_project(const PcaModel& model, const FeatureMatrix& features);

}  // namespace glseg

#endif
