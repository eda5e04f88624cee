#include "pca.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "common.hpp"

namespace glseg {

namespace {
using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
}

PcaModel pca_fit(const FeatureMatrix& features, std::size_t k) {
  features.validate();
  const std::size_t n = features.rows;
  const std::size_t d = features.cols;
  require(n >= 2, ErrorCode::invalid_config,
          "PCA needs at least 2 data points");
  require(k >= 1 && k <= std::min(n, d), ErrorCode::invalid_config,
          "component count k=" + std::to_string(k) +
              " must satisfy 1 <= k <= min(n, d) = " +
              std::to_string(std::min(n, d)));

  Eigen::Map<const RowMajorMatrix> x(features.values.data(), n, d);
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const RowMajorMatrix centered = x.rowwise() - mean;
  const Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  require(solver.info() == Eigen::Success, ErrorCode::invalid_argument,
          "covariance eigendecomposition failed");

  PcaModel model;
  model.input_dim = d;
  model.num_components = k;
  model.mean.assign(mean.data(), mean.data() + d);
  model.components.resize(k * d);
  model.explained_variance.resize(k);

  // eigenvalues come out ascending; take the top k
  for (std::size_t c = 0; c < k; ++c) {
    const auto src = static_cast<Eigen::Index>(d - 1 - c);
    model.explained_variance[c] = std::max(0.0, solver.eigenvalues()[src]);
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
    for (std::size_t j = 0; j < d; ++j) model.components[c * d + j] = v[j];
  }
  return model;
}

FeatureMatrix pca_project(const PcaModel& model,
                          const FeatureMatrix& features) {
  require(features.cols == model.input_dim, ErrorCode::size_mismatch,
          "feature dimension " + std::to_string(features.cols) +
              " does not match PCA input dimension " +
              std::to_string(model.input_dim));
  const std::size_t n = features.rows;
  const std::size_t d = model.input_dim;
  const std::size_t k = model.num_components;

  Eigen::Map<const RowMajorMatrix> x(features.values.data(), n, d);
  Eigen::Map<const RowMajorMatrix> comp(model.components.data(), k, d);
  Eigen::Map<const Eigen::RowVectorXd> mean(model.mean.data(), d);

  FeatureMatrix out(n, k);
  Eigen::Map<RowMajorMatrix> y(out.values.data(), n, k);
  y = (x.rowwise() - mean) * comp.transpose();
  return out;
}

}  // namespace glseg
