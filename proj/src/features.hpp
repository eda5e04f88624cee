#ifndef GLSEG_FEATURES_HPP
#define GLSEG_FEATURES_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace glseg {

/// Dense row-major matrix of n points x d features.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // rows * cols, row-major

  FeatureMatrix() = default;
  FeatureMatrix(std::size_t n, std::size_t d)
      : rows(n), cols(d), values(n * d, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * cols, cols};
  }

  /// Checks n >= 1, d >= 1 and that every entry is finite.
  void validate() const;
};

/// CSV, one row per point, d numeric columns. An optional header is
/// detected by a non-numeric first row.
FeatureMatrix read_features_csv(const std::string& path);
void write_features_csv(const FeatureMatrix& m, const std::string& path);

/// Raw binary: magic "GLSEGF01", n and d as 64-bit little-endian unsigned,
/// then n*d IEEE-754 doubles, little-endian, row-major.
FeatureMatrix read_features_binary(const std::string& path);
void write_features_binary(const FeatureMatrix& m, const std::string& path);

}  // namespace glseg

#endif
