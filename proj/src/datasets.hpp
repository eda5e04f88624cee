#ifndef GLSEG_DATASETS_HPP
#define GLSEG_DATASETS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "features.hpp"

namespace glseg {

/// Feature rows with per-row ground-truth class labels.
struct LabeledFeatures {
  FeatureMatrix features;
  std::vector<int> labels;
};

/// Three "moons": two half-circles of radius 1 centered at (0,0) and (3,0)
/// sampled on the upper half, one of radius 1.5 centered at (1.5, 0.4)
/// sampled on the lower half, embedded into ambient_dim dimensions with
/// i.i.d. Gaussian noise of the given variance added to every coordinate.
struct ThreeMoonsParams {
  std::size_t points_per_moon = 500;
  std::size_t ambient_dim = 100;
  double noise_variance = 0.02;
  std::uint64_t seed = 0;
};

LabeledFeatures three_moons(const ThreeMoonsParams& params);

/// 8-bit grayscale image.
struct Image8 {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major
};

/// Binary PGM (P5), maxval 255 only.
Image8 read_pgm(const std::string& path);
void write_pgm(const Image8& image, const std::string& path);

/// Per-pixel feature rows (x, y, pix), each normalized to [0, 1]; vertex
/// index = row * width + col. Ground truth is empty unless known.
struct ImageFeatures {
  std::size_t width = 0;
  std::size_t height = 0;
  FeatureMatrix features;
  std::vector<int> ground_truth;
};

ImageFeatures featurize_image(const Image8& image);

/// Deterministic five-gray-level test image: three stripes along the
/// bottom, an annulus (a region with an internal hole) in the upper part,
/// background elsewhere; stripe tops meet the background in triple
/// junctions. Labels 0..4 map to pix values {0, 0.25, 0.5, 0.75, 1}.
/// Requires width, height >= 50.
ImageFeatures synthetic_five_class_image(std::size_t width,
                                         std::size_t height);

/// 8-bit rendering of per-pixel class labels as gray levels k/(K-1),
/// or of one class as a white-on-black mask.
Image8 render_labels(std::span<const int> labels, std::size_t width,
                     std::size_t height, int num_classes);
Image8 render_class_mask(std::span<const int> labels, std::size_t width,
                         std::size_t height, int cls);

/// Keeps per_class rows of each class, sampled without replacement;
/// deterministic in the seed. Row order follows the original matrix.
LabeledFeatures subsample_per_class(const FeatureMatrix& features,
                                    std::span<const int> labels,
                                    std::size_t per_class, std::uint64_t seed);

}  // namespace glseg

#endif
