#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "common.hpp"
#include "datasets.hpp"
#include "doctest.h"
#include "idx.hpp"

using namespace glseg;
namespace fs = std::filesystem;

#ifndef GLSEG_DATA_DIR
#define GLSEG_DATA_DIR "data"
#endif

TEST_CASE("three_moons: shape, labels, determinism") {
  ThreeMoonsParams params;
  params.seed = 7;
  const LabeledFeatures data = three_moons(params);
  CHECK(data.features.rows == 1500);
  CHECK(data.features.cols == 100);
  std::vector<int> counts(3, 0);
  for (int l : data.labels) ++counts[l];
  CHECK(counts == std::vector<int>{500, 500, 500});

  const LabeledFeatures again = three_moons(params);
  CHECK(again.features.values == data.features.values);

  ThreeMoonsParams other = params;
  other.seed = 8;
  CHECK(three_moons(other).features.values != data.features.values);
}

TEST_CASE("three_moons: zero noise lies exactly on the half-circles") {
  ThreeMoonsParams params;
  params.points_per_moon = 60;
  params.noise_variance = 0.0;
  params.seed = 3;
  const LabeledFeatures data = three_moons(params);
  constexpr double radii[3] = {1.0, 1.0, 1.5};
  constexpr double centers[3][2] = {{0, 0}, {3, 0}, {1.5, 0.4}};
  for (std::size_t i = 0; i < data.features.rows; ++i) {
    const int moon = data.labels[i];
    const double dx = data.features.at(i, 0) - centers[moon][0];
    const double dy = data.features.at(i, 1) - centers[moon][1];
    CHECK(std::abs(std::hypot(dx, dy) - radii[moon]) < 1e-12);
    // top moons on the upper half, bottom moon on the lower half
    if (moon < 2)
      CHECK(dy >= 0.0);
    else
      CHECK(dy <= 0.0);
    // padding coordinates are exactly zero without noise
    for (std::size_t j = 2; j < data.features.cols; ++j)
      CHECK(data.features.at(i, j) == 0.0);
  }
}

TEST_CASE("three_moons: noise variance matches the configured sigma^2") {
  ThreeMoonsParams params;
  params.seed = 19;
  const LabeledFeatures data = three_moons(params);
  const std::size_t n = data.features.rows;
  for (std::size_t j = 2; j < data.features.cols; ++j) {
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = data.features.at(i, j);
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(var >= 0.015);
    CHECK(var <= 0.025);
  }
}

TEST_CASE("synthetic image: five exact gray levels, all classes present") {
  const ImageFeatures img = synthetic_five_class_image(100, 100);
  CHECK(img.features.rows == 10000);
  std::set<double> pix;
  std::vector<int> counts(5, 0);
  for (std::size_t i = 0; i < img.features.rows; ++i) {
    pix.insert(img.features.at(i, 2));
    ++counts[img.ground_truth[i]];
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(img.features.at(i, j) >= 0.0);
      CHECK(img.features.at(i, j) <= 1.0);
    }
    // ground truth is recoverable from pix alone
    CHECK(img.ground_truth[i] ==
          static_cast<int>(std::lround(img.features.at(i, 2) * 4.0)));
  }
  CHECK(pix == std::set<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  for (int c : counts) CHECK(c > 0);
  CHECK_THROWS_AS(synthetic_five_class_image(10, 100), Error);
}

TEST_CASE("synthetic image: the annulus class has an internal hole") {
  const std::size_t w = 100, h = 100;
  const ImageFeatures img = synthetic_five_class_image(w, h);
  // the hole: background labels strictly inside the annulus center
  const std::size_t cx = 30, cy = 28;
  CHECK(img.ground_truth[cy * w + cx] == 0);
  // ring members around it
  CHECK(img.ground_truth[cy * w + (cx + 13)] == 4);
  CHECK(img.ground_truth[(cy + 13) * w + cx] == 4);
  // junction of classes 1, 2 and the background near (1/3, 0.55)
  std::set<int> near;
  for (std::size_t row = 53; row < 57; ++row)
    for (std::size_t col = 31; col < 35; ++col)
      near.insert(img.ground_truth[row * w + col]);
  CHECK(near.count(0) == 1);
  CHECK(near.count(1) == 1);
  CHECK(near.count(2) == 1);
}

TEST_CASE("featurize_image: normalization and degenerate dimensions") {
  Image8 img;
  img.width = 2;
  img.height = 2;
  img.pixels = {0, 85, 170, 255};
  const ImageFeatures f = featurize_image(img);
  CHECK(f.features.rows == 4);
  CHECK(f.features.at(0, 2) == doctest::Approx(0.0));
  CHECK(f.features.at(1, 2) == doctest::Approx(85.0 / 255.0));
  CHECK(f.features.at(2, 2) == doctest::Approx(170.0 / 255.0));
  CHECK(f.features.at(3, 2) == doctest::Approx(1.0));
  CHECK(f.features.at(1, 0) == 1.0);  // x of col 1
  CHECK(f.features.at(2, 1) == 1.0);  // y of row 1

  Image8 row;
  row.width = 5;
  row.height = 1;
  row.pixels = {0, 1, 2, 3, 4};
  const ImageFeatures rf = featurize_image(row);
  for (std::size_t i = 0; i < 5; ++i) CHECK(rf.features.at(i, 1) == 0.0);
  CHECK(rf.features.at(0, 0) == 0.0);
  CHECK(rf.features.at(4, 0) == 1.0);
}

TEST_CASE("featurize_image row count matches width x height") {
  Image8 img;
  img.width = 191;
  img.height = 196;
  img.pixels.assign(191 * 196, 7);
  CHECK(featurize_image(img).features.rows == 37436);
}

TEST_CASE("PGM round-trip and format errors") {
  const fs::path dir = fs::temp_directory_path() / "glseg_test_pgm";
  fs::create_directories(dir);
  Image8 img;
  img.width = 7;
  img.height = 3;
  for (std::size_t i = 0; i < 21; ++i) img.pixels.push_back(i * 12);
  const std::string path = (dir / "img.pgm").string();
  write_pgm(img, path);
  const Image8 back = read_pgm(path);
  CHECK(back.width == img.width);
  CHECK(back.height == img.height);
  CHECK(back.pixels == img.pixels);

  const std::string bad = (dir / "bad.pgm").string();
  {
    std::ofstream out(bad, std::ios::binary);
    out << "P2\n2 2\n255\n0 0 0 0\n";
  }
  CHECK_THROWS_AS(read_pgm(bad), Error);
  CHECK_THROWS_AS(read_pgm((dir / "missing.pgm").string()), Error);
}

TEST_CASE("class masks are white on black") {
  const std::vector<int> labels{0, 1, 1, 0};
  const Image8 mask = render_class_mask(labels, 2, 2, 1);
  CHECK(mask.pixels == std::vector<std::uint8_t>{0, 255, 255, 0});
}

TEST_CASE("IDX ingestion: header checks and per-class subsampling") {
  const fs::path imgs =
      fs::path(GLSEG_DATA_DIR) / "mnist" / "mnist-sample-images-idx3-ubyte";
  const fs::path lbls =
      fs::path(GLSEG_DATA_DIR) / "mnist" / "mnist-sample-labels-idx1-ubyte";
  REQUIRE(fs::exists(imgs));
  REQUIRE(fs::exists(lbls));

  const LabeledFeatures data = load_idx_dataset(imgs.string(), lbls.string());
  CHECK(data.features.rows == 10000);
  CHECK(data.features.cols == 784);
  std::vector<int> counts(10, 0);
  for (int l : data.labels) {
    REQUIRE(l >= 0);
    REQUIRE(l <= 9);
    ++counts[l];
  }
  for (int c : counts) CHECK(c >= 300);
  for (double v : data.features.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }

  const LabeledFeatures sub =
      subsample_per_class(data.features, data.labels, 30, 11);
  CHECK(sub.features.rows == 300);
  std::vector<int> sub_counts(10, 0);
  for (int l : sub.labels) ++sub_counts[l];
  for (int c : sub_counts) CHECK(c == 30);

  // mismatched files are rejected
  CHECK_THROWS_AS(load_idx_dataset(lbls.string(), lbls.string()), Error);
  CHECK_THROWS_AS(load_idx_dataset(imgs.string(), imgs.string()), Error);
}
