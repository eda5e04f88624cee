#include "datasets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "common.hpp"
#include "rng.hpp"

namespace glseg {

LabeledFeatures three_moons(const ThreeMoonsParams& params) {
  require(params.points_per_moon >= 1, ErrorCode::invalid_config,
          "points_per_moon must be >= 1");
  require(params.ambient_dim >= 2, ErrorCode::invalid_config,
          "ambient_dim must be >= 2");
  require(params.noise_variance >= 0.0, ErrorCode::invalid_config,
          "noise_variance must be >= 0");

  static constexpr double radii[3] = {1.0, 1.0, 1.5};
  static constexpr double centers[3][2] = {{0.0, 0.0}, {3.0, 0.0}, {1.5, 0.4}};
  const double pi = std::numbers::pi;
  // angle ranges: upper half for the top moons, lower half for the bottom
  const double lo[3] = {0.0, 0.0, pi};
  const double hi[3] = {pi, pi, 2.0 * pi};

  const std::size_t per = params.points_per_moon;
  const std::size_t d = params.ambient_dim;
  LabeledFeatures out;
  out.features = FeatureMatrix(3 * per, d);
  out.labels.resize(3 * per);

  Rng rng(params.seed);
  const double sigma = std::sqrt(params.noise_variance);
  for (int moon = 0; moon < 3; ++moon) {
    for (std::size_t p = 0; p < per; ++p) {
      const std::size_t i = moon * per + p;
      const double theta = rng.uniform(lo[moon], hi[moon]);
      out.features.at(i, 0) = centers[moon][0] + radii[moon] * std::cos(theta);
      out.features.at(i, 1) = centers[moon][1] + radii[moon] * std::sin(theta);
      if (sigma > 0.0)
        for (std::size_t j = 0; j < d; ++j)
          out.features.at(i, j) += sigma * rng.normal();
      out.labels[i] = moon;
    }
  }
  return out;
}

namespace {

int skip_pgm_whitespace(std::istream& in) {
  int c = in.get();
  for (;;) {
    while (c == ' ' || c == '\t' || c == '\r' || c == '\n') c = in.get();
    if (c != '#') return c;
    while (c != '\n' && c != EOF) c = in.get();
  }
}

std::size_t read_pgm_number(std::istream& in, const std::string& path) {
  int c = skip_pgm_whitespace(in);
  require(c >= '0' && c <= '9', ErrorCode::format,
          path + ": malformed PGM header");
  std::size_t v = 0;
  while (c >= '0' && c <= '9') {
    v = v * 10 + static_cast<std::size_t>(c - '0');
    c = in.get();
  }
  return v;
}

}  // namespace

Image8 read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::io, "cannot open image: " + path);
  char m0 = 0, m1 = 0;
  in.get(m0).get(m1);
  require(m0 == 'P' && m1 == '5', ErrorCode::format,
          path + ": not a binary PGM (P5) file");
  Image8 img;
  img.width = read_pgm_number(in, path);
  img.height = read_pgm_number(in, path);
  const std::size_t maxval = read_pgm_number(in, path);
  require(maxval == 255, ErrorCode::format,
          path + ": unsupported PGM maxval " + std::to_string(maxval) +
              " (want 255)");
  require(img.width >= 1 && img.height >= 1, ErrorCode::format,
          path + ": empty image");
  img.pixels.resize(img.width * img.height);
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  require(in.gcount() == static_cast<std::streamsize>(img.pixels.size()),
          ErrorCode::format, path + ": truncated pixel data");
  return img;
}

void write_pgm(const Image8& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::io, "cannot write image: " + path);
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

ImageFeatures featurize_image(const Image8& image) {
  require(image.width >= 1 && image.height >= 1 &&
              image.pixels.size() == image.width * image.height,
          ErrorCode::invalid_argument, "image is empty or inconsistent");
  ImageFeatures out;
  out.width = image.width;
  out.height = image.height;
  out.features = FeatureMatrix(image.width * image.height, 3);
  const double xden = static_cast<double>(std::max<std::size_t>(image.width - 1, 1));
  const double yden = static_cast<double>(std::max<std::size_t>(image.height - 1, 1));
  for (std::size_t row = 0; row < image.height; ++row) {
    for (std::size_t col = 0; col < image.width; ++col) {
      const std::size_t i = row * image.width + col;
      out.features.at(i, 0) = static_cast<double>(col) / xden;
      out.features.at(i, 1) = static_cast<double>(row) / yden;
      out.features.at(i, 2) = image.pixels[i] / 255.0;
    }
  }
  return out;
}

ImageFeatures synthetic_five_class_image(std::size_t width,
                                         std::size_t height) {
  require(width >= 50 && height >= 50, ErrorCode::invalid_config,
          "synthetic image requires width and height >= 50");
  ImageFeatures out;
  out.width = width;
  out.height = height;
  out.features = FeatureMatrix(width * height, 3);
  out.ground_truth.resize(width * height);
  for (std::size_t row = 0; row < height; ++row) {
    for (std::size_t col = 0; col < width; ++col) {
      const std::size_t i = row * width + col;
      const double fx = static_cast<double>(col) / (width - 1);
      const double fy = static_cast<double>(row) / (height - 1);
      int label = 0;
      if (fy >= 0.55) {
        label = fx < 1.0 / 3.0 ? 1 : (fx < 2.0 / 3.0 ? 2 : 3);
      } else {
        const double r = std::hypot(fx - 0.3, fy - 0.28);
        if (r >= 0.08 && r <= 0.18) label = 4;  // annulus around a hole
      }
      out.ground_truth[i] = label;
      out.features.at(i, 0) = fx;
      out.features.at(i, 1) = fy;
      out.features.at(i, 2) = label / 4.0;
    }
  }
  return out;
}

Image8 render_labels(std::span<const int> labels, std::size_t width,
                     std::size_t height, int num_classes) {
  require(labels.size() == width * height, ErrorCode::size_mismatch,
          "label count does not match image dimensions");
  require(num_classes >= 2, ErrorCode::invalid_argument,
          "need at least two classes");
  Image8 img;
  img.width = width;
  img.height = height;
  img.pixels.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double v = static_cast<double>(labels[i]) / (num_classes - 1);
    img.pixels[i] = static_cast<std::uint8_t>(std::lround(v * 255.0));
  }
  return img;
}

Image8 render_class_mask(std::span<const int> labels, std::size_t width,
                         std::size_t height, int cls) {
  require(labels.size() == width * height, ErrorCode::size_mismatch,
          "label count does not match image dimensions");
  Image8 img;
  img.width = width;
  img.height = height;
  img.pixels.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    img.pixels[i] = labels[i] == cls ? 255 : 0;
  return img;
}

LabeledFeatures subsample_per_class(const FeatureMatrix& features,
                                    std::span<const int> labels,
                                    std::size_t per_class,
                                    std::uint64_t seed) {
  require(features.rows == labels.size(), ErrorCode::size_mismatch,
          "label count does not match feature rows");
  require(per_class >= 1, ErrorCode::invalid_config,
          "per-class sample size must be >= 1");
  int num_classes = 0;
  for (int v : labels) {
    require(v >= 0, ErrorCode::invalid_label, "negative class label");
    num_classes = std::max(num_classes, v + 1);
  }
  std::vector<std::uint32_t> chosen;
  for (int k = 0; k < num_classes; ++k) {
    std::vector<std::uint32_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == k) members.push_back(static_cast<std::uint32_t>(i));
    require(members.size() >= per_class, ErrorCode::invalid_config,
            "class " + std::to_string(k) + " has only " +
                std::to_string(members.size()) + " members; cannot sample " +
                std::to_string(per_class));
    Rng rng(seed, static_cast<std::uint64_t>(k));
    rng.shuffle(members);
    chosen.insert(chosen.end(), members.begin(), members.begin() + per_class);
  }
  std::sort(chosen.begin(), chosen.end());

  LabeledFeatures out;
  out.features = FeatureMatrix(chosen.size(), features.cols);
  out.labels.resize(chosen.size());
  for (std::size_t p = 0; p < chosen.size(); ++p) {
    const auto src = features.row(chosen[p]);
    std::copy(src.begin(), src.end(),
              out.features.values.begin() + p * features.cols);
    out.labels[p] = labels[chosen[p]];
  }
  return out;
}

}  // namespace glseg
