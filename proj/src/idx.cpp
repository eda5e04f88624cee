#include "idx.hpp"

#include <cstdint>
#include <fstream>

#include "common.hpp"

namespace glseg {

namespace {

std::uint32_t get_u32_be(std::istream& in, const std::string& path) {
  unsigned char b[4];
  require(bool(in.read(reinterpret_cast<char*>(b), 4)), ErrorCode::format,
          path + ": truncated IDX header");
  return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
         (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

}  // namespace

LabeledFeatures load_idx_dataset(const std::string& images_path,
                                 const std::string& labels_path) {
  std::ifstream imgs(images_path, std::ios::binary);
  require(imgs.good(), ErrorCode::io, "cannot open IDX file: " + images_path);
  const std::uint32_t img_magic = get_u32_be(imgs, images_path);
  require(img_magic == 2051, ErrorCode::format,
          images_path + ": bad IDX magic " + std::to_string(img_magic) +
              " (want 2051 for images)");
  const std::uint32_t count = get_u32_be(imgs, images_path);
  const std::uint32_t rows = get_u32_be(imgs, images_path);
  const std::uint32_t cols = get_u32_be(imgs, images_path);
  require(count >= 1 && rows >= 1 && cols >= 1, ErrorCode::format,
          images_path + ": empty IDX image file");

  std::ifstream lbls(labels_path, std::ios::binary);
  require(lbls.good(), ErrorCode::io, "cannot open IDX file: " + labels_path);
  const std::uint32_t lbl_magic = get_u32_be(lbls, labels_path);
  require(lbl_magic == 2049, ErrorCode::format,
          labels_path + ": bad IDX magic " + std::to_string(lbl_magic) +
              " (want 2049 for labels)");
  const std::uint32_t lbl_count = get_u32_be(lbls, labels_path);
  require(lbl_count == count, ErrorCode::size_mismatch,
          "IDX image/label counts differ: " + std::to_string(count) + " vs " +
              std::to_string(lbl_count));

  const std::size_t dim = std::size_t(rows) * cols;
  LabeledFeatures out;
  out.features = FeatureMatrix(count, dim);
  out.labels.resize(count);

  std::vector<unsigned char> buf(dim);
  for (std::uint32_t i = 0; i < count; ++i) {
    require(bool(imgs.read(reinterpret_cast<char*>(buf.data()),
                           static_cast<std::streamsize>(dim))),
            ErrorCode::format, images_path + ": truncated pixel data");
    for (std::size_t j = 0; j < dim; ++j)
      out.features.values[std::size_t(i) * dim + j] = buf[j] / 255.0;
    const int c = lbls.get();
    require(c != EOF, ErrorCode::format, labels_path + ": truncated labels");
    out.labels[i] = c;
  }
  return out;
}

}  // namespace glseg
