#ifndef GLSEG_IDX_HPP
#define GLSEG_IDX_HPP

#include <string>

#include "datasets.hpp"

namespace glseg {

/// MNIST-style IDX ingestion: big-endian headers, magic 2051 for image
/// files and 2049 for label files. Pixel intensities are scaled to [0, 1],
/// one row per image; counts of the two files are cross-checked.
LabeledFeatures load_idx_dataset(const std::string& images_path,
                                 const std::string& labels_path);

}  // namespace glseg

#endif
