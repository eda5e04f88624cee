#ifndef GLSEG_IO_HPP
#define GLSEG_IO_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eval.hpp"
#include "segmenter.hpp"

namespace glseg {

/// Label CSV `index,label` (header optional on read; extra columns are
/// ignored, so segmentation result files can be re-read as labels).
/// Indices must cover 0..n-1 exactly.
std::vector<int> read_labels_csv(const std::string& path);
void write_labels_csv(std::span<const int> labels, const std::string& path);

/// Fidelity CSV `index,label`.
std::vector<std::pair<std::uint32_t, int>> read_fidelity_csv(
    const std::string& path);
void write_fidelity_csv(
    std::span<const std::pair<std::uint32_t, int>> entries,
    const std::string& path);

/// Segmentation result CSV `index,label,u`.
void write_result_csv(std::span<const int> labels,
                      std::span<const double> state, const std::string& path);

/// Energy trace CSV `iter,eps,smoothing,potential,fidelity,total`.
void write_trace_csv(std::span<const TraceEntry> trace,
                     const std::string& path);

/// Confusion matrix CSV with a leading header row and column of class
/// indices; rows are obtained labels, columns true labels.
void write_confusion_csv(const ConfusionMatrix& m, const std::string& path);

}  // namespace glseg

#endif
