#ifndef GLSEG_EVAL_HPP
#define GLSEG_EVAL_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace glseg {

/// Fraction of indices where predicted and truth disagree, optionally
/// ignoring an excluded index set (e.g. the fidelity points).
double error_rate(std::span<const int> predicted, std::span<const int> truth,
                  std::span<const std::size_t> exclude = {});

/// K x K counts; rows index the obtained label, columns the true label.
struct ConfusionMatrix {
  int num_classes = 0;
  std::vector<std::uint64_t> counts;  // row-major, rows = obtained

  std::uint64_t at(int obtained, int truth) const {
    return counts[static_cast<std::size_t>(obtained) * num_classes + truth];
  }
  std::uint64_t total() const;
  std::uint64_t trace() const;
};

ConfusionMatrix confusion(std::span<const int> predicted,
                          std::span<const int> truth, int num_classes);

/// Summary of per-run error rates: mean, sample standard deviation
/// (n-1 denominator; 0 with a flag for a single run), minimum, count.
struct RunStatistics {
  double mean = 0.0;
  double stddev = 0.0;
  double best = 0.0;
  std::size_t count = 0;
  bool stddev_defined = false;
};

RunStatistics aggregate(std::span<const double> errors);

}  // namespace glseg

#endif
