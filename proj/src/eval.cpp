#include "eval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "common.hpp"

namespace glseg {

double error_rate(std::span<const int> predicted, std::span<const int> truth,
                  std::span<const std::size_t> exclude) {
  require(predicted.size() == truth.size(), ErrorCode::size_mismatch,
          "predicted and truth label vectors differ in length (" +
              std::to_string(predicted.size()) + " vs " +
              std::to_string(truth.size()) + ")");
  std::vector<bool> skip;
  if (!exclude.empty()) {
    skip.assign(predicted.size(), false);
    for (std::size_t i : exclude)
      if (i < skip.size()) skip[i] = true;
  }
  std::size_t counted = 0, wrong = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (!skip.empty() && skip[i]) continue;
    ++counted;
    if (predicted[i] != truth[i]) ++wrong;
  }
  require(counted > 0, ErrorCode::invalid_argument,
          "every point is excluded from the error rate");
  return static_cast<double>(wrong) / static_cast<double>(counted);
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t s = 0;
  for (std::uint64_t c : counts) s += c;
  return s;
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t s = 0;
  for (int k = 0; k < num_classes; ++k) s += at(k, k);
  return s;
}

ConfusionMatrix confusion(std::span<const int> predicted,
                          std::span<const int> truth, int num_classes) {
  require(predicted.size() == truth.size(), ErrorCode::size_mismatch,
          "predicted and truth label vectors differ in length");
  require(num_classes >= 1, ErrorCode::invalid_argument,
          "class count must be >= 1");
  ConfusionMatrix m;
  m.num_classes = num_classes;
  m.counts.assign(static_cast<std::size_t>(num_classes) * num_classes, 0);
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const int p = predicted[i];
    const int t = truth[i];
    require(p >= 0 && p < num_classes, ErrorCode::invalid_label,
            "obtained label " + std::to_string(p) + " outside [0, K-1]");
    require(t >= 0 && t < num_classes, ErrorCode::invalid_label,
            "true label " + std::to_string(t) + " outside [0, K-1]");
    ++m.counts[static_cast<std::size_t>(p) * num_classes + t];
  }
  return m;
}

RunStatistics aggregate(std::span<const double> errors) {
  require(!errors.empty(), ErrorCode::invalid_argument,
          "cannot aggregate an empty error sequence");
  RunStatistics s;
  s.count = errors.size();
  double sum = 0.0;
  s.best = errors[0];
  for (double e : errors) {
    sum += e;
    s.best = std::min(s.best, e);
  }
  s.mean = sum / static_cast<double>(s.count);
  if (s.count >= 2) {
    // a constant sequence has stddev exactly 0 even when its mean rounds
    const bool constant =
        std::all_of(errors.begin(), errors.end(),
                    [&](double e) { return e == errors[0]; });
    if (!constant) {
      double ss = 0.0;
      for (double e : errors) ss += (e - s.mean) * (e - s.mean);
      s.stddev = std::sqrt(ss / static_cast<double>(s.count - 1));
    }
    s.stddev_defined = true;
  }
  return s;
}

}  // namespace glseg
