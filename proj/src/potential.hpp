#ifndef GLSEG_POTENTIAL_HPP
#define GLSEG_POTENTIAL_HPP

#include <cmath>

namespace glseg {

// Scalar machinery of the periodic-well model: fractional part, the well and
// its derivative, distance to the nearest half-integer, label thresholding
// and the label-order-symmetric difference rho. All functions are pure and
// total over finite inputs.

/// Fractional part u - floor(u), in [0, 1).
inline double frac(double u) {
  const double f = u - std::floor(u);
  // u - floor(u) can round up to exactly 1.0 for tiny negative u.
  return f < 1.0 ? f : 0.0;
}

/// Periodic well F(u) = 1/2 {u}^2 ({u}-1)^2; period 1, zero at integers.
inline double well(double u) {
  const double f = frac(u);
  const double g = f - 1.0;
  return 0.5 * f * f * g * g;
}

/// F'(u) = 2{u}^3 - 3{u}^2 + {u}.
inline double well_deriv(double u) {
  const double f = frac(u);
  return f * (2.0 * f * f - 3.0 * f + 1.0);
}

/// Distance from u to the nearest half-integer: |1/2 - {u}|, in [0, 1/2].
inline double rhat(double u) { return std::abs(0.5 - frac(u)); }

/// Subderivative of rhat: -1 for {u} in (0,1/2), +1 for {u} in (1/2,1),
/// 0 at the kinks {u} in {0, 1/2} (minimal-norm subgradient).
inline int rhat_deriv(double u) {
  const double f = frac(u);
  if (f == 0.0 || f == 0.5) return 0;
  return f < 0.5 ? -1 : 1;
}

/// Threshold label floor(u + 1/2). Unclamped: out-of-range drift must stay
/// visible to the solver's reassignment step.
inline long long label_of(double u) {
  return static_cast<long long>(std::floor(u + 0.5));
}

/// Clamp a thresholded label into [0, K-1] for final reporting.
inline int clamp_label(long long label, int num_classes) {
  if (label < 0) return 0;
  if (label >= num_classes) return num_classes - 1;
  return static_cast<int>(label);
}

/// Generalized difference: rhat values add across a class boundary and
/// subtract within a class. Symmetric, in [0, 1], not a metric.
inline double rho(double ui, double uj) {
  const double ri = rhat(ui);
  const double rj = rhat(uj);
  return label_of(ui) != label_of(uj) ? ri + rj : std::abs(ri - rj);
}

}  // namespace glseg

#endif
