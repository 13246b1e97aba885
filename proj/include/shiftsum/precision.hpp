#pragma once

#include <cstdint>

#include "shiftsum/common.hpp"

namespace shiftsum {

/// Error targets and truncation cutoffs shared by every series and quadrature.
///
/// Epsilons below the double-precision floor are clamped by `clamped()`.
struct PrecisionPolicy {
  static constexpr double kEpsilonFloor = 1e-14;

  double epsilon_abs = 1e-13;
  double epsilon_rel = 1e-12;
  /// Fourier extraction grid size (x-nodes on [0,1)).
  int quadrature_nodes = 64;
  /// Largest modulus c in c-sums (Kloosterman, E, E*, shifted sums).
  int64_t cutoff_csum = 1100;
  /// Hard cap on q-series / Dirichlet-series length.
  int64_t cutoff_qseries = 400000;
  /// Scale X of the Gaussian cutoff exp(-(n/X)^2) used for Dirichlet series
  /// outside their region of fast absolute convergence.
  double smoothing_scale = 40000.0;

  PrecisionPolicy clamped() const {
    PrecisionPolicy p = *this;
    if (p.epsilon_abs < kEpsilonFloor) p.epsilon_abs = kEpsilonFloor;
    if (p.epsilon_rel < kEpsilonFloor) p.epsilon_rel = kEpsilonFloor;
    return p;
  }

  void validate() const {
    require(epsilon_abs > 0 && epsilon_rel > 0, "precision: epsilons must be positive");
    require(quadrature_nodes > 0 && cutoff_csum > 0 && cutoff_qseries > 0,
            "precision: cutoffs must be positive");
    require(smoothing_scale > 0, "precision: smoothing scale must be positive");
  }
};

}  // namespace shiftsum
