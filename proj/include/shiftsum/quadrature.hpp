#pragma once

#include <functional>

#include "shiftsum/common.hpp"

namespace shiftsum {

struct QuadratureResult {
  cplx value;
  double error_estimate = 0.0;
  int evaluations = 0;
};

using ComplexIntegrand = std::function<cplx(double)>;

/// Double-exponential (tanh-sinh) rule on a finite interval [a, b]; tolerates
/// integrable endpoint singularities. Halves the step until successive levels
/// agree to `rel_tol`.
QuadratureResult tanh_sinh(const ComplexIntegrand& f, double a, double b, double rel_tol = 1e-12,
                           int max_level = 9);

/// Double-exponential (exp-sinh) rule on [a, infinity) for integrands that
/// decay at least exponentially.
QuadratureResult exp_sinh(const ComplexIntegrand& f, double a, double rel_tol = 1e-12, int max_level = 9);

}  // namespace shiftsum
