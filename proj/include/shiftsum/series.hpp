#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "shiftsum/common.hpp"
#include "shiftsum/cuspform.hpp"
#include "shiftsum/precision.hpp"

namespace shiftsum {

/// A truncated series value with its truncation metadata.
struct SeriesResult {
  cplx value;
  double error_estimate = 0.0;
  int64_t terms = 0;
  bool smoothed = false;
};

/// Number of terms kept by the Gaussian cutoff exp(-(n/X)^2); beyond it the
/// weight is below e^{-37}.
inline int64_t smoothed_length(double X) { return static_cast<int64_t>(std::ceil(6.1 * X)); }

/// sum_{n >= 1} term(n) exp(-(n/X)^2), with the X^{-2} cutoff error removed.
///
/// For a Dirichlet series D continuing analytically a distance > 2 to the
/// left, the cutoff sum is D(t) - D(t - 2) X^{-2} + O(X^{-4}). Companion sums
/// at X/2 and X/4 give R(X) = S(X) + (S(X) - S(X/2))/3, which cancels the
/// X^{-2} term, and the estimate |R(X) - R(X/2)|. That estimate dominates a
/// residual c X^{-a} for any a >= 1, so it also covers series whose
/// continuation has poles closer than 2.
template <typename Term>
SeriesResult smoothed_series(Term term, double X) {
  const int64_t M = smoothed_length(X);
  CompensatedSum<cplx> s1, s2, s4;
  const double inv = 1.0 / X;
  for (int64_t n = 1; n <= M; ++n) {
    const cplx v = term(n);
    const double u = static_cast<double>(n) * inv;
    const double g = std::exp(-u * u);
    const double g4 = g * g * g * g;
    s1 += v * g;
    s2 += v * g4;
    s4 += v * (g4 * g4 * g4 * g4);
  }
  const cplx r1 = s1.value() + (s1.value() - s2.value()) / 3.0;
  const cplx r2 = s2.value() + (s2.value() - s4.value()) / 3.0;
  SeriesResult r;
  r.value = r1;
  r.error_estimate = std::abs(r1 - r2) + std::numeric_limits<double>::epsilon() * std::abs(r1);
  r.terms = M;
  r.smoothed = true;
  return r;
}

/// sum_{n=1}^{M} term(n), with a caller-supplied bound on the discarded tail.
template <typename Term>
SeriesResult sharp_series(Term term, int64_t M, double tail_bound) {
  CompensatedSum<cplx> acc;
  for (int64_t n = 1; n <= M; ++n) acc += term(n);
  return {acc.value(), tail_bound, M, false};
}

/// Smallest M with 2 B M^{2-sigma} / (sigma - 2) <= eps: the sharp tail bound
/// for sum a(n) w(n) n^{-t} under |a(n)| <= 2n and |w(n)| <= B. Returns 0
/// when sigma <= 2 (no sharp bound) and INT64_MAX when out of reach.
inline int64_t cusp_sharp_terms(double sigma, double weight_bound, double eps) {
  if (sigma <= 2.0) return 0;
  const double M = std::pow(eps * (sigma - 2.0) / (2.0 * weight_bound), -1.0 / (sigma - 2.0));
  if (!(M < 1e15)) return INT64_MAX;
  return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(M)));
}

/// sum_{n >= 1} a(n) w(n) n^{-t}: sharp truncation when its tail bound fits
/// the coefficient budget, Gaussian smoothing otherwise.
template <typename Weight>
SeriesResult cusp_series(const CuspFormCoefficients& a, Weight w, double weight_bound, cplx t,
                         const PrecisionPolicy& policy, const char* name) {
  const double sigma = t.real();
  const int64_t M = cusp_sharp_terms(sigma, weight_bound, policy.epsilon_abs);
  const int64_t cap = std::min(a.size(), policy.cutoff_qseries);
  auto term = [&](int64_t n) {
    return static_cast<double>(a(n)) * w(n) * std::exp(-t * std::log(static_cast<double>(n)));
  };
  if (M > 0 && M <= cap) {
    const double bound = 2.0 * weight_bound * std::pow(static_cast<double>(M), 2.0 - sigma) / (sigma - 2.0);
    return sharp_series(term, M, bound);
  }
  const double X = policy.smoothing_scale;
  if (smoothed_length(X) > cap)
    throw BudgetError(std::string(name) + ": smoothing scale needs " + std::to_string(smoothed_length(X)) +
                      " coefficients, have " + std::to_string(cap));
  return smoothed_series(term, X);
}

/// Number of terms cusp_series will read (for sizing auxiliary tables).
inline int64_t cusp_series_length(const CuspFormCoefficients& a, double weight_bound, double sigma,
                                  const PrecisionPolicy& policy) {
  const int64_t cap = std::min(a.size(), policy.cutoff_qseries);
  const int64_t M = cusp_sharp_terms(sigma, weight_bound, policy.epsilon_abs);
  if (M > 0 && M <= cap) return M;
  return smoothed_length(policy.smoothing_scale);
}

}  // namespace shiftsum
