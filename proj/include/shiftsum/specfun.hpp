#pragma once

#include <cstdint>
#include <functional>

#include "shiftsum/common.hpp"
#include "shiftsum/precision.hpp"
#include "shiftsum/quadrature.hpp"

namespace shiftsum {

/// Gamma(s) for complex s away from the poles (Stirling series after upward
/// shift, reflection for Re(s) < 1/2). Relative error ~1e-14.
cplx complex_gamma(cplx s);

/// Upper incomplete gamma Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt, x > 0.
/// Continued fraction for x >= |s| + 2, power series otherwise.
cplx inc_gamma_upper(cplx s, double x);

struct BesselKResult {
  cplx value;
  bool underflow = false;  // e^{-y} below the double range; value reported as 0
};

/// K_nu(y) = int_0^inf e^{-y cosh u} cosh(nu u) du by the trapezoid rule,
/// which converges geometrically for this even, entire integrand.
BesselKResult bessel_k_checked(cplx nu, double y);
cplx bessel_k(cplx nu, double y);
/// e^{y} K_nu(y), finite for all y > 0.
cplx bessel_k_scaled(cplx nu, double y);

/// Test function h_x(y) = e^{-y} y^x with Re(x) > 0.
struct TestFunctionHx {
  cplx x;
  explicit TestFunctionHx(cplx exponent);
  cplx operator()(double y) const;
};

using TestFunction = std::function<cplx(double)>;

/// h_x(|n| y / |n - l|) e^{-l y / |n - l|}, evaluated literally.
TestFunction shifted_test_function(int64_t n, int64_t l, cplx x);

/// (|n| / |n - l|)^x: the factor by which the transform of the shifted test
/// function differs from that of h_x when n < 0 < l.
cplx shift_scaling_factor(int64_t n, int64_t l, cplx x);

/// int_0^inf K_s(y) h(y) y^{-3/2} dy by double-exponential quadrature split at y = 1.
/// Throws BudgetError when the integrand does not decay at the far end.
QuadratureResult k_transform_numeric(const TestFunction& h, cplx s, const PrecisionPolicy& policy);

/// Closed form of the transform of h_x:
/// sqrt(pi) Gamma(x - 1/2 + s) Gamma(x - 1/2 - s) / (2^{x - 1/2} Gamma(x)).
cplx k_transform_hx_closed(cplx x, cplx s);

}  // namespace shiftsum
