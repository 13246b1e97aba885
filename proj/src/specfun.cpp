#include "shiftsum/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace shiftsum {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

// log Gamma(w) by the Stirling series; accurate for |w| >= 15, Re(w) > 0.
cplx stirling_log_gamma(cplx w) {
  static constexpr std::array<double, 8> c{1.0 / 12.0,       -1.0 / 360.0,    1.0 / 1260.0,
                                           -1.0 / 1680.0,    1.0 / 1188.0,    -691.0 / 360360.0,
                                           1.0 / 156.0,      -3617.0 / 122400.0};
  const cplx inv = 1.0 / w;
  const cplx inv2 = inv * inv;
  cplx corr{0.0, 0.0};
  cplx p = inv;
  for (double ck : c) {
    corr += ck * p;
    p *= inv2;
  }
  return (w - 0.5) * std::log(w) - w + 0.5 * std::log(kTwoPi) + corr;
}

bool near_nonpositive_integer(cplx s) {
  const double r = std::round(s.real());
  return r <= 0.0 && std::abs(s.imag()) < 1e-13 && std::abs(s.real() - r) < 1e-13;
}

// zeta(k) for integer k >= 2, by direct summation plus Euler-Maclaurin tail.
double zeta_int(int k) {
  constexpr int n0 = 20;
  double s = 0.0;
  for (int n = n0 - 1; n >= 1; --n) s += std::pow(static_cast<double>(n), -k);
  const double N = n0;
  const double kk = k;
  s += std::pow(N, 1.0 - kk) / (kk - 1.0) + 0.5 * std::pow(N, -kk) + kk / 12.0 * std::pow(N, -kk - 1.0) -
       kk * (kk + 1.0) * (kk + 2.0) / 720.0 * std::pow(N, -kk - 3.0);
  return s;
}

// expm1 for complex argument without cancellation for small |z|.
cplx expm1c(cplx z) {
  const double a = z.real(), b = z.imag();
  const double sb2 = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * sb2 * sb2, std::exp(a) * std::sin(b)};
}

// (Gamma(1+s) - 1) / s for |s| < 1/2, via the Taylor series of log Gamma(1+s).
cplx gamma1p_minus_one_over_s(cplx s) {
  cplx series = -kEulerGamma * s;
  cplx p = s * s;
  for (int k = 2; k < 80; ++k) {
    const cplx term = ((k % 2 == 0) ? 1.0 : -1.0) * zeta_int(k) / k * p;
    series += term;
    if (std::abs(term) < 1e-18 * std::max(1e-300, std::abs(series))) break;
    p *= s;
  }
  if (s == cplx{0.0, 0.0}) return -kEulerGamma;
  return expm1c(series) / s;
}

cplx inc_gamma_cf(cplx s, double x) {
  constexpr double kFpMin = 1e-300;
  cplx b = x + 1.0 - s;
  cplx c = 1.0 / kFpMin;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 10000; ++i) {
    const cplx an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = b + an / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const cplx del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + s * std::log(x)) * h;
}

// lower incomplete gamma by its power series
cplx inc_gamma_lower_series(cplx s, double x) {
  cplx ap = s;
  cplx del = 1.0 / s;
  cplx sum = del;
  for (int n = 0; n < 10000; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + s * std::log(x));
}

// Gamma(s, x) for |s| < 1/2 and moderate x, free of the cancellation in Gamma(s) - gamma(s,x).
cplx inc_gamma_small_s(cplx s, double x) {
  const double lx = std::log(x);
  // (x^s - 1)/s
  const cplx xs_m1_over_s = (s == cplx{0.0, 0.0}) ? cplx(lx, 0.0) : expm1c(s * lx) / s;
  cplx head = gamma1p_minus_one_over_s(s) - xs_m1_over_s;
  // - sum_{k>=1} (-1)^k x^{s+k} / (k! (s+k))
  const cplx xs = std::exp(s * lx);
  cplx tail{0.0, 0.0};
  double pk = 1.0;
  for (int k = 1; k < 500; ++k) {
    pk *= -x / k;
    const cplx term = pk / (s + static_cast<double>(k));
    tail += term;
    if (std::abs(term) < 1e-18 * std::abs(tail)) break;
  }
  return head - xs * tail;
}

}  // namespace

cplx complex_gamma(cplx s) {
  if (near_nonpositive_integer(s)) throw PreconditionError("gamma: pole at a non-positive integer");
  if (s.real() < 0.5) return kPi / (std::sin(kPi * s) * complex_gamma(1.0 - s));
  cplx prod{1.0, 0.0};
  cplx w = s;
  while (w.real() < 15.0) {
    prod *= w;
    w += 1.0;
  }
  return std::exp(stirling_log_gamma(w)) / prod;
}

cplx inc_gamma_upper(cplx s, double x) {
  require(x > 0.0, "inc_gamma_upper: need x > 0");
  if (x >= std::abs(s) + 2.0) return inc_gamma_cf(s, x);
  if (std::abs(s) < 0.5) return inc_gamma_small_s(s, x);
  if (s.real() < -0.5) {
    // Gamma(s, x) = (Gamma(s+1, x) - x^s e^{-x}) / s
    return (inc_gamma_upper(s + 1.0, x) - std::exp(s * std::log(x) - x)) / s;
  }
  return complex_gamma(s) - inc_gamma_lower_series(s, x);
}

cplx bessel_k_scaled(cplx nu, double y) {
  require(y > 0.0, "bessel_k: need y > 0");
  // Geometric convergence of the trapezoid rule: strip width ~ pi/4 gives
  // error ~ exp(-pi^2 / (2h)); the y-dependent cap resolves the Gaussian core
  // of exp(-y (cosh u - 1)) for large y.
  const double h = std::min(0.05, 0.5 / std::sqrt(y));
  const double re_nu = std::abs(nu.real());
  CompensatedSum<cplx> acc;
  acc += 0.5;  // u = 0: e^0 cosh(0) / 2
  for (int k = 1; k < 2000000; ++k) {
    const double u = k * h;
    const double sh = std::sinh(0.5 * u);
    const double decay = -2.0 * y * sh * sh;  // cosh u - 1 without cancellation
    const cplx term = std::exp(decay) * std::cosh(nu * u);
    acc += term;
    // past the peak of e^{-y cosh u + |Re nu| u} and negligible
    if (y * std::sinh(u) > re_nu + 1.0 && std::abs(term) < 1e-18 * std::abs(acc.value())) break;
  }
  return h * acc.value();
}

BesselKResult bessel_k_checked(cplx nu, double y) {
  const cplx scaled = bessel_k_scaled(nu, y);
  const double e = std::exp(-y);
  BesselKResult r;
  if (e == 0.0 || !std::isnormal(std::abs(scaled) * e)) {
    r.value = 0.0;
    r.underflow = true;
  } else {
    r.value = scaled * e;
  }
  return r;
}

cplx bessel_k(cplx nu, double y) { return bessel_k_checked(nu, y).value; }

TestFunctionHx::TestFunctionHx(cplx exponent) : x(exponent) {
  require(exponent.real() > 0.0, "h_x: need Re(x) > 0");
}

cplx TestFunctionHx::operator()(double y) const { return std::exp(-y + x * std::log(y)); }

TestFunction shifted_test_function(int64_t n, int64_t l, cplx x) {
  require(n != 0 && l != n, "shifted_test_function: needs n != 0 and l != n");
  const double an = std::abs(static_cast<double>(n));
  const double d = std::abs(static_cast<double>(n - l));
  const double ld = static_cast<double>(l);
  const TestFunctionHx hx(x);
  return [=](double y) { return hx(an * y / d) * std::exp(-ld * y / d); };
}

cplx shift_scaling_factor(int64_t n, int64_t l, cplx x) {
  require(n != 0 && l != n, "shift_scaling_factor: needs n != 0 and l != n");
  return std::exp(x * std::log(std::abs(static_cast<double>(n)) / std::abs(static_cast<double>(n - l))));
}

QuadratureResult k_transform_numeric(const TestFunction& h, cplx s, const PrecisionPolicy& policy) {
  const PrecisionPolicy p = policy.clamped();
  const double tol = std::max(p.epsilon_rel, 1e-13);
  auto integrand = [&](double y) -> cplx {
    const cplx hy = h(y);
    if (hy == cplx{0.0, 0.0}) return 0.0;
    // K_s(y) h(y) y^{-3/2}, with e^{-y} carried inside the scaled Bessel value
    return bessel_k_scaled(s, y) * hy * std::exp(-y - 1.5 * std::log(y));
  };
  const QuadratureResult head = tanh_sinh(integrand, 0.0, 1.0, tol);
  const QuadratureResult tail = exp_sinh(integrand, 1.0, tol);

  // Tail monitoring: the integrand must have died out far to the right.
  const double far = 700.0;
  const double far_mag = std::abs(integrand(far)) * far;
  const double total_mag = std::abs(head.value + tail.value);
  if (!std::isfinite(far_mag) || !std::isfinite(total_mag) || far_mag > 1e-8 * std::max(total_mag, 1e-300))
    throw BudgetError("k_transform: integrand does not decay at infinity");

  QuadratureResult r;
  r.value = head.value + tail.value;
  r.error_estimate = head.error_estimate + tail.error_estimate;
  r.evaluations = head.evaluations + tail.evaluations;
  return r;
}

cplx k_transform_hx_closed(cplx x, cplx s) {
  const cplx a = x - 0.5 + s;
  const cplx b = x - 0.5 - s;
  require(a.real() > 0.0 && b.real() > 0.0, "k_transform_hx_closed: need Re(x - 1/2 +- s) > 0");
  return std::sqrt(kPi) * complex_gamma(a) * complex_gamma(b) / (std::pow(2.0, x - 0.5) * complex_gamma(x));
}

}  // namespace shiftsum
