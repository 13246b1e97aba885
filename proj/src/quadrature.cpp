#include "shiftsum/quadrature.hpp"

#include <cmath>
#include <limits>

namespace shiftsum {

namespace {

// One level of a double-exponential rule: sums w(t) f(x(t)) over t = offset + k*step,
// walking outward from t = 0 in both directions until terms become negligible.
template <typename Node>
cplx de_level_sum(const ComplexIntegrand& f, Node node, double step, bool odd_only, double scale_hint,
                  int& evals) {
  CompensatedSum<cplx> acc;
  constexpr double kTiny = 1e-17;
  for (int dir : {+1, -1}) {
    int quiet = 0;
    for (int k = (odd_only ? 1 : (dir > 0 ? 0 : 1));; k += (odd_only ? 2 : 1)) {
      const double t = dir * k * step;
      if (std::abs(t) > 6.5) break;
      double x = 0.0, w = 0.0;
      if (!node(t, x, w)) break;
      const cplx term = w * f(x);
      ++evals;
      acc += term;
      const double mag = std::abs(term);
      const double ref = std::max(std::abs(acc.value()), scale_hint);
      quiet = (mag <= kTiny * ref) ? quiet + 1 : 0;
      if (quiet >= 3) break;
    }
  }
  return acc.value();
}

template <typename Node>
QuadratureResult de_integrate(const ComplexIntegrand& f, Node node, double rel_tol, int max_level) {
  QuadratureResult r;
  double step = 0.5;
  cplx raw = de_level_sum(f, node, step, false, 0.0, r.evaluations);
  cplx estimate = raw * step;
  double err = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= max_level; ++level) {
    step *= 0.5;
    raw += de_level_sum(f, node, step, true, std::abs(raw), r.evaluations);
    const cplx next = raw * step;
    err = std::abs(next - estimate);
    estimate = next;
    if (level >= 3 && err <= rel_tol * std::abs(estimate)) break;
  }
  r.value = estimate;
  r.error_estimate = err;
  return r;
}

}  // namespace

QuadratureResult tanh_sinh(const ComplexIntegrand& f, double a, double b, double rel_tol, int max_level) {
  require(b > a, "tanh_sinh: need a < b");
  const double len = b - a;
  auto node = [a, b, len](double t, double& x, double& w) {
    const double u = 0.5 * kPi * std::sinh(t);
    const double du = 0.5 * kPi * std::cosh(t);
    // distance from a is len / (1 + e^{2u}); written to stay accurate near both ends
    double frac;
    if (u > 0) {
      const double e = std::exp(-2.0 * u);
      frac = e / (1.0 + e);
    } else {
      frac = 1.0 / (1.0 + std::exp(2.0 * u));
    }
    x = a + len * frac;
    const double ch = std::cosh(u);
    w = len * du / (2.0 * ch * ch);
    if (!(w > 0.0) || x <= a || x >= b) return false;
    return true;
  };
  return de_integrate(f, node, rel_tol, max_level);
}

QuadratureResult exp_sinh(const ComplexIntegrand& f, double a, double rel_tol, int max_level) {
  auto node = [a](double t, double& x, double& w) {
    const double u = 0.5 * kPi * std::sinh(t);
    if (u > 700.0) return false;
    const double e = std::exp(u);
    x = a + e;
    w = 0.5 * kPi * std::cosh(t) * e;
    if (!(w > 0.0) || x <= a) return false;
    return true;
  };
  return de_integrate(f, node, rel_tol, max_level);
}

}  // namespace shiftsum
