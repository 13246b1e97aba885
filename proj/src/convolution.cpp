#include "shiftsum/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shiftsum/eisenstein.hpp"
#include "shiftsum/specfun.hpp"

namespace shiftsum {

namespace {

cplx cpow(double base, cplx e) { return std::exp(e * std::log(base)); }

// |sigma^chi_{2s-1}(m) / m^{2s-1}| <= zeta(2 Re s - 1) <= 1 + 1/(2 Re s - 2)
double sigma_weight_bound(cplx s) { return 1.0 + 1.0 / (2.0 * s.real() - 2.0); }

double c_tail(int64_t level, int64_t c_max, double x) {
  const double k0 = std::max<double>(1.0, std::floor(static_cast<double>(c_max) / static_cast<double>(level)));
  return std::pow(static_cast<double>(level), -x) * std::pow(k0, 1.0 - x) / (x - 1.0);
}

}  // namespace

SeriesResult dds_direct(const ConvolutionQuery& q, const CuspFormCoefficients& a, const DirichletCharacter& chi,
                        const PrecisionPolicy& policy) {
  require(q.n != 0, "dds_direct: n must be nonzero");
  require(q.t.real() > 1.5, "dds_direct: needs Re(t) > 3/2");
  require(q.s.real() > 2.0, "dds_direct: needs Re(s) > 2");
  const double bound = sigma_weight_bound(q.s);
  const int64_t M = cusp_series_length(a, bound, q.t.real(), policy);
  const int64_t an = std::abs(q.n);
  const std::vector<cplx> sig = sigma_chi_normalized_table(chi, 2.0 * q.s - 1.0, M + an);
  auto w = [&](int64_t l) { return l == q.n ? cplx(0.0) : sig[static_cast<size_t>(std::abs(l - q.n))]; };
  return cusp_series(a, w, bound, q.t, policy, "dds_direct");
}

CsumResult dds_csum(const ConvolutionQuery& q, const DirichletCharacter& chi, TwistTable& table, int64_t c_max) {
  const int64_t N = chi.modulus();
  require(table.coefficients().level() == N, "dds_csum: character modulus differs from the level");
  require(q.n != 0, "dds_csum: n must be nonzero");
  require(q.s.real() > 2.0, "dds_csum: needs Re(s) > 2");
  require(c_max >= N, "dds_csum: c_max below N");
  CompensatedSum<cplx> acc;
  for (int64_t c = N; c <= c_max; c += N) {
    const auto row = table.row(c, q.t);
    CompensatedSum<cplx> inner;
    for (int64_t d = 1; d < c; ++d) {
      if (gcd(d, c) != 1) continue;
      inner += std::conj(chi(d)) * unit_root(mod(q.n, c) * d % c, c) * (*row)[d];
    }
    acc += cpow(static_cast<double>(c), -2.0 * q.s - q.t) * inner.value();
  }
  const PrecisionPolicy& policy = table.policy();
  const double Nd = static_cast<double>(N);
  const cplx pre = cpow(Nd, 2.0 * q.s) * dirichlet_l(chi.conj(), 2.0 * q.s, policy).value / gauss_sum(chi.conj()) *
                   cpow(kTwoPi, q.t) / complex_gamma(q.t);
  // |Lambda(f, t, -d/c)| <= C c^e with e = max(3/2 + 0.1, Re t), and phi(c) <= c
  const double e = std::max(1.6, q.t.real());
  const double C = table.growth_constant(c_max, q.t, e);
  CsumResult r;
  r.value = pre * acc.value();
  r.error_estimate = std::abs(pre) * C * c_tail(N, c_max, 2.0 * q.s.real() + q.t.real() - 1.0 - e);
  r.c_max = c_max;
  return r;
}

ShiftedSum L_shift(int64_t n, cplx s, const DirichletCharacter& chi, TwistTable& table, int64_t c_max) {
  const CsumResult r = dds_csum({n, s, 1.0, 0.0}, chi, table, c_max);
  ShiftedSum out;
  out.value = r.value;
  out.error_estimate = r.error_estimate;
  out.c_max = c_max;
  const double Nd = static_cast<double>(chi.modulus());
  const cplx Lc = dirichlet_l(chi.conj(), 2.0 * s, table.policy()).value;
  const cplx factor = 2.0 * complex_gamma(s) * cpow(Nd, 2.0 * s) * Lc /
                      (kI * gauss_sum(chi.conj()) * cpow(kPi * static_cast<double>(std::abs(n)), s - 1.0));
  out.phi_star_from_value = r.value / factor;
  out.phi_star_csum = phi_star(n, s, chi, table, c_max).value;
  return out;
}

SeriesResult tail_series(int64_t n, cplx x, cplx s, const CuspFormCoefficients& a, const DirichletCharacter& chi,
                         const PrecisionPolicy& policy) {
  require(n < 0, "tail_series: needs n < 0");
  require(x.real() > s.real() + 0.5, "tail_series: needs Re(x) > Re(s) + 1/2");
  require(s.real() > 1.0, "tail_series: needs Re(s) > 1");
  const int64_t an = -n;
  const double B = sigma_weight_bound(s);
  const double gap = x.real() - s.real() - 1.0;  // terms are <= 2B (l + |n|)^{-1-gap}
  const int64_t cap = std::min(a.size(), policy.cutoff_qseries);
  int64_t M = 0;
  if (gap > 0.0) {
    const double m = std::pow(policy.epsilon_abs * gap / (2.0 * B), -1.0 / gap);
    if (m < static_cast<double>(cap)) M = std::max<int64_t>(1, static_cast<int64_t>(std::ceil(m)));
  }
  const int64_t len = M > 0 ? M : smoothed_length(policy.smoothing_scale);
  if (len > cap)
    throw BudgetError("tail_series: needs " + std::to_string(len) + " coefficients, have " + std::to_string(cap));
  const std::vector<cplx> sig = sigma_chi_normalized_table(chi, 2.0 * s - 1.0, len + an);
  const cplx ex = s - x;
  auto term = [&](int64_t l) {
    const int64_t m = l + an;
    return a.over_n()[static_cast<size_t>(l)] * sig[static_cast<size_t>(m)] * cpow(static_cast<double>(m), ex);
  };
  if (M > 0) {
    const double bound = 2.0 * B * std::pow(static_cast<double>(M + an), -gap) / gap;
    return sharp_series(term, M, bound);
  }
  return smoothed_series(term, policy.smoothing_scale);
}

WeightedSum L_weighted(int64_t n, cplx x, cplx s, const DirichletCharacter& chi, TwistTable& table, int64_t c_max) {
  require(n < 0, "L_weighted: needs n < 0");
  const ShiftedSum L = L_shift(n, s, chi, table, c_max);
  const SeriesResult T = tail_series(n, x, s, table.coefficients(), chi, table.policy());
  const cplx scale = cpow(static_cast<double>(-n), x - s);
  WeightedSum out;
  out.shifted = L.value;
  out.tail = T.value;
  out.value = L.value - scale * T.value;
  out.error_estimate = L.error_estimate + std::abs(scale) * T.error_estimate;
  return out;
}

cplx shift_weight(int64_t n, int64_t l, cplx x, cplx s) {
  require(n != 0 && l != n, "shift_weight: needs n != 0 and l != n");
  const double ratio = std::abs(static_cast<double>(l - n) / static_cast<double>(n));
  return 1.0 - cpow(ratio, s - x);
}

}  // namespace shiftsum
