#include "shiftsum/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "shiftsum/specfun.hpp"

namespace shiftsum {

namespace {

cplx power_neg(double n, cplx s) { return std::exp(-s * std::log(n)); }

}  // namespace

SeriesResult dirichlet_l(const DirichletCharacter& chi, cplx s, const PrecisionPolicy& policy,
                         bool allow_principal) {
  require(allow_principal || !chi.is_principal(), "dirichlet_l: principal character");
  const double sigma = s.real();
  require(sigma > 1.0, "dirichlet_l: needs Re(s) > 1");
  const double eps = policy.epsilon_abs;
  double M;
  if (chi.is_principal()) {
    // integral bound M^{1-sigma}/(sigma-1)
    M = std::pow(eps * (sigma - 1.0), -1.0 / (sigma - 1.0));
  } else {
    // Abel summation with |sum_{n<=x} chi(n)| <= phi(N)/2
    const double B = static_cast<double>(chi.order_denominator()) / 2.0;
    M = std::pow(eps / (B * (1.0 + std::abs(s) / sigma)), -1.0 / sigma);
  }
  auto term = [&](int64_t n) { return chi(n) * power_neg(static_cast<double>(n), s); };
  if (!(M <= static_cast<double>(policy.cutoff_qseries))) {
    // L(chi, .) is entire for chi non-principal, so the Gaussian cutoff applies
    if (chi.is_principal() || smoothed_length(policy.smoothing_scale) > policy.cutoff_qseries)
      throw BudgetError("dirichlet_l: truncation would need " + std::to_string(M) + " terms");
    return smoothed_series(term, policy.smoothing_scale);
  }
  const int64_t m = std::max<int64_t>(1, static_cast<int64_t>(std::ceil(M)));
  double bound;
  if (chi.is_principal()) {
    bound = std::pow(static_cast<double>(m), 1.0 - sigma) / (sigma - 1.0);
  } else {
    const double B = static_cast<double>(chi.order_denominator()) / 2.0;
    bound = B * (1.0 + std::abs(s) / sigma) * std::pow(static_cast<double>(m), -sigma);
  }
  return sharp_series(term, m, bound);
}

cplx dirichlet_l_euler_product(const DirichletCharacter& chi, cplx s, int64_t P) {
  cplx prod = 1.0;
  for (int64_t p : primes_up_to(P)) prod /= 1.0 - chi(p) * power_neg(static_cast<double>(p), s);
  return prod;
}

SeriesResult l_f(const CuspFormCoefficients& a, cplx s, const PrecisionPolicy& policy) {
  require(s.real() > 1.5, "l_f: needs Re(s) > 3/2");
  return cusp_series(a, [](int64_t) { return cplx(1.0); }, 1.0, s, policy, "l_f");
}

cplx l_f_euler_product(const CuspFormCoefficients& a, cplx s, int64_t P) {
  require(P <= a.size(), "l_f_euler_product: not enough coefficients");
  cplx prod = 1.0;
  const int64_t N = a.level();
  for (int64_t p : primes_up_to(P)) {
    const double pd = static_cast<double>(p);
    const cplx ps = power_neg(pd, s);
    if (N % p == 0)
      prod /= 1.0 - static_cast<double>(a(p)) * ps;
    else
      prod /= 1.0 - static_cast<double>(a(p)) * ps + pd * ps * ps;
  }
  return prod;
}

SeriesResult l_f_chi(const CuspFormCoefficients& a, const DirichletCharacter& chi, cplx s,
                     const PrecisionPolicy& policy) {
  require(s.real() > 1.5, "l_f_chi: needs Re(s) > 3/2");
  return cusp_series(a, [&](int64_t n) { return chi(n); }, 1.0, s, policy, "l_f_chi");
}

SeriesResult twisted_divisor_series(const CuspFormCoefficients& a, const DirichletCharacter& chi, cplx s, cplx t,
                                    const PrecisionPolicy& policy) {
  // |sigma^chi_{2s-1}(l) / l^{2s-1}| <= zeta(2 Re s - 1) <= 1 + 1/(2 Re s - 2)
  require(s.real() > 1.0, "twisted_divisor_series: needs Re(s) > 1");
  const double bound = 1.0 + 1.0 / (2.0 * s.real() - 2.0);
  const int64_t M = cusp_series_length(a, bound, t.real(), policy);
  const std::vector<cplx> sig = sigma_chi_normalized_table(chi, 2.0 * s - 1.0, M);
  return cusp_series(a, [&](int64_t n) { return sig[n]; }, bound, t, policy, "twisted_divisor_series");
}

std::pair<SeriesResult, cplx> euler_ratio_identity(const CuspFormCoefficients& a, const DirichletCharacter& chi,
                                                   cplx s, cplx t, const PrecisionPolicy& policy) {
  require(t.real() > 1.5, "euler_ratio_identity: needs Re(t) > 3/2");
  require(s.real() >= 1.0, "euler_ratio_identity: needs Re(s) >= 1");
  SeriesResult lhs = twisted_divisor_series(a, chi, s, t, policy);
  const cplx rhs = l_f_chi(a, chi, t, policy).value * l_f(a, t + 2.0 * s - 1.0, policy).value /
                   dirichlet_l(chi, 2.0 * t + 2.0 * s - 2.0, policy, true).value;
  return {lhs, rhs};
}

// ---- additive twists ---------------------------------------------------------

int64_t lambda_twist_terms(int64_t c, cplx t, double eps) {
  // Each term of either sum is at most 4 (c/2pi) e^{-2 pi n/c} once
  // 2 pi n/c >= 2|Re t - 1|, using |a(n)| <= 2n and
  // Gamma(sigma, x) <= 2 x^{sigma-1} e^{-x} there.
  const double k = static_cast<double>(c) / kTwoPi;
  double x = std::log(8.0 * k * (1.0 + k) / eps);
  x = std::max(x, 2.0 * std::abs(t.real() - 1.0) + 1.0);
  return static_cast<int64_t>(std::ceil(x * k)) + 1;
}

namespace {

struct TwistTerms {
  cplx first;   // a(n) n^{-t} Gamma(t, 2 pi n / c)
  cplx second;  // a(n) n^{t-2} Gamma(2-t, 2 pi n / c)
};

TwistTerms twist_terms(double an, int64_t n, int64_t c, cplx t, bool t_is_one) {
  const double nd = static_cast<double>(n);
  const double x = kTwoPi * nd / static_cast<double>(c);
  if (t_is_one) {
    const double v = an * std::exp(-x) / nd;
    return {v, v};
  }
  const double ln = std::log(nd);
  return {an * std::exp(-t * ln) * inc_gamma_upper(t, x), an * std::exp((t - 2.0) * ln) * inc_gamma_upper(2.0 - t, x)};
}

void check_twist(const CuspFormCoefficients& a, int64_t c, int64_t d) {
  require(c > 0, "lambda_twist: c must be positive");
  require(c % a.level() == 0, "lambda_twist: N must divide c");
  require(gcd(d, c) == 1, "lambda_twist: gcd(d, c) must be 1");
}

}  // namespace

SeriesResult lambda_twist(const CuspFormCoefficients& a, const TwistParams& p, const PrecisionPolicy& policy) {
  check_twist(a, p.c, p.d);
  const int64_t c = p.c;
  const int64_t d = mod(p.d, c);
  const int64_t ai = mod_inverse(d, c);
  const int64_t M = lambda_twist_terms(c, p.t, policy.epsilon_abs);
  if (M > a.size() || M > policy.cutoff_qseries)
    throw BudgetError("lambda_twist: needs " + std::to_string(M) + " coefficients");
  const bool one = p.t == cplx(1.0);
  CompensatedSum<cplx> s1, s2;
  for (int64_t n = 1; n <= M; ++n) {
    const int64_t an = a(n);
    if (an == 0) continue;
    const TwistTerms tt = twist_terms(static_cast<double>(an), n, c, p.t, one);
    s1 += tt.first * unit_root(-mod(n * d, c), c);
    s2 += tt.second * unit_root(mod(n * ai, c), c);
  }
  const double lc = std::log(static_cast<double>(c) / kTwoPi);
  SeriesResult r;
  r.value = std::exp(p.t * lc) * s1.value() - std::exp((2.0 - p.t) * lc) * s2.value();
  const double k = static_cast<double>(c) / kTwoPi;
  r.error_estimate = 8.0 * k * (1.0 + k) * std::exp(-kTwoPi * static_cast<double>(M) / static_cast<double>(c));
  r.terms = M;
  return r;
}

cplx modular_symbol(const CuspFormCoefficients& a, const GammaMatrix& gamma, const PrecisionPolicy& policy) {
  require(gamma.det() == 1, "modular_symbol: matrix is not unimodular");
  if (gamma.c == 0) return 0.0;
  const GammaMatrix g = gamma.c < 0 ? gamma.negated() : gamma;
  const cplx lam = lambda_twist(a, {1.0, g.c, g.d}, policy).value;
  return kI / static_cast<double>(g.c) * lam;
}

TwistTable::TwistTable(std::shared_ptr<const CuspFormCoefficients> a, PrecisionPolicy policy)
    : a_(std::move(a)), policy_(policy) {
  require(a_ != nullptr, "TwistTable: null coefficients");
}

size_t TwistTable::cached_rows() const {
  std::shared_lock lock(mutex_);
  return rows_.size();
}

std::shared_ptr<const std::vector<cplx>> TwistTable::row(int64_t c, cplx t) {
  require(c > 0 && c % a_->level() == 0, "TwistTable: N must divide c");
  const auto key = std::make_tuple(c, t.real(), t.imag());
  {
    std::shared_lock lock(mutex_);
    auto it = rows_.find(key);
    if (it != rows_.end()) return it->second;
  }
  auto fresh = compute_row(c, t);
  std::unique_lock lock(mutex_);
  auto [it, inserted] = rows_.emplace(key, std::move(fresh));
  return it->second;
}

std::shared_ptr<const std::vector<cplx>> TwistTable::compute_row(int64_t c, cplx t) const {
  const int64_t M = lambda_twist_terms(c, t, policy_.epsilon_abs);
  if (M > a_->size() || M > policy_.cutoff_qseries)
    throw BudgetError("TwistTable: modulus " + std::to_string(c) + " needs " + std::to_string(M) + " coefficients");
  const bool one = t == cplx(1.0);
  std::vector<CompensatedSum<cplx>> fold1(c), fold2(c);
  for (int64_t n = 1; n <= M; ++n) {
    const int64_t an = (*a_)(n);
    if (an == 0) continue;
    const TwistTerms tt = twist_terms(static_cast<double>(an), n, c, t, one);
    fold1[n % c] += tt.first;
    fold2[n % c] += tt.second;
  }
  std::vector<cplx> A(c), B(c), roots(c);
  for (int64_t r = 0; r < c; ++r) {
    A[r] = fold1[r].value();
    B[r] = fold2[r].value();
    roots[r] = unit_root(r, c);
  }
  const double lc = std::log(static_cast<double>(c) / kTwoPi);
  const cplx p1 = std::exp(t * lc);
  const cplx p2 = std::exp((2.0 - t) * lc);
  auto out = std::make_shared<std::vector<cplx>>(c, cplx(0.0));
  for (int64_t d = 1; d < c; ++d) {
    if (gcd(d, c) != 1) continue;
    const int64_t ai = mod_inverse(d, c);
    const int64_t md = c - d;
    CompensatedSum<cplx> s1, s2;
    int64_t i1 = 0, i2 = 0;  // r * (-d) mod c and r * a mod c
    for (int64_t r = 0; r < c; ++r) {
      s1 += A[r] * roots[i1];
      s2 += B[r] * roots[i2];
      i1 += md;
      if (i1 >= c) i1 -= c;
      i2 += ai;
      if (i2 >= c) i2 -= c;
    }
    (*out)[d] = p1 * s1.value() - p2 * s2.value();
  }
  return out;
}

double TwistTable::growth_constant(int64_t c_max, cplx t, double exponent) {
  const int64_t N = a_->level();
  double out = 0.0;
  for (int64_t c = N; c <= c_max; c += N) {
    const auto r = row(c, t);
    double mx = 0.0;
    for (const cplx& v : *r) mx = std::max(mx, std::abs(v));
    out = std::max(out, mx / std::pow(static_cast<double>(c), exponent));
  }
  return out;
}

cplx TwistTable::lambda(int64_t c, int64_t d, cplx t) {
  check_twist(*a_, c, d);
  return (*row(c, t))[mod(d, c)];
}

cplx TwistTable::modular_symbol(const GammaMatrix& gamma) {
  require(gamma.det() == 1, "modular_symbol: matrix is not unimodular");
  if (gamma.c == 0) return 0.0;
  const GammaMatrix g = gamma.c < 0 ? gamma.negated() : gamma;
  return kI / static_cast<double>(g.c) * lambda(g.c, g.d, 1.0);
}

}  // namespace shiftsum
