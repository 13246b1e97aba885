#include "shiftsum/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace shiftsum {

CosetRep canonical_coset(const GammaMatrix& g, int64_t level) {
  require(g.det() == 1, "canonical_coset: matrix is not unimodular");
  require(g.c % level == 0, "canonical_coset: matrix is not in Gamma_0(N)");
  if (g.c == 0) return {1, 0, 0, 1};
  GammaMatrix h = g.c < 0 ? g.negated() : g;
  // left translation by T^m shifts (a, b) by m (c, d)
  const int64_t a = mod(h.a, h.c);
  const int64_t m = (a - h.a) / h.c;
  return {a, h.b + m * h.d, h.c, h.d};
}

std::vector<CosetRep> enumerate_cosets(int64_t level, int64_t c_max) {
  require(level >= 1 && c_max >= level, "enumerate_cosets: needs c_max >= N");
  std::vector<CosetRep> out{{1, 0, 0, 1}};
  for (int64_t c = level; c <= c_max; c += level) {
    for (int64_t d = 0; d < c; ++d) {
      if (gcd(d, c) != 1) continue;
      const int64_t a = mod_inverse(d, c);
      out.push_back({a, (a * d - 1) / c, c, d});
    }
  }
  return out;
}

cplx kloosterman_chi(int64_t n, int64_t m, const DirichletCharacter& chi, int64_t c) {
  require(c > 0 && c % chi.modulus() == 0, "kloosterman_chi: N must divide c");
  CompensatedSum<cplx> acc;
  for (int64_t d = 1; d < c; ++d) {
    if (gcd(d, c) != 1) continue;
    const int64_t a = m == 0 ? 0 : mod_inverse(d, c);
    acc += std::conj(chi(d)) * unit_root(mod(n, c) * d % c + mod(m, c) * a % c, c);
  }
  return acc.value();
}

cplx kloosterman_star(int64_t n, int64_t m, const DirichletCharacter& chi, int64_t c, TwistTable& table) {
  require(c > 0 && c % chi.modulus() == 0, "kloosterman_star: N must divide c");
  const auto row = table.row(c, 1.0);
  CompensatedSum<cplx> acc;
  for (int64_t d = 1; d < c; ++d) {
    if (gcd(d, c) != 1) continue;
    const int64_t a = m == 0 ? 0 : mod_inverse(d, c);
    acc += std::conj(chi(d)) * (*row)[d] * unit_root(mod(n, c) * d % c + mod(m, c) * a % c, c);
  }
  return kI / static_cast<double>(c) * acc.value();
}

const char* to_string(CoefficientRoute r) {
  switch (r) {
    case CoefficientRoute::kloosterman_sum: return "kloosterman_sum";
    case CoefficientRoute::closed_form: return "closed_form";
    case CoefficientRoute::quadrature_extraction: return "quadrature_extraction";
  }
  return "unknown";
}

namespace {

// sum_{c > c_max, N | c} c^{-x} <= N^{-x} k0^{1-x} / (x - 1), k0 = floor(c_max / N)
double c_tail(int64_t level, int64_t c_max, double x) {
  const double k0 = std::max<double>(1.0, std::floor(static_cast<double>(c_max) / static_cast<double>(level)));
  return std::pow(static_cast<double>(level), -x) * std::pow(k0, 1.0 - x) / (x - 1.0);
}

cplx cpow(double base, cplx e) { return std::exp(e * std::log(base)); }

int64_t sigma1(int64_t m) {
  int64_t s = 0;
  for (int64_t d : divisors(m)) s += d;
  return s;
}

// sqrt(pi) Gamma(sigma - 1/2) / Gamma(sigma): the integral of (x^2 + 1)^{-sigma} over R.
double line_integral(double sigma) { return std::sqrt(kPi) * std::exp(std::lgamma(sigma - 0.5) - std::lgamma(sigma)); }

}  // namespace

EisensteinCoefficient phi_classical(int64_t m, cplx s, const DirichletCharacter& chi, CoefficientRoute route,
                                    const PrecisionPolicy& policy, double extraction_height) {
  require(m != 0, "phi_classical: m must be nonzero");
  require(s.real() > 1.0, "phi_classical: needs Re(s) > 1");
  const int64_t N = chi.modulus();
  const int64_t am = std::abs(m);
  const double sigma = s.real();
  EisensteinCoefficient out;
  out.n = m;
  out.s = s;
  out.route = route;
  switch (route) {
    case CoefficientRoute::kloosterman_sum: {
      const int64_t C = policy.cutoff_csum;
      require(C >= N, "phi_classical: c_max below N");
      CompensatedSum<cplx> acc;
      for (int64_t c = N; c <= C; c += N)
        acc += cpow(static_cast<double>(c), -2.0 * s) * kloosterman_chi(am, 0, chi, c);
      const cplx pre = cpow(kPi, s) * cpow(static_cast<double>(am), s - 1.0) / complex_gamma(s);
      out.value = pre * acc.value();
      // |S(m, 0, chi; c)| <= sqrt(N) sigma_1(|m|)
      out.error_estimate = std::abs(pre) * std::sqrt(static_cast<double>(N)) * static_cast<double>(sigma1(am)) *
                           c_tail(N, C, 2.0 * sigma);
      out.c_max = C;
      break;
    }
    case CoefficientRoute::closed_form: {
      const SeriesResult L = dirichlet_l(chi.conj(), 2.0 * s, policy);
      const cplx sig = sigma_chi(chi, 2.0 * s - 1.0, am);
      const double Nd = static_cast<double>(N);
      out.value = cpow(kPi / (Nd * Nd), s) * gauss_sum(chi.conj()) / complex_gamma(s) / L.value * sig *
                  cpow(static_cast<double>(am), -s);
      out.error_estimate = std::abs(out.value) * L.error_estimate / std::abs(L.value);
      break;
    }
    case CoefficientRoute::quadrature_extraction: {
      const int64_t C = policy.cutoff_csum;
      double tail = 0.0;
      auto E = [&](UpperHalfPlanePoint z) {
        const CosetSumResult r = eval_E(z, s, chi, C, policy);
        tail = std::max(tail, r.error_estimate);
        return r.value;
      };
      const cplx w = kCosetFourierFactor * whittaker_shape(m, extraction_height, s);
      out.value = fourier_extract(E, m, extraction_height, policy.quadrature_nodes) / w;
      out.error_estimate = tail / std::abs(w);
      out.c_max = C;
      break;
    }
  }
  return out;
}

double convexity_constant(TwistTable& table, int64_t c_max) {
  return table.growth_constant(c_max, 1.0, kConvexityExponent);
}

namespace {

// sum_{N | c <= c_max} c^{-2s} S*(n, 0, chi; c) and its convexity tail bound
// (|S*| <= C0 c^{1.6} since |Lambda| <= C0 c^{1.6} and phi(c)/c <= 1).
std::pair<cplx, double> star_csum(int64_t n, cplx s, const DirichletCharacter& chi, TwistTable& table,
                                  int64_t c_max) {
  const int64_t N = chi.modulus();
  require(table.coefficients().level() == N, "phi_star: character modulus differs from the level");
  require(s.real() > 2.0, "phi_star: needs Re(s) > 2");
  require(c_max >= N, "phi_star: c_max below N");
  CompensatedSum<cplx> acc;
  for (int64_t c = N; c <= c_max; c += N)
    acc += cpow(static_cast<double>(c), -2.0 * s) * kloosterman_star(n, 0, chi, c, table);
  const double c0 = convexity_constant(table, c_max);
  const double tail = c0 * c_tail(N, c_max, 2.0 * s.real() - kConvexityExponent);
  return {acc.value(), tail};
}

}  // namespace

EisensteinCoefficient phi_star(int64_t n, cplx s, const DirichletCharacter& chi, TwistTable& table,
                               int64_t c_max) {
  require(n != 0, "phi_star: n must be nonzero");
  const auto [sum, tail] = star_csum(n, s, chi, table, c_max);
  const cplx pre = cpow(kPi, s) * cpow(static_cast<double>(std::abs(n)), s - 1.0) / complex_gamma(s);
  EisensteinCoefficient out;
  out.n = n;
  out.s = s;
  out.value = pre * sum;
  out.error_estimate = std::abs(pre) * tail;
  out.route = CoefficientRoute::kloosterman_sum;
  out.c_max = c_max;
  return out;
}

EisensteinCoefficient phi_star_constant(cplx s, const DirichletCharacter& chi, TwistTable& table,
                                        int64_t c_max) {
  const auto [sum, tail] = star_csum(0, s, chi, table, c_max);
  const cplx pre = std::sqrt(kPi) * complex_gamma(s - 0.5) / complex_gamma(s);
  EisensteinCoefficient out;
  out.n = 0;
  out.s = s;
  out.value = pre * sum;
  out.error_estimate = std::abs(pre) * tail;
  out.route = CoefficientRoute::kloosterman_sum;
  out.c_max = c_max;
  return out;
}

ConstantTermDiagnostic phi_star_constant_extrapolated(cplx s, const CuspFormCoefficients& a,
                                                      const DirichletCharacter& chi, const PrecisionPolicy& policy) {
  require(s.real() > 2.0, "phi_star_constant_extrapolated: needs Re(s) > 2");
  ConstantTermDiagnostic out;
  out.t_nodes = {1.5, 1.3, 1.1};
  for (double t : out.t_nodes) out.d_values.push_back(twisted_divisor_series(a, chi, s, t, policy).value);
  out.d_extrapolated = 0.0;
  for (size_t i = 0; i < 3; ++i) {
    double w = 1.0;
    for (size_t j = 0; j < 3; ++j)
      if (j != i) w *= (1.0 - out.t_nodes[j]) / (out.t_nodes[i] - out.t_nodes[j]);
    out.d_extrapolated += w * out.d_values[i];
  }
  const double N = static_cast<double>(chi.modulus());
  const cplx L = dirichlet_l(chi.conj(), 2.0 * s, policy).value;
  out.phi_star = kI * gauss_sum(chi.conj()) * complex_gamma(s - 0.5) /
                 (2.0 * std::sqrt(kPi) * cpow(N, 2.0 * s) * complex_gamma(s) * L) * out.d_extrapolated;
  return out;
}

// ---- coset sums ------------------------------------------------------------

cplx lattice_line_sum(double u, double y, cplx s) {
  require(y > 0.0, "lattice_line_sum: y must be positive");
  require(s.real() > 0.5, "lattice_line_sum: needs Re(s) > 1/2");
  const double u0 = u - std::round(u);
  // Direct range: the first omitted Euler-Maclaurin term, 31/967680 |g^(5)(A)|
  // ~ 3.3e-5 prod_{j<5} (|2s| + j) A^{-2 sigma - 5}, must drop below 2e-16 of
  // the sum's size y^{1 - 2 sigma}.
  const double sigma = s.real();
  double P = 3.3e-5;
  for (int j = 0; j < 5; ++j) P *= 2.0 * std::abs(s) + j;
  const double a_min = std::exp((std::log(P) - std::log(2e-16) - (1.0 - 2.0 * sigma) * std::log(y)) / (2.0 * sigma + 5.0));
  const int64_t K = static_cast<int64_t>(std::ceil(2.0 * y)) +
                    std::clamp<int64_t>(static_cast<int64_t>(std::ceil(a_min - 2.0 * y)), 12, 4000);
  const double y2 = y * y;
  const bool real_s = s.imag() == 0.0;
  auto g = [&](double v) -> cplx {
    const double w = v * v + y2;
    return real_s ? cplx(std::pow(w, -s.real())) : std::exp(-s * std::log(w));
  };
  CompensatedSum<cplx> acc;
  for (int64_t k = -K; k <= K; ++k) acc += g(u0 + static_cast<double>(k));
  // Euler-Maclaurin (midpoint form) for sum_{k > K} g(k + v0), both directions.
  for (double sign : {1.0, -1.0}) {
    const double A = static_cast<double>(K) + 0.5 + sign * u0;
    const double w = A * A + y2;
    const cplx wp = real_s ? cplx(std::pow(w, -s.real())) : std::exp(-s * std::log(w));  // w^{-s}
    // int_A^inf (v^2 + y^2)^{-s} dv = sum_j binom(-s, j) y^{2j} A^{1-2s-2j} / (2s + 2j - 1)
    const cplx a12s = real_s ? cplx(std::pow(A, 1.0 - 2.0 * s.real())) : std::exp((1.0 - 2.0 * s) * std::log(A));
    const double r = y2 / (A * A);
    cplx coef = 1.0, integral = 0.0;
    double rp = 1.0;
    for (int j = 0; j < 200; ++j) {
      const cplx term = coef * rp / (2.0 * s + 2.0 * static_cast<double>(j) - 1.0);
      integral += term;
      if (std::abs(term) < 1e-18 * std::abs(integral)) break;
      coef *= -(s + static_cast<double>(j)) / static_cast<double>(j + 1);
      rp *= r;
    }
    integral *= a12s;
    const cplx g1 = -2.0 * s * A * wp / w;
    const cplx g3 = 12.0 * s * (s + 1.0) * A * wp / (w * w) - 8.0 * s * (s + 1.0) * (s + 2.0) * A * A * A * wp / (w * w * w);
    acc += integral + g1 / 24.0 - 7.0 * g3 / 5760.0;
  }
  return acc.value();
}

namespace {

template <typename Weight>
cplx double_coset_sum(UpperHalfPlanePoint z, cplx s, int64_t level, int64_t c_max, Weight weight, int64_t& count) {
  CompensatedSum<cplx> acc;
  count = 0;
  for (int64_t c = level; c <= c_max; c += level) {
    const cplx c2s = cpow(static_cast<double>(c), -2.0 * s);
    CompensatedSum<cplx> inner;
    for (int64_t d = 1; d < c; ++d) {
      if (gcd(d, c) != 1) continue;
      const cplx w = weight(c, d);
      if (w == cplx(0.0)) continue;
      inner += w * lattice_line_sum(z.x + static_cast<double>(d) / static_cast<double>(c), z.y, s);
      ++count;
    }
    acc += c2s * inner.value();
  }
  return acc.value();
}

}  // namespace

CosetSumResult eval_E(UpperHalfPlanePoint z, cplx s, const DirichletCharacter& chi, int64_t c_max,
                      const PrecisionPolicy& policy) {
  (void)policy;
  require(s.real() > 1.0, "eval_E: needs Re(s) > 1");
  const int64_t N = chi.modulus();
  CosetSumResult r;
  const cplx ys = cpow(z.y, s);
  const cplx sum = double_coset_sum(z, s, N, c_max, [&](int64_t, int64_t d) { return std::conj(chi(d)); }, r.cosets);
  r.value = ys * (1.0 + sum);
  const double sigma = s.real();
  r.error_estimate = line_integral(sigma) * std::pow(z.y, 1.0 - sigma) * c_tail(N, c_max, 2.0 * sigma - 1.0);
  r.c_max = c_max;
  return r;
}

CosetSumResult eval_E_star(UpperHalfPlanePoint z, cplx s, const DirichletCharacter& chi, int64_t c_max,
                           TwistTable& table) {
  require(s.real() > 2.0, "eval_E_star: needs Re(s) > 2");
  const int64_t N = chi.modulus();
  require(table.coefficients().level() == N, "eval_E_star: character modulus differs from the level");
  CosetSumResult r;
  const cplx ys = cpow(z.y, s);
  std::shared_ptr<const std::vector<cplx>> row;
  int64_t row_c = 0;
  auto weight = [&](int64_t c, int64_t d) {
    if (c != row_c) {
      row = table.row(c, 1.0);
      row_c = c;
    }
    return std::conj(chi(d)) * kI / static_cast<double>(c) * (*row)[d];
  };
  r.value = ys * double_coset_sum(z, s, N, c_max, weight, r.cosets);
  // |<f, gamma>| <= C0 c^{0.6}, phi(c) <= c
  const double sigma = s.real();
  r.error_estimate = convexity_constant(table, c_max) * line_integral(sigma) * std::pow(z.y, 1.0 - sigma) *
                     c_tail(N, c_max, 2.0 * sigma - kConvexityExponent);
  r.c_max = c_max;
  return r;
}

std::vector<GammaMatrix> window_cosets(UpperHalfPlanePoint z, int64_t level, const CosetWindow& w) {
  require(w.min_im > 0.0, "window_cosets: min_im must be positive");
  std::vector<GammaMatrix> out;
  if (z.y >= w.min_im) out.push_back({1, 0, 0, 1});
  const double cmax_im = std::sqrt(1.0 / (z.y * w.min_im));
  const int64_t cm = std::min<int64_t>(w.c_max, static_cast<int64_t>(std::floor(cmax_im)));
  for (int64_t c = level; c <= cm; c += level) {
    const double cd = static_cast<double>(c);
    const double R2 = z.y / w.min_im - cd * cd * z.y * z.y;
    if (R2 < 0.0) continue;
    const double R = std::sqrt(R2);
    const int64_t lo = static_cast<int64_t>(std::floor(-cd * z.x - R)) - 1;
    const int64_t hi = static_cast<int64_t>(std::ceil(-cd * z.x + R)) + 1;
    for (int64_t d = lo; d <= hi; ++d) {
      if (gcd(d, c) != 1) continue;
      const int64_t a = mod_inverse(mod(d, c), c);
      const GammaMatrix g{a, (a * d - 1) / c, c, d};
      if (g.im_act(z.z()) >= w.min_im) out.push_back(g);
    }
  }
  return out;
}

double window_dropped_bound(int64_t level, double sigma, double min_im) {
  require(sigma > 1.0, "window_dropped_bound: needs sigma > 1");
  double index = static_cast<double>(level);
  for (auto [p, e] : factorize(level)) index *= 1.0 + 1.0 / static_cast<double>(p);
  return 3.0 / (kPi * index) * std::pow(min_im, sigma - 1.0) / (sigma - 1.0);
}

CosetSumResult eval_G_with(UpperHalfPlanePoint z, cplx s, const DirichletCharacter& chi, const CosetWindow& w,
                           const std::function<cplx(UpperHalfPlanePoint)>& F) {
  require(s.real() > 2.0, "eval_G: needs Re(s) > 2");
  const auto cosets = window_cosets(z, chi.modulus(), w);
  CompensatedSum<cplx> acc;
  double fmax = 0.0;
  for (const GammaMatrix& g : cosets) {
    const cplx gz = g.act(z.z());
    const cplx Fg = F(UpperHalfPlanePoint(gz));
    fmax = std::max(fmax, std::abs(Fg));
    acc += std::conj(chi(g.d)) * Fg * cpow(gz.imag(), s);
  }
  CosetSumResult r;
  r.value = acc.value();
  r.cosets = static_cast<int64_t>(cosets.size());
  r.c_max = w.c_max;
  r.error_estimate = fmax * window_dropped_bound(chi.modulus(), s.real(), w.min_im);
  return r;
}

CosetSumResult eval_G(UpperHalfPlanePoint z, cplx s, const DirichletCharacter& chi, const CosetWindow& w,
                      const CuspFormCoefficients& a, const PrecisionPolicy& policy) {
  require(a.level() == chi.modulus(), "eval_G: character modulus differs from the level");
  return eval_G_with(z, s, chi, w, [&](UpperHalfPlanePoint p) { return eval_F(a, p, policy); });
}

CosetSumResult eval_P(int64_t n, const TestFunction& h, UpperHalfPlanePoint z, const DirichletCharacter& chi,
                      const CosetWindow& w, int64_t level) {
  require(n != 0, "eval_P: n must be nonzero");
  require(level == chi.modulus(), "eval_P: character modulus differs from the level");
  const auto cosets = window_cosets(z, level, w);
  CompensatedSum<cplx> acc;
  double shell = 0.0;  // |terms| with Im(gamma z) < 2 min_im, a proxy for what was dropped
  const double an = static_cast<double>(std::abs(n));
  for (const GammaMatrix& g : cosets) {
    const cplx gz = g.act(z.z());
    const double re = gz.real();
    const double frac = re - std::floor(re);
    const double ph = kTwoPi * static_cast<double>(n) * frac;
    const cplx term = std::conj(chi(g.d)) * cplx(std::cos(ph), std::sin(ph)) * h(kTwoPi * an * gz.imag());
    acc += term;
    if (gz.imag() < 2.0 * w.min_im) shell += std::abs(term);
  }
  CosetSumResult r;
  r.value = acc.value();
  r.cosets = static_cast<int64_t>(cosets.size());
  r.c_max = w.c_max;
  r.error_estimate = shell;
  return r;
}

WindowSums window_sums(UpperHalfPlanePoint z, cplx s, const DirichletCharacter& chi, const CosetWindow& w,
                       TwistTable& table) {
  const CuspFormCoefficients& a = table.coefficients();
  require(a.level() == chi.modulus(), "window_sums: character modulus differs from the level");
  const auto cosets = window_cosets(z, chi.modulus(), w);
  CompensatedSum<cplx> e, es, g;
  for (const GammaMatrix& m : cosets) {
    const cplx gz = m.act(z.z());
    const cplx wgt = std::conj(chi(m.d)) * cpow(gz.imag(), s);
    e += wgt;
    es += wgt * table.modular_symbol(m);
    g += wgt * eval_F(a, UpperHalfPlanePoint(gz), table.policy());
  }
  WindowSums out;
  out.E = e.value();
  out.E_star = es.value();
  out.G = g.value();
  out.F_times_E = eval_F(a, z, table.policy()) * out.E;
  out.cosets = static_cast<int64_t>(cosets.size());
  return out;
}

cplx fourier_extract(const std::function<cplx(UpperHalfPlanePoint)>& g, int64_t n, double y, int nodes,
                     double offset) {
  require(nodes > 0, "fourier_extract: needs nodes > 0");
  CompensatedSum<cplx> acc;
  for (int j = 0; j < nodes; ++j) {
    const double x = offset + static_cast<double>(j) / static_cast<double>(nodes);
    const double ph = -kTwoPi * static_cast<double>(n) * x;
    acc += g(UpperHalfPlanePoint(x, y)) * cplx(std::cos(ph), std::sin(ph));
  }
  return acc.value() / static_cast<double>(nodes);
}

cplx whittaker_shape(int64_t n, double y, cplx s) {
  const double an = static_cast<double>(std::abs(n));
  return std::sqrt(an * y) * bessel_k(s - 0.5, kTwoPi * an * y);
}

EisensteinCoefficient phi_star_extracted(int64_t n, cplx s, const DirichletCharacter& chi, double y, int nodes,
                                         int64_t c_max, TwistTable& table) {
  require(n != 0, "phi_star_extracted: n must be nonzero");
  double tail = 0.0;
  auto Es = [&](UpperHalfPlanePoint z) {
    const CosetSumResult r = eval_E_star(z, s, chi, c_max, table);
    tail = std::max(tail, r.error_estimate);
    return r.value;
  };
  const cplx w = kCosetFourierFactor * whittaker_shape(n, y, s);
  EisensteinCoefficient out;
  out.n = n;
  out.s = s;
  out.value = fourier_extract(Es, n, y, nodes) / w;
  out.error_estimate = tail / std::abs(w);
  out.route = CoefficientRoute::quadrature_extraction;
  out.c_max = c_max;
  return out;
}

}  // namespace shiftsum
