#include "shiftsum/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <random>

#include "shiftsum/convolution.hpp"
#include "shiftsum/eisenstein.hpp"
#include "shiftsum/specfun.hpp"

namespace shiftsum {

VerifyContext VerifyContext::make(int64_t level, int64_t char_index, const PrecisionPolicy& policy,
                                  int64_t coefficients) {
  require(level == 11, "verify: only the level 11 newform is available");
  policy.validate();
  auto a = std::make_shared<const CuspFormCoefficients>(eta_product_coeffs(coefficients));
  auto table = std::make_shared<TwistTable>(a, policy);
  return {a, make_character(level, char_index), policy, table};
}

VerificationReport absolute_report(std::string id, cplx a, cplx b, double tol, int64_t ms,
                                   const PrecisionPolicy& policy, std::string detail) {
  VerificationReport r;
  r.identity_id = std::move(id);
  r.route_a = a;
  r.route_b = b;
  r.abs_diff = std::abs(a - b);
  r.rel_diff = std::abs(b) > 0.0 ? r.abs_diff / std::abs(b) : r.abs_diff;
  r.tolerance = tol;
  r.pass = r.abs_diff <= tol;
  r.runtime_ms = ms;
  r.truncation = policy;
  r.detail = std::move(detail);
  return r;
}

VerificationReport relative_report(std::string id, cplx a, cplx b, double rel_tol, int64_t ms,
                                   const PrecisionPolicy& policy, std::string detail) {
  VerificationReport r = absolute_report(std::move(id), a, b, rel_tol * std::abs(b), ms, policy, std::move(detail));
  r.rel_tolerance = rel_tol;
  return r;
}

namespace {

class Stopwatch {
 public:
  int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string fmt(cplx v) {
  if (v.imag() == 0.0) return fmt(v.real());
  return fmt(v.real()) + (v.imag() < 0 ? "" : "+") + fmt(v.imag()) + "i";
}

using Reports = std::vector<VerificationReport>;

Reports classical_coefficients(VerifyContext& ctx) {
  Reports out;
  PrecisionPolicy p = ctx.policy;
  p.cutoff_csum = 2000;
  for (int64_t m : {1, 2, 3}) {
    for (cplx s : {cplx(1.5), cplx(2.0), cplx(2.5, 0.5)}) {
      Stopwatch sw;
      const auto k = phi_classical(m, s, ctx.chi, CoefficientRoute::kloosterman_sum, p);
      const auto c = phi_classical(m, s, ctx.chi, CoefficientRoute::closed_form, p);
      out.push_back(absolute_report("classical-coefficients/m=" + std::to_string(m) + ",s=" + fmt(s), k.value,
                                    c.value, 1e-5 + k.error_estimate, sw.ms(), p,
                                    "kloosterman c<=2000 vs closed form; tail " + fmt(k.error_estimate)));
    }
  }
  return out;
}

Reports shifted_sum_routes(VerifyContext& ctx) {
  Reports out;
  for (double t : {1.6, 1.8}) {
    for (int64_t n : {-2, -1, 1, 2}) {
      Stopwatch sw;
      const ConvolutionQuery q{n, 2.5, t, 0.0};
      const SeriesResult d = dds_direct(q, *ctx.a, ctx.chi, ctx.policy);
      const CsumResult c = dds_csum(q, ctx.chi, *ctx.table, ctx.policy.cutoff_csum);
      out.push_back(relative_report("shifted-sum-routes/n=" + std::to_string(n) + ",s=2.5,t=" + fmt(t), d.value,
                                    c.value, 1e-5, sw.ms(), ctx.policy,
                                    "direct terms " + std::to_string(d.terms) + " (est " + fmt(d.error_estimate) +
                                        ") vs c-sum c<=" + std::to_string(c.c_max)));
    }
  }
  return out;
}

Reports functional_equation(VerifyContext& ctx) {
  Reports out;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> re(0.5, 1.5), im(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const int64_t c = 11 * (1 + static_cast<int64_t>(rng() % 4));
    int64_t d;
    do d = static_cast<int64_t>(rng() % static_cast<uint64_t>(4 * c)) - 2 * c;
    while (gcd(d, c) != 1);
    const cplx t(re(rng), im(rng));
    Stopwatch sw;
    const int64_t a = mod_inverse(mod(d, c), c);
    const SeriesResult l1 = lambda_twist(*ctx.a, {t, c, d}, ctx.policy);
    const SeriesResult l2 = lambda_twist(*ctx.a, {2.0 - t, c, -a}, ctx.policy);
    out.push_back(absolute_report("functional-equation/" + std::to_string(i) + ":t=" + fmt(t) +
                                      ",c=" + std::to_string(c) + ",d=" + std::to_string(d),
                                  l1.value, -l2.value, 1e-9, sw.ms(), ctx.policy,
                                  "Lambda(t,-d/c) vs -Lambda(2-t,a/c)"));
  }
  return out;
}

std::vector<GammaMatrix> sample_matrices(int64_t level, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<GammaMatrix> out;
  while (static_cast<int>(out.size()) < count) {
    const int64_t c = level * (1 + static_cast<int64_t>(rng() % 4));
    const int64_t d = static_cast<int64_t>(rng() % static_cast<uint64_t>(2 * c)) - c;
    if (gcd(d, c) != 1) continue;
    const int64_t a = mod_inverse(mod(d, c), c);
    GammaMatrix g{a, (a * d - 1) / c, c, d};
    g = translation(static_cast<int64_t>(rng() % 5) - 2) * g;
    out.push_back(g);
  }
  return out;
}

std::string fmt(const GammaMatrix& g) {
  return "(" + std::to_string(g.a) + "," + std::to_string(g.b) + ";" + std::to_string(g.c) + "," +
         std::to_string(g.d) + ")";
}

Reports modular_symbols(VerifyContext& ctx) {
  Reports out;
  const auto mats = sample_matrices(ctx.a->level(), 10, 77);
  const UpperHalfPlanePoint pts[] = {{0.2, 0.9}, {-0.35, 0.6}, {0.1, 1.3}};
  for (const GammaMatrix& g : mats) {
    Stopwatch sw0;
    const cplx ms = modular_symbol(*ctx.a, g, ctx.policy);
    const int64_t ms_time = sw0.ms();
    for (const auto& z : pts) {
      Stopwatch sw;
      const cplx cob = eval_F(*ctx.a, UpperHalfPlanePoint(g.act(z.z())), ctx.policy) - eval_F(*ctx.a, z, ctx.policy);
      out.push_back(absolute_report("modular-symbols/" + fmt(g) + "@" + fmt(z.z()), ms, cob, 1e-8,
                                    ms_time + sw.ms(), ctx.policy, "(i/c) Lambda(f,1,-d/c) vs F(gz) - F(z)"));
    }
  }
  return out;
}

Reports hecke(VerifyContext& ctx) {
  Reports out;
  Stopwatch sw;
  int64_t failures = 0, checks = 0;
  for (int64_t m = 1; m <= 200; ++m)
    for (int64_t n = 1; m * n <= 200; ++n) {
      ++checks;
      if (!hecke_identity_check(*ctx.a, m, n)) ++failures;
    }
  out.push_back(absolute_report("hecke/identity-mn<=200", static_cast<double>(failures), 0.0, 0.0, sw.ms(),
                                ctx.policy, std::to_string(checks) + " pairs, exact integers"));
  Stopwatch sw2;
  int64_t bad = 0;
  for (int64_t n = 1; n <= 10000; ++n)
    if (!ramanujan_bound_holds(*ctx.a, n)) ++bad;
  out.push_back(absolute_report("hecke/ramanujan-n<=10000", static_cast<double>(bad), 0.0, 0.0, sw2.ms(), ctx.policy,
                                "a(n)^2 <= d(n)^2 n"));
  return out;
}

Reports euler_ratio(VerifyContext& ctx) {
  Reports out;
  for (auto [s, t] : {std::pair<double, double>{2.5, 1.8}, {3.0, 2.0}}) {
    Stopwatch sw;
    const auto [lhs, rhs] = euler_ratio_identity(*ctx.a, ctx.chi, s, t, ctx.policy);
    out.push_back(relative_report("euler-ratio/s=" + fmt(s) + ",t=" + fmt(t), lhs.value, rhs, 1e-6, sw.ms(),
                                  ctx.policy, "divisor series (est " + fmt(lhs.error_estimate) + ") vs L-ratio"));
  }
  return out;
}

Reports phi_star_extraction(VerifyContext& ctx) {
  Reports out;
  const int64_t C = ctx.policy.cutoff_csum;
  Stopwatch sw;
  const auto cs = phi_star(-1, 3.0, ctx.chi, *ctx.table, C);
  const auto ex = phi_star_extracted(-1, 3.0, ctx.chi, 0.5, ctx.policy.quadrature_nodes, C, *ctx.table);
  out.push_back(absolute_report("phi-star-extraction/n=-1,s=3,y=0.5", ex.value, cs.value, 1e-3, sw.ms(), ctx.policy,
                                "E* Fourier extraction (" + std::to_string(ctx.policy.quadrature_nodes) +
                                    " nodes) vs c-sum, c<=" + std::to_string(C) + "; relative diff in rel_diff"));
  return out;
}

Reports completion(VerifyContext& ctx) {
  Reports out;
  const CosetWindow w{ctx.policy.cutoff_csum, 1e-3};
  for (const UpperHalfPlanePoint& z : {UpperHalfPlanePoint(0.3, 1.0), UpperHalfPlanePoint(-0.2, 0.8),
                                       UpperHalfPlanePoint(0.45, 1.5)}) {
    Stopwatch sw;
    const WindowSums ws = window_sums(z, 3.0, ctx.chi, w, *ctx.table);
    out.push_back(absolute_report("completion/z=" + fmt(z.z()), ws.E_star, ws.G - ws.F_times_E, 1e-10, sw.ms(),
                                  ctx.policy, std::to_string(ws.cosets) + " cosets, Im >= 1e-3"));
  }
  {
    Stopwatch sw;
    const UpperHalfPlanePoint z(0.3, 1.2);
    const GammaMatrix g{2, 1, 11, 6};
    const UpperHalfPlanePoint gz(g.act(z.z()));
    const int64_t C = ctx.policy.cutoff_csum;
    const cplx lhs = eval_E_star(gz, 3.0, ctx.chi, C, *ctx.table).value;
    const cplx rhs = ctx.chi(g.d) * (eval_E_star(z, 3.0, ctx.chi, C, *ctx.table).value -
                                     ctx.table->modular_symbol(g) * eval_E(z, 3.0, ctx.chi, C, ctx.policy).value);
    out.push_back(absolute_report("completion/second-order-automorphy", lhs, rhs, 1e-5, sw.ms(), ctx.policy,
                                  "E*(gz) vs chi(g)(E*(z) - <f,g> E(z)), g=" + fmt(g)));
  }
  return out;
}

Reports k_transform(VerifyContext& ctx) {
  Reports out;
  for (double x : {2.0, 2.5, 3.0, 4.0, 5.0}) {
    for (cplx s : {cplx(0.0), cplx(0.4), cplx(1.0), cplx(0.0, 0.7), cplx(0.3, 0.5)}) {
      Stopwatch sw;
      const QuadratureResult q = k_transform_numeric(TestFunctionHx(x), s, ctx.policy);
      const cplx cf = k_transform_hx_closed(x, s);
      out.push_back(relative_report("k-transform/x=" + fmt(x) + ",s=" + fmt(s), q.value, cf, 1e-6, sw.ms(),
                                    ctx.policy, "tanh-sinh vs closed form"));
    }
  }
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> ux(3.0, 6.0), us(0.0, 1.0);
  for (int i = 0; i < 5; ++i) {
    const int64_t n = -1 - static_cast<int64_t>(rng() % 4);
    const int64_t l = 1 + static_cast<int64_t>(rng() % 6);
    const cplx x(ux(rng), 0.0), s(us(rng), us(rng));
    Stopwatch sw;
    const cplx factor = shift_scaling_factor(n, l, x);
    const cplx shifted = k_transform_numeric(shifted_test_function(n, l, x), s, ctx.policy).value;
    const cplx base = k_transform_numeric(TestFunctionHx(x), s, ctx.policy).value;
    out.push_back(relative_report("k-transform/scaling:n=" + std::to_string(n) + ",l=" + std::to_string(l) +
                                      ",x=" + fmt(x) + ",s=" + fmt(s),
                                  shifted, factor * base, 1e-12, sw.ms(), ctx.policy,
                                  "K(shifted h_x) vs (|n|/|n-l|)^x K(h_x), same quadrature"));
    const double mn = std::abs(static_cast<double>(n - l) / static_cast<double>(n));
    const cplx via_factor = 1.0 - std::exp(s * std::log(mn)) * factor;
    out.push_back(relative_report("k-transform/weight:n=" + std::to_string(n) + ",l=" + std::to_string(l) +
                                      ",x=" + fmt(x) + ",s=" + fmt(s),
                                  shift_weight(n, l, x, s), via_factor, 1e-12, 0, ctx.policy,
                                  "1 - |m/n|^{s-x} vs 1 - |(n-l)/n|^s (|n|/|n-l|)^x"));
  }
  return out;
}

Reports weighted_decomposition(VerifyContext& ctx) {
  Reports out;
  const int64_t n = -1;
  const cplx s = 2.5;
  const int64_t C = ctx.policy.cutoff_csum;
  Stopwatch sw;
  const WeightedSum w4 = L_weighted(n, 4.0, s, ctx.chi, *ctx.table, C);
  const WeightedSum w6 = L_weighted(n, 6.0, s, ctx.chi, *ctx.table, C);
  // tails again with a different smoothing scale: an independent truncation
  PrecisionPolicy alt = ctx.policy;
  alt.smoothing_scale = 0.75 * ctx.policy.smoothing_scale;
  const cplx t4 = tail_series(n, 4.0, s, *ctx.a, ctx.chi, alt).value;
  const cplx t6 = tail_series(n, 6.0, s, *ctx.a, ctx.chi, alt).value;
  const double an = std::abs(static_cast<double>(n));
  const cplx rhs = std::exp((6.0 - s) * std::log(an)) * t6 - std::exp((4.0 - s) * std::log(an)) * t4;
  out.push_back(relative_report("weighted-decomposition/cross-difference:n=-1,s=2.5,x=4,6", w4.value - w6.value, rhs,
                                1e-5, sw.ms(), ctx.policy,
                                "L_weighted(4) - L_weighted(6) vs tail differences at smoothing scale x0.75"));
  Stopwatch sw2;
  std::vector<double> gaps;
  for (double x : {4.0, 6.0, 8.0, 10.0}) {
    const WeightedSum w = L_weighted(n, x, s, ctx.chi, *ctx.table, C);
    gaps.push_back(std::abs(w.value - w.shifted));
  }
  int64_t violations = 0;
  std::string trail;
  for (size_t i = 0; i < gaps.size(); ++i) {
    if (i > 0 && !(gaps[i] < gaps[i - 1])) ++violations;
    trail += (i ? "," : "") + fmt(gaps[i]);
  }
  out.push_back(absolute_report("weighted-decomposition/monotone:x=4,6,8,10", static_cast<double>(violations), 0.0,
                                0.0, sw2.ms(), ctx.policy, "|L_weighted(x) - L_shift|: " + trail));
  return out;
}

const std::map<std::string, std::function<Reports(VerifyContext&)>>& suites() {
  static const std::map<std::string, std::function<Reports(VerifyContext&)>> m{
      {"classical-coefficients", classical_coefficients},
      {"shifted-sum-routes", shifted_sum_routes},
      {"functional-equation", functional_equation},
      {"modular-symbols", modular_symbols},
      {"hecke", hecke},
      {"euler-ratio", euler_ratio},
      {"phi-star-extraction", phi_star_extraction},
      {"completion", completion},
      {"k-transform", k_transform},
      {"weighted-decomposition", weighted_decomposition},
  };
  return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "classical-coefficients", "shifted-sum-routes", "functional-equation", "modular-symbols",
      "hecke",                  "euler-ratio",        "phi-star-extraction", "completion",
      "k-transform",            "weighted-decomposition"};
  return names;
}

bool is_suite(const std::string& name) { return name == "all" || suites().count(name) > 0; }

std::vector<VerificationReport> run_suite(const std::string& name, VerifyContext& ctx) {
  require(is_suite(name), "verify: unknown suite '" + name + "'");
  Reports out;
  if (name == "all") {
    for (const auto& n : suite_names()) {
      Reports r = suites().at(n)(ctx);
      out.insert(out.end(), r.begin(), r.end());
    }
  } else {
    out = suites().at(name)(ctx);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const VerificationReport& x, const VerificationReport& y) { return x.identity_id < y.identity_id; });
  return out;
}

}  // namespace shiftsum
