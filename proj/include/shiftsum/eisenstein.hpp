#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "shiftsum/char_arith.hpp"
#include "shiftsum/common.hpp"
#include "shiftsum/cuspform.hpp"
#include "shiftsum/lfun.hpp"
#include "shiftsum/modular_group.hpp"
#include "shiftsum/precision.hpp"
#include "shiftsum/specfun.hpp"

namespace shiftsum {

/// Representative of a coset in Gamma_inf \ Gamma_0(N): c > 0 with 0 <= a < c,
/// or the identity for c = 0.
struct CosetRep {
  int64_t a = 1, b = 0, c = 0, d = 1;
  GammaMatrix matrix() const { return {a, b, c, d}; }
};

/// Canonical representative of the coset of g (sign fixed by c > 0, then a
/// reduced mod c by a left translation).
CosetRep canonical_coset(const GammaMatrix& g, int64_t level);

/// Identity coset followed by one representative per bottom row (c, d mod c),
/// N | c <= c_max, ordered by c then d.
std::vector<CosetRep> enumerate_cosets(int64_t level, int64_t c_max);

/// sum_{d mod c, (d,c)=1} conj(chi(d)) e((n d + m a)/c), ad = 1 mod c.
cplx kloosterman_chi(int64_t n, int64_t m, const DirichletCharacter& chi, int64_t c);

/// (i/c) sum_{d mod c, (d,c)=1} conj(chi(d)) Lambda(f, 1, -d/c) e((n d + m a)/c).
cplx kloosterman_star(int64_t n, int64_t m, const DirichletCharacter& chi, int64_t c, TwistTable& table);

enum class CoefficientRoute { kloosterman_sum, closed_form, quadrature_extraction };
const char* to_string(CoefficientRoute r);

struct EisensteinCoefficient {
  int64_t n = 0;
  cplx s;
  cplx value;
  CoefficientRoute route = CoefficientRoute::kloosterman_sum;
  double error_estimate = 0.0;
  int64_t c_max = 0;
};

/// The coset sum over Gamma_inf \ Gamma_0(N) (reps with c > 0) has n-th
/// Fourier coefficient kCosetFourierFactor * phi(n) * W_s(nz) when phi is
/// given by the Kloosterman c-sum with prefactor pi^s |n|^{s-1} / Gamma(s).
inline constexpr double kCosetFourierFactor = 2.0;

/// m-th coefficient phi(m, s; chi) of E(z, s; chi), Re(s) > 1.
///  kloosterman_sum:  pi^s |m|^{s-1} / Gamma(s) sum_{N|c<=c_max} c^{-2s} S(|m|, 0, chi; c)
///  closed_form:      (pi/N^2)^s W(conj chi) sigma^chi_{2s-1}(|m|) / (Gamma(s) L(conj chi, 2s) |m|^s)
///  quadrature_extraction: from eval_E on the line Im z = extraction_height.
EisensteinCoefficient phi_classical(int64_t m, cplx s, const DirichletCharacter& chi, CoefficientRoute route,
                                    const PrecisionPolicy& policy, double extraction_height = 1.0);

/// Empirical constant C0 with max_d |Lambda(f,1,-d/c)| <= C0 c^{3/2 + 0.1}
/// over N | c <= c_max; feeds the convexity tail budgets.
double convexity_constant(TwistTable& table, int64_t c_max);
inline constexpr double kConvexityExponent = 1.6;

/// phi*(n, s, chi) = pi^s |n|^{s-1} / Gamma(s) sum_{N|c<=c_max} c^{-2s} S*(n, 0, chi; c), Re(s) > 2.
EisensteinCoefficient phi_star(int64_t n, cplx s, const DirichletCharacter& chi, TwistTable& table,
                               int64_t c_max);

/// phi*(s, chi) = sqrt(pi) Gamma(s-1/2)/Gamma(s) sum_{N|c<=c_max} c^{-2s} S*(0, 0, chi; c), Re(s) > 2.
EisensteinCoefficient phi_star_constant(cplx s, const DirichletCharacter& chi, TwistTable& table, int64_t c_max);

/// Diagnostic for phi*(s, chi) through
///   i W(conj chi) Gamma(s-1/2) / (2 sqrt(pi) N^{2s} Gamma(s) L(conj chi, 2s)) * D(1),
/// D(t) = sum_l a(l) sigma^chi_{2s-1}(l) l^{1-t-2s}, with D(1) extrapolated
/// quadratically from t in {1.5, 1.3, 1.1}.
struct ConstantTermDiagnostic {
  std::vector<double> t_nodes;
  std::vector<cplx> d_values;
  cplx d_extrapolated;
  cplx phi_star;
};
ConstantTermDiagnostic phi_star_constant_extrapolated(cplx s, const CuspFormCoefficients& a,
                                                      const DirichletCharacter& chi, const PrecisionPolicy& policy);

// ---- coset sums ------------------------------------------------------------

struct CosetSumResult {
  cplx value;
  double error_estimate = 0.0;
  int64_t c_max = 0;
  int64_t cosets = 0;  // double cosets (c, d mod c) for E, E*; single cosets for windows
};

/// E(z, s; chi) = sum conj(chi(gamma)) Im(gamma z)^s over c <= c_max, Re(s) > 1.
/// Each double coset contributes c^{-2s} y^s sum_k |z + d/c + k|^{-2s}, with the
/// k-sum completed by Euler-Maclaurin.
CosetSumResult eval_E(UpperHalfPlanePoint z, cplx s, const DirichletCharacter& chi, int64_t c_max,
                      const PrecisionPolicy& policy);

/// E*(z, s; chi) = sum conj(chi(gamma)) <f, gamma> Im(gamma z)^s over c <= c_max, Re(s) > 2.
CosetSumResult eval_E_star(UpperHalfPlanePoint z, cplx s, const DirichletCharacter& chi, int64_t c_max,
                           TwistTable& table);

/// sum_k ((u + k)^2 + y^2)^{-s} over all integers k, Re(s) > 1/2.
cplx lattice_line_sum(double u, double y, cplx s);

/// Finite set of cosets: c <= c_max and Im(gamma z) >= min_im.
struct CosetWindow {
  int64_t c_max = 1100;
  double min_im = 1e-3;
};

/// Cosets of the window at z, identity first, then by c and d.
std::vector<GammaMatrix> window_cosets(UpperHalfPlanePoint z, int64_t level, const CosetWindow& w);

/// Estimate of sum Im(gamma z)^sigma over cosets with Im(gamma z) < min_im,
/// from the asymptotic count #{Im(gamma z) > u} ~ 3 / (pi [SL2(Z) : Gamma_0(N)] u).
double window_dropped_bound(int64_t level, double sigma, double min_im);

/// G(z, s; chi) = sum conj(chi(gamma)) F(gamma z) Im(gamma z)^s over the window.
CosetSumResult eval_G(UpperHalfPlanePoint z, cplx s, const DirichletCharacter& chi, const CosetWindow& w,
                      const CuspFormCoefficients& a, const PrecisionPolicy& policy);
/// Same with an arbitrary Eichler-integral evaluator.
CosetSumResult eval_G_with(UpperHalfPlanePoint z, cplx s, const DirichletCharacter& chi, const CosetWindow& w,
                           const std::function<cplx(UpperHalfPlanePoint)>& F);

/// P(z) = sum conj(chi(gamma)) e(n Re(gamma z)) h(2 pi |n| Im(gamma z)) over the window.
CosetSumResult eval_P(int64_t n, const TestFunction& h, UpperHalfPlanePoint z, const DirichletCharacter& chi,
                      const CosetWindow& w, int64_t level);

/// E, E*, G and F(z) E summed over one identical window; E* = G - F(z) E holds per coset.
struct WindowSums {
  cplx E, E_star, G, F_times_E;
  int64_t cosets = 0;
};
WindowSums window_sums(UpperHalfPlanePoint z, cplx s, const DirichletCharacter& chi, const CosetWindow& w,
                       TwistTable& table);

/// (1/K) sum_j g(x_j + iy) e(-n x_j), x_j = offset + j/K: the n-th Fourier
/// coefficient of a 1-periodic function on the line Im z = y.
cplx fourier_extract(const std::function<cplx(UpperHalfPlanePoint)>& g, int64_t n, double y, int nodes,
                     double offset = 0.0);

/// sqrt(|n| y) K_{s-1/2}(2 pi |n| y).
cplx whittaker_shape(int64_t n, double y, cplx s);

/// phi*(n, s, chi) recovered from the n-th Fourier coefficient of eval_E_star
/// on Im z = y, divided by kCosetFourierFactor * whittaker_shape.
EisensteinCoefficient phi_star_extracted(int64_t n, cplx s, const DirichletCharacter& chi, double y, int nodes,
                                         int64_t c_max, TwistTable& table);

}  // namespace shiftsum
