#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "shiftsum/common.hpp"
#include "shiftsum/precision.hpp"

namespace shiftsum {

enum class CoefficientSource { eta_product, hecke_recursion, imported };

/// Fourier coefficients a(1..M) of a normalized weight-2 newform on Gamma_0(N).
class CuspFormCoefficients {
 public:
  CuspFormCoefficients(int64_t level, std::vector<int64_t> coeffs, CoefficientSource source);

  int64_t level() const { return level_; }
  static constexpr int weight() { return 2; }
  /// Largest stored index M.
  int64_t size() const { return static_cast<int64_t>(coeffs_.size()) - 1; }
  int64_t operator()(int64_t n) const;
  CoefficientSource source() const { return source_; }
  /// a(n)/n as double, n in [1, M].
  const std::vector<double>& over_n() const { return over_n_; }
  const std::vector<int64_t>& raw() const { return coeffs_; }

 private:
  int64_t level_;
  std::vector<int64_t> coeffs_;  // index 0 unused (= 0)
  std::vector<double> over_n_;
  CoefficientSource source_;
};

struct UpperHalfPlanePoint {
  double x = 0.0;
  double y = 1.0;

  UpperHalfPlanePoint() = default;
  UpperHalfPlanePoint(double re, double im);
  explicit UpperHalfPlanePoint(cplx z) : UpperHalfPlanePoint(z.real(), z.imag()) {}
  cplx z() const { return {x, y}; }
};

/// q * prod (1 - q^n)^2 (1 - q^{11n})^2 up to q^M: the level 11 newform.
CuspFormCoefficients eta_product_coeffs(int64_t M);

/// Multiplicative extension of prime coefficients a(p), p <= M, to a(1..M)
/// via a(p^{k+1}) = a(p) a(p^k) - p a(p^{k-1}) for p not dividing N, and
/// a(p^k) = a(p)^k for p | N.
CuspFormCoefficients hecke_recursion_coeffs(int64_t level, const std::map<int64_t, int64_t>& prime_coeffs,
                                            int64_t M);

/// a(mn) == sum_{d | (m,n), (d,N)=1} mu(d) d a(m/d) a(n/d), in exact integers.
bool hecke_identity_check(const CuspFormCoefficients& a, int64_t m, int64_t n);

/// |a(n)| <= d(n) sqrt(n), checked as a(n)^2 <= d(n)^2 n in integers.
bool ramanujan_bound_holds(const CuspFormCoefficients& a, int64_t n);

/// Number of q-series terms so that sum_{n>M} 2n e^{-2 pi n y} < eps.
int64_t qseries_terms(double y, double eps);

/// f(z) = sum a(n) e^{2 pi i n z}.
cplx eval_f(const CuspFormCoefficients& a, UpperHalfPlanePoint z, const PrecisionPolicy& policy);

/// Eichler integral F(z) = int_{i infty}^z f(w) dw = sum a(n)/(2 pi i n) e^{2 pi i n z}.
cplx eval_F(const CuspFormCoefficients& a, UpperHalfPlanePoint z, const PrecisionPolicy& policy);

/// CSV lines "n,a(n)" with a header row.
void write_coefficients_csv(std::ostream& out, const CuspFormCoefficients& a);
CuspFormCoefficients read_coefficients_csv(std::istream& in, int64_t level);

}  // namespace shiftsum
