#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "shiftsum/char_arith.hpp"
#include "shiftsum/common.hpp"
#include "shiftsum/cuspform.hpp"
#include "shiftsum/modular_group.hpp"
#include "shiftsum/precision.hpp"
#include "shiftsum/series.hpp"

namespace shiftsum {

// ---- Dirichlet series in their absolute-convergence regions ----------------

/// L(chi, s) = sum chi(n) n^{-s}, Re(s) > 1. The principal character is
/// rejected unless `allow_principal` (diagnostic identities only).
SeriesResult dirichlet_l(const DirichletCharacter& chi, cplx s, const PrecisionPolicy& policy,
                         bool allow_principal = false);

/// prod_{p <= P} (1 - chi(p) p^{-s})^{-1}.
cplx dirichlet_l_euler_product(const DirichletCharacter& chi, cplx s, int64_t P);

/// L(f, s) = sum a(n) n^{-s}, Re(s) > 3/2. Sharp truncation with the tail
/// bound 2 M^{2-Re s}/(Re s - 2) when Re(s) >= 5/2, Gaussian smoothing below.
SeriesResult l_f(const CuspFormCoefficients& a, cplx s, const PrecisionPolicy& policy);

/// prod_{p <= P} of the local factors of L(f, s).
cplx l_f_euler_product(const CuspFormCoefficients& a, cplx s, int64_t P);

/// L(f x chi, s) = sum a(n) chi(n) n^{-s}, Re(s) > 3/2. The principal
/// character is accepted here as the all-ones diagnostic twist.
SeriesResult l_f_chi(const CuspFormCoefficients& a, const DirichletCharacter& chi, cplx s,
                     const PrecisionPolicy& policy);

/// sum_l a(l) sigma^chi_{2s-1}(l) l^{1-t-2s}. Sharp where the tail bound
/// allows it, otherwise Gaussian-smoothed, which also continues the series
/// to Re(t) <= 3/2 (L(f x chi, t) is entire).
SeriesResult twisted_divisor_series(const CuspFormCoefficients& a, const DirichletCharacter& chi, cplx s, cplx t,
                                    const PrecisionPolicy& policy);

/// (sum_l a(l) sigma^chi_{2s-1}(l) l^{1-t-2s},  L(f x chi,t) L(f,t+2s-1) / L(chi,2t+2s-2)).
/// Requires Re(t) > 3/2 and Re(s) >= 1.
std::pair<SeriesResult, cplx> euler_ratio_identity(const CuspFormCoefficients& a, const DirichletCharacter& chi,
                                                   cplx s, cplx t, const PrecisionPolicy& policy);

// ---- additive twists ---------------------------------------------------------

struct TwistParams {
  cplx t;
  int64_t c = 0;
  int64_t d = 0;
};

/// Lambda(f, t, -d/c) = (c/2pi)^t Gamma(t) L(f, t; -d/c), continued to all t.
///
/// Evaluated as
///   c^t (2pi)^{-t} sum a(n) n^{-t} e(-nd/c) Gamma(t, 2pi n/c)
///   - c^{2-t} (2pi)^{t-2} sum a(n) n^{t-2} e(na/c) Gamma(2-t, 2pi n/c),   ad = 1 mod c.
SeriesResult lambda_twist(const CuspFormCoefficients& a, const TwistParams& p, const PrecisionPolicy& policy);

/// Number of terms per sum needed for Lambda(f, t, . / c) to absolute error eps.
int64_t lambda_twist_terms(int64_t c, cplx t, double eps);

/// <f, gamma> = int_{i infty}^{gamma i infty} f(w) dw, through
/// <f, gamma> = (i/c) Lambda(f, 1, -d/c) for gamma = (a b; c d), c > 0.
cplx modular_symbol(const CuspFormCoefficients& a, const GammaMatrix& gamma, const PrecisionPolicy& policy);

/// Memo table of Lambda(f, t, -d/c) for all d mod c at once.
///
/// A row for (c, t) folds both sums into residue classes n mod c and then
/// evaluates every d in O(c) each. Rows are immutable once inserted; lookups
/// and inserts are safe from several threads.
class TwistTable {
 public:
  TwistTable(std::shared_ptr<const CuspFormCoefficients> a, PrecisionPolicy policy);

  const CuspFormCoefficients& coefficients() const { return *a_; }
  const PrecisionPolicy& policy() const { return policy_; }

  /// Row indexed by d in [0, c); entries with gcd(d, c) > 1 are zero.
  std::shared_ptr<const std::vector<cplx>> row(int64_t c, cplx t);

  cplx lambda(int64_t c, int64_t d, cplx t);
  cplx modular_symbol(const GammaMatrix& gamma);

  size_t cached_rows() const;

  /// max over N | c <= c_max and d of |Lambda(f, t, -d/c)| / c^exponent.
  double growth_constant(int64_t c_max, cplx t, double exponent);

 private:
  std::shared_ptr<const std::vector<cplx>> compute_row(int64_t c, cplx t) const;

  std::shared_ptr<const CuspFormCoefficients> a_;
  PrecisionPolicy policy_;
  mutable std::shared_mutex mutex_;
  std::map<std::tuple<int64_t, double, double>, std::shared_ptr<const std::vector<cplx>>> rows_;
};

}  // namespace shiftsum
