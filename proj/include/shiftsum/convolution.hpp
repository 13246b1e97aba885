#pragma once

#include <cstdint>

#include "shiftsum/char_arith.hpp"
#include "shiftsum/common.hpp"
#include "shiftsum/cuspform.hpp"
#include "shiftsum/lfun.hpp"
#include "shiftsum/precision.hpp"
#include "shiftsum/series.hpp"

namespace shiftsum {

/// Shifted sum sum_{l >= 1, m = l - n != 0} a(l) sigma^chi_{2s-1}(|m|) l^{-t} |m|^{1-2s}
/// and its weighted variants. x is only read by the weighted sums.
struct ConvolutionQuery {
  int64_t n = -1;
  cplx s{2.5, 0.0};
  cplx t{1.0, 0.0};
  cplx x{4.0, 0.0};
};

/// The shifted sum by direct summation over l; Re(t) > 3/2, Re(s) > 2.
SeriesResult dds_direct(const ConvolutionQuery& q, const CuspFormCoefficients& a, const DirichletCharacter& chi,
                        const PrecisionPolicy& policy);

struct CsumResult {
  cplx value;
  double error_estimate = 0.0;
  int64_t c_max = 0;
};

/// The shifted sum as
///   N^{2s} L(conj chi, 2s) / W(conj chi) (2 pi)^t / Gamma(t)
///     sum_{N|c<=c_max} c^{-2s-t} sum_{d mod c} conj(chi(d)) e(nd/c) Lambda(f, t, -d/c),
/// valid wherever the c-sum converges (Re(s) > 2, Re(t) > 1 - delta).
CsumResult dds_csum(const ConvolutionQuery& q, const DirichletCharacter& chi, TwistTable& table, int64_t c_max);

struct ShiftedSum {
  cplx value;
  double error_estimate = 0.0;
  int64_t c_max = 0;
  /// phi*(n, s, chi) recovered from the value through
  ///   L(n, chi; s) = 2 Gamma(s) N^{2s} L(conj chi, 2s) / (i W(conj chi) (pi |n|)^{s-1}) phi*(n, s, chi)
  cplx phi_star_from_value;
  cplx phi_star_csum;
};

/// L(n, chi; s): the shifted sum continued to t = 1, Re(s) > 2.
ShiftedSum L_shift(int64_t n, cplx s, const DirichletCharacter& chi, TwistTable& table, int64_t c_max);

/// sum_{l >= 1} a(l)/l sigma^chi_{2s-1}(l - n) / (l - n)^{s-1+x}, n < 0, Re(x) > Re(s) + 1/2.
SeriesResult tail_series(int64_t n, cplx x, cplx s, const CuspFormCoefficients& a, const DirichletCharacter& chi,
                         const PrecisionPolicy& policy);

struct WeightedSum {
  cplx value;
  cplx shifted;  // L(n, chi; s)
  cplx tail;     // tail_series(n, x, s)
  double error_estimate = 0.0;
};

/// L(n, chi, x; s) = L(n, chi; s) - |n|^{x-s} tail_series(n, x, s), n < 0.
WeightedSum L_weighted(int64_t n, cplx x, cplx s, const DirichletCharacter& chi, TwistTable& table, int64_t c_max);

/// The weight 1 - |m/n|^{s-x} attached to the l-th term, m = l - n.
cplx shift_weight(int64_t n, int64_t l, cplx x, cplx s);

}  // namespace shiftsum
