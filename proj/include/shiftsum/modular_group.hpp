#pragma once

#include <cstdint>

#include "shiftsum/common.hpp"

namespace shiftsum {

/// Integer 2x2 matrix (a b; c d) acting by Moebius transformations.
struct GammaMatrix {
  int64_t a = 1, b = 0, c = 0, d = 1;

  int64_t det() const { return a * d - b * c; }
  GammaMatrix inverse() const { return {d, -b, -c, a}; }
  GammaMatrix negated() const { return {-a, -b, -c, -d}; }
  bool in_gamma0(int64_t level) const { return det() == 1 && c % level == 0; }

  cplx act(cplx z) const {
    return (static_cast<double>(a) * z + static_cast<double>(b)) /
           (static_cast<double>(c) * z + static_cast<double>(d));
  }
  /// Im(gamma z) = Im(z) / |cz + d|^2.
  double im_act(cplx z) const {
    return z.imag() / std::norm(static_cast<double>(c) * z + static_cast<double>(d));
  }

  friend GammaMatrix operator*(const GammaMatrix& x, const GammaMatrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const GammaMatrix&, const GammaMatrix&) = default;
};

/// Translation (1 m; 0 1).
inline GammaMatrix translation(int64_t m) { return {1, m, 0, 1}; }

}  // namespace shiftsum
