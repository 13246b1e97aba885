#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace shiftsum {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Violated precondition on an argument (domain, divisibility, coprimality).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A truncation could not be made to meet its error budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

// e^{2 pi i k / m}, with k reduced first so large numerators stay accurate.
inline cplx unit_root(int64_t k, int64_t m) {
  int64_t r = k % m;
  if (r < 0) r += m;
  const double theta = kTwoPi * static_cast<double>(r) / static_cast<double>(m);
  return {std::cos(theta), std::sin(theta)};
}

// Neumaier-compensated accumulator. Summation order is the caller's order.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_same_v<T, cplx>) {
      re_.add(x.real());
      im_.add(x.imag());
    } else {
      const T t = sum_ + x;
      if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
      else
        comp_ += (x - t) + sum_;
      sum_ = t;
    }
  }
  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }
  T value() const {
    if constexpr (std::is_same_v<T, cplx>)
      return {re_.value(), im_.value()};
    else
      return sum_ + comp_;
  }

 private:
  struct Empty {};
  using Part = std::conditional_t<std::is_same_v<T, cplx>, CompensatedSum<double>, Empty>;
  T sum_{};
  T comp_{};
  [[no_unique_address]] Part re_{};
  [[no_unique_address]] Part im_{};
};

}  // namespace shiftsum
