#include "shiftsum/cuspform.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "shiftsum/char_arith.hpp"

namespace shiftsum {

CuspFormCoefficients::CuspFormCoefficients(int64_t level, std::vector<int64_t> coeffs,
                                           CoefficientSource source)
    : level_(level), coeffs_(std::move(coeffs)), source_(source) {
  require(level >= 1, "cusp form: level must be positive");
  require(coeffs_.size() >= 2, "cusp form: need at least a(1)");
  require(coeffs_[1] == 1, "cusp form: a(1) must be 1 (normalized eigenform)");
  coeffs_[0] = 0;
  over_n_.assign(coeffs_.size(), 0.0);
  for (size_t n = 1; n < coeffs_.size(); ++n)
    over_n_[n] = static_cast<double>(coeffs_[n]) / static_cast<double>(n);
}

int64_t CuspFormCoefficients::operator()(int64_t n) const {
  if (n < 1 || n > size()) throw PreconditionError("cusp form: coefficient index out of range");
  return coeffs_[static_cast<size_t>(n)];
}

UpperHalfPlanePoint::UpperHalfPlanePoint(double re, double im) : x(re), y(im) {
  require(im > 0.0, "upper half plane: need Im(z) > 0");
}

namespace {

// Exponents and signs of prod_{n>=1} (1 - q^{stride n}) up to q^M (Euler pentagonal theorem).
std::vector<std::pair<int64_t, int>> pentagonal_terms(int64_t M, int64_t stride) {
  std::vector<std::pair<int64_t, int>> out{{0, 1}};
  for (int64_t k = 1;; ++k) {
    const int sign = (k % 2 == 0) ? 1 : -1;
    const int64_t e1 = stride * k * (3 * k - 1) / 2;
    const int64_t e2 = stride * k * (3 * k + 1) / 2;
    if (e1 > M) break;
    out.emplace_back(e1, sign);
    if (e2 <= M) out.emplace_back(e2, sign);
  }
  return out;
}

void multiply_sparse(std::vector<int64_t>& dense, const std::vector<std::pair<int64_t, int>>& sparse) {
  const int64_t M = static_cast<int64_t>(dense.size()) - 1;
  std::vector<int64_t> out(dense.size(), 0);
  for (auto [e, sign] : sparse) {
    for (int64_t i = 0; i + e <= M; ++i) {
      if (dense[i] == 0) continue;
      int64_t r;
      if (__builtin_add_overflow(out[i + e], sign * dense[i], &r))
        throw BudgetError("eta product: 64-bit overflow");
      out[i + e] = r;
    }
  }
  dense.swap(out);
}

}  // namespace

CuspFormCoefficients eta_product_coeffs(int64_t M) {
  require(M >= 1, "eta product: M must be positive");
  // P(q)^2 P(q^11)^2 to q^{M-1}, then shift by one.
  const int64_t K = M - 1;
  std::vector<int64_t> series(static_cast<size_t>(K + 1), 0);
  series[0] = 1;
  const auto p1 = pentagonal_terms(K, 1);
  const auto p11 = pentagonal_terms(K, 11);
  multiply_sparse(series, p1);
  multiply_sparse(series, p1);
  multiply_sparse(series, p11);
  multiply_sparse(series, p11);
  std::vector<int64_t> coeffs(static_cast<size_t>(M + 1), 0);
  for (int64_t n = 1; n <= M; ++n) coeffs[n] = series[n - 1];
  return CuspFormCoefficients(11, std::move(coeffs), CoefficientSource::eta_product);
}

CuspFormCoefficients hecke_recursion_coeffs(int64_t level, const std::map<int64_t, int64_t>& prime_coeffs,
                                            int64_t M) {
  require(M >= 1, "hecke recursion: M must be positive");
  std::vector<int64_t> a(static_cast<size_t>(M + 1), 0);
  a[1] = 1;
  for (int64_t p : primes_up_to(M)) {
    const auto it = prime_coeffs.find(p);
    require(it != prime_coeffs.end(), "hecke recursion: missing a(p) for p = " + std::to_string(p));
    const bool bad = level % p == 0;
    // prime powers
    int64_t prev = 1, cur = it->second;
    for (int64_t pk = p; pk <= M; pk *= p) {
      a[pk] = cur;
      const int64_t next = it->second * cur - (bad ? 0 : p * prev);
      prev = cur;
      cur = next;
      if (pk > M / p) break;
    }
  }
  // multiplicative closure: n = p^k * m with p the least prime factor
  std::vector<int64_t> lpf(static_cast<size_t>(M + 1), 0);
  for (int64_t p : primes_up_to(M))
    for (int64_t q = p; q <= M; q += p)
      if (lpf[q] == 0) lpf[q] = p;
  for (int64_t n = 2; n <= M; ++n) {
    const int64_t p = lpf[n];
    int64_t pk = 1, m = n;
    while (m % p == 0) {
      m /= p;
      pk *= p;
    }
    if (m != 1) a[n] = a[pk] * a[m];
  }
  return CuspFormCoefficients(level, std::move(a), CoefficientSource::hecke_recursion);
}

bool hecke_identity_check(const CuspFormCoefficients& a, int64_t m, int64_t n) {
  require(m >= 1 && n >= 1, "hecke check: indices must be positive");
  require(m * n <= a.size(), "hecke check: m n exceeds stored coefficients");
  int64_t rhs = 0;
  for (int64_t d : divisors(gcd(m, n))) {
    if (gcd(d, a.level()) != 1) continue;
    rhs += moebius(d) * d * a(m / d) * a(n / d);
  }
  return a(m * n) == rhs;
}

bool ramanujan_bound_holds(const CuspFormCoefficients& a, int64_t n) {
  const int64_t v = a(n);
  const int64_t d = divisor_count(n);
  return v * v <= d * d * n;
}

int64_t qseries_terms(double y, double eps) {
  require(y > 0.0, "q-series: need Im(z) > 0");
  const double r = std::exp(-kTwoPi * y);
  // tail(M) = sum_{n>M} 2 n r^n = 2 r^{M+1} ((M+1) - M r) / (1-r)^2
  auto tail = [&](double M) {
    return 2.0 * std::exp((M + 1.0) * std::log(r)) * ((M + 1.0) - M * r) / ((1.0 - r) * (1.0 - r));
  };
  double M = std::ceil(std::log(eps) / std::log(r));
  if (M < 1) M = 1;
  while (tail(M) > eps) M = std::ceil(M * 1.1 + 1.0);
  return static_cast<int64_t>(M);
}

namespace {

template <typename Weight>
cplx qseries(const CuspFormCoefficients& a, UpperHalfPlanePoint z, const PrecisionPolicy& policy,
             double scale_bound, Weight weight) {
  const PrecisionPolicy p = policy.clamped();
  const int64_t M = qseries_terms(z.y, p.epsilon_abs / scale_bound);
  if (M > p.cutoff_qseries || M > a.size())
    throw BudgetError("q-series: Im(z) = " + std::to_string(z.y) + " needs " + std::to_string(M) +
                      " terms, beyond the budget");
  const cplx w = kTwoPi * kI * z.z();
  CompensatedSum<cplx> acc;
  cplx qn{1.0, 0.0};
  const cplx q = std::exp(w);
  for (int64_t n = 1; n <= M; ++n) {
    qn = (n % 64 == 1) ? std::exp(static_cast<double>(n) * w) : qn * q;
    acc += weight(n) * qn;
  }
  return acc.value();
}

}  // namespace

cplx eval_f(const CuspFormCoefficients& a, UpperHalfPlanePoint z, const PrecisionPolicy& policy) {
  return qseries(a, z, policy, 1.0, [&](int64_t n) { return cplx(static_cast<double>(a(n)), 0.0); });
}

cplx eval_F(const CuspFormCoefficients& a, UpperHalfPlanePoint z, const PrecisionPolicy& policy) {
  // |a(n)/(2 pi n)| <= 2n/(2 pi n); the 2n tail bound is scaled by 1/(2 pi) accordingly.
  const auto& over_n = a.over_n();
  const cplx factor = 1.0 / (kTwoPi * kI);
  return qseries(a, z, policy, 1.0 / kTwoPi,
                 [&](int64_t n) { return factor * over_n[static_cast<size_t>(n)]; });
}

void write_coefficients_csv(std::ostream& out, const CuspFormCoefficients& a) {
  out << "n,a(n)\n";
  for (int64_t n = 1; n <= a.size(); ++n) out << n << ',' << a(n) << '\n';
}

CuspFormCoefficients read_coefficients_csv(std::istream& in, int64_t level) {
  std::vector<int64_t> coeffs{0};
  std::string line;
  int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'n') continue;
    std::istringstream row(line);
    int64_t n = 0, v = 0;
    char comma = 0;
    if (!(row >> n >> comma >> v) || comma != ',')
      throw PreconditionError("coefficient csv: malformed line " + std::to_string(line_no));
    if (n != static_cast<int64_t>(coeffs.size()))
      throw PreconditionError("coefficient csv: indices must be consecutive from 1 (line " +
                              std::to_string(line_no) + ")");
    coeffs.push_back(v);
  }
  return CuspFormCoefficients(level, std::move(coeffs), CoefficientSource::imported);
}

}  // namespace shiftsum
