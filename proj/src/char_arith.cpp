#include "shiftsum/char_arith.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace shiftsum {

int64_t gcd(int64_t a, int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const int64_t r = a % b;
    a = b;
    b = r;
  }
  return a;
}

int64_t mod(int64_t a, int64_t m) {
  const int64_t r = a % m;
  return r < 0 ? r + m : r;
}

int64_t mod_inverse(int64_t a, int64_t m) {
  require(m >= 1, "mod_inverse: modulus must be positive");
  if (m == 1) return 0;
  int64_t old_r = mod(a, m), r = m;
  int64_t old_s = 1, s = 0;
  while (r != 0) {
    const int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  require(old_r == 1, "mod_inverse: argument not invertible");
  return mod(old_s, m);
}

std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
  require(n >= 1, "factorize: n must be positive");
  std::vector<std::pair<int64_t, int>> out;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int64_t euler_phi(int64_t n) {
  int64_t phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

std::vector<int64_t> divisors(int64_t n) {
  std::vector<int64_t> out{1};
  for (auto [p, e] : factorize(n)) {
    const size_t base = out.size();
    int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int64_t divisor_count(int64_t n) {
  int64_t d = 1;
  for (auto [p, e] : factorize(n)) d *= e + 1;
  return d;
}

int moebius(int64_t n) {
  require(n >= 1, "moebius: n must be positive");
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::vector<int64_t> primes_up_to(int64_t n) {
  std::vector<int64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<size_t>(n + 1), false);
  for (int64_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (int64_t q = p * p; q <= n; q += p) composite[q] = true;
  }
  return out;
}

namespace {

// Least primitive root of a cyclic unit group, or 0 if none exists.
int64_t least_primitive_root(int64_t n, int64_t phi) {
  const auto fac = factorize(phi);
  for (int64_t g = 1; g < n; ++g) {
    if (gcd(g, n) != 1) continue;
    bool ok = true;
    for (auto [q, e] : fac) {
      // g^(phi/q) mod n
      int64_t result = 1, base = g % n, k = phi / q;
      while (k > 0) {
        if (k & 1) result = result * base % n;
        base = base * base % n;
        k >>= 1;
      }
      if (result == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 0;
}

}  // namespace

DirichletCharacter::DirichletCharacter(int64_t modulus, int64_t index)
    : modulus_(modulus), index_(index) {
  require(modulus >= 3, "character: modulus must be at least 3");
  const auto fac = factorize(modulus);
  const bool cyclic = fac.size() == 1 && (fac[0].first != 2 || fac[0].second <= 2);
  require(cyclic, "character: modulus must be an odd prime power or 4 (cyclic unit group)");
  phi_ = euler_phi(modulus);
  generator_ = least_primitive_root(modulus, phi_);
  index_ = mod(index, phi_);

  log_.assign(static_cast<size_t>(modulus), -1);
  int64_t power = 1;
  for (int64_t j = 0; j < phi_; ++j) {
    log_[static_cast<size_t>(power)] = j;
    power = power * generator_ % modulus;
  }
  table_.assign(static_cast<size_t>(modulus), cplx{0.0, 0.0});
  for (int64_t a = 0; a < modulus; ++a) {
    const int64_t j = log_[static_cast<size_t>(a)];
    if (j >= 0) table_[static_cast<size_t>(a)] = unit_root(index_ * j, phi_);
  }
  const int64_t rot_minus_one = index_ * log_[static_cast<size_t>(modulus - 1)] % phi_;
  // chi(-1) = +-1, i.e. rotation 0 or phi/2.
  parity_ = rot_minus_one == 0 ? 1 : -1;

  // Primitive iff chi is nontrivial on {a = 1 mod M} for every proper divisor M.
  primitive_ = true;
  for (int64_t M : divisors(modulus)) {
    if (M == modulus) continue;
    bool trivial = true;
    for (int64_t a = 1; a < modulus && trivial; a += M)
      if (gcd(a, modulus) == 1 && rotation(a).value() != 0) trivial = false;
    if (trivial) {
      primitive_ = false;
      break;
    }
  }
}

std::optional<int64_t> DirichletCharacter::rotation(int64_t a) const {
  const int64_t j = log_[static_cast<size_t>(mod(a, modulus_))];
  if (j < 0) return std::nullopt;
  return index_ * j % phi_;
}

DirichletCharacter DirichletCharacter::conj() const {
  return DirichletCharacter(modulus_, phi_ - index_);
}

DirichletCharacter DirichletCharacter::principal(int64_t modulus) {
  return DirichletCharacter(modulus, 0);
}

DirichletCharacter make_character(int64_t modulus, int64_t index) {
  DirichletCharacter chi(modulus, index);
  require(!chi.is_principal(), "character: index = 0 gives the trivial character");
  return chi;
}

cplx gauss_sum(const DirichletCharacter& chi) {
  CompensatedSum<cplx> acc;
  const int64_t n = chi.modulus();
  for (int64_t a = 1; a < n; ++a) acc += chi(a) * unit_root(a, n);
  return acc.value();
}

cplx sigma_chi(const DirichletCharacter& chi, cplx t, int64_t m) {
  require(m >= 1, "sigma_chi: m must be positive");
  CompensatedSum<cplx> acc;
  for (int64_t d : divisors(m)) {
    const cplx c = chi(d);
    if (c != cplx{0.0, 0.0}) acc += c * std::pow(static_cast<double>(d), t);
  }
  return acc.value();
}

std::vector<cplx> sigma_chi_normalized_table(const DirichletCharacter& chi, cplx t, int64_t M) {
  require(M >= 1, "sigma table: size must be positive");
  std::vector<cplx> out(static_cast<size_t>(M + 1), cplx{0.0, 0.0});
  for (int64_t e = 1; e <= M; ++e) {
    const cplx w = std::exp(-t * std::log(static_cast<double>(e)));
    for (int64_t k = 1, m = e; m <= M; ++k, m += e) out[static_cast<size_t>(m)] += chi(k) * w;
  }
  return out;
}

}  // namespace shiftsum
