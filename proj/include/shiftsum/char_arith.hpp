#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "shiftsum/common.hpp"

namespace shiftsum {

// ---- integer helpers -------------------------------------------------------

int64_t gcd(int64_t a, int64_t b);
/// Inverse of a modulo m (m >= 1, gcd(a,m) = 1), in [0, m).
int64_t mod_inverse(int64_t a, int64_t m);
/// a mod m in [0, m).
int64_t mod(int64_t a, int64_t m);
int64_t euler_phi(int64_t n);
/// Prime factorization as (p, e) pairs, ascending p.
std::vector<std::pair<int64_t, int>> factorize(int64_t n);
/// Positive divisors of n >= 1, ascending.
std::vector<int64_t> divisors(int64_t n);
/// Number of positive divisors.
int64_t divisor_count(int64_t n);
int moebius(int64_t n);
bool is_prime(int64_t n);
std::vector<int64_t> primes_up_to(int64_t n);

// ---- Dirichlet characters --------------------------------------------------

/// Dirichlet character modulo a prime power (cyclic unit group), labelled by
/// generator powers: chi(g^j) = e^{2 pi i index j / phi(N)} where g is the
/// least primitive root mod N.
///
/// Values are stored exactly as rotations k / phi(N); the complex table is a
/// realization of those rotations and is never accumulated multiplicatively.
class DirichletCharacter {
 public:
  /// Principal character mod N (all ones on residues prime to N). Only for
  /// diagnostics; the production pipeline rejects it.
  static DirichletCharacter principal(int64_t modulus);

  int64_t modulus() const { return modulus_; }
  int64_t generator() const { return generator_; }
  int64_t index() const { return index_; }
  /// phi(N); every rotation has this denominator.
  int64_t order_denominator() const { return phi_; }
  int parity() const { return parity_; }
  bool is_primitive() const { return primitive_; }
  bool is_principal() const { return index_ == 0; }

  /// chi(a); zero when gcd(a, N) > 1.
  cplx operator()(int64_t a) const { return table_[static_cast<size_t>(mod(a, modulus_))]; }
  /// Exact rotation k with chi(a) = e^{2 pi i k / phi(N)}, or nullopt if chi(a) = 0.
  std::optional<int64_t> rotation(int64_t a) const;
  DirichletCharacter conj() const;

 private:
  friend DirichletCharacter make_character(int64_t modulus, int64_t index);
  DirichletCharacter(int64_t modulus, int64_t index);

  int64_t modulus_ = 0;
  int64_t generator_ = 0;
  int64_t index_ = 0;
  int64_t phi_ = 0;
  int parity_ = 1;
  bool primitive_ = false;
  std::vector<int64_t> log_;  // discrete log base g, -1 off the unit group
  std::vector<cplx> table_;
};

/// Character of modulus N (prime power, N >= 3) with chi(g) = e^{2 pi i index / phi(N)}.
/// Throws PreconditionError for non-cyclic moduli and for the trivial index.
DirichletCharacter make_character(int64_t modulus, int64_t index);

/// sum_{a mod N} chi(a) e^{2 pi i a / N}. W(conj chi) is gauss_sum(chi.conj()).
cplx gauss_sum(const DirichletCharacter& chi);

/// sigma_t^chi(m) = sum_{d | m} chi(d) d^t, m >= 1.
cplx sigma_chi(const DirichletCharacter& chi, cplx t, int64_t m);

/// Table of sigma_t^chi(m) / m^t for 1 <= m <= M (entry 0 unused), by a
/// divisor sieve: sum_{e | m} chi(m/e) e^{-t}.
std::vector<cplx> sigma_chi_normalized_table(const DirichletCharacter& chi, cplx t, int64_t M);

}  // namespace shiftsum
