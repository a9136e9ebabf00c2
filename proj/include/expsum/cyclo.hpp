#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expsum/mpcomplex.hpp"

namespace expsum::cyclo {

/// Exact element of Q(zeta_p) in the power basis 1, zeta, ..., zeta^{p-2}.
///
/// Always reduced modulo Phi_p, so coordinate equality is field equality.
/// For p = 2 the field is Q and zeta = -1.
class CycNum {
 public:
  explicit CycNum(std::uint32_t p);

  static CycNum integer(std::uint32_t p, const mpz_class& v);
  static CycNum rational(std::uint32_t p, const mpq_class& v);
  /// zeta^k for any k (reduced mod p).
  static CycNum zeta_power(std::uint32_t p, std::uint64_t k);
  /// sum_c counts[c] * zeta^c with counts.size() == p.
  static CycNum from_counts(std::uint32_t p, std::span<const mpz_class> counts);
  /// From power-basis coordinates; length must be p-1.
  static CycNum from_coords(std::uint32_t p, std::vector<mpq_class> coords);

  std::uint32_t prime() const { return p_; }
  const std::vector<mpq_class>& coords() const { return c_; }
  bool is_zero() const;
  /// Rational value when the element lies in Q.
  std::optional<mpq_class> as_rational() const;

  CycNum operator-() const;
  CycNum operator+(const CycNum& o) const;
  CycNum operator-(const CycNum& o) const;
  CycNum operator*(const CycNum& o) const;
  /// Throws std::domain_error on division by zero.
  CycNum operator/(const CycNum& o) const;
  CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
  CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }
  bool operator==(const CycNum& o) const { return p_ == o.p_ && c_ == o.c_; }

  CycNum scaled(const mpq_class& s) const;
  /// Image under the automorphism zeta -> zeta^k, gcd(k, p) = 1.
  CycNum galois(std::uint32_t k) const;
  /// Field norm to Q.
  mpq_class norm() const;

  /// Coordinates as lowest-terms "num/den" strings, c_0 first.
  std::vector<std::string> to_strings() const;
  std::string to_string() const;

 private:
  // Reduce a coefficient vector of any length via zeta^p = 1 and
  // zeta^{p-1} = -(1 + ... + zeta^{p-2}).
  static std::vector<mpq_class> reduce(std::uint32_t p, std::vector<mpq_class> raw);
  void check_same(const CycNum& o) const;

  std::uint32_t p_;
  std::vector<mpq_class> c_;
};

/// p-adic valuation normalised by ord(p) = 1; std::nullopt encodes +infinity.
using Valuation = std::optional<mpq_class>;

Valuation ord(const CycNum& x);
/// ord(x) / a, so that ord_q(q) = 1 for q = p^a.
Valuation ord_q(const CycNum& x, unsigned a);
/// v_p of a nonzero integer.
unsigned long vp(const mpz_class& m, std::uint32_t p);

bool is_algebraic_integer(const CycNum& x);

/// Image under zeta -> exp(2 pi i k / p) at the given binary precision.
numeric::Complex complex_embed(const CycNum& x, std::uint32_t k, mpfr_prec_t precision_bits = 128);

std::string to_string(const Valuation& v);

}  // namespace expsum::cyclo
