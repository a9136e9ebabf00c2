#pragma once

#include <cstdint>
#include <vector>

#include "expsum/mpoly.hpp"

namespace expsum::koszul {

/// Coefficients U_0..U_{n(d-2)} of (1 + t + ... + t^{d-2})^n.
struct HilbertProfile {
  unsigned d = 0;
  unsigned n = 0;
  std::vector<std::uint64_t> U;

  std::uint64_t total() const;
  std::uint64_t weighted_total() const;
};

struct RegSeqReport {
  bool is_regular = false;
  /// Quotient dimension in degrees 0..n(d-2)+1.
  std::vector<std::uint64_t> hilbert_function;
  /// Standard monomials in degree order; empty unless is_regular.
  std::vector<mpoly::Exponent> basis;
};

HilbertProfile hilbert_coefficients(unsigned d, unsigned n);

/// All exponent vectors of total degree m in n variables, graded-lex
/// descending with x1 > ... > xn.
std::vector<mpoly::Exponent> monomials_of_degree(std::size_t n, unsigned m);

/// Rank over F_q of the degree-m component of the ideal generated by the
/// given forms of degree d-1, spanned by x^v * g_i with |v| = m - (d-1).
std::uint64_t graded_ideal_rank(const std::vector<mpoly::MultiPoly>& partials, unsigned m);

/// Decides whether the partials of the form fd are a regular sequence by
/// checking the quotient vanishes in degree n(d-2)+1. When regular, the
/// measured Hilbert function is checked against hilbert_coefficients and
/// the standard-monomial basis is emitted.
RegSeqReport is_regular_sequence(const mpoly::MultiPoly& fd);

/// Standard monomials per degree 0..n(d-2). Throws HypothesisFailure for a
/// non-regular input.
std::vector<std::vector<mpoly::Exponent>> monomial_basis(const mpoly::MultiPoly& fd);

}  // namespace expsum::koszul
