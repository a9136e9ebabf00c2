#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "expsum/cyclo.hpp"
#include "expsum/mpoly.hpp"
#include "expsum/sums.hpp"

namespace expsum::lfun {

/// P(t) = L(A^n, f; t)^{(-1)^{n+1}} = sum_k a_k t^k with a_0 = 1.
struct LPolynomial {
  unsigned n = 0;
  unsigned a_ext = 1;  // [F_q : F_p]
  std::uint32_t p = 2;
  std::size_t degree = 0;  // (d-1)^n
  std::vector<cyclo::CycNum> coeffs;
};

/// Newton conversion from S_1..S_D to the coefficients, using the power
/// sums sum_j rho_j^i = (-1)^n S_i. Throws VerificationFailure if a_D = 0 or
/// a coefficient fails to be an algebraic integer.
LPolynomial from_sums(unsigned n, unsigned a_ext, std::uint32_t p, std::span<const cyclo::CycNum> sums);

/// Power sums sum_j rho_j^i for i = 1..count, from the coefficients.
std::vector<cyclo::CycNum> power_sums(const LPolynomial& P, std::size_t count);

/// The sums S_i = (-1)^n sum_j rho_j^i predicted by P for i = 1..count.
std::vector<cyclo::CycNum> predicted_sums(const LPolynomial& P, std::size_t count);

struct Construction {
  LPolynomial poly;
  std::vector<sums::SumValue> sums;  // S_1..S_D (S_1 alone when d = 1)
};

/// Checks the regular-sequence hypothesis (HypothesisFailure if it fails),
/// computes S_1..S_D and converts them. For d = 1 returns P = 1 after
/// checking that S_1 vanishes. Constant f is rejected.
Construction construct(const mpoly::MultiPoly& f, const sums::CharacterSpec& chi,
                       const sums::SumOptions& options = {});

inline LPolynomial l_polynomial(const mpoly::MultiPoly& f, const sums::CharacterSpec& chi,
                                const sums::SumOptions& options = {}) {
  return construct(f, chi, options).poly;
}

struct ConsistencyCheck {
  bool matches = false;
  std::vector<unsigned> indices;
  std::vector<cyclo::CycNum> predicted;
  std::vector<cyclo::CycNum> observed;
};

/// Predicts S_{D+1}..S_{D+extra} from P and compares with brute force.
ConsistencyCheck verify_consistency(const LPolynomial& P, const mpoly::MultiPoly& f,
                                    const sums::CharacterSpec& chi, unsigned extra,
                                    const sums::SumOptions& options = {});

}  // namespace expsum::lfun
