#pragma once

#include <cstdint>
#include <vector>

#include "expsum/cyclo.hpp"
#include "expsum/gf.hpp"
#include "expsum/mpoly.hpp"
#include "expsum/sums.hpp"

namespace expsum::quad2 {

/// sum_{i<j} A_ij x_i x_j + sum_k linear_k x_k + constant over F_q in
/// characteristic 2, together with the character twist b of the sum it
/// stands for. A is symmetric with zero diagonal.
struct QuadForm {
  gf::FieldPtr field;
  gf::Elem twist{1};
  std::size_t n = 0;
  std::vector<gf::Elem> A;  // row-major n x n
  std::vector<gf::Elem> linear;
  gf::Elem constant{0};

  gf::Elem at(std::size_t i, std::size_t j) const { return A[i * n + j]; }
  gf::Elem& at(std::size_t i, std::size_t j) { return A[i * n + j]; }
  mpoly::MultiPoly to_poly() const;
};

/// Replaces every pure p-th power term a x_i^p by a c^{p-1} x_i with
/// c^p = (a b)^{-1}; the sum over F_q^n is unchanged. Any characteristic.
mpoly::MultiPoly remove_pth_power_terms(const mpoly::MultiPoly& f, const sums::CharacterSpec& chi);

/// Throws std::invalid_argument unless f has degree <= 2, characteristic 2
/// and no square terms.
QuadForm build_matrix(const mpoly::MultiPoly& f, const sums::CharacterSpec& chi);

gf::Elem determinant(const gf::Field& F, std::size_t n, std::vector<gf::Elem> M);
inline gf::Elem determinant(const QuadForm& Q) { return determinant(*Q.field, Q.n, Q.A); }

/// det A != 0, equivalently the ideal of the partials is (x_1, ..., x_n).
bool check_condition(const QuadForm& Q);

struct Elimination {
  QuadForm reduced;           // n-2 variables
  std::uint64_t factor = 0;   // q
  std::size_t pivot = 0;      // 0-based index solved for, before reordering
  gf::Elem pivot_scale{1};    // a_{pivot,n} before normalisation
  gf::Elem det_normalized{0}; // det A once the pivot coefficient is 1
  gf::Elem det_reduced{0};    // det A'
};

/// Sums out the last variable and solves the resulting linear constraint
/// for the largest-index partner with a nonzero coefficient, after scaling
/// that coefficient to 1. Squares produced by the substitution are folded
/// into linear terms with remove_pth_power_terms' rule. Throws
/// HypothesisFailure for n < 3 or singular A, VerificationFailure when
/// det A' differs from the normalised det A.
Elimination eliminate_pair(const QuadForm& Q);

struct QuadEvalResult {
  cyclo::CycNum value{2};
  int zeta = 1;
  unsigned half_exponent = 0;    // n/2
  std::vector<std::size_t> pivots;
  std::vector<gf::Elem> determinants;  // det A, then det A' after each step
};

/// Closed-form value zeta * q^{n/2}. Throws HypothesisFailure for odd n or
/// singular A.
QuadEvalResult evaluate(const QuadForm& Q);

}  // namespace expsum::quad2
