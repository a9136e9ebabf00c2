#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "expsum/cyclo.hpp"
#include "expsum/gf.hpp"
#include "expsum/mpoly.hpp"

namespace expsum::sums {

/// Nontrivial additive character Psi(x) = zeta_p^{Tr_{F_q/F_p}(b x)} of F_q.
class CharacterSpec {
 public:
  /// Throws InputError when b is zero or not in field.
  CharacterSpec(const gf::Field& field, gf::Elem b);
  static CharacterSpec standard(const gf::Field& field) { return {field, field.one()}; }

  gf::Elem b() const { return b_; }

 private:
  gf::Elem b_;
};

struct SumOptions {
  std::uint64_t budget = 1'000'000'000;
  unsigned workers = 1;
};

/// S(A^n(F_{q^i}), f) as residue-class counts and as an element of Q(zeta_p).
struct SumValue {
  unsigned i = 0;
  std::vector<mpz_class> counts;  // N_c for c in F_p
  cyclo::CycNum value{2};
};

/// q^{n i} as an exact integer.
mpz_class point_count(const gf::Field& field, std::size_t n, unsigned i);

/// Exhaustive evaluation of the sum over F_{q^i}^n with q = |f.field()|.
/// Throws BudgetExceeded when q^{n i} exceeds options.budget, and
/// InputError for n = 0 or characteristic >= 2^15.
SumValue exponential_sum(const mpoly::MultiPoly& f, unsigned i, const CharacterSpec& chi,
                         const SumOptions& options = {});

/// The sums for i = 1..i_max.
std::vector<SumValue> sum_sequence(const mpoly::MultiPoly& f, const CharacterSpec& chi, unsigned i_max,
                                   const SumOptions& options = {});

}  // namespace expsum::sums
