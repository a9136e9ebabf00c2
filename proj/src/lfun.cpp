#include "expsum/lfun.hpp"

#include <stdexcept>
#include <string>

#include "expsum/error.hpp"
#include "expsum/koszul.hpp"

namespace expsum::lfun {

using cyclo::CycNum;

namespace {

CycNum sign(std::uint32_t p, bool negative) { return CycNum::integer(p, negative ? -1 : 1); }

std::size_t checked_power(unsigned base, unsigned exp) {
  std::size_t r = 1;
  for (unsigned k = 0; k < exp; ++k) {
    if (base != 0 && r > SIZE_MAX / base) throw BudgetExceeded("(d-1)^n overflows", "overflow");
    r *= base;
  }
  return r;
}

}  // namespace

LPolynomial from_sums(unsigned n, unsigned a_ext, std::uint32_t p, std::span<const CycNum> S) {
  const std::size_t D = S.size();
  // Power sums of the reciprocal roots.
  std::vector<CycNum> ps;
  ps.reserve(D);
  for (const auto& s : S) ps.push_back(n % 2 == 0 ? s : -s);

  // k e_k = sum_{j=1}^k (-1)^{j-1} e_{k-j} p_j.
  std::vector<CycNum> e{CycNum::integer(p, 1)};
  for (std::size_t k = 1; k <= D; ++k) {
    CycNum acc(p);
    for (std::size_t j = 1; j <= k; ++j) {
      CycNum term = e[k - j] * ps[j - 1];
      if (j % 2 == 0)
        acc -= term;
      else
        acc += term;
    }
    e.push_back(acc.scaled(mpq_class(1, static_cast<long>(k))));
  }

  LPolynomial P;
  P.n = n;
  P.a_ext = a_ext;
  P.p = p;
  P.degree = D;
  for (std::size_t k = 0; k <= D; ++k) P.coeffs.push_back(k % 2 == 0 ? e[k] : -e[k]);

  if (D > 0 && P.coeffs[D].is_zero())
    throw VerificationFailure("leading coefficient a_" + std::to_string(D) +
                              " vanishes; the sums are inconsistent with degree " + std::to_string(D));
  for (std::size_t k = 0; k <= D; ++k)
    if (!cyclo::is_algebraic_integer(P.coeffs[k]))
      throw VerificationFailure("coefficient a_" + std::to_string(k) + " = " + P.coeffs[k].to_string() +
                                " is not an algebraic integer");
  return P;
}

std::vector<CycNum> power_sums(const LPolynomial& P, std::size_t count) {
  const std::uint32_t p = P.p;
  // e_k = (-1)^k a_k, zero beyond the degree.
  auto e = [&](std::size_t k) {
    if (k > P.degree) return CycNum(p);
    return k % 2 == 0 ? P.coeffs[k] : -P.coeffs[k];
  };
  // p_i = sum_{j=1}^{i-1} (-1)^{j-1} e_j p_{i-j} + (-1)^{i-1} i e_i.
  std::vector<CycNum> ps;
  for (std::size_t i = 1; i <= count; ++i) {
    CycNum acc = e(i).scaled(mpq_class(static_cast<long>(i)));
    if (i % 2 == 0) acc = -acc;
    for (std::size_t j = 1; j < i; ++j) {
      CycNum term = e(j) * ps[i - j - 1];
      if (j % 2 == 0)
        acc -= term;
      else
        acc += term;
    }
    ps.push_back(std::move(acc));
  }
  return ps;
}

std::vector<CycNum> predicted_sums(const LPolynomial& P, std::size_t count) {
  auto ps = power_sums(P, count);
  if (P.n % 2 == 1)
    for (auto& v : ps) v = -v;
  return ps;
}

Construction construct(const mpoly::MultiPoly& f, const sums::CharacterSpec& chi, const sums::SumOptions& options) {
  if (f.is_zero() || f.degree() == 0) throw HypothesisFailure("f is constant; the L-function needs d >= 1");
  const unsigned d = f.degree();
  const unsigned n = static_cast<unsigned>(f.nvars());
  const auto& Fq = *f.field();
  const std::uint32_t p = Fq.characteristic();
  const unsigned a = Fq.absolute_degree();

  Construction out;
  if (d == 1) {
    out.sums.push_back(sums::exponential_sum(f, 1, chi, options));
    if (!out.sums.front().value.is_zero())
      throw VerificationFailure("a polynomial of degree 1 produced a nonvanishing sum");
    out.poly = from_sums(n, a, p, {});
    return out;
  }

  const auto rep = koszul::is_regular_sequence(f.homogeneous_component(d));
  if (!rep.is_regular)
    throw HypothesisFailure("the partial derivatives of f^(d) do not form a regular sequence");

  const std::size_t D = checked_power(d - 1, n);
  out.sums = sums::sum_sequence(f, chi, static_cast<unsigned>(D), options);
  std::vector<CycNum> S;
  for (const auto& s : out.sums) S.push_back(s.value);
  out.poly = from_sums(n, a, p, S);
  return out;
}

ConsistencyCheck verify_consistency(const LPolynomial& P, const mpoly::MultiPoly& f, const sums::CharacterSpec& chi,
                                    unsigned extra, const sums::SumOptions& options) {
  if (extra == 0) throw std::invalid_argument("consistency check needs extra >= 1");
  const auto predicted = predicted_sums(P, P.degree + extra);
  ConsistencyCheck out;
  out.matches = true;
  for (unsigned k = 1; k <= extra; ++k) {
    const unsigned i = static_cast<unsigned>(P.degree) + k;
    auto observed = sums::exponential_sum(f, i, chi, options).value;
    out.indices.push_back(i);
    out.predicted.push_back(predicted[i - 1]);
    if (!(observed == predicted[i - 1])) out.matches = false;
    out.observed.push_back(std::move(observed));
  }
  return out;
}

}  // namespace expsum::lfun
