#include "expsum/koszul.hpp"

#include <map>
#include <stdexcept>
#include <string>

#include "expsum/error.hpp"

namespace expsum::koszul {

using mpoly::Exponent;
using mpoly::MultiPoly;

std::uint64_t HilbertProfile::total() const {
  std::uint64_t s = 0;
  for (auto u : U) s += u;
  return s;
}

std::uint64_t HilbertProfile::weighted_total() const {
  std::uint64_t s = 0;
  for (std::size_t m = 0; m < U.size(); ++m) s += m * U[m];
  return s;
}

HilbertProfile hilbert_coefficients(unsigned d, unsigned n) {
  if (d < 2) throw std::invalid_argument("Hilbert profile needs d >= 2");
  HilbertProfile h{d, n, {1}};
  for (unsigned k = 0; k < n; ++k) {
    std::vector<std::uint64_t> next(h.U.size() + d - 2, 0);
    for (std::size_t m = 0; m < h.U.size(); ++m)
      for (unsigned j = 0; j + 1 < d; ++j) {
        if (next[m + j] > UINT64_MAX - h.U[m]) throw std::overflow_error("Hilbert coefficient overflow");
        next[m + j] += h.U[m];
      }
    h.U = std::move(next);
  }
  return h;
}

std::vector<Exponent> monomials_of_degree(std::size_t n, unsigned m) {
  std::vector<Exponent> out;
  if (n == 0) {
    if (m == 0) out.emplace_back();
    return out;
  }
  Exponent u(n, 0);
  // Descending lex among equal total degree: first coordinate largest first.
  auto rec = [&](auto&& self, std::size_t k, unsigned left) -> void {
    if (k + 1 == n) {
      u[k] = left;
      out.push_back(u);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      u[k] = e;
      self(self, k + 1, left - e);
    }
  };
  rec(rec, 0, m);
  return out;
}

namespace {

struct Reduction {
  std::uint64_t rank = 0;
  std::vector<Exponent> standard;
};

// Column reduction of the degree-m component. Rows are the degree-m
// monomials in graded-lex descending order; a row becomes a pivot row when
// some remaining column is nonzero there. Non-pivot rows are the standard
// monomials for that order.
Reduction reduce_degree(const std::vector<MultiPoly>& gens, unsigned gen_degree, std::size_t n, unsigned m,
                        const gf::Field& F) {
  Reduction red;
  const auto rows = monomials_of_degree(n, m);
  if (m < gen_degree || gens.empty()) {
    red.standard = rows;
    return red;
  }
  std::map<Exponent, std::size_t> row_of;
  for (std::size_t r = 0; r < rows.size(); ++r) row_of.emplace(rows[r], r);

  std::vector<std::vector<gf::Elem>> cols;
  for (const auto& v : monomials_of_degree(n, m - gen_degree)) {
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      std::vector<gf::Elem> col(rows.size(), F.zero());
      for (const auto& [u, c] : g.terms()) {
        Exponent w(n);
        for (std::size_t k = 0; k < n; ++k) w[k] = u[k] + v[k];
        col[row_of.at(w)] = c;
      }
      cols.push_back(std::move(col));
    }
  }

  std::vector<bool> used(cols.size(), false);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t piv = cols.size();
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (!used[c] && cols[c][r].code != 0) {
        piv = c;
        break;
      }
    if (piv == cols.size()) {
      red.standard.push_back(rows[r]);
      continue;
    }
    used[piv] = true;
    ++red.rank;
    const gf::Elem inv = F.inv(cols[piv][r]);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (used[c] || cols[c][r].code == 0) continue;
      const gf::Elem factor = F.mul(cols[c][r], inv);
      for (std::size_t k = r; k < rows.size(); ++k)
        if (cols[piv][k].code != 0) cols[c][k] = F.sub(cols[c][k], F.mul(factor, cols[piv][k]));
    }
  }
  return red;
}

std::vector<MultiPoly> top_partials(const MultiPoly& fd) {
  std::vector<MultiPoly> out;
  for (std::size_t i = 0; i < fd.nvars(); ++i) out.push_back(fd.partial_derivative(i));
  return out;
}

unsigned form_degree(const MultiPoly& fd) {
  if (fd.is_zero()) throw std::invalid_argument("regular-sequence test needs a nonzero form");
  if (!fd.is_homogeneous()) throw std::invalid_argument("regular-sequence test needs a homogeneous form");
  const unsigned d = fd.degree();
  if (d < 2) throw std::invalid_argument("regular-sequence test needs degree d >= 2");
  return d;
}

}  // namespace

std::uint64_t graded_ideal_rank(const std::vector<MultiPoly>& partials, unsigned m) {
  if (partials.empty()) return 0;
  const auto& F = *partials.front().field();
  const std::size_t n = partials.front().nvars();
  unsigned gen_degree = 0;
  bool any = false;
  for (const auto& g : partials) {
    if (g.is_zero()) continue;
    if (!g.is_homogeneous()) throw std::invalid_argument("generators must be homogeneous");
    const unsigned dg = g.degree();
    if (any && dg != gen_degree) throw std::invalid_argument("generators must share one degree");
    gen_degree = dg;
    any = true;
  }
  if (!any) return 0;
  return reduce_degree(partials, gen_degree, n, m, F).rank;
}

RegSeqReport is_regular_sequence(const MultiPoly& fd) {
  const unsigned d = form_degree(fd);
  const std::size_t n = fd.nvars();
  const auto& F = *fd.field();
  const auto gens = top_partials(fd);
  const unsigned top = static_cast<unsigned>(n) * (d - 2) + 1;

  RegSeqReport rep;
  std::vector<std::vector<Exponent>> standard(top + 1);
  for (unsigned m = 0; m <= top; ++m) {
    auto red = reduce_degree(gens, d - 1, n, m, F);
    rep.hilbert_function.push_back(red.standard.size());
    standard[m] = std::move(red.standard);
  }
  rep.is_regular = rep.hilbert_function[top] == 0;
  if (!rep.is_regular) return rep;

  const auto profile = hilbert_coefficients(d, static_cast<unsigned>(n));
  for (unsigned m = 0; m < top; ++m) {
    if (rep.hilbert_function[m] != profile.U[m])
      throw VerificationFailure("quotient dimension " + std::to_string(rep.hilbert_function[m]) + " in degree " +
                                std::to_string(m) + " differs from U_m = " + std::to_string(profile.U[m]));
  }
  for (unsigned m = 0; m < top; ++m)
    for (auto& u : standard[m]) rep.basis.push_back(std::move(u));
  if (rep.basis.size() != profile.total())
    throw VerificationFailure("monomial basis size differs from (d-1)^n");
  return rep;
}

std::vector<std::vector<Exponent>> monomial_basis(const MultiPoly& fd) {
  const auto rep = is_regular_sequence(fd);
  if (!rep.is_regular) throw HypothesisFailure("partials of the top form are not a regular sequence");
  std::vector<std::vector<Exponent>> grouped(rep.hilbert_function.size() - 1);
  for (const auto& u : rep.basis) grouped[mpoly::total_degree(u)].push_back(u);
  return grouped;
}

}  // namespace expsum::koszul
