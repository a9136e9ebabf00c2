#include "expsum/quad2.hpp"

#include <stdexcept>
#include <string>

#include "expsum/error.hpp"

namespace expsum::quad2 {

using gf::Elem;
using mpoly::Exponent;
using mpoly::MultiPoly;

namespace {

// Unique p-th root in F_q: y^{q/p}.
Elem pth_root(const gf::Field& F, Elem y) { return F.pow(y, F.size() / F.characteristic()); }

// Linear coefficient equivalent to a x^p under Psi_b: a c^{p-1}, c^p = (ab)^{-1}.
Elem linearised(const gf::Field& F, Elem a, Elem b) {
  const Elem c = pth_root(F, F.inv(F.mul(a, b)));
  return F.mul(a, F.pow(c, F.characteristic() - 1));
}

void require_char2(const gf::Field& F) {
  if (F.characteristic() != 2) throw std::invalid_argument("quadratic machinery needs characteristic 2");
}

}  // namespace

MultiPoly QuadForm::to_poly() const {
  MultiPoly f(field, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Exponent u(n, 0);
      u[i] = u[j] = 1;
      f.add_term(u, at(i, j));
    }
    Exponent u(n, 0);
    u[i] = 1;
    f.add_term(u, linear[i]);
  }
  f.add_term(Exponent(n, 0), constant);
  return f;
}

MultiPoly remove_pth_power_terms(const MultiPoly& f, const sums::CharacterSpec& chi) {
  const auto& F = *f.field();
  const std::uint32_t p = F.characteristic();
  MultiPoly out(f.field(), f.nvars());
  for (const auto& [u, a] : f.terms()) {
    std::size_t var = u.size();
    unsigned nonzero = 0;
    for (std::size_t k = 0; k < u.size(); ++k)
      if (u[k] != 0) {
        ++nonzero;
        var = k;
      }
    if (nonzero == 1 && u[var] == p) {
      Exponent lin(u.size(), 0);
      lin[var] = 1;
      out.add_term(lin, linearised(F, a, chi.b()));
    } else {
      out.add_term(u, a);
    }
  }
  return out;
}

QuadForm build_matrix(const MultiPoly& f, const sums::CharacterSpec& chi) {
  const auto& F = *f.field();
  require_char2(F);
  if (!f.is_zero() && f.degree() > 2) throw std::invalid_argument("quadratic form expected, degree exceeds 2");
  QuadForm Q;
  Q.field = f.field();
  Q.twist = chi.b();
  Q.n = f.nvars();
  Q.A.assign(Q.n * Q.n, F.zero());
  Q.linear.assign(Q.n, F.zero());
  for (const auto& [u, c] : f.terms()) {
    std::vector<std::size_t> vars;
    for (std::size_t k = 0; k < u.size(); ++k)
      for (std::uint32_t e = 0; e < u[k]; ++e) vars.push_back(k);
    if (vars.empty()) {
      Q.constant = c;
    } else if (vars.size() == 1) {
      Q.linear[vars[0]] = c;
    } else if (vars[0] == vars[1]) {
      throw std::invalid_argument("square term x" + std::to_string(vars[0] + 1) +
                                  "^2 present; remove p-th power terms first");
    } else {
      Q.at(vars[0], vars[1]) = c;
      Q.at(vars[1], vars[0]) = c;
    }
  }
  return Q;
}

Elem determinant(const gf::Field& F, std::size_t n, std::vector<Elem> M) {
  Elem det = F.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && M[piv * n + col].code == 0) ++piv;
    if (piv == n) return F.zero();
    if (piv != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(M[piv * n + k], M[col * n + k]);
      det = F.neg(det);
    }
    const Elem pv = M[col * n + col];
    det = F.mul(det, pv);
    const Elem inv = F.inv(pv);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Elem factor = F.mul(M[r * n + col], inv);
      if (factor.code == 0) continue;
      for (std::size_t k = col; k < n; ++k) M[r * n + k] = F.sub(M[r * n + k], F.mul(factor, M[col * n + k]));
    }
  }
  return det;
}

bool check_condition(const QuadForm& Q) { return determinant(Q).code != 0; }

Elimination eliminate_pair(const QuadForm& Q) {
  const auto& F = *Q.field;
  require_char2(F);
  const std::size_t n = Q.n;
  if (n < 3) throw HypothesisFailure("pair elimination needs at least three variables");
  if (!check_condition(Q)) throw HypothesisFailure("pair elimination needs det A != 0");

  const std::size_t last = n - 1;
  std::size_t r = last;
  for (std::size_t i = last; i-- > 0;)
    if (Q.at(i, last).code != 0) {
      r = i;
      break;
    }
  if (r == last) throw std::logic_error("nonsingular A with a zero last column");

  Elimination out;
  out.pivot = r;
  out.pivot_scale = Q.at(r, last);
  out.factor = F.size();

  // Move the pivot variable to position n-2, then rescale it so A_{n-2,n-1} = 1.
  QuadForm W = Q;
  const std::size_t s = n - 2;
  if (r != s) {
    for (std::size_t k = 0; k < n; ++k) std::swap(W.at(r, k), W.at(s, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(W.at(k, r), W.at(k, s));
    std::swap(W.linear[r], W.linear[s]);
  }
  const Elem scale = F.inv(W.at(s, last));
  for (std::size_t k = 0; k < n; ++k) {
    W.at(s, k) = F.mul(W.at(s, k), scale);
    W.at(k, s) = F.mul(W.at(k, s), scale);
  }
  W.linear[s] = F.mul(W.linear[s], scale);
  out.det_normalized = determinant(W);

  // Summing x_{n-1} out forces x_s = sum_{i<s} lambda_i x_i + mu.
  const std::size_t m = n - 2;
  QuadForm R;
  R.field = Q.field;
  R.twist = Q.twist;
  R.n = m;
  R.A.assign(m * m, F.zero());
  R.linear.assign(m, F.zero());
  const Elem mu = W.linear[last];
  const Elem bs = W.linear[s];
  for (std::size_t i = 0; i < m; ++i) {
    const Elem lam_i = W.at(i, last);
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const Elem lam_j = W.at(j, last);
      R.at(i, j) = F.add(W.at(i, j), F.add(F.mul(W.at(i, s), lam_j), F.mul(W.at(j, s), lam_i)));
    }
    Elem lin = F.add(W.linear[i], F.add(F.mul(mu, W.at(i, s)), F.mul(bs, lam_i)));
    const Elem square = F.mul(W.at(i, s), lam_i);
    if (square.code != 0) lin = F.add(lin, linearised(F, square, Q.twist));
    R.linear[i] = lin;
  }
  R.constant = F.add(W.constant, F.mul(bs, mu));

  out.det_reduced = determinant(R);
  if (out.det_reduced != out.det_normalized)
    throw VerificationFailure("det A' differs from det A after pair elimination");
  out.reduced = std::move(R);
  return out;
}

QuadEvalResult evaluate(const QuadForm& Q) {
  const auto& F = *Q.field;
  require_char2(F);
  if (Q.n % 2 == 1) throw HypothesisFailure("odd number of variables: det A = 0 in characteristic 2");
  if (Q.n == 0) throw HypothesisFailure("quadratic evaluation needs at least two variables");
  QuadEvalResult out;
  out.half_exponent = static_cast<unsigned>(Q.n / 2);
  out.determinants.push_back(determinant(Q));
  if (out.determinants.back().code == 0) throw HypothesisFailure("det A = 0");

  QuadForm cur = Q;
  mpz_class scale = 1;
  while (cur.n > 2) {
    auto step = eliminate_pair(cur);
    out.pivots.push_back(step.pivot);
    out.determinants.push_back(step.det_reduced);
    scale *= mpz_class(std::to_string(step.factor));
    cur = std::move(step.reduced);
  }
  // Two variables: q * Psi(b_1 b_2 / a_12 + c).
  const Elem a12 = cur.at(0, 1);
  const Elem arg = F.add(F.div(F.mul(cur.linear[0], cur.linear[1]), a12), cur.constant);
  const std::uint32_t tr = F.absolute_trace(F.mul(Q.twist, arg));
  out.zeta = tr == 0 ? 1 : -1;
  scale *= mpz_class(std::to_string(F.size()));
  out.value = cyclo::CycNum::integer(2, out.zeta * scale);
  return out;
}

}  // namespace expsum::quad2
