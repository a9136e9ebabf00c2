#include "expsum/polygon.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "expsum/error.hpp"

namespace expsum::polygon {

using numeric::Complex;
using numeric::Real;

mpq_class NewtonPolygon::at(std::int64_t x) const {
  if (vertices.empty() || x < vertices.front().x || x > vertices.back().x)
    throw std::out_of_range("abscissa outside polygon");
  for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
    const auto& a = vertices[k];
    const auto& b = vertices[k + 1];
    if (x <= b.x) {
      mpq_class t(x - a.x, b.x - a.x);
      t.canonicalize();
      return a.y + t * (b.y - a.y);
    }
  }
  return vertices.back().y;
}

std::vector<mpq_class> NewtonPolygon::slopes() const {
  std::vector<mpq_class> out;
  for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
    const auto& a = vertices[k];
    const auto& b = vertices[k + 1];
    mpq_class s = (b.y - a.y) / mpq_class(b.x - a.x);
    for (std::int64_t j = a.x; j < b.x; ++j) out.push_back(s);
  }
  return out;
}

NewtonPolygon lower_hull(std::vector<Vertex> points) {
  std::sort(points.begin(), points.end(), [](const Vertex& a, const Vertex& b) { return a.x < b.x; });
  for (std::size_t k = 1; k < points.size(); ++k)
    if (points[k].x == points[k - 1].x) throw std::invalid_argument("hull points need distinct abscissas");
  NewtonPolygon hull;
  auto& h = hull.vertices;
  for (auto& pt : points) {
    while (h.size() >= 2) {
      const auto& o = h[h.size() - 2];
      const auto& a = h.back();
      // Drop a unless (o, a, pt) turns strictly counter-clockwise.
      const mpq_class cross = mpq_class(a.x - o.x) * (pt.y - o.y) - (a.y - o.y) * mpq_class(pt.x - o.x);
      if (cross > 0) break;
      h.pop_back();
    }
    h.push_back(std::move(pt));
  }
  return hull;
}

NewtonPolygon newton_polygon(const lfun::LPolynomial& P) {
  std::vector<Vertex> pts;
  for (std::size_t k = 0; k < P.coeffs.size(); ++k) {
    auto v = cyclo::ord_q(P.coeffs[k], P.a_ext);
    if (v) pts.push_back({static_cast<std::int64_t>(k), *v});
  }
  return lower_hull(std::move(pts));
}

NewtonPolygon hodge_bound(unsigned d, unsigned n, const koszul::HilbertProfile& profile) {
  NewtonPolygon poly;
  poly.vertices.push_back({0, 0});
  std::int64_t x = 0;
  mpq_class y = 0;
  for (std::size_t m = 0; m < profile.U.size(); ++m) {
    if (profile.U[m] == 0) continue;
    mpq_class slope(static_cast<long>(m + n), static_cast<long>(d));
    slope.canonicalize();
    x += static_cast<std::int64_t>(profile.U[m]);
    y += slope * mpq_class(static_cast<long>(profile.U[m]));
    poly.vertices.push_back({x, y});
  }
  return poly;
}

bool dominates(const NewtonPolygon& np, const NewtonPolygon& bound) {
  if (np.end_x() != bound.end_x())
    throw std::invalid_argument("polygons end at different abscissas: " + std::to_string(np.end_x()) + " vs " +
                                std::to_string(bound.end_x()));
  std::set<std::int64_t> xs;
  for (const auto& v : np.vertices) xs.insert(v.x);
  for (const auto& v : bound.vertices) xs.insert(v.x);
  for (auto x : xs)
    if (np.at(x) < bound.at(x)) return false;
  return true;
}

LambdaReport lambda_valuation(const lfun::LPolynomial& P) {
  LambdaReport rep;
  rep.valuation = cyclo::ord_q(P.coeffs.at(P.degree), P.a_ext);
  rep.bound = mpq_class(static_cast<long>(P.n) * static_cast<long>(P.degree), 2);
  rep.bound.canonicalize();
  rep.equality = rep.valuation && *rep.valuation == rep.bound;
  return rep;
}

namespace {

// q^{e} for rational e at the given precision.
Real q_power(const lfun::LPolynomial& P, const mpq_class& e, mpfr_prec_t bits) {
  mpq_class exponent = e * mpq_class(static_cast<long>(P.a_ext));
  return numeric::pow(Real(static_cast<long>(P.p), bits), exponent);
}

Complex horner(const std::vector<Complex>& c, const Complex& z) {
  Complex acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * z + c[k];
  return acc;
}

// Roots of the monic polynomial sum_k c[k] z^k (c.back() == 1) by Aberth-Ehrlich.
std::vector<Complex> aberth(const std::vector<Complex>& c, mpfr_prec_t bits) {
  const std::size_t D = c.size() - 1;
  std::vector<Complex> dc;
  for (std::size_t k = 1; k <= D; ++k) {
    Real kk(static_cast<long>(k), bits);
    dc.emplace_back(c[k].re * kk, c[k].im * kk);
  }
  Real radius(1, bits);
  for (std::size_t k = 0; k < D; ++k) {
    const Real mag = c[k].abs();
    if (mag.is_zero()) continue;
    mpfr_t r;
    mpfr_init2(r, bits);
    mpfr_rootn_ui(r, mag.get(), static_cast<unsigned long>(D - k), MPFR_RNDN);
    Real root(bits);
    mpfr_set(root.get(), r, MPFR_RNDN);
    mpfr_clear(r);
    radius = numeric::max(radius, root);
  }
  std::vector<Complex> z;
  for (std::size_t j = 0; j < D; ++j) {
    Complex w = numeric::root_of_unity(static_cast<long>(4 * j + 1), static_cast<long>(4 * D), bits);
    z.emplace_back(w.re * radius, w.im * radius);
  }
  const Real eps = numeric::pow(Real(2, bits), mpq_class(-static_cast<long>(bits) + 8));
  for (int iter = 0; iter < 2000; ++iter) {
    Real worst(0, bits);
    for (std::size_t j = 0; j < D; ++j) {
      const Complex f = horner(c, z[j]);
      if (f.norm().is_zero()) continue;
      const Complex fp = horner(dc, z[j]);
      const Complex ratio = f / fp;
      Complex sum(bits);
      for (std::size_t k = 0; k < D; ++k) {
        if (k == j) continue;
        const Complex diff = z[j] - z[k];
        if (diff.norm().is_zero()) continue;
        sum = sum + Complex(Real(1, bits), Real(0, bits)) / diff;
      }
      const Complex step = ratio / (Complex(Real(1, bits), Real(0, bits)) - ratio * sum);
      z[j] = z[j] - step;
      const Real scale = numeric::max(z[j].abs(), Real(1, bits));
      worst = numeric::max(worst, step.abs() / scale);
    }
    if (worst < eps) break;
  }
  return z;
}

}  // namespace

PurityResult purity_check(const lfun::LPolynomial& P, const PurityOptions& options) {
  PurityResult out;
  out.options = options;
  const mpfr_prec_t bits = options.precision_bits;
  const mpfr_prec_t work = bits + 32;
  const Real tol = Real::from_double(options.tolerance, work);
  const Real target = q_power(P, mpq_class(static_cast<long>(P.n), 2), work);
  const Real leading_target =
      q_power(P, mpq_class(static_cast<long>(P.n) * static_cast<long>(P.degree), 2), work);
  const std::size_t D = P.degree;

  for (std::uint32_t k = 1; k < std::max<std::uint32_t>(P.p, 2); ++k) {
    PurityReport rep;
    rep.k = k;
    rep.target = target;
    rep.max_relative_deviation = Real(0, work);
    rep.leading_modulus = cyclo::complex_embed(P.coeffs[D], k, work).abs();
    rep.leading_matches = abs(rep.leading_modulus - leading_target) <= tol * leading_target;
    if (D > 0) {
      // Reciprocal roots are the roots of t^D P(1/t) = sum_k a_k t^{D-k}, monic.
      std::vector<Complex> c;
      for (std::size_t j = 0; j <= D; ++j) c.push_back(cyclo::complex_embed(P.coeffs[D - j], k, work));
      rep.roots = aberth(c, work);
      for (const auto& r : rep.roots) {
        Real scale(0, work);
        Real power(1, work);
        const Real mod = r.abs();
        for (std::size_t j = 0; j <= D; ++j) {
          scale = scale + c[j].abs() * power;
          power = power * mod;
        }
        const Real residual = horner(c, r).abs();
        if (!(residual <= tol * scale))
          throw VerificationFailure("root finder missed its residual contract in embedding " + std::to_string(k) +
                                    " (residual " + residual.to_string(6) + ")");
        rep.moduli.push_back(mod);
        rep.max_relative_deviation =
            numeric::max(rep.max_relative_deviation, abs(mod - target) / target);
      }
    }
    if (!(rep.max_relative_deviation < tol) || !rep.leading_matches) out.pure = false;
    out.embeddings.push_back(std::move(rep));
  }
  return out;
}

std::vector<DeligneCheck> deligne_check(const std::vector<sums::SumValue>& sums, const lfun::LPolynomial& P,
                                        const PurityResult& purity) {
  const mpfr_prec_t work = purity.options.precision_bits + 32;
  const Real tol = Real::from_double(purity.options.tolerance, work);
  std::vector<DeligneCheck> out;
  for (const auto& s : sums) {
    DeligneCheck chk;
    chk.i = s.i;
    chk.max_ratio = Real(0, work);
    const Real bound =
        Real(static_cast<long>(P.degree), work) *
        q_power(P, mpq_class(static_cast<long>(P.n) * static_cast<long>(s.i), 2), work);
    for (const auto& emb : purity.embeddings) {
      const Complex v = cyclo::complex_embed(s.value, emb.k, work);
      const Real mag = v.abs();
      const Real slack = tol * numeric::max(bound, Real(1, work));
      if (mag > bound + slack) chk.within_bound = false;
      if (!bound.is_zero()) chk.max_ratio = numeric::max(chk.max_ratio, mag / bound);
      const bool at_bound = !bound.is_zero() && abs(mag - bound) <= slack;
      chk.at_bound = chk.at_bound || at_bound;

      // (-1)^n sum_j rho_j^i from the numerical roots.
      Complex predicted(work);
      std::vector<Complex> powers;
      for (const auto& r : emb.roots) {
        Complex z(Real(1, work), Real(0, work));
        for (unsigned e = 0; e < s.i; ++e) z = z * r;
        powers.push_back(z);
        predicted = predicted + z;
      }
      if (P.n % 2 == 1) predicted = Complex(-predicted.re, -predicted.im);
      if ((predicted - v).abs() > slack) chk.consistent = false;
      // Equality needs every rho_j^i to coincide.
      if (at_bound)
        for (std::size_t j = 1; j < powers.size(); ++j)
          if ((powers[j] - powers[0]).abs() > slack) chk.consistent = false;
    }
    out.push_back(std::move(chk));
  }
  return out;
}

}  // namespace expsum::polygon
