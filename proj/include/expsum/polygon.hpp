#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "expsum/cyclo.hpp"
#include "expsum/koszul.hpp"
#include "expsum/lfun.hpp"
#include "expsum/mpcomplex.hpp"
#include "expsum/sums.hpp"

namespace expsum::polygon {

struct Vertex {
  std::int64_t x = 0;
  mpq_class y;
  bool operator==(const Vertex& o) const { return x == o.x && y == o.y; }
};

/// Lower convex hull in canonical form: x strictly increasing, slopes
/// strictly increasing.
struct NewtonPolygon {
  std::vector<Vertex> vertices;

  std::int64_t end_x() const { return vertices.empty() ? 0 : vertices.back().x; }
  /// Piecewise-linear value at x in [0, end_x()].
  mpq_class at(std::int64_t x) const;
  /// Slope multiset, one entry per unit of abscissa.
  std::vector<mpq_class> slopes() const;
  bool operator==(const NewtonPolygon& o) const { return vertices == o.vertices; }
};

/// Lower convex hull of points with distinct abscissas (any order).
NewtonPolygon lower_hull(std::vector<Vertex> points);

/// Hull of (k, ord_q a_k) over nonzero coefficients.
NewtonPolygon newton_polygon(const lfun::LPolynomial& P);

/// Polygon with slope (m+n)/d repeated U_m times, slopes ascending.
NewtonPolygon hodge_bound(unsigned d, unsigned n, const koszul::HilbertProfile& profile);

/// np >= bound everywhere; compared at the union of vertex abscissas.
/// Throws std::invalid_argument when the right endpoints differ.
bool dominates(const NewtonPolygon& np, const NewtonPolygon& bound);

struct LambdaReport {
  cyclo::Valuation valuation;  // ord_q of the product of reciprocal roots
  mpq_class bound;             // n (d-1)^n / 2
  bool equality = false;
};

LambdaReport lambda_valuation(const lfun::LPolynomial& P);

struct PurityOptions {
  mpfr_prec_t precision_bits = 128;
  double tolerance = 1e-9;
};

struct PurityReport {
  std::uint32_t k = 1;                    // embedding zeta -> exp(2 pi i k/p)
  std::vector<numeric::Complex> roots;    // reciprocal roots rho_j
  std::vector<numeric::Real> moduli;      // |rho_j|
  numeric::Real target;                   // q^{n/2}
  numeric::Real max_relative_deviation;
  numeric::Real leading_modulus;          // |a_D|
  bool leading_matches = true;            // |a_D| = q^{nD/2} within tolerance
};

struct PurityResult {
  bool pure = true;
  PurityOptions options;
  std::vector<PurityReport> embeddings;
};

/// Numerically locates the reciprocal roots in every complex embedding and
/// compares their moduli with q^{n/2}. Throws VerificationFailure when the
/// root finder cannot meet its residual contract.
PurityResult purity_check(const lfun::LPolynomial& P, const PurityOptions& options = {});

struct DeligneCheck {
  unsigned i = 0;
  bool within_bound = true;       // |S_i| <= D q^{ni/2} in every embedding
  bool at_bound = false;          // equality attained in some embedding
  bool consistent = true;         // matches (-1)^n sum rho_j^i and equality pattern
  numeric::Real max_ratio;        // max over embeddings of |S_i| / (D q^{ni/2})
};

/// Archimedean estimate for each computed sum, cross-checked against the
/// numerical reciprocal roots from purity.
std::vector<DeligneCheck> deligne_check(const std::vector<sums::SumValue>& sums, const lfun::LPolynomial& P,
                                        const PurityResult& purity);

}  // namespace expsum::polygon
