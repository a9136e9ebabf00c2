#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expsum/gf.hpp"

namespace expsum::mpoly {

using Exponent = std::vector<std::uint32_t>;

unsigned total_degree(const Exponent& u);

/// Sparse polynomial over a finite field F_q in a fixed number of variables.
///
/// No stored coefficient is zero and every exponent vector has length
/// nvars(). Variables are indexed from 0 in the API; the text format and
/// reports call them x1..xn.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, gf::Elem>;

  MultiPoly(gf::FieldPtr field, std::size_t nvars);

  /// Sums duplicate exponents and drops zero coefficients.
  static MultiPoly from_terms(gf::FieldPtr field, std::size_t nvars,
                              std::span<const std::pair<Exponent, gf::Elem>> terms);
  static MultiPoly monomial(gf::FieldPtr field, Exponent u, gf::Elem coeff);

  const gf::FieldPtr& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  gf::Elem coefficient(const Exponent& u) const;

  void add_term(const Exponent& u, gf::Elem coeff);

  /// Maximum total degree; throws std::domain_error for the zero polynomial.
  unsigned degree() const;
  bool is_homogeneous() const;
  MultiPoly homogeneous_component(unsigned j) const;
  /// Formal derivative in variable `var`; exponents act through F_p.
  MultiPoly partial_derivative(std::size_t var) const;

  /// Value at a point of ext^n, where ext contains the coefficient field.
  gf::Elem evaluate(const gf::Field& ext, std::span<const gf::Elem> point) const;

  MultiPoly scaled(gf::Elem c) const;
  MultiPoly operator+(const MultiPoly& other) const;
  MultiPoly operator-(const MultiPoly& other) const;
  MultiPoly operator*(const MultiPoly& other) const;
  bool operator==(const MultiPoly& other) const;

  std::string to_string() const;

 private:
  void check_compatible(const MultiPoly& other) const;

  gf::FieldPtr field_;
  std::size_t nvars_;
  TermMap terms_;
};

}  // namespace expsum::mpoly
