#include "expsum/mpoly.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace expsum::mpoly {

unsigned total_degree(const Exponent& u) { return std::accumulate(u.begin(), u.end(), 0u); }

MultiPoly::MultiPoly(gf::FieldPtr field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {
  if (!field_) throw std::invalid_argument("polynomial needs a coefficient field");
}

MultiPoly MultiPoly::from_terms(gf::FieldPtr field, std::size_t nvars,
                                std::span<const std::pair<Exponent, gf::Elem>> terms) {
  MultiPoly f(std::move(field), nvars);
  for (const auto& [u, c] : terms) f.add_term(u, c);
  return f;
}

MultiPoly MultiPoly::monomial(gf::FieldPtr field, Exponent u, gf::Elem coeff) {
  MultiPoly f(std::move(field), u.size());
  f.add_term(u, coeff);
  return f;
}

gf::Elem MultiPoly::coefficient(const Exponent& u) const {
  auto it = terms_.find(u);
  return it == terms_.end() ? field_->zero() : it->second;
}

void MultiPoly::add_term(const Exponent& u, gf::Elem coeff) {
  if (u.size() != nvars_)
    throw std::invalid_argument("exponent vector has " + std::to_string(u.size()) + " entries, expected " +
                                std::to_string(nvars_));
  field_->element(coeff.code);
  auto [it, inserted] = terms_.try_emplace(u, coeff);
  if (!inserted) it->second = field_->add(it->second, coeff);
  if (it->second.code == 0) terms_.erase(it);
}

unsigned MultiPoly::degree() const {
  if (terms_.empty()) throw std::domain_error("degree of the zero polynomial");
  unsigned d = 0;
  for (const auto& [u, c] : terms_) d = std::max(d, total_degree(u));
  return d;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const unsigned d = total_degree(terms_.begin()->first);
  for (const auto& [u, c] : terms_)
    if (total_degree(u) != d) return false;
  return true;
}

MultiPoly MultiPoly::homogeneous_component(unsigned j) const {
  MultiPoly out(field_, nvars_);
  for (const auto& [u, c] : terms_)
    if (total_degree(u) == j) out.terms_.emplace(u, c);
  return out;
}

MultiPoly MultiPoly::partial_derivative(std::size_t var) const {
  if (var >= nvars_) throw std::out_of_range("variable index out of range");
  MultiPoly out(field_, nvars_);
  for (const auto& [u, c] : terms_) {
    if (u[var] == 0) continue;
    const gf::Elem k = field_->from_int(u[var] % field_->characteristic());
    if (k.code == 0) continue;
    Exponent v = u;
    --v[var];
    out.add_term(v, field_->mul(k, c));
  }
  return out;
}

gf::Elem MultiPoly::evaluate(const gf::Field& ext, std::span<const gf::Elem> point) const {
  if (point.size() != nvars_)
    throw std::invalid_argument("point has " + std::to_string(point.size()) + " coordinates, expected " +
                                std::to_string(nvars_));
  if (!ext.contains(*field_)) throw std::invalid_argument("evaluation field does not contain the coefficients");
  gf::Elem acc = ext.zero();
  for (const auto& [u, c] : terms_) {
    gf::Elem t = c;
    for (std::size_t k = 0; k < nvars_; ++k)
      if (u[k] != 0) t = ext.mul(t, ext.pow(point[k], u[k]));
    acc = ext.add(acc, t);
  }
  return acc;
}

void MultiPoly::check_compatible(const MultiPoly& other) const {
  if (nvars_ != other.nvars_ || !field_->same_as(*other.field_))
    throw std::invalid_argument("polynomials live in different rings");
}

MultiPoly MultiPoly::scaled(gf::Elem c) const {
  MultiPoly out(field_, nvars_);
  if (c.code == 0) return out;
  for (const auto& [u, a] : terms_) out.terms_.emplace(u, field_->mul(a, c));
  return out;
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
  check_compatible(other);
  MultiPoly out = *this;
  for (const auto& [u, c] : other.terms_) out.add_term(u, c);
  return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& other) const {
  return *this + other.scaled(field_->neg(field_->one()));
}

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
  check_compatible(other);
  MultiPoly out(field_, nvars_);
  for (const auto& [u, a] : terms_) {
    for (const auto& [v, b] : other.terms_) {
      Exponent w(nvars_);
      for (std::size_t k = 0; k < nvars_; ++k) w[k] = u[k] + v[k];
      out.add_term(w, field_->mul(a, b));
    }
  }
  return out;
}

bool MultiPoly::operator==(const MultiPoly& other) const {
  return nvars_ == other.nvars_ && field_->same_as(*other.field_) && terms_ == other.terms_;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [u, c] = *it;
    if (!first) os << " + ";
    first = false;
    const auto d = field_->digits(c);
    for (std::size_t k = 0; k < d.size(); ++k) os << (k ? "," : "") << d[k];
    for (std::size_t k = 0; k < nvars_; ++k) {
      if (u[k] == 0) continue;
      os << "*x" << (k + 1);
      if (u[k] > 1) os << "^" << u[k];
    }
  }
  return os.str();
}

}  // namespace expsum::mpoly
