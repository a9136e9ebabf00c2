#include "expsum/mpcomplex.hpp"

#include <algorithm>
#include <memory>

namespace expsum::numeric {

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(long v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(const mpq_class& q, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, other.precision());
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::from_double(double v, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_d(r.v_, v, MPFR_RNDN);
  return r;
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

namespace {
mpfr_prec_t joint(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

Real operator+(const Real& a, const Real& b) {
  Real r(joint(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(joint(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(joint(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(joint(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

std::string Real::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), v_);
  std::unique_ptr<char, decltype(&mpfr_free_str)> guard(buf, &mpfr_free_str);
  return std::string(buf);
}

Real sqrt(const Real& x) {
  Real r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real abs(const Real& x) {
  Real r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real cos(const Real& x) {
  Real r(x.precision());
  mpfr_cos(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sin(const Real& x) {
  Real r(x.precision());
  mpfr_sin(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real pow(const Real& x, const mpq_class& e) {
  Real ex(e, x.precision());
  Real r(x.precision());
  mpfr_pow(r.get(), x.get(), ex.get(), MPFR_RNDN);
  return r;
}

Complex root_of_unity(long num, long den, mpfr_prec_t bits) {
  // Reduce the angle exactly before leaving the rationals.
  long k = num % den;
  if (k < 0) k += den;
  Real angle = Real::pi(bits + 16) * Real(2 * k, bits + 16) / Real(den, bits + 16);
  Complex z(bits);
  mpfr_cos(z.re.get(), angle.get(), MPFR_RNDN);
  mpfr_sin(z.im.get(), angle.get(), MPFR_RNDN);
  return z;
}

}  // namespace expsum::numeric
