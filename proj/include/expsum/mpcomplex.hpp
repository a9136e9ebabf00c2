#pragma once

#include <mpfr.h>

#include <gmpxx.h>
#include <string>

namespace expsum::numeric {

/// Owning MPFR value with an explicit working precision in bits.
///
/// Binary operations produce results at the larger operand precision.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = 128);
  Real(long v, mpfr_prec_t bits);
  Real(const mpq_class& q, mpfr_prec_t bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  static Real pi(mpfr_prec_t bits);
  static Real from_double(double v, mpfr_prec_t bits);

  Real operator-() const;
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  /// Scientific decimal string with `digits` significant digits.
  std::string to_string(int digits) const;

 private:
  mpfr_t v_;
};

Real sqrt(const Real& x);
Real abs(const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
Real max(const Real& a, const Real& b);
/// x^e for a rational exponent (x > 0).
Real pow(const Real& x, const mpq_class& e);

struct Complex {
  Real re;
  Real im;

  explicit Complex(mpfr_prec_t bits = 128) : re(bits), im(bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t precision() const { return re.precision(); }
  Real norm() const { return re * re + im * im; }
  Real abs() const { return sqrt(norm()); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.norm();
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
};

/// exp(2*pi*i*num/den).
Complex root_of_unity(long num, long den, mpfr_prec_t bits);

}  // namespace expsum::numeric
