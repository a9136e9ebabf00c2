#include "expsum/cyclo.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace expsum::cyclo {

CycNum::CycNum(std::uint32_t p) : p_(p), c_(p - 1) {
  if (p < 2) throw std::invalid_argument("cyclotomic field needs a prime p");
}

CycNum CycNum::integer(std::uint32_t p, const mpz_class& v) { return rational(p, mpq_class(v)); }

CycNum CycNum::rational(std::uint32_t p, const mpq_class& v) {
  CycNum x(p);
  x.c_[0] = v;
  return x;
}

CycNum CycNum::zeta_power(std::uint32_t p, std::uint64_t k) {
  std::vector<mpq_class> raw(p);
  raw[k % p] = 1;
  CycNum x(p);
  x.c_ = reduce(p, std::move(raw));
  return x;
}

CycNum CycNum::from_counts(std::uint32_t p, std::span<const mpz_class> counts) {
  if (counts.size() != p) throw std::invalid_argument("need one count per residue class");
  std::vector<mpq_class> raw(counts.begin(), counts.end());
  CycNum x(p);
  x.c_ = reduce(p, std::move(raw));
  return x;
}

CycNum CycNum::from_coords(std::uint32_t p, std::vector<mpq_class> coords) {
  if (coords.size() != p - 1) throw std::invalid_argument("power basis has p-1 coordinates");
  CycNum x(p);
  x.c_ = std::move(coords);
  for (auto& c : x.c_) c.canonicalize();
  return x;
}

std::vector<mpq_class> CycNum::reduce(std::uint32_t p, std::vector<mpq_class> raw) {
  // zeta^p = 1: fold exponents mod p.
  std::vector<mpq_class> folded(p);
  for (std::size_t k = 0; k < raw.size(); ++k) folded[k % p] += raw[k];
  // zeta^{p-1} = -sum_{j<p-1} zeta^j.
  const mpq_class top = folded[p - 1];
  folded.pop_back();
  if (top != 0)
    for (auto& c : folded) c -= top;
  return folded;
}

void CycNum::check_same(const CycNum& o) const {
  if (p_ != o.p_) throw std::invalid_argument("cyclotomic numbers for different primes");
}

bool CycNum::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

std::optional<mpq_class> CycNum::as_rational() const {
  for (std::size_t j = 1; j < c_.size(); ++j)
    if (c_[j] != 0) return std::nullopt;
  return c_[0];
}

CycNum CycNum::operator-() const {
  CycNum r(p_);
  for (std::size_t j = 0; j < c_.size(); ++j) r.c_[j] = -c_[j];
  return r;
}

CycNum CycNum::operator+(const CycNum& o) const {
  check_same(o);
  CycNum r(p_);
  for (std::size_t j = 0; j < c_.size(); ++j) r.c_[j] = c_[j] + o.c_[j];
  return r;
}

CycNum CycNum::operator-(const CycNum& o) const {
  check_same(o);
  CycNum r(p_);
  for (std::size_t j = 0; j < c_.size(); ++j) r.c_[j] = c_[j] - o.c_[j];
  return r;
}

CycNum CycNum::operator*(const CycNum& o) const {
  check_same(o);
  std::vector<mpq_class> raw(2 * c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      if (o.c_[j] != 0) raw[i + j] += c_[i] * o.c_[j];
  }
  CycNum r(p_);
  r.c_ = reduce(p_, std::move(raw));
  return r;
}

CycNum CycNum::scaled(const mpq_class& s) const {
  CycNum r(p_);
  for (std::size_t j = 0; j < c_.size(); ++j) r.c_[j] = c_[j] * s;
  return r;
}

CycNum CycNum::galois(std::uint32_t k) const {
  if (k % p_ == 0) throw std::invalid_argument("galois exponent must be prime to p");
  std::vector<mpq_class> raw(p_);
  for (std::size_t j = 0; j < c_.size(); ++j)
    raw[(static_cast<std::uint64_t>(j) * k) % p_] += c_[j];
  CycNum r(p_);
  r.c_ = reduce(p_, std::move(raw));
  return r;
}

mpq_class CycNum::norm() const {
  CycNum prod = *this;
  for (std::uint32_t k = 2; k < p_; ++k) prod *= galois(k);
  auto q = prod.as_rational();
  if (!q) throw std::logic_error("norm did not land in Q");
  return *q;
}

CycNum CycNum::operator/(const CycNum& o) const {
  check_same(o);
  if (o.is_zero()) throw std::domain_error("division by zero in Q(zeta_p)");
  // 1/y = (prod_{k>=2} sigma_k(y)) / N(y).
  CycNum conj = CycNum::integer(p_, 1);
  for (std::uint32_t k = 2; k < p_; ++k) conj *= o.galois(k);
  const mpq_class n = (o * conj).as_rational().value();
  return (*this * conj).scaled(1 / n);
}

std::vector<std::string> CycNum::to_strings() const {
  std::vector<std::string> out;
  out.reserve(c_.size());
  for (const auto& c : c_) out.push_back(c.get_str());
  return out;
}

std::string CycNum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[j].get_str();
    if (j == 1) os << "*z";
    if (j > 1) os << "*z^" << j;
  }
  return first ? "0" : os.str();
}

unsigned long vp(const mpz_class& m, std::uint32_t p) {
  if (m == 0) throw std::domain_error("v_p(0) is infinite");
  mpz_class t = abs(m);
  unsigned long v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

namespace {

// prod_{j=2}^{p-1} (1 - zeta^j), the cofactor of (1 - zeta) in p.
const CycNum& cofactor(std::uint32_t p) {
  thread_local std::uint32_t cached_p = 0;
  thread_local CycNum value(2);
  if (cached_p != p) {
    CycNum acc = CycNum::integer(p, 1);
    const CycNum one = CycNum::integer(p, 1);
    for (std::uint32_t j = 2; j < p; ++j) acc *= one - CycNum::zeta_power(p, j);
    value = acc;
    cached_p = p;
  }
  return value;
}

}  // namespace

Valuation ord(const CycNum& x) {
  if (x.is_zero()) return std::nullopt;
  const std::uint32_t p = x.prime();
  mpz_class den = 1;
  for (const auto& c : x.coords()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> z;
  z.reserve(x.coords().size());
  for (const auto& c : x.coords()) z.push_back(mpz_class(c * den));

  const CycNum& cof = cofactor(p);
  unsigned long steps = 0;
  for (;;) {
    mpz_class residue = std::accumulate(z.begin(), z.end(), mpz_class(0));
    if (!mpz_divisible_ui_p(residue.get_mpz_t(), p)) break;
    // z / (1 - zeta) = z * cofactor / p, exact in the integer span.
    std::vector<mpq_class> zq(z.begin(), z.end());
    const CycNum prod = CycNum::from_coords(p, std::move(zq)) * cof;
    for (std::size_t j = 0; j < z.size(); ++j) {
      const mpz_class num = prod.coords()[j].get_num();
      if (!mpz_divisible_ui_p(num.get_mpz_t(), p)) throw std::logic_error("(1-zeta)-division was not exact");
      mpz_divexact_ui(z[j].get_mpz_t(), num.get_mpz_t(), p);
    }
    ++steps;
  }
  mpq_class v(static_cast<long>(steps), static_cast<long>(p - 1));
  v.canonicalize();
  return v - mpq_class(static_cast<long>(vp(den, p)));
}

Valuation ord_q(const CycNum& x, unsigned a) {
  if (a == 0) throw std::invalid_argument("extension degree must be positive");
  auto v = ord(x);
  if (!v) return v;
  mpq_class r = *v / static_cast<long>(a);
  r.canonicalize();
  return r;
}

bool is_algebraic_integer(const CycNum& x) {
  for (const auto& c : x.coords())
    if (c.get_den() != 1) return false;
  return true;
}

numeric::Complex complex_embed(const CycNum& x, std::uint32_t k, mpfr_prec_t precision_bits) {
  const std::uint32_t p = x.prime();
  if (k % p == 0) throw std::invalid_argument("embedding index must be prime to p");
  const mpfr_prec_t work = precision_bits + 32;
  numeric::Complex acc(work);
  for (std::size_t j = 0; j < x.coords().size(); ++j) {
    const auto& c = x.coords()[j];
    if (c == 0) continue;
    numeric::Complex z =
        numeric::root_of_unity(static_cast<long>((static_cast<std::uint64_t>(j) * k) % p), p, work);
    numeric::Real r(c, work);
    acc = acc + numeric::Complex(z.re * r, z.im * r);
  }
  return acc;
}

std::string to_string(const Valuation& v) { return v ? v->get_str() : "inf"; }

}  // namespace expsum::cyclo
