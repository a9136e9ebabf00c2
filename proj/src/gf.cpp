#include "expsum/gf.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "expsum/error.hpp"

namespace expsum::gf {
namespace {

using Poly = std::vector<Elem>;

void trim(Poly& a) {
  while (!a.empty() && a.back().code == 0) a.pop_back();
}

Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, F.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].code == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

// Remainder of a modulo a nonzero m (not necessarily monic).
Poly poly_rem(const Field& F, Poly a, const Poly& m) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const Elem lead_inv = F.inv(m.back());
  while (a.size() > dm) {
    const Elem factor = F.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j)
      a[shift + j] = F.sub(a[shift + j], F.mul(factor, m[j]));
    trim(a);
  }
  return a;
}

Poly poly_powmod(const Field& F, Poly x, std::uint64_t e, const Poly& m) {
  Poly r{F.one()};
  x = poly_rem(F, std::move(x), m);
  while (e > 0) {
    if (e & 1) r = poly_rem(F, poly_mul(F, r, x), m);
    e >>= 1;
    if (e > 0) x = poly_rem(F, poly_mul(F, x, x), m);
  }
  return r;
}

Poly poly_gcd(const Field& F, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  if (r >= (static_cast<unsigned __int128>(1) << 63)) return false;
  out = static_cast<std::uint64_t>(r);
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Elem Field::from_int(std::int64_t k) const {
  std::int64_t r = k % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint64_t>(r)};
}

Elem Field::element(std::uint64_t code) const {
  if (code >= size_) throw std::out_of_range("element code " + std::to_string(code) + " outside " + describe());
  return {code};
}

Elem Field::add(Elem x, Elem y) const {
  if (p_ == 2) return {x.code ^ y.code};
  if (abs_degree_ == 1) {
    std::uint64_t s = x.code + y.code;
    return {s >= p_ ? s - p_ : s};
  }
  std::uint64_t a = x.code, b = y.code, r = 0;
  for (unsigned u = 0; u < abs_degree_; ++u) {
    std::uint64_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * digit_weight_[u];
    a /= p_;
    b /= p_;
  }
  return {r};
}

Elem Field::neg(Elem x) const {
  if (p_ == 2) return x;
  if (abs_degree_ == 1) return {x.code == 0 ? 0 : p_ - x.code};
  std::uint64_t a = x.code, r = 0;
  for (unsigned u = 0; u < abs_degree_; ++u) {
    std::uint64_t d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * digit_weight_[u];
    a /= p_;
  }
  return {r};
}

Elem Field::sub(Elem x, Elem y) const { return add(x, neg(y)); }

Elem Field::mul(Elem x, Elem y) const {
  if (x.code == 0 || y.code == 0) return zero();
  if (!log_.empty()) return {exp_[log_[x.code] + log_[y.code]]};
  if (is_prime()) return {(x.code * y.code) % p_};
  return slow_mul(x, y);
}

Elem Field::slow_mul(Elem x, Elem y) const {
  const Field& B = *base_;
  auto a = coords(x);
  auto b = coords(y);
  std::vector<Elem> r(2 * degree_ - 1, B.zero());
  for (unsigned i = 0; i < degree_; ++i) {
    if (a[i].code == 0) continue;
    for (unsigned j = 0; j < degree_; ++j) r[i + j] = B.add(r[i + j], B.mul(a[i], b[j]));
  }
  for (std::size_t top = r.size(); top-- > degree_;) {
    const Elem lead = r[top];
    if (lead.code == 0) continue;
    const std::size_t shift = top - degree_;
    for (unsigned j = 0; j < degree_; ++j) r[shift + j] = B.sub(r[shift + j], B.mul(lead, modulus_[j]));
    r[top] = B.zero();
  }
  r.resize(degree_);
  return from_coords(r);
}

Elem Field::pow(Elem x, std::uint64_t e) const {
  if (e == 0) return one();
  if (x.code == 0) return zero();
  if (!log_.empty()) {
    const std::uint64_t order = size_ - 1;
    const unsigned __int128 k = static_cast<unsigned __int128>(log_[x.code]) * (e % order);
    return {exp_[static_cast<std::uint64_t>(k % order)]};
  }
  Elem r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, x);
    e >>= 1;
    if (e > 0) x = mul(x, x);
  }
  return r;
}

Elem Field::inv(Elem x) const {
  if (x.code == 0) throw std::domain_error("inverse of zero in " + describe());
  if (!log_.empty()) {
    const std::uint64_t order = size_ - 1;
    return {exp_[(order - log_[x.code]) % order]};
  }
  return pow(x, size_ - 2);
}

std::vector<Elem> Field::coords(Elem x) const {
  if (is_prime()) return {x};
  const std::uint64_t B = base_->size();
  std::vector<Elem> c(degree_);
  std::uint64_t v = x.code;
  for (unsigned i = 0; i < degree_; ++i) {
    c[i] = {v % B};
    v /= B;
  }
  return c;
}

Elem Field::from_coords(std::span<const Elem> c) const {
  if (c.size() != degree_) throw std::invalid_argument("coordinate count mismatch for " + describe());
  if (is_prime()) return element(c[0].code);
  const std::uint64_t B = base_->size();
  std::uint64_t code = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i].code >= B) throw std::out_of_range("coordinate outside base field");
    code = code * B + c[i].code;
  }
  return {code};
}

std::vector<std::uint32_t> Field::digits(Elem x) const {
  std::vector<std::uint32_t> d(abs_degree_);
  std::uint64_t v = x.code;
  for (unsigned u = 0; u < abs_degree_; ++u) {
    d[u] = static_cast<std::uint32_t>(v % p_);
    v /= p_;
  }
  return d;
}

Elem Field::from_digits(std::span<const std::uint32_t> d) const {
  if (d.size() > abs_degree_) throw std::invalid_argument("too many digits for " + describe());
  std::uint64_t code = 0;
  for (std::size_t u = 0; u < d.size(); ++u) {
    if (d[u] >= p_) throw std::out_of_range("digit outside F_p");
    code += d[u] * digit_weight_[u];
  }
  return {code};
}

Elem Field::relative_trace(Elem x) const {
  if (is_prime()) return x;
  const std::uint64_t B = base_->size();
  Elem acc = zero();
  Elem y = x;
  for (unsigned j = 0; j < degree_; ++j) {
    acc = add(acc, y);
    y = pow(y, B);
  }
  if (acc.code >= B) throw std::logic_error("relative trace left the base field of " + describe());
  return acc;
}

std::uint32_t Field::absolute_trace(Elem x) const {
  if (is_prime()) return static_cast<std::uint32_t>(x.code);
  return base_->absolute_trace(relative_trace(x));
}

std::vector<Elem> Field::enumerate(std::uint64_t budget) const {
  if (size_ > budget)
    throw BudgetExceeded("enumerating " + describe() + " exceeds the element budget", std::to_string(size_));
  std::vector<Elem> out(size_);
  for (std::uint64_t c = 0; c < size_; ++c) out[c] = {c};
  return out;
}

bool Field::contains(const Field& sub) const {
  if (same_as(sub)) return true;
  return base_ && base_->contains(sub);
}

bool Field::same_as(const Field& other) const {
  if (this == &other) return true;
  if (p_ != other.p_ || degree_ != other.degree_ || size_ != other.size_) return false;
  if (is_prime() != other.is_prime()) return false;
  if (is_prime()) return true;
  return modulus_ == other.modulus_ && base_->same_as(*other.base_);
}

std::string Field::describe() const {
  std::ostringstream os;
  if (is_prime()) {
    os << "GF(" << p_ << ")";
    return os.str();
  }
  os << "GF(" << p_ << "^" << abs_degree_ << ")=" << base_->describe() << "[" << (base_->is_prime() ? "t" : "s")
     << "]/(";
  for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i].code;
  os << ")";
  return os.str();
}

void Field::build_tables() {
  if (is_prime() || size_ > kTableLimit) return;
  const std::uint64_t order = size_ - 1;
  const auto factors = prime_factors(order);
  std::uint64_t g = 0;
  for (std::uint64_t cand = 1; cand < size_ && g == 0; ++cand) {
    bool generator = true;
    for (auto r : factors) {
      if (pow(Elem{cand}, order / r).code == 1) {
        generator = false;
        break;
      }
    }
    if (generator) g = cand;
  }
  if (g == 0) throw std::logic_error("no primitive element in " + describe());
  std::vector<std::uint32_t> lg(size_, 0), ex(2 * order);
  Elem cur = one();
  for (std::uint64_t k = 0; k < order; ++k) {
    ex[k] = static_cast<std::uint32_t>(cur.code);
    lg[cur.code] = static_cast<std::uint32_t>(k);
    cur = slow_mul(cur, Elem{g});
  }
  for (std::uint64_t k = order; k < 2 * order; ++k) ex[k] = ex[k - order];
  log_ = std::move(lg);
  exp_ = std::move(ex);
}

bool is_irreducible(const Field& F, std::span<const Elem> monic) {
  if (monic.empty() || monic.back().code != 1) throw std::invalid_argument("polynomial is not monic");
  const std::size_t k = monic.size() - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  const Poly h(monic.begin(), monic.end());
  const Poly x{F.zero(), F.one()};
  Poly cur = x;
  for (std::size_t j = 1; j <= k / 2; ++j) {
    cur = poly_powmod(F, cur, F.size(), h);
    Poly diff = cur;
    diff.resize(std::max<std::size_t>(diff.size(), 2), F.zero());
    diff[1] = F.sub(diff[1], F.one());
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(F, diff, h).size() > 1) return false;
  }
  return true;
}

FieldPtr prime_field(std::uint32_t p) {
  if (!is_prime(p)) throw InputError("characteristic " + std::to_string(p) + " is not prime");
  std::shared_ptr<Field> F(new Field());
  F->p_ = p;
  F->size_ = p;
  F->digit_weight_ = {1};
  return F;
}

FieldPtr make_extension(const FieldPtr& base, std::vector<Elem> modulus) {
  std::shared_ptr<Field> F(new Field());
  F->p_ = base->characteristic();
  F->degree_ = static_cast<unsigned>(modulus.size() - 1);
  F->abs_degree_ = base->absolute_degree() * F->degree_;
  std::uint64_t size = 1;
  for (unsigned i = 0; i < F->degree_; ++i) {
    if (!checked_mul(size, base->size(), size))
      throw BudgetExceeded("field of degree " + std::to_string(F->abs_degree_) + " over F_" +
                               std::to_string(F->p_) + " is too large to represent",
                           "overflow");
  }
  F->size_ = size;
  F->base_ = base;
  F->modulus_ = std::move(modulus);
  F->digit_weight_.resize(F->abs_degree_);
  std::uint64_t w = 1;
  for (unsigned u = 0; u < F->abs_degree_; ++u) {
    F->digit_weight_[u] = w;
    w *= F->p_;
  }
  F->build_tables();
  return F;
}

namespace {

std::vector<Elem> first_irreducible(const Field& base, unsigned k) {
  const std::uint64_t B = base.size();
  std::vector<Elem> cand(k + 1, base.zero());
  cand[k] = base.one();
  if (k == 1) return cand;
  // Odometer over (c_0, ..., c_{k-1}), c_0 fastest; c_0 = 0 is divisible by s.
  for (;;) {
    unsigned pos = 0;
    while (pos < k) {
      if (++cand[pos].code < B) break;
      cand[pos].code = 0;
      ++pos;
    }
    if (pos == k) break;
    if (cand[0].code == 0) continue;
    if (is_irreducible(base, cand)) return cand;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

FieldPtr build_field(std::uint32_t p, unsigned a, const std::optional<std::vector<std::uint32_t>>& modulus) {
  if (a == 0) throw InputError("extension degree a must be positive");
  auto Fp = prime_field(p);
  if (a == 1) {
    if (modulus) throw InputError("a modulus is only meaningful for a > 1");
    return Fp;
  }
  std::vector<Elem> mod;
  if (modulus) {
    if (modulus->size() != a + 1)
      throw InputError("modulus must have a+1 = " + std::to_string(a + 1) + " digits, constant first");
    for (auto d : *modulus) {
      if (d >= p) throw InputError("modulus digit " + std::to_string(d) + " is not reduced mod p");
      mod.push_back({d});
    }
    if (mod.back().code != 1) throw InputError("modulus must be monic");
    if (!is_irreducible(*Fp, mod)) throw InputError("modulus is reducible over F_" + std::to_string(p));
  } else {
    mod = first_irreducible(*Fp, a);
  }
  return make_extension(Fp, std::move(mod));
}

FieldPtr extend(const FieldPtr& base, unsigned i) {
  if (i == 0) throw InputError("extension degree i must be positive");
  static std::mutex mu;
  static std::map<std::pair<std::string, unsigned>, FieldPtr> cache;
  auto key = std::make_pair(base->describe(), i);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::uint64_t total = 1;
  for (unsigned j = 0; j < i; ++j)
    if (!checked_mul(total, base->size(), total))
      throw BudgetExceeded("extension of degree " + std::to_string(i) + " of " + base->describe() +
                               " is too large to represent",
                           "overflow");
  auto F = make_extension(base, first_irreducible(*base, i));
  std::lock_guard lock(mu);
  return cache.emplace(std::move(key), F).first->second;
}

}  // namespace expsum::gf
