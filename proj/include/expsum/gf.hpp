#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace expsum::gf {

/// Element of a finite field, identified by its coordinate code.
///
/// A field of size Q over a base of size B stores an element with
/// coordinates c_0..c_{k-1} (constant first) as sum c_v * B^v, each c_v being
/// itself the code of a base-field element. Unwinding the tower, the code is
/// the base-p integer whose digits are the absolute F_p coordinates. Base
/// elements therefore keep their code when embedded in an extension.
struct Elem {
  std::uint64_t code = 0;
  friend constexpr auto operator<=>(const Elem&, const Elem&) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// F_p, F_q = F_p[t]/(g) or F_{q^i} = F_q[s]/(h), immutable once built.
///
/// Every non-prime field is a simple extension of its base(), so relative
/// traces never need an embedding choice. Arithmetic on fields up to
/// kTableLimit elements goes through discrete log tables.
class Field {
 public:
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

  std::uint32_t characteristic() const { return p_; }
  /// Degree over base(); 1 for a prime field.
  unsigned degree() const { return degree_; }
  unsigned absolute_degree() const { return abs_degree_; }
  std::uint64_t size() const { return size_; }
  bool is_prime() const { return base_ == nullptr; }
  const FieldPtr& base() const { return base_; }
  /// Monic defining polynomial over base(), constant coefficient first.
  std::span<const Elem> modulus() const { return modulus_; }

  Elem zero() const { return {0}; }
  Elem one() const { return {1}; }
  Elem from_int(std::int64_t k) const;
  /// Validating constructor from a code.
  Elem element(std::uint64_t code) const;

  Elem add(Elem x, Elem y) const;
  Elem sub(Elem x, Elem y) const;
  Elem neg(Elem x) const;
  Elem mul(Elem x, Elem y) const;
  Elem inv(Elem x) const;
  Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
  Elem pow(Elem x, std::uint64_t e) const;

  /// Coordinates over base() (length degree()). For a prime field, the
  /// single coordinate is the element itself.
  std::vector<Elem> coords(Elem x) const;
  Elem from_coords(std::span<const Elem> c) const;
  /// Absolute coordinates over F_p (length absolute_degree()).
  std::vector<std::uint32_t> digits(Elem x) const;
  Elem from_digits(std::span<const std::uint32_t> d) const;

  /// Sum of x^{B^j}, j < degree(), with B = |base()|. Returns a base element.
  Elem relative_trace(Elem x) const;
  /// Trace down to F_p.
  std::uint32_t absolute_trace(Elem x) const;

  /// All elements in code order (lexicographic on coordinates, last
  /// coordinate most significant). Throws BudgetExceeded past budget.
  std::vector<Elem> enumerate(std::uint64_t budget = std::uint64_t{1} << 24) const;

  /// True when sub is this field or lies on its base chain; elements of sub
  /// embed with unchanged codes.
  bool contains(const Field& sub) const;
  bool same_as(const Field& other) const;
  std::string describe() const;

 private:
  friend FieldPtr prime_field(std::uint32_t p);
  friend FieldPtr make_extension(const FieldPtr& base, std::vector<Elem> modulus);

  Field() = default;
  Elem slow_mul(Elem x, Elem y) const;
  void build_tables();

  std::uint32_t p_ = 0;
  unsigned degree_ = 1;
  unsigned abs_degree_ = 1;
  std::uint64_t size_ = 0;
  FieldPtr base_;
  std::vector<Elem> modulus_;
  std::vector<std::uint64_t> digit_weight_;
  // exp_ holds 2(Q-1) entries so log sums need no reduction.
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
};

bool is_prime(std::uint64_t n);

FieldPtr prime_field(std::uint32_t p);

/// Builds F_q with q = p^a. Without a modulus (and a > 1) the first monic
/// irreducible in lexicographic coefficient order is used. A supplied
/// modulus is given as a+1 F_p digits, constant first, and must be monic
/// and irreducible.
FieldPtr build_field(std::uint32_t p, unsigned a,
                     const std::optional<std::vector<std::uint32_t>>& modulus = std::nullopt);

/// F_{q^i} realised as base[s]/(h_i), h_i the first monic irreducible of
/// degree i over base in lexicographic coefficient order. extend(F, 1) is a
/// degree-one wrapper whose elements coincide with those of F. Results are
/// cached per (base, i).
FieldPtr extend(const FieldPtr& base, unsigned i);

/// Ben-Or test for a monic polynomial over field (constant first).
bool is_irreducible(const Field& field, std::span<const Elem> monic);

/// Free-function spellings of the trace maps.
inline Elem relative_trace(const Field& ext, Elem x) { return ext.relative_trace(x); }
inline std::uint32_t absolute_trace(const Field& f, Elem x) { return f.absolute_trace(x); }

}  // namespace expsum::gf
