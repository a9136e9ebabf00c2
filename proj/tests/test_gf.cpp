#include <gtest/gtest.h>

#include <random>
#include <set>

#include "expsum/error.hpp"
#include "expsum/gf.hpp"
#include "oracle.hpp"

using namespace expsum;
using gf::Elem;

namespace {

std::vector<gf::FieldPtr> sample_fields() {
  auto F2 = gf::prime_field(2), F3 = gf::prime_field(3), F5 = gf::prime_field(5);
  auto F4 = gf::build_field(2, 2), F9 = gf::build_field(3, 2);
  return {F2, F3, F5, F4, F9, gf::build_field(2, 3), gf::build_field(5, 2), gf::build_field(3, 3),
          gf::extend(F4, 3), gf::extend(F9, 2), gf::extend(gf::build_field(2, 3), 2), gf::extend(F2, 21)};
}

// Independent product in F_p[t]/(g): schoolbook multiply then reduce.
std::vector<std::uint32_t> polymul_mod(const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y,
                                       const std::vector<std::uint32_t>& g, std::uint32_t p) {
  const std::size_t a = g.size() - 1;
  std::vector<std::uint64_t> prod(2 * a, 0);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < a; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p;
  for (std::size_t k = 2 * a - 1; k >= a; --k) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= a; ++j) prod[k - a + j] = (prod[k - a + j] + (p - c) * g[j]) % p;
  }
  return {prod.begin(), prod.begin() + a};
}

}  // namespace

TEST(Gf, PrimeFieldBasics) {
  auto F2 = gf::build_field(2, 1);
  EXPECT_EQ(F2->size(), 2u);
  EXPECT_TRUE(F2->is_prime());
  auto F3 = gf::build_field(3, 1);
  EXPECT_EQ(F3->mul(Elem{2}, Elem{2}), Elem{1});
  EXPECT_EQ(F3->inv(Elem{2}), Elem{2});
  EXPECT_EQ(F3->from_int(-1), Elem{2});
  EXPECT_THROW(F3->inv(Elem{0}), std::domain_error);
  EXPECT_THROW(F3->element(3), std::out_of_range);
}

TEST(Gf, F4FromGivenModulus) {
  auto F4 = gf::build_field(2, 2, std::vector<std::uint32_t>{1, 1, 1});
  EXPECT_EQ(F4->size(), 4u);
  const Elem w{2};  // t
  // w^2 + w + 1 = 0 and w^3 = 1
  EXPECT_EQ(F4->add(F4->add(F4->mul(w, w), w), F4->one()), F4->zero());
  EXPECT_EQ(F4->pow(w, 3), F4->one());
}

TEST(Gf, DefaultModulusSearchIsLexicographic) {
  auto F4 = gf::build_field(2, 2);
  ASSERT_EQ(F4->modulus().size(), 3u);
  EXPECT_EQ(F4->modulus()[0], Elem{1});
  EXPECT_EQ(F4->modulus()[1], Elem{1});
  // Over F_3 the first monic irreducible quadratic is t^2 + 1.
  auto F9 = gf::build_field(3, 2);
  EXPECT_EQ(F9->modulus()[0], Elem{1});
  EXPECT_EQ(F9->modulus()[1], Elem{0});
}

TEST(Gf, BuildFieldErrors) {
  EXPECT_THROW(gf::build_field(4, 1), InputError);
  EXPECT_THROW(gf::build_field(1, 1), InputError);
  EXPECT_THROW(gf::build_field(2, 2, std::vector<std::uint32_t>{1, 0, 1}), InputError);   // (t+1)^2
  EXPECT_THROW(gf::build_field(2, 2, std::vector<std::uint32_t>{1, 1}), InputError);      // wrong length
  EXPECT_THROW(gf::build_field(2, 2, std::vector<std::uint32_t>{1, 1, 0}), InputError);   // not monic
  EXPECT_THROW(gf::build_field(3, 2, std::vector<std::uint32_t>{2, 0, 1}), InputError);   // t^2 - 1
  EXPECT_THROW(gf::build_field(3, 1, std::vector<std::uint32_t>{0, 1}), InputError);
}

TEST(Gf, ExtendExamples) {
  auto F2 = gf::prime_field(2);
  auto F4 = gf::extend(F2, 2);
  EXPECT_EQ(F4->size(), 4u);
  ASSERT_EQ(F4->modulus().size(), 3u);
  EXPECT_EQ(F4->modulus()[0], Elem{1});
  EXPECT_EQ(F4->modulus()[1], Elem{1});

  auto same = gf::extend(F2, 1);
  EXPECT_EQ(same->size(), 2u);
  for (std::uint64_t x = 0; x < 2; ++x)
    for (std::uint64_t y = 0; y < 2; ++y) EXPECT_EQ(same->mul(Elem{x}, Elem{y}), F2->mul(Elem{x}, Elem{y}));

  auto F9 = gf::extend(gf::prime_field(3), 2);
  EXPECT_EQ(F9->enumerate().size(), 9u);
  for (std::uint64_t x = 1; x < 9; ++x) {
    EXPECT_EQ(F9->pow(Elem{x}, 8), F9->one());
    unsigned order = 1;
    for (Elem y{x}; y != F9->one(); y = F9->mul(y, Elem{x})) ++order;
    EXPECT_EQ(8u % order, 0u);
  }
  EXPECT_THROW(gf::extend(F2, 0), InputError);
}

TEST(Gf, ExtendIsCached) {
  auto F3 = gf::prime_field(3);
  EXPECT_EQ(gf::extend(F3, 3).get(), gf::extend(F3, 3).get());
}

TEST(Gf, TraceExamples) {
  auto F2 = gf::prime_field(2);
  auto F4 = gf::extend(F2, 2);
  const Elem w{2};
  EXPECT_EQ(F4->relative_trace(F4->zero()), Elem{0});
  EXPECT_EQ(F4->relative_trace(F4->one()), Elem{0});
  EXPECT_EQ(F4->relative_trace(w), Elem{1});
  EXPECT_EQ(F2->absolute_trace(Elem{1}), 1u);
  EXPECT_EQ(F4->absolute_trace(w), 1u);
  auto F9 = gf::build_field(3, 2);
  EXPECT_EQ(F9->absolute_trace(F9->one()), 2u);
}

TEST(Gf, EnumerateOrderAndBudget) {
  auto F2 = gf::prime_field(2);
  EXPECT_EQ(F2->enumerate(), (std::vector<Elem>{Elem{0}, Elem{1}}));
  auto F4 = gf::build_field(2, 2);
  auto all = F4->enumerate();
  ASSERT_EQ(all.size(), 4u);
  for (std::size_t k = 0; k < all.size(); ++k) EXPECT_EQ(all[k].code, k);
  EXPECT_EQ(gf::extend(gf::prime_field(3), 2)->enumerate().size(), 9u);
  EXPECT_THROW(F4->enumerate(3), BudgetExceeded);
}

TEST(Gf, DigitsRoundTripAndEmbedding) {
  auto F4 = gf::build_field(2, 2);
  auto F64 = gf::extend(F4, 3);
  EXPECT_TRUE(F64->contains(*F4));
  EXPECT_FALSE(F4->contains(*F64));
  for (std::uint64_t c = 0; c < 64; ++c) {
    const Elem x{c};
    EXPECT_EQ(F64->from_digits(F64->digits(x)), x);
    EXPECT_EQ(F64->from_coords(F64->coords(x)), x);
  }
  // Base elements multiply the same way in the extension.
  for (std::uint64_t x = 0; x < 4; ++x)
    for (std::uint64_t y = 0; y < 4; ++y) EXPECT_EQ(F64->mul(Elem{x}, Elem{y}), F4->mul(Elem{x}, Elem{y}));
}

TEST(Gf, MultiplicationMatchesPolynomialArithmetic) {
  for (auto [p, a] : {std::pair{2u, 3u}, {3u, 2u}, {5u, 2u}, {2u, 5u}, {3u, 4u}, {7u, 3u}}) {
    auto F = gf::build_field(p, a);
    std::vector<std::uint32_t> g;
    for (auto c : F->modulus()) g.push_back(static_cast<std::uint32_t>(c.code));
    std::mt19937_64 rng(p * 100 + a);
    for (int trial = 0; trial < 300; ++trial) {
      const Elem x = oracle::random_elem(*F, rng), y = oracle::random_elem(*F, rng);
      const auto want = polymul_mod(F->digits(x), F->digits(y), g, p);
      EXPECT_EQ(F->digits(F->mul(x, y)), want) << F->describe();
    }
  }
}

TEST(Gf, FieldAxiomsOnSamples) {
  std::mt19937_64 rng(7);
  for (const auto& F : sample_fields()) {
    for (int trial = 0; trial < 200; ++trial) {
      const Elem x = oracle::random_elem(*F, rng), y = oracle::random_elem(*F, rng), z = oracle::random_elem(*F, rng);
      EXPECT_EQ(F->add(F->add(x, y), z), F->add(x, F->add(y, z)));
      EXPECT_EQ(F->mul(F->mul(x, y), z), F->mul(x, F->mul(y, z)));
      EXPECT_EQ(F->mul(x, y), F->mul(y, x));
      EXPECT_EQ(F->mul(x, F->add(y, z)), F->add(F->mul(x, y), F->mul(x, z)));
      EXPECT_EQ(F->add(x, F->neg(x)), F->zero());
      EXPECT_EQ(F->sub(F->add(x, y), y), x);
      if (x.code != 0) {
        EXPECT_EQ(F->mul(x, F->inv(x)), F->one());
        EXPECT_EQ(F->div(F->mul(x, y), x), y);
      }
    }
  }
}

TEST(Gf, FrobeniusFixesField) {
  for (const auto& F : sample_fields()) {
    if (F->size() > 4096) continue;
    for (const auto& x : F->enumerate()) ASSERT_EQ(F->pow(x, F->size()), x) << F->describe();
  }
  std::mt19937_64 rng(3);
  auto big = gf::extend(gf::prime_field(2), 21);
  for (int k = 0; k < 50; ++k) {
    const Elem x = oracle::random_elem(*big, rng);
    EXPECT_EQ(big->pow(x, big->size()), x);
  }
}

TEST(Gf, RelativeTraceIsLinearAndLandsInBase) {
  std::mt19937_64 rng(11);
  for (const auto& F : sample_fields()) {
    if (F->is_prime()) continue;
    const auto& B = *F->base();
    for (int trial = 0; trial < 100; ++trial) {
      const Elem c = oracle::random_elem(B, rng);
      const Elem x = oracle::random_elem(*F, rng), y = oracle::random_elem(*F, rng);
      const Elem lhs = F->relative_trace(F->add(F->mul(c, x), y));
      const Elem rhs = B.add(B.mul(c, F->relative_trace(x)), F->relative_trace(y));
      EXPECT_EQ(lhs, rhs);
      EXPECT_LT(F->relative_trace(x).code, B.size());
      // Definition: sum of x^{|B|^j}.
      Elem acc = F->zero(), t = x;
      for (unsigned j = 0; j < F->degree(); ++j, t = F->pow(t, B.size())) acc = F->add(acc, t);
      EXPECT_EQ(acc, F->relative_trace(x));
    }
  }
}

TEST(Gf, TraceTransitivity) {
  for (const auto& F : sample_fields()) {
    if (F->is_prime() || F->size() > 4096) continue;
    const auto& B = *F->base();
    for (const auto& x : F->enumerate()) {
      ASSERT_EQ(F->absolute_trace(x), B.absolute_trace(F->relative_trace(x)));
      ASSERT_EQ(F->absolute_trace(x), oracle::trace_by_frobenius(*F, x));
    }
  }
}

namespace {
int mobius(unsigned n) {
  int m = 1;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      m = -m;
    }
  return n > 1 ? -m : m;
}
}  // namespace

TEST(Gf, IrreducibleCountMatchesNecklaceFormula) {
  for (std::uint32_t p : {2u, 3u}) {
    auto F = gf::prime_field(p);
    for (unsigned k = 1; k <= 5; ++k) {
      long want = 0;
      for (unsigned d = 1; d <= k; ++d)
        if (k % d == 0) {
          long pw = 1;
          for (unsigned e = 0; e < k / d; ++e) pw *= p;
          want += mobius(d) * pw;
        }
      want /= k;
      long got = 0;
      std::vector<Elem> poly(k + 1, Elem{0});
      poly[k] = Elem{1};
      std::uint64_t total = 1;
      for (unsigned e = 0; e < k; ++e) total *= p;
      for (std::uint64_t c = 0; c < total; ++c) {
        std::uint64_t r = c;
        for (unsigned e = 0; e < k; ++e, r /= p) poly[e] = Elem{r % p};
        got += gf::is_irreducible(*F, poly);
      }
      EXPECT_EQ(got, want) << "p=" << p << " k=" << k;
    }
  }
}

TEST(Gf, DescribeIsStable) {
  EXPECT_EQ(gf::prime_field(3)->describe(), "GF(3)");
  EXPECT_NE(gf::build_field(2, 2)->describe().find("GF(2)"), std::string::npos);
}
