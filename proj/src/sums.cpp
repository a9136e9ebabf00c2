#include "expsum/sums.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <stdexcept>
#include <thread>

#include "expsum/error.hpp"
#include "expsum/simd/kernels.hpp"

namespace expsum::sums {

CharacterSpec::CharacterSpec(const gf::Field& field, gf::Elem b) : b_(b) {
  if (b.code >= field.size()) throw InputError("character twist b is not an element of " + field.describe());
  if (b.code == 0) throw InputError("character twist b must be nonzero");
}

mpz_class point_count(const gf::Field& field, std::size_t n, unsigned i) {
  mpz_class q(std::to_string(field.size()));
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n) * i);
  return r;
}

namespace {

constexpr std::uint32_t kMaxCharacteristic = 1u << 15;
constexpr std::uint64_t kChunk = 4096;

struct PrefixTerm {
  gf::Elem coef;  // b * c, embedded in the evaluation field
  std::vector<std::uint32_t> exps;
};

struct Group {
  std::uint32_t last_exp = 0;
  std::vector<PrefixTerm> terms;
};

// Splits f along its last variable: b*f = sum_e G_e(x_1..x_{n-1}) x_n^e.
// Then Tr(b f(x)) = sum_e Tr(G_e x_n^e), and each Tr(G_e y) is an F_p-linear
// form in the absolute digits of y with weights T * digits(G_e), T the trace
// form of the basis p^u. Over a chunk of x_n values that makes the whole
// inner loop a weighted sum of precomputed digit rows.
class Engine {
 public:
  Engine(const mpoly::MultiPoly& f, const gf::Field& F, gf::Elem b)
      : F_(F), p_(F.characteristic()), m_(F.absolute_degree()), q_(F.size()), n_(f.nvars()) {
    std::map<std::uint32_t, Group> by_exp;
    for (const auto& [u, c] : f.terms()) {
      Group& g = by_exp[u.back()];
      g.last_exp = u.back();
      g.terms.push_back({F.mul(b, c), std::vector<std::uint32_t>(u.begin(), u.end() - 1)});
    }
    for (auto& [e, g] : by_exp) {
      if (e == 0)
        constant_ = std::move(g);
      else
        groups_.push_back(std::move(g));
    }
    trace_.resize(static_cast<std::size_t>(m_) * m_);
    std::uint64_t wu = 1;
    for (unsigned u = 0; u < m_; ++u, wu *= p_) {
      std::uint64_t wv = 1;
      for (unsigned v = 0; v < m_; ++v, wv *= p_) trace_[u * m_ + v] = F.absolute_trace(F.mul({wu}, {wv}));
    }
    const std::uint64_t sq = static_cast<std::uint64_t>(p_ - 1) * (p_ - 1);
    max_batch_ = sq == 0 ? SIZE_MAX : static_cast<std::size_t>((UINT32_MAX - (p_ - 1)) / sq);
    prefixes_ = 1;
    for (std::size_t k = 0; k + 1 < n_; ++k) prefixes_ *= q_;
  }

  std::vector<std::uint64_t> run(unsigned workers) const {
    const std::uint64_t chunks = (q_ + kChunk - 1) / kChunk;
    const std::uint64_t want = std::max<std::uint64_t>(1, (8ull * workers + chunks - 1) / chunks);
    const std::uint64_t per_block = (prefixes_ + std::min(want, prefixes_) - 1) / std::min(want, prefixes_);
    const std::uint64_t blocks = (prefixes_ + per_block - 1) / per_block;
    const std::uint64_t items = chunks * blocks;
    workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, items)));

    std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(p_, 0));
    auto work = [&](unsigned w) {
      process(items * w / workers, items * (w + 1) / workers, blocks, per_block, partial[w]);
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::exception_ptr> errors(workers);
      {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
          pool.emplace_back([&, w] {
            try {
              work(w);
            } catch (...) {
              errors[w] = std::current_exception();
            }
          });
      }
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    std::vector<std::uint64_t> counts(p_, 0);
    for (const auto& part : partial)
      for (std::uint32_t c = 0; c < p_; ++c) counts[c] += part[c];
    return counts;
  }

 private:
  gf::Elem evaluate_group(const Group& g, const std::vector<gf::Elem>& xs) const {
    gf::Elem acc = F_.zero();
    for (const auto& t : g.terms) {
      gf::Elem v = t.coef;
      for (std::size_t k = 0; k < xs.size() && v.code != 0; ++k)
        if (t.exps[k] != 0) v = F_.mul(v, F_.pow(xs[k], t.exps[k]));
      acc = F_.add(acc, v);
    }
    return acc;
  }

  void build_rows(std::uint64_t start, std::size_t len, std::vector<std::uint16_t>& rows) const {
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      const std::uint32_t e = groups_[g].last_exp;
      for (std::size_t t = 0; t < len; ++t) {
        std::uint64_t y = F_.pow({start + t}, e).code;
        for (unsigned v = 0; v < m_; ++v) {
          rows[(g * m_ + v) * kChunk + t] = static_cast<std::uint16_t>(y % p_);
          y /= p_;
        }
      }
    }
  }

  void process(std::uint64_t first, std::uint64_t last, std::uint64_t blocks, std::uint64_t per_block,
               std::vector<std::uint64_t>& counts) const {
    const std::size_t nrows = groups_.size() * m_;
    std::vector<std::uint16_t> rows(nrows * kChunk);
    std::vector<const std::uint16_t*> row_ptrs;
    std::vector<std::uint32_t> weights;
    std::vector<std::uint32_t> acc(kChunk);
    std::vector<std::uint32_t> digit(m_);
    std::vector<gf::Elem> xs(n_ - 1);
    std::uint64_t current_chunk = UINT64_MAX;
    std::size_t len = 0;

    for (std::uint64_t item = first; item < last; ++item) {
      const std::uint64_t chunk = item / blocks;
      const std::uint64_t block = item % blocks;
      if (chunk != current_chunk) {
        current_chunk = chunk;
        const std::uint64_t start = chunk * kChunk;
        len = static_cast<std::size_t>(std::min<std::uint64_t>(kChunk, q_ - start));
        build_rows(start, len, rows);
      }
      const std::uint64_t lo = block * per_block;
      const std::uint64_t hi = std::min(prefixes_, lo + per_block);
      // Odometer over the prefix, x_{n-1} least significant.
      std::uint64_t rest = lo;
      for (std::size_t k = xs.size(); k-- > 0;) {
        xs[k] = {rest % q_};
        rest /= q_;
      }
      for (std::uint64_t idx = lo; idx < hi; ++idx) {
        std::uint32_t c0 = 0;
        if (!constant_.terms.empty()) {
          std::uint64_t g0 = evaluate_group(constant_, xs).code;
          for (unsigned u = 0; u < m_; ++u, g0 /= p_) c0 = (c0 + (g0 % p_) * trace_[u * m_]) % p_;
        }
        row_ptrs.clear();
        weights.clear();
        for (std::size_t g = 0; g < groups_.size(); ++g) {
          std::uint64_t ge = evaluate_group(groups_[g], xs).code;
          if (ge == 0) continue;
          for (unsigned u = 0; u < m_; ++u, ge /= p_) digit[u] = static_cast<std::uint32_t>(ge % p_);
          for (unsigned v = 0; v < m_; ++v) {
            std::uint64_t w = 0;
            for (unsigned u = 0; u < m_; ++u) w += static_cast<std::uint64_t>(digit[u]) * trace_[u * m_ + v];
            w %= p_;
            if (w == 0) continue;
            row_ptrs.push_back(rows.data() + (g * m_ + v) * kChunk);
            weights.push_back(static_cast<std::uint32_t>(w));
          }
        }
        std::span<std::uint32_t> lanes(acc.data(), len);
        std::fill(lanes.begin(), lanes.end(), c0);
        std::uint64_t bound = p_ - 1;
        for (std::size_t s = 0; s < row_ptrs.size(); s += max_batch_) {
          if (s > 0) {
            simd::reduce_mod(lanes, p_);
            bound = p_ - 1;
          }
          const std::size_t k = std::min(max_batch_, row_ptrs.size() - s);
          simd::accumulate_rows(std::span(row_ptrs).subspan(s, k), std::span(weights).subspan(s, k), lanes);
          bound += static_cast<std::uint64_t>(k) * (p_ - 1) * (p_ - 1);
        }
        simd::histogram_mod(lanes, p_, static_cast<std::uint32_t>(bound), counts);

        for (std::size_t k = xs.size(); k-- > 0;) {
          if (++xs[k].code < q_) break;
          xs[k].code = 0;
        }
      }
    }
  }

  const gf::Field& F_;
  std::uint32_t p_;
  unsigned m_;
  std::uint64_t q_;
  std::size_t n_;
  Group constant_;
  std::vector<Group> groups_;
  std::vector<std::uint32_t> trace_;
  std::size_t max_batch_ = 0;
  std::uint64_t prefixes_ = 1;
};

}  // namespace

SumValue exponential_sum(const mpoly::MultiPoly& f, unsigned i, const CharacterSpec& chi,
                         const SumOptions& options) {
  if (i == 0) throw InputError("extension index i must be positive");
  if (f.nvars() == 0) throw InputError("exponential sums need at least one variable");
  const gf::FieldPtr& Fq = f.field();
  if (Fq->characteristic() >= kMaxCharacteristic)
    throw InputError("characteristic " + std::to_string(Fq->characteristic()) + " exceeds the sum engine limit " +
                     std::to_string(kMaxCharacteristic));
  const mpz_class required = point_count(*Fq, f.nvars(), i);
  if (required > mpz_class(std::to_string(options.budget)))
    throw BudgetExceeded("sum over F_{q^" + std::to_string(i) + "}^" + std::to_string(f.nvars()) + " needs " +
                             required.get_str() + " points, budget is " + std::to_string(options.budget),
                         required.get_str());

  const gf::FieldPtr F = i == 1 ? Fq : gf::extend(Fq, i);
  const Engine engine(f, *F, chi.b());
  const auto raw = engine.run(std::max(1u, options.workers));

  SumValue out;
  out.i = i;
  mpz_class total = 0;
  for (auto c : raw) {
    out.counts.emplace_back(std::to_string(c));
    total += out.counts.back();
  }
  if (total != required) throw std::logic_error("point counts do not add up to q^{ni}");
  out.value = cyclo::CycNum::from_counts(Fq->characteristic(), out.counts);
  return out;
}

std::vector<SumValue> sum_sequence(const mpoly::MultiPoly& f, const CharacterSpec& chi, unsigned i_max,
                                   const SumOptions& options) {
  std::vector<SumValue> out;
  for (unsigned i = 1; i <= i_max; ++i) out.push_back(exponential_sum(f, i, chi, options));
  return out;
}

}  // namespace expsum::sums
