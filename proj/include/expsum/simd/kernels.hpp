#pragma once

#include <cstdint>
#include <span>
#include <string_view>

// Inner loops of the exponential-sum engine.
//
// The engine reduces each slice of the enumeration to
//   acc[x] += sum_j w_j * rows[j][x]   (all values small integers)
// followed by a histogram of acc[x] mod p. accumulate_rows is the hot
// kernel; every ISA variant must return results identical to scalar.

namespace expsum::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
/// Best ISA available on this CPU, honouring EXPSUM_ISA when set.
Isa detected_isa();
Isa active_isa();
/// Forces a variant; throws std::invalid_argument when unsupported here.
void set_active_isa(Isa isa);

/// RAII override of the active ISA, for tests and benchmarks.
class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa) : prev_(active_isa()) { set_active_isa(isa); }
  ~ScopedIsa() { set_active_isa(prev_); }
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  Isa prev_;
};

using AccumulateFn = void (*)(std::span<const std::uint16_t* const> rows, std::span<const std::uint32_t> weights,
                              std::span<std::uint32_t> acc);
using HistogramFn = void (*)(std::span<const std::uint32_t> acc, std::uint32_t p, std::uint32_t bound,
                             std::span<std::uint64_t> counts);

/// acc[x] += sum_j weights[j] * rows[j][x]. The caller guarantees no lane
/// overflows 32 bits; every row holds at least acc.size() entries.
void accumulate_rows(std::span<const std::uint16_t* const> rows, std::span<const std::uint32_t> weights,
                     std::span<std::uint32_t> acc);

/// counts[acc[x] mod p] += 1 for every x. `bound` is an upper bound on the
/// acc entries, which lets small cases use a lookup table.
void histogram_mod(std::span<const std::uint32_t> acc, std::uint32_t p, std::uint32_t bound,
                   std::span<std::uint64_t> counts);

/// acc[x] %= p in place.
void reduce_mod(std::span<std::uint32_t> acc, std::uint32_t p);

namespace scalar {
void accumulate_rows(std::span<const std::uint16_t* const> rows, std::span<const std::uint32_t> weights,
                     std::span<std::uint32_t> acc);
void histogram_mod(std::span<const std::uint32_t> acc, std::uint32_t p, std::uint32_t bound,
                   std::span<std::uint64_t> counts);
}  // namespace scalar

#if defined(EXPSUM_HAVE_AVX2)
namespace avx2 {
void accumulate_rows(std::span<const std::uint16_t* const> rows, std::span<const std::uint32_t> weights,
                     std::span<std::uint32_t> acc);
void histogram_mod(std::span<const std::uint32_t> acc, std::uint32_t p, std::uint32_t bound,
                   std::span<std::uint64_t> counts);
}  // namespace avx2
#endif

#if defined(EXPSUM_HAVE_NEON)
namespace neon {
void accumulate_rows(std::span<const std::uint16_t* const> rows, std::span<const std::uint32_t> weights,
                     std::span<std::uint32_t> acc);
void histogram_mod(std::span<const std::uint32_t> acc, std::uint32_t p, std::uint32_t bound,
                   std::span<std::uint64_t> counts);
}  // namespace neon
#endif

}  // namespace expsum::simd
