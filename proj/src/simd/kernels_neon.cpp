#include <arm_neon.h>

#include "expsum/simd/kernels.hpp"

namespace expsum::simd::neon {

void accumulate_rows(std::span<const std::uint16_t* const> rows, std::span<const std::uint32_t> weights,
                     std::span<std::uint32_t> acc) {
  const std::size_t n = acc.size();
  std::size_t x = 0;
  for (; x + 8 <= n; x += 8) {
    uint32x4_t a0 = vld1q_u32(acc.data() + x);
    uint32x4_t a1 = vld1q_u32(acc.data() + x + 4);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const uint16x8_t r = vld1q_u16(rows[j] + x);
      a0 = vmlaq_n_u32(a0, vmovl_u16(vget_low_u16(r)), weights[j]);
      a1 = vmlaq_n_u32(a1, vmovl_u16(vget_high_u16(r)), weights[j]);
    }
    vst1q_u32(acc.data() + x, a0);
    vst1q_u32(acc.data() + x + 4, a1);
  }
  for (; x < n; ++x) {
    std::uint32_t v = acc[x];
    for (std::size_t j = 0; j < rows.size(); ++j) v += weights[j] * rows[j][x];
    acc[x] = v;
  }
}

void histogram_mod(std::span<const std::uint32_t> acc, std::uint32_t p, std::uint32_t bound,
                   std::span<std::uint64_t> counts) {
  scalar::histogram_mod(acc, p, bound, counts);
}

}  // namespace expsum::simd::neon
