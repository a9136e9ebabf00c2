#include <immintrin.h>

#include "expsum/simd/kernels.hpp"

namespace expsum::simd::avx2 {

void accumulate_rows(std::span<const std::uint16_t* const> rows, std::span<const std::uint32_t> weights,
                     std::span<std::uint32_t> acc) {
  const std::size_t n = acc.size();
  const std::size_t nrows = rows.size();
  std::size_t x = 0;
  // Two accumulators per step keep the multiply latency covered.
  for (; x + 16 <= n; x += 16) {
    __m256i a0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc.data() + x));
    __m256i a1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc.data() + x + 8));
    for (std::size_t j = 0; j < nrows; ++j) {
      const __m256i w = _mm256_set1_epi32(static_cast<int>(weights[j]));
      const __m256i r = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rows[j] + x));
      const __m256i r0 = _mm256_cvtepu16_epi32(_mm256_castsi256_si128(r));
      const __m256i r1 = _mm256_cvtepu16_epi32(_mm256_extracti128_si256(r, 1));
      a0 = _mm256_add_epi32(a0, _mm256_mullo_epi32(r0, w));
      a1 = _mm256_add_epi32(a1, _mm256_mullo_epi32(r1, w));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc.data() + x), a0);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc.data() + x + 8), a1);
  }
  for (; x + 8 <= n; x += 8) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc.data() + x));
    for (std::size_t j = 0; j < nrows; ++j) {
      const __m256i w = _mm256_set1_epi32(static_cast<int>(weights[j]));
      const __m256i r = _mm256_cvtepu16_epi32(_mm_loadu_si128(reinterpret_cast<const __m128i*>(rows[j] + x)));
      a = _mm256_add_epi32(a, _mm256_mullo_epi32(r, w));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc.data() + x), a);
  }
  for (; x < n; ++x) {
    std::uint32_t v = acc[x];
    for (std::size_t j = 0; j < nrows; ++j) v += weights[j] * rows[j][x];
    acc[x] = v;
  }
}

void histogram_mod(std::span<const std::uint32_t> acc, std::uint32_t p, std::uint32_t bound,
                   std::span<std::uint64_t> counts) {
  if (p != 2) {
    scalar::histogram_mod(acc, p, bound, counts);
    return;
  }
  const std::size_t n = acc.size();
  const __m256i one = _mm256_set1_epi32(1);
  __m256i odd = _mm256_setzero_si256();
  std::size_t x = 0;
  std::uint64_t total_odd = 0;
  // Lane counters are flushed before they can wrap.
  std::size_t since_flush = 0;
  for (; x + 8 <= n; x += 8) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc.data() + x));
    odd = _mm256_add_epi32(odd, _mm256_and_si256(v, one));
    if (++since_flush == (1u << 30)) {
      alignas(32) std::uint32_t lanes[8];
      _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), odd);
      for (auto l : lanes) total_odd += l;
      odd = _mm256_setzero_si256();
      since_flush = 0;
    }
  }
  alignas(32) std::uint32_t lanes[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), odd);
  for (auto l : lanes) total_odd += l;
  for (; x < n; ++x) total_odd += acc[x] & 1u;
  counts[1] += total_odd;
  counts[0] += n - total_odd;
}

}  // namespace expsum::simd::avx2
