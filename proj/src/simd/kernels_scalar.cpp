#include <vector>

#include "expsum/simd/kernels.hpp"

namespace expsum::simd::scalar {

void accumulate_rows(std::span<const std::uint16_t* const> rows, std::span<const std::uint32_t> weights,
                     std::span<std::uint32_t> acc) {
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const std::uint16_t* row = rows[j];
    const std::uint32_t w = weights[j];
    for (std::size_t x = 0; x < acc.size(); ++x) acc[x] += w * row[x];
  }
}

void histogram_mod(std::span<const std::uint32_t> acc, std::uint32_t p, std::uint32_t bound,
                   std::span<std::uint64_t> counts) {
  if (p == 2) {
    std::uint64_t odd = 0;
    for (auto v : acc) odd += v & 1u;
    counts[1] += odd;
    counts[0] += acc.size() - odd;
    return;
  }
  if (bound < (1u << 16)) {
    std::vector<std::uint32_t> table(bound + 1);
    for (std::uint32_t v = 0; v <= bound; ++v) table[v] = v % p;
    for (auto v : acc) ++counts[table[v]];
    return;
  }
  for (auto v : acc) ++counts[v % p];
}

}  // namespace expsum::simd::scalar
