#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "expsum/simd/kernels.hpp"

namespace expsum::simd {
namespace {

Isa probe() {
#if defined(EXPSUM_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#elif defined(EXPSUM_HAVE_NEON)
  return Isa::neon;
#endif
  return Isa::scalar;
}

Isa initial() {
  if (const char* env = std::getenv("EXPSUM_ISA")) {
    const std::string want(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
      if (want == isa_name(isa) && isa_supported(isa)) return isa;
  }
  return probe();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(EXPSUM_HAVE_AVX2)
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(EXPSUM_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() { return initial(); }
Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::invalid_argument("ISA " + std::string(isa_name(isa)) + " is not available");
  active().store(isa, std::memory_order_relaxed);
}

void accumulate_rows(std::span<const std::uint16_t* const> rows, std::span<const std::uint32_t> weights,
                     std::span<std::uint32_t> acc) {
  switch (active_isa()) {
#if defined(EXPSUM_HAVE_AVX2)
    case Isa::avx2: return avx2::accumulate_rows(rows, weights, acc);
#endif
#if defined(EXPSUM_HAVE_NEON)
    case Isa::neon: return neon::accumulate_rows(rows, weights, acc);
#endif
    default: return scalar::accumulate_rows(rows, weights, acc);
  }
}

void histogram_mod(std::span<const std::uint32_t> acc, std::uint32_t p, std::uint32_t bound,
                   std::span<std::uint64_t> counts) {
  switch (active_isa()) {
#if defined(EXPSUM_HAVE_AVX2)
    case Isa::avx2: return avx2::histogram_mod(acc, p, bound, counts);
#endif
#if defined(EXPSUM_HAVE_NEON)
    case Isa::neon: return neon::histogram_mod(acc, p, bound, counts);
#endif
    default: return scalar::histogram_mod(acc, p, bound, counts);
  }
}

void reduce_mod(std::span<std::uint32_t> acc, std::uint32_t p) {
  for (auto& v : acc) v %= p;
}

}  // namespace expsum::simd
