#include "vfree/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define VFREE_HAVE_X86 1
#else
#define VFREE_HAVE_X86 0
#endif

namespace vfree::kernels::avx2 {

#if VFREE_HAVE_X86

namespace {

// Barrett reduction of eight u32 lanes (each < p^2 <= 2^32) modulo p < 2^16,
// with m = floor(2^32 / p). The quotient estimate is off by at most one.
__attribute__((target("avx2"))) inline __m256i reduce(__m256i s, __m256i m, __m256i pv) {
  const __m256i even = _mm256_mul_epu32(s, m);
  const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(s, 32), m);
  const __m256i q = _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA);
  const __m256i r = _mm256_sub_epi32(s, _mm256_mullo_epi32(q, pv));
  return _mm256_min_epu32(r, _mm256_sub_epi32(r, pv));
}

}  // namespace

__attribute__((target("avx2"))) void axpy_mod(std::span<std::uint32_t> y,
                                              std::span<const std::uint32_t> x, std::uint32_t a,
                                              std::uint32_t p) {
  const std::size_t n = y.size();
  const std::uint32_t mscalar = static_cast<std::uint32_t>((std::uint64_t{1} << 32) / p);
  const __m256i m = _mm256_set1_epi32(static_cast<int>(mscalar));
  const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
  const __m256i av = _mm256_set1_epi32(static_cast<int>(a));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x.data() + i));
    const __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y.data() + i));
    const __m256i s = _mm256_add_epi32(yv, _mm256_mullo_epi32(av, xv));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y.data() + i), reduce(s, m, pv));
  }
  for (; i < n; ++i)
    y[i] = static_cast<std::uint32_t>((y[i] + static_cast<std::uint64_t>(a) * x[i]) % p);
}

__attribute__((target("avx2"))) void horner_mod(std::span<const std::uint32_t> coeffs,
                                                std::span<const std::uint32_t> xs,
                                                std::span<std::uint32_t> out, std::uint32_t p) {
  const std::size_t n = xs.size();
  const std::uint32_t mscalar = static_cast<std::uint32_t>((std::uint64_t{1} << 32) / p);
  const __m256i m = _mm256_set1_epi32(static_cast<int>(mscalar));
  const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(xs.data() + i));
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t j = coeffs.size(); j-- > 0;) {
      const __m256i c = _mm256_set1_epi32(static_cast<int>(coeffs[j]));
      acc = reduce(_mm256_add_epi32(_mm256_mullo_epi32(acc, xv), c), m, pv);
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), acc);
  }
  for (; i < n; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = coeffs.size(); j-- > 0;) acc = (acc * xs[i] + coeffs[j]) % p;
    out[i] = static_cast<std::uint32_t>(acc);
  }
}

#else

void axpy_mod(std::span<std::uint32_t> y, std::span<const std::uint32_t> x, std::uint32_t a,
              std::uint32_t p) {
  scalar::axpy_mod(y, x, a, p);
}

void horner_mod(std::span<const std::uint32_t> coeffs, std::span<const std::uint32_t> xs,
                std::span<std::uint32_t> out, std::uint32_t p) {
  scalar::horner_mod(coeffs, xs, out, p);
}

#endif

}  // namespace vfree::kernels::avx2
