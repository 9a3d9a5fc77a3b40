// Compiled with -mavx2; only reached when the CPU reports AVX2 support.

#include "nondeg/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace nondeg::kernels {

#if defined(__AVX2__)

namespace {

// Eight unsigned 32-bit lanes below 2^24 reduced mod p. The float quotient is
// off by at most one in either direction, fixed up afterwards.
inline __m256i mod_p(__m256i x, __m256 inv_p, __m256i pv) {
  const __m256 xf = _mm256_cvtepi32_ps(x);
  const __m256i quo = _mm256_cvttps_epi32(_mm256_mul_ps(xf, inv_p));
  __m256i r = _mm256_sub_epi32(x, _mm256_mullo_epi32(quo, pv));
  const __m256i neg = _mm256_cmpgt_epi32(_mm256_setzero_si256(), r);
  r = _mm256_add_epi32(r, _mm256_and_si256(neg, pv));
  const __m256i big = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(pv, _mm256_set1_epi32(1)));
  return _mm256_sub_epi32(r, _mm256_and_si256(big, pv));
}

inline __m256i load8(const std::uint8_t* src) {
  return _mm256_cvtepu8_epi32(_mm_loadl_epi64(reinterpret_cast<const __m128i*>(src)));
}

inline void store8(std::uint8_t* dst, __m256i v) {
  // Lanes are < 256: pack 32 -> 16 -> 8 bits and fix the AVX2 lane interleave.
  const __m256i w16 = _mm256_packus_epi32(v, v);
  const __m256i w8 = _mm256_packus_epi16(w16, w16);
  const __m256i ordered = _mm256_permutevar8x32_epi32(w8, _mm256_setr_epi32(0, 4, 0, 0, 0, 0, 0, 0));
  _mm_storel_epi64(reinterpret_cast<__m128i*>(dst), _mm256_castsi256_si128(ordered));
}

}  // namespace

void batch_dot_avx2(const std::uint8_t* data, std::size_t count, std::size_t dim,
                    const std::uint8_t* w, std::uint32_t p, std::uint8_t* out) {
  const __m256 inv_p = _mm256_set1_ps(1.0f / static_cast<float>(p));
  const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
  std::size_t n = 0;
  for (; n + 8 <= count; n += 8) {
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t j = 0; j < dim; ++j) {
      const __m256i wj = _mm256_set1_epi32(w[j]);
      acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(wj, load8(data + j * count + n)));
    }
    store8(out + n, mod_p(acc, inv_p, pv));
  }
  for (; n < count; ++n) {
    std::uint32_t acc = 0;
    for (std::size_t j = 0; j < dim; ++j) acc += std::uint32_t{w[j]} * data[j * count + n];
    out[n] = static_cast<std::uint8_t>(acc % p);
  }
}

void batch_quadratic_avx2(const std::uint8_t* data, std::size_t count, std::size_t dim,
                          const std::uint8_t* upper, std::uint32_t p, std::uint8_t* out) {
  const __m256 inv_p = _mm256_set1_ps(1.0f / static_cast<float>(p));
  const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
  std::size_t n = 0;
  for (; n + 8 <= count; n += 8) {
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t i = 0; i < dim; ++i) {
      __m256i inner = _mm256_setzero_si256();
      for (std::size_t j = i; j < dim; ++j) {
        const __m256i qij = _mm256_set1_epi32(upper[i * dim + j]);
        inner = _mm256_add_epi32(inner, _mm256_mullo_epi32(qij, load8(data + j * count + n)));
      }
      inner = mod_p(inner, inv_p, pv);
      acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(inner, load8(data + i * count + n)));
    }
    store8(out + n, mod_p(acc, inv_p, pv));
  }
  for (; n < count; ++n) {
    std::uint32_t acc = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      std::uint32_t inner = 0;
      for (std::size_t j = i; j < dim; ++j) inner += std::uint32_t{upper[i * dim + j]} * data[j * count + n];
      acc += std::uint32_t{data[i * count + n]} * (inner % p);
    }
    out[n] = static_cast<std::uint8_t>(acc % p);
  }
}

#else

void batch_dot_avx2(const std::uint8_t* data, std::size_t count, std::size_t dim,
                    const std::uint8_t* w, std::uint32_t p, std::uint8_t* out) {
  batch_dot_scalar(data, count, dim, w, p, out);
}

void batch_quadratic_avx2(const std::uint8_t* data, std::size_t count, std::size_t dim,
                          const std::uint8_t* upper, std::uint32_t p, std::uint8_t* out) {
  batch_quadratic_scalar(data, count, dim, upper, p, out);
}

#endif

}  // namespace nondeg::kernels
