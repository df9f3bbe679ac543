// AVX2 variants of the dense mod-p kernels. This translation unit is compiled
// with -mavx2; callers must gate on avx2_available().
#include "detpsi/fq_kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace detpsi::kernels {

namespace {

// reduce each u16 lane of x (x < p*256) modulo p via magic-multiply division
// with conservative correction subtractions
inline __m256i mod_u16(__m256i x, std::uint16_t p, __m256i vp, __m256i magic) {
    __m256i qhat = _mm256_mulhi_epu16(x, magic);
    __m256i r = _mm256_sub_epi16(x, _mm256_mullo_epi16(qhat, vp));
    // r may still be in [0, 3p): conditionally subtract p twice using unsigned min
    __m256i r1 = _mm256_sub_epi16(r, vp);
    r = _mm256_min_epu16(r, r1);
    r1 = _mm256_sub_epi16(r, vp);
    r = _mm256_min_epu16(r, r1);
    (void)p;
    return r;
}

}  // namespace

void axpy_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t n,
               std::uint8_t c, std::uint8_t p) {
    const __m256i vc = _mm256_set1_epi16(c);
    const __m256i vp = _mm256_set1_epi16(p);
    const __m256i magic = _mm256_set1_epi16(std::int16_t(65536u / p));
    const __m256i zero = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i dlo = _mm256_unpacklo_epi8(d, zero);
        __m256i dhi = _mm256_unpackhi_epi8(d, zero);
        __m256i slo = _mm256_unpacklo_epi8(s, zero);
        __m256i shi = _mm256_unpackhi_epi8(s, zero);
        dlo = _mm256_add_epi16(dlo, _mm256_mullo_epi16(slo, vc));
        dhi = _mm256_add_epi16(dhi, _mm256_mullo_epi16(shi, vc));
        dlo = mod_u16(dlo, p, vp, magic);
        dhi = mod_u16(dhi, p, vp, magic);
        __m256i packed = _mm256_packus_epi16(dlo, dhi);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), packed);
    }
    if (i < n) axpy_scalar(dst + i, src + i, n - i, c, p);
}

void scal_avx2(std::uint8_t* dst, std::size_t n, std::uint8_t c, std::uint8_t p) {
    const __m256i vc = _mm256_set1_epi16(c);
    const __m256i vp = _mm256_set1_epi16(p);
    const __m256i magic = _mm256_set1_epi16(std::int16_t(65536u / p));
    const __m256i zero = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i dlo = _mm256_unpacklo_epi8(d, zero);
        __m256i dhi = _mm256_unpackhi_epi8(d, zero);
        dlo = mod_u16(_mm256_mullo_epi16(dlo, vc), p, vp, magic);
        dhi = mod_u16(_mm256_mullo_epi16(dhi, vc), p, vp, magic);
        __m256i packed = _mm256_packus_epi16(dlo, dhi);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), packed);
    }
    if (i < n) scal_scalar(dst + i, n - i, c, p);
}

}  // namespace detpsi::kernels

#else

namespace detpsi::kernels {

void axpy_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t n,
               std::uint8_t c, std::uint8_t p) {
    axpy_scalar(dst, src, n, c, p);
}

void scal_avx2(std::uint8_t* dst, std::size_t n, std::uint8_t c, std::uint8_t p) {
    scal_scalar(dst, n, c, p);
}

}  // namespace detpsi::kernels

#endif
