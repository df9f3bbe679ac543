#include "detpsi/fq_kernels.hpp"

namespace detpsi::kernels {

void axpy_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t n,
                 std::uint8_t c, std::uint8_t p) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = std::uint8_t((dst[i] + unsigned(c) * src[i]) % p);
}

void scal_scalar(std::uint8_t* dst, std::size_t n, std::uint8_t c, std::uint8_t p) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = std::uint8_t((unsigned(c) * dst[i]) % p);
}

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    static const bool ok = __builtin_cpu_supports("avx2");
    return ok;
#else
    return false;
#endif
}

void axpy(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t c,
          std::uint8_t p) {
    if (avx2_available())
        axpy_avx2(dst, src, n, c, p);
    else
        axpy_scalar(dst, src, n, c, p);
}

void scal(std::uint8_t* dst, std::size_t n, std::uint8_t c, std::uint8_t p) {
    if (avx2_available())
        scal_avx2(dst, n, c, p);
    else
        scal_scalar(dst, n, c, p);
}

}  // namespace detpsi::kernels
