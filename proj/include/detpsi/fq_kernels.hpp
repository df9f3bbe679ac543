#pragma once
// Dense row-operation kernels for prime fields F_p (p < 256), used by the
// brute-force linear-algebra oracles. Reference scalar implementations are the
// semantic ground truth; an AVX2 variant of each kernel is selected at runtime
// when the CPU supports it and is required to agree bit-for-bit with scalar.
#include <cstddef>
#include <cstdint>

namespace detpsi::kernels {

// dst[i] = (dst[i] + c * src[i]) mod p   (all values already reduced mod p)
void axpy_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t n,
                 std::uint8_t c, std::uint8_t p);
// dst[i] = (c * dst[i]) mod p
void scal_scalar(std::uint8_t* dst, std::size_t n, std::uint8_t c, std::uint8_t p);

void axpy_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t n,
               std::uint8_t c, std::uint8_t p);
void scal_avx2(std::uint8_t* dst, std::size_t n, std::uint8_t c, std::uint8_t p);

bool avx2_available();

// dispatching entry points used by the oracle code
void axpy(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t c,
          std::uint8_t p);
void scal(std::uint8_t* dst, std::size_t n, std::uint8_t c, std::uint8_t p);

}  // namespace detpsi::kernels
