#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "detpsi/fq_kernels.hpp"

using namespace detpsi;
using namespace detpsi::kernels;

TEST_CASE("scalar and AVX2 kernels agree bit-for-bit") {
    std::mt19937 rng(12345);
    for (unsigned p : {2u, 3u, 5u, 7u, 11u, 101u, 251u}) {
        for (std::size_t n : {std::size_t(0), std::size_t(1), std::size_t(31), std::size_t(32),
                              std::size_t(33), std::size_t(257), std::size_t(1024)}) {
            std::vector<std::uint8_t> src(n), dst0(n), dst1(n);
            for (auto& v : src) v = std::uint8_t(rng() % p);
            for (std::size_t i = 0; i < n; ++i) dst0[i] = dst1[i] = std::uint8_t(rng() % p);
            std::uint8_t c = std::uint8_t(rng() % p);

            auto d_ref = dst0, d_simd = dst1;
            axpy_scalar(d_ref.data(), src.data(), n, c, std::uint8_t(p));
            if (avx2_available()) {
                axpy_avx2(d_simd.data(), src.data(), n, c, std::uint8_t(p));
                CHECK(d_ref == d_simd);
            }
            auto d_disp = dst0;
            axpy(d_disp.data(), src.data(), n, c, std::uint8_t(p));
            CHECK(d_ref == d_disp);

            auto s_ref = src, s_simd = src, s_disp = src;
            scal_scalar(s_ref.data(), n, c, std::uint8_t(p));
            if (avx2_available()) {
                scal_avx2(s_simd.data(), n, c, std::uint8_t(p));
                CHECK(s_ref == s_simd);
            }
            scal(s_disp.data(), n, c, std::uint8_t(p));
            CHECK(s_ref == s_disp);
        }
    }
}

TEST_CASE("kernel results match plain modular arithmetic") {
    unsigned p = 7;
    std::vector<std::uint8_t> src = {0, 1, 2, 3, 4, 5, 6, 1, 3};
    std::vector<std::uint8_t> dst = {6, 5, 4, 3, 2, 1, 0, 2, 5};
    auto expect = dst;
    for (std::size_t i = 0; i < src.size(); ++i)
        expect[i] = std::uint8_t((dst[i] + 3u * src[i]) % p);
    axpy(dst.data(), src.data(), src.size(), 3, std::uint8_t(p));
    CHECK(dst == expect);
}
