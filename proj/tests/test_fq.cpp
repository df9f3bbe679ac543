#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "detpsi/fq.hpp"

using namespace detpsi;

namespace {

void check_axioms_exhaustive(unsigned q) {
    Fq F(q);
    unsigned n = F.q();
    for (unsigned a = 0; a < n; ++a) {
        CHECK(F.add(a, 0) == a);
        CHECK(F.mul(a, 1) == a);
        CHECK(F.add(a, F.neg(fq_t(a))) == 0);
        if (a) CHECK(F.mul(a, F.inv(fq_t(a))) == 1);
        if (a) CHECK(F.pow(fq_t(a), n - 1) == 1);
        for (unsigned b = 0; b < n; ++b) {
            CHECK(F.add(a, fq_t(b)) == F.add(b, fq_t(a)));
            CHECK(F.mul(a, fq_t(b)) == F.mul(b, fq_t(a)));
            for (unsigned c = 0; c < n; ++c) {
                CHECK(F.add(F.add(a, fq_t(b)), fq_t(c)) == F.add(a, F.add(fq_t(b), fq_t(c))));
                CHECK(F.mul(F.mul(a, fq_t(b)), fq_t(c)) == F.mul(a, F.mul(fq_t(b), fq_t(c))));
                CHECK(F.mul(a, F.add(fq_t(b), fq_t(c))) ==
                      F.add(F.mul(a, fq_t(b)), F.mul(a, fq_t(c))));
            }
        }
    }
}

}  // namespace

TEST_CASE("prime power detection") {
    unsigned p = 0, k = 0;
    CHECK(Fq::is_prime_power(2, &p, &k));
    CHECK(p == 2);
    CHECK(k == 1);
    CHECK(Fq::is_prime_power(243, &p, &k));
    CHECK(p == 3);
    CHECK(k == 5);
    CHECK(Fq::is_prime_power(256));
    CHECK_FALSE(Fq::is_prime_power(0));
    CHECK_FALSE(Fq::is_prime_power(1));
    CHECK_FALSE(Fq::is_prime_power(6));
    CHECK_FALSE(Fq::is_prime_power(12));
    CHECK_FALSE(Fq::is_prime_power(100));
    CHECK_THROWS_AS(Fq(6), error);
    CHECK_THROWS_AS(Fq(257), error);  // beyond table cap
}

TEST_CASE("field axioms, exhaustive small fields") {
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u}) check_axioms_exhaustive(q);
}

TEST_CASE("field axioms, sampled for q=256") {
    Fq F(256);
    for (unsigned a = 0; a < 256; ++a) {
        if (a) CHECK(F.mul(a, F.inv(fq_t(a))) == 1);
        CHECK(F.add(a, F.neg(fq_t(a))) == 0);
    }
    // distributivity on a fixed grid
    for (unsigned a = 1; a < 256; a += 17)
        for (unsigned b = 0; b < 256; b += 13)
            for (unsigned c = 0; c < 256; c += 11)
                CHECK(F.mul(a, F.add(fq_t(b), fq_t(c))) ==
                      F.add(F.mul(a, fq_t(b)), F.mul(a, fq_t(c))));
}

TEST_CASE("frozen arithmetic facts in F4 and F9") {
    // F4 = F2[x]/(x^2+x+1): the generator digit-vector (0,1) encodes as 2,
    // and x*x = x+1 encodes as 3
    Fq F4(4);
    CHECK(F4.mul(2, 2) == 3);
    CHECK(F4.add(2, 3) == 1);  // x + (x+1) = 1
    // F9 = F3[x]/(x^2+1): x encodes as 3, and x*x = -1 = 2
    Fq F9(9);
    CHECK(F9.mul(3, 3) == 2);
    CHECK(F9.add(3, 6) == 0);  // x + 2x = 0
    CHECK(F9.add(1, 2) == 0);
    CHECK(F9.pow(3, 8) == 1);
    CHECK(F9.pow(3, 4) == 1);  // x^2 = -1, so x has order 4
    CHECK(F9.pow(3, 2) == 2);
}

TEST_CASE("of_int reduces into the prime field") {
    Fq F7(7);
    CHECK(F7.of_int(10) == 3);
    CHECK(F7.of_int(-1) == 6);
    CHECK(F7.of_int(0) == 0);
    Fq F9(9);
    CHECK(F9.of_int(3) == 0);   // 3 = 0 in the prime field F3
    CHECK(F9.of_int(5) == 2);
    CHECK(F9.of_int(-4) == 2);
}

TEST_CASE("pow handles negative exponents") {
    Fq F5(5);
    CHECK(F5.pow(2, -1) == 3);  // 2*3 = 6 = 1
    CHECK(F5.pow(2, -2) == F5.mul(3, 3));
    CHECK(F5.pow(3, 0) == 1);
}
