#include "detpsi/fq.hpp"

#include <algorithm>

namespace detpsi {

namespace {

// digit-wise add mod p of the base-p encodings
unsigned digit_add(unsigned a, unsigned b, unsigned p, unsigned k) {
    unsigned out = 0, mult = 1;
    for (unsigned i = 0; i < k; ++i) {
        unsigned da = a % p, db = b % p;
        out += ((da + db) % p) * mult;
        a /= p;
        b /= p;
        mult *= p;
    }
    return out;
}

// multiply two F_p[x] polynomials (encoded base p) modulo the monic polynomial
// x^k + mod_tail, where mod_tail encodes the lower k coefficients.
unsigned poly_mulmod(unsigned a, unsigned b, unsigned p, unsigned k, unsigned mod_tail) {
    // coefficient vectors
    std::vector<unsigned> av(k), bv(k), prod(2 * k, 0), mv(k);
    unsigned t = a;
    for (unsigned i = 0; i < k; ++i) { av[i] = t % p; t /= p; }
    t = b;
    for (unsigned i = 0; i < k; ++i) { bv[i] = t % p; t /= p; }
    t = mod_tail;
    for (unsigned i = 0; i < k; ++i) { mv[i] = t % p; t /= p; }
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + av[i] * bv[j]) % p;
    // reduce: x^k = -mod_tail
    for (int i = int(2 * k) - 2; i >= int(k); --i) {
        unsigned c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (unsigned j = 0; j < k; ++j)
            prod[i - k + j] = (prod[i - k + j] + c * (p - mv[j])) % p;
    }
    unsigned out = 0, mult = 1;
    for (unsigned i = 0; i < k; ++i) { out += prod[i] * mult; mult *= p; }
    return out;
}

bool poly_is_irreducible(unsigned p, unsigned k, unsigned mod_tail) {
    // brute-force root/factor test: the polynomial x^k + tail is irreducible over
    // F_p iff it has no monic factor of degree 1..k/2; at these sizes we simply
    // test divisibility by every monic polynomial of degree up to k/2.
    unsigned q = 1;
    for (unsigned i = 0; i < k; ++i) q *= p;
    // coefficients of the candidate, degree k monic
    std::vector<unsigned> f(k + 1);
    unsigned t = mod_tail;
    for (unsigned i = 0; i < k; ++i) { f[i] = t % p; t /= p; }
    f[k] = 1;
    for (unsigned deg = 1; deg <= k / 2; ++deg) {
        unsigned count = 1;
        for (unsigned i = 0; i < deg; ++i) count *= p;
        for (unsigned tail = 0; tail < count; ++tail) {
            std::vector<unsigned> g(deg + 1);
            unsigned s = tail;
            for (unsigned i = 0; i < deg; ++i) { g[i] = s % p; s /= p; }
            g[deg] = 1;
            // remainder of f by g
            std::vector<unsigned> r = f;
            for (int i = int(k); i >= int(deg); --i) {
                unsigned c = r[i];
                if (c == 0) continue;
                for (unsigned j = 0; j <= deg; ++j) {
                    unsigned& slot = r[i - deg + j];
                    slot = (slot + c * (p - g[j]) % p) % p;
                }
            }
            bool zero = true;
            for (unsigned i = 0; i < deg; ++i)
                if (r[i] != 0) zero = false;
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace

bool Fq::is_prime_power(unsigned q, unsigned* p_out, unsigned* k_out) {
    if (q < 2) return false;
    unsigned n = q;
    unsigned p = 0;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) { p = d; break; }
    }
    if (p == 0) p = n;  // q itself prime
    unsigned k = 0, m = q;
    while (m % p == 0) { m /= p; ++k; }
    if (m != 1) return false;
    if (p_out) *p_out = p;
    if (k_out) *k_out = k;
    return true;
}

Fq::Fq(unsigned q) : q_(q) {
    DETPSI_CHECK(is_prime_power(q, &p_, &k_),
                 "Fq: q = " + std::to_string(q) + " is not a prime power");
    DETPSI_CHECK(q <= 256, "Fq: q = " + std::to_string(q) + " exceeds supported bound 256");

    // pick the modulus: smallest tail making x^k + tail irreducible (k = 1: x itself,
    // tail scan is skipped and arithmetic is plain mod p)
    unsigned mod_tail = 0;
    if (k_ > 1) {
        bool found = false;
        for (unsigned tail = 1; tail < q_ && !found; ++tail) {
            if (poly_is_irreducible(p_, k_, tail)) { mod_tail = tail; found = true; }
        }
        DETPSI_CHECK(found, "Fq: no irreducible modulus found");
    }

    add_.resize(std::size_t(q_) * q_);
    neg_.resize(q_);
    for (unsigned a = 0; a < q_; ++a)
        for (unsigned b = 0; b < q_; ++b)
            add_[std::size_t(a) * q_ + b] = fq_t(digit_add(a, b, p_, k_));
    for (unsigned a = 0; a < q_; ++a) {
        // negation: digit-wise p-complement
        unsigned out = 0, mult = 1, t = a;
        for (unsigned i = 0; i < k_; ++i) {
            unsigned d = t % p_;
            out += ((p_ - d) % p_) * mult;
            t /= p_;
            mult *= p_;
        }
        neg_[a] = fq_t(out);
    }

    // find a multiplicative generator by direct order test
    auto mul_raw = [&](unsigned a, unsigned b) {
        if (k_ == 1) return (a * b) % p_;
        return poly_mulmod(a, b, p_, k_, mod_tail);
    };
    unsigned gen = 0;
    for (unsigned c = 2; c < q_ && gen == 0; ++c) {
        unsigned x = c, order = 1;
        while (x != 1) {
            x = mul_raw(x, c);
            ++order;
            if (order > q_) break;
        }
        if (order == q_ - 1) gen = c;
    }
    if (q_ == 2) gen = 1;
    DETPSI_CHECK(gen != 0, "Fq: no generator found");

    exp_.resize(2 * (q_ - 1));
    log_.assign(q_, 0);
    unsigned x = 1;
    for (unsigned i = 0; i < q_ - 1; ++i) {
        exp_[i] = fq_t(x);
        log_[x] = i;
        x = mul_raw(x, gen);
    }
    DETPSI_CHECK(x == 1, "Fq: generator order mismatch");
    for (unsigned i = 0; i < q_ - 1; ++i) exp_[q_ - 1 + i] = exp_[i];
}

fq_t Fq::pow(fq_t a, long long e) const {
    if (a == 0) {
        DETPSI_CHECK(e > 0, "Fq: 0^e with e <= 0");
        return 0;
    }
    long long m = q_ - 1;
    long long r = e % m;
    if (r < 0) r += m;
    return exp_[(log_[a] * (unsigned long long)r) % m];
}

fq_t Fq::of_int(long long v) const {
    long long r = v % (long long)p_;
    if (r < 0) r += p_;
    return fq_t(r);
}

}  // namespace detpsi
