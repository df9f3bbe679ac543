#pragma once
// Finite field F_q, q = p^k a prime power. Elements are encoded as integers
// 0..q-1 whose base-p digits are the coefficients of the polynomial basis;
// addition is digit-wise mod p, multiplication goes through exp/log tables
// built from a fixed generator, so the encoding is deterministic for a given q.
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace detpsi {

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

#define DETPSI_CHECK(cond, msg) \
    do { \
        if (!(cond)) throw ::detpsi::error(msg); \
    } while (0)

using fq_t = std::uint16_t;

class Fq {
  public:
    explicit Fq(unsigned q);

    unsigned q() const { return q_; }
    unsigned p() const { return p_; }
    unsigned k() const { return k_; }

    fq_t add(fq_t a, fq_t b) const { return add_[a * q_ + b]; }
    fq_t sub(fq_t a, fq_t b) const { return add_[a * q_ + neg_[b]]; }
    fq_t neg(fq_t a) const { return neg_[a]; }
    fq_t mul(fq_t a, fq_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    fq_t inv(fq_t a) const {
        DETPSI_CHECK(a != 0, "Fq: inverse of zero");
        return exp_[(q_ - 1) - log_[a]];
    }
    fq_t div(fq_t a, fq_t b) const { return mul(a, inv(b)); }
    fq_t pow(fq_t a, long long e) const;
    fq_t of_int(long long v) const;  // reduce an integer into the prime field part

    // true iff q is a prime power (used by make_ring validation before construction)
    static bool is_prime_power(unsigned q, unsigned* p_out = nullptr, unsigned* k_out = nullptr);

  private:
    unsigned q_, p_, k_;
    std::vector<fq_t> add_;   // q*q addition table
    std::vector<fq_t> neg_;   // negation
    std::vector<fq_t> exp_;   // exp_[i] = g^i, i in [0, 2(q-1)); exp_[q-1] = 1
    std::vector<unsigned> log_;  // log base g, defined for 1..q-1
};

using FqPtr = std::shared_ptr<const Fq>;

}  // namespace detpsi
