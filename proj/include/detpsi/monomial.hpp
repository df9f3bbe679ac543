#pragma once
// Monomials in up to 8 variables, exponents packed 8 bits each into a u64.
// Variable layout: polynomial variables x_0..x_{d-1} first, then group
// variables; the term orders rank earlier indices higher, so group variables
// are lowest as required. Exponents are kept < 128 so that SWAR add/divide
// tricks are carry-safe; the degree safeguard aborts long before that.
#include <cstdint>

#include "detpsi/fq.hpp"

namespace detpsi {

struct Mono {
    std::uint64_t e = 0;

    static Mono one() { return Mono{0}; }
    static Mono var(unsigned i, unsigned exp = 1) {
        return Mono{std::uint64_t(exp) << (8 * i)};
    }
    unsigned exp(unsigned i) const { return unsigned(e >> (8 * i)) & 0xffu; }
    Mono with_exp(unsigned i, unsigned v) const {
        std::uint64_t mask = std::uint64_t(0xff) << (8 * i);
        return Mono{(e & ~mask) | (std::uint64_t(v) << (8 * i))};
    }
    bool is_one() const { return e == 0; }
    bool operator==(const Mono& o) const { return e == o.e; }
    bool operator!=(const Mono& o) const { return e != o.e; }
};

constexpr std::uint64_t kHighBits = 0x8080808080808080ull;

inline Mono mono_mul(Mono a, Mono b) {
    DETPSI_CHECK(((a.e | b.e) & kHighBits) == 0, "monomial exponent overflow (>=128)");
    return Mono{a.e + b.e};
}

inline bool mono_divides(Mono a, Mono b) {  // a | b, i.e. a.exp <= b.exp everywhere
    // per-byte compare with guard bits; valid because exponents stay < 128
    std::uint64_t t = (b.e | kHighBits) - a.e;
    return (~t & kHighBits) == 0;
}

inline Mono mono_div(Mono b, Mono a) {  // b / a, caller ensures divisibility
    return Mono{b.e - a.e};
}

inline Mono mono_lcm(Mono a, Mono b, unsigned nvars) {
    Mono r;
    for (unsigned i = 0; i < nvars; ++i) {
        unsigned m = a.exp(i) > b.exp(i) ? a.exp(i) : b.exp(i);
        r = r.with_exp(i, m);
    }
    return r;
}

inline unsigned mono_deg(Mono a, unsigned nvars) {
    unsigned s = 0;
    for (unsigned i = 0; i < nvars; ++i) s += a.exp(i);
    return s;
}

enum class OrderKind { degrevlex, elim_group_first };

struct OrderCtx {
    unsigned nvars;  // total variables
    unsigned d;      // polynomial variables (group variables are d..nvars-1)
    OrderKind kind = OrderKind::degrevlex;
};

// degrevlex over variable window [lo, hi): higher total degree wins; on ties the
// monomial with the smaller exponent at the last differing variable is larger.
inline int cmp_drl_window(Mono a, Mono b, unsigned lo, unsigned hi) {
    unsigned da = 0, db = 0;
    for (unsigned i = lo; i < hi; ++i) {
        da += a.exp(i);
        db += b.exp(i);
    }
    if (da != db) return da < db ? -1 : 1;
    for (unsigned i = hi; i-- > lo;) {
        unsigned ea = a.exp(i), eb = b.exp(i);
        if (ea != eb) return ea > eb ? -1 : 1;
    }
    return 0;
}

inline int mono_cmp(Mono a, Mono b, const OrderCtx& ord) {
    if (a == b) return 0;
    if (ord.kind == OrderKind::degrevlex) return cmp_drl_window(a, b, 0, ord.nvars);
    // elimination order: group block first, then polynomial block
    int c = cmp_drl_window(a, b, ord.d, ord.nvars);
    if (c != 0) return c;
    return cmp_drl_window(a, b, 0, ord.d);
}

}  // namespace detpsi
