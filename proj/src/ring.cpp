#include "detpsi/ring.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>

namespace detpsi {

// ---------------- Ring construction ----------------

RingPtr Ring::make(const RingSpec& spec) {
    DETPSI_CHECK(Fq::is_prime_power(spec.q),
                 "make_ring: q = " + std::to_string(spec.q) + " is not a prime power");
    DETPSI_CHECK(spec.d >= 1, "make_ring: d must be >= 1");
    for (unsigned n : spec.group_orders)
        DETPSI_CHECK(n >= 1, "make_ring: group order must be >= 1");
    DETPSI_CHECK(spec.term_order == "degrevlex",
                 "make_ring: unsupported term order '" + spec.term_order + "'");
    auto r = std::make_shared<Ring>();
    r->spec_ = spec;
    r->fq_ = std::make_shared<Fq>(spec.q);
    unsigned g = unsigned(spec.group_orders.size());
    DETPSI_CHECK(spec.d + g <= 8, "make_ring: at most 8 variables total supported");
    r->ord_ = OrderCtx{spec.d + g, spec.d, OrderKind::degrevlex};
    r->elim_ord_ = OrderCtx{spec.d + g, spec.d, OrderKind::elim_group_first};
    unsigned size = 1;
    for (unsigned n : spec.group_orders) {
        size *= n;
        DETPSI_CHECK(size <= 16, "make_ring: group size exceeds bound 16");
    }
    r->group_size_ = size;
    // group basis: odometer over exponents, least-significant generator first
    std::vector<unsigned> e(g, 0);
    for (unsigned idx = 0; idx < size; ++idx) {
        Mono m;
        for (unsigned i = 0; i < g; ++i) m = m.with_exp(spec.d + i, e[i]);
        r->group_basis_.push_back(m);
        for (unsigned i = 0; i < g; ++i) {
            if (++e[i] < spec.group_orders[i]) break;
            e[i] = 0;
        }
    }
    // relations t_i^{n_i} - 1, stored sorted in the ring order
    for (unsigned i = 0; i < g; ++i) {
        std::vector<Term> ts;
        ts.push_back(Term{Mono::var(spec.d + i, spec.group_orders[i]), fq_t(1)});
        ts.push_back(Term{Mono::one(), r->fq_->neg(1)});
        r->relations_.push_back(poly_normalize(*r, std::move(ts), /*fold=*/false));
    }
    return r;
}

std::string Ring::var_name(unsigned i) const {
    static const char* xyzw[] = {"x", "y", "z", "w"};
    if (i < spec_.d) {
        if (spec_.d <= 4) return xyzw[i];
        return "x" + std::to_string(i + 1);
    }
    unsigned gi = i - spec_.d;
    if (ngroup() == 1) return "t";
    return "t" + std::to_string(gi + 1);
}

int Ring::var_index(const std::string& name) const {
    for (unsigned i = 0; i < nvars(); ++i)
        if (var_name(i) == name) return int(i);
    // also accept x1..xd / t1.. aliases
    if (name.size() >= 2 && (name[0] == 'x' || name[0] == 't')) {
        bool digits = true;
        for (std::size_t k = 1; k < name.size(); ++k)
            if (!std::isdigit((unsigned char)name[k])) digits = false;
        if (digits) {
            unsigned idx = unsigned(std::stoul(name.substr(1))) - 1;
            if (name[0] == 'x' && idx < spec_.d) return int(idx);
            if (name[0] == 't' && idx < ngroup()) return int(spec_.d + idx);
        }
    }
    if (name == "t" && ngroup() >= 1) return int(spec_.d);
    return -1;
}

// ---------------- Poly operations ----------------

Poly poly_zero() { return {}; }

Poly poly_const(const Ring& r, fq_t c) {
    (void)r;
    if (c == 0) return {};
    return {Term{Mono::one(), c}};
}

Poly poly_var(const Ring& r, unsigned i) {
    DETPSI_CHECK(i < r.nvars(), "poly_var: index out of range");
    return {Term{Mono::var(i), fq_t(1)}};
}

Poly poly_mono(const Ring& r, Mono m, fq_t c) {
    (void)r;
    if (c == 0) return {};
    return {Term{m, c}};
}

bool poly_is_zero(const Poly& p) { return p.empty(); }

int poly_cmp(const Poly& a, const Poly& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].m.e != b[i].m.e) return a[i].m.e < b[i].m.e ? -1 : 1;
        if (a[i].c != b[i].c) return a[i].c < b[i].c ? -1 : 1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

Poly poly_normalize(const Ring& r, std::vector<Term> terms, bool fold) {
    if (fold) {
        for (auto& t : terms) {
            Mono m = t.m;
            for (unsigned i = 0; i < r.ngroup(); ++i) {
                unsigned v = i + r.d();
                unsigned n = r.group_order(i);
                unsigned e = m.exp(v);
                if (e >= n) m = m.with_exp(v, e % n);
            }
            t.m = m;
        }
    }
    const OrderCtx& ord = r.order();
    std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
        return mono_cmp(a.m, b.m, ord) > 0;
    });
    Poly out;
    const Fq& F = r.fq();
    for (const auto& t : terms) {
        if (!out.empty() && out.back().m == t.m)
            out.back().c = F.add(out.back().c, t.c);
        else
            out.push_back(t);
        if (!out.empty() && out.back().c == 0) out.pop_back();
    }
    return out;
}

Poly poly_fold(const Ring& r, const Poly& a) {
    return poly_normalize(r, std::vector<Term>(a.begin(), a.end()), true);
}

Poly poly_add(const Ring& r, const Poly& a, const Poly& b) {
    const OrderCtx& ord = r.order();
    const Fq& F = r.fq();
    Poly out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = mono_cmp(a[i].m, b[j].m, ord);
        if (c > 0)
            out.push_back(a[i++]);
        else if (c < 0)
            out.push_back(b[j++]);
        else {
            fq_t s = F.add(a[i].c, b[j].c);
            if (s != 0) out.push_back(Term{a[i].m, s});
            ++i;
            ++j;
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return out;
}

Poly poly_neg(const Ring& r, const Poly& a) {
    Poly out = a;
    for (auto& t : out) t.c = r.fq().neg(t.c);
    return out;
}

Poly poly_sub(const Ring& r, const Poly& a, const Poly& b) {
    return poly_add(r, a, poly_neg(r, b));
}

Poly poly_scale(const Ring& r, const Poly& a, fq_t c) {
    if (c == 0) return {};
    Poly out = a;
    for (auto& t : out) t.c = r.fq().mul(t.c, c);
    return out;
}

Poly poly_mul_term(const Ring& r, const Poly& a, Mono m, fq_t c) {
    if (c == 0) return {};
    Poly out;
    out.reserve(a.size());
    for (const auto& t : a) out.push_back(Term{mono_mul(t.m, m), r.fq().mul(t.c, c)});
    return out;  // order preserved: term orders are multiplication-compatible
}

Poly poly_mul_cover(const Ring& r, const Poly& a, const Poly& b) {
    std::vector<Term> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& ta : a)
        for (const auto& tb : b)
            acc.push_back(Term{mono_mul(ta.m, tb.m), r.fq().mul(ta.c, tb.c)});
    return poly_normalize(r, std::move(acc), false);
}

unsigned poly_total_deg(const Ring& r, const Poly& a) {
    unsigned d = 0;
    for (const auto& t : a) d = std::max(d, mono_deg(t.m, r.nvars()));
    return d;
}

// ---------------- RingElem ----------------

RingElem re_zero() { return {}; }
RingElem re_const(const Ring& r, fq_t c) { return {poly_const(r, c)}; }
RingElem re_one(const Ring& r) { return re_const(r, 1); }
RingElem re_var(const Ring& r, unsigned i) { return {poly_var(r, i)}; }
RingElem re_of(const Ring& r, const Poly& cover) { return {poly_fold(r, cover)}; }
RingElem re_add(const Ring& r, const RingElem& a, const RingElem& b) {
    return {poly_add(r, a.p, b.p)};
}
RingElem re_sub(const Ring& r, const RingElem& a, const RingElem& b) {
    return {poly_sub(r, a.p, b.p)};
}
RingElem re_neg(const Ring& r, const RingElem& a) { return {poly_neg(r, a.p)}; }
RingElem re_scale(const Ring& r, const RingElem& a, fq_t c) { return {poly_scale(r, a.p, c)}; }
RingElem re_mul(const Ring& r, const RingElem& a, const RingElem& b) {
    return {poly_fold(r, poly_mul_cover(r, a.p, b.p))};
}
RingElem re_pow(const Ring& r, const RingElem& a, unsigned e) {
    RingElem out = re_one(r), base = a;
    while (e) {
        if (e & 1) out = re_mul(r, out, base);
        e >>= 1;
        if (e) base = re_mul(r, base, base);
    }
    return out;
}

fq_t re_lead_coeff(const RingElem& a) { return a.p.empty() ? fq_t(0) : a.p.front().c; }

RingElem re_monic(const Ring& r, const RingElem& a) {
    if (a.p.empty()) return a;
    return re_scale(r, a, r.fq().inv(a.p.front().c));
}

std::vector<RingElem> lambda_components(const Ring& r, const RingElem& a) {
    unsigned g = r.ngroup();
    std::vector<RingElem> out(r.group_size());
    for (const auto& t : a.p) {
        // group index in mixed radix, least significant generator first
        unsigned idx = 0, mult = 1;
        Mono xpart = t.m;
        for (unsigned i = 0; i < g; ++i) {
            unsigned v = r.d() + i;
            idx += t.m.exp(v) * mult;
            mult *= r.group_order(i);
            xpart = xpart.with_exp(v, 0);
        }
        out[idx].p.push_back(Term{xpart, t.c});
    }
    for (auto& c : out) c.p = poly_normalize(r, std::move(c.p), false);
    return out;
}

// ---------------- determinants, norm ----------------

RingElem divide_exact_lambda(const Ring& r, const RingElem& a, const RingElem& b) {
    for (const auto& t : a.p) DETPSI_CHECK(r.in_lambda(t.m), "divide_exact_lambda: entry not in Lambda");
    for (const auto& t : b.p) DETPSI_CHECK(r.in_lambda(t.m), "divide_exact_lambda: entry not in Lambda");
    DETPSI_CHECK(!b.is_zero(), "divide_exact_lambda: division by zero");
    Poly rem = a.p;
    Poly quot;
    const Fq& F = r.fq();
    while (!rem.empty()) {
        const Term& lt = rem.front();
        const Term& lb = b.p.front();
        DETPSI_CHECK(mono_divides(lb.m, lt.m), "divide_exact_lambda: not divisible");
        Mono qm = mono_div(lt.m, lb.m);
        fq_t qc = F.div(lt.c, lb.c);
        quot.push_back(Term{qm, qc});
        rem = poly_sub(r, rem, poly_mul_term(r, b.p, qm, qc));
    }
    return {poly_normalize(r, std::move(quot), false)};
}

RingElem det_lambda(const Ring& r, const std::vector<std::vector<RingElem>>& mat) {
    std::size_t n = mat.size();
    if (n == 0) return re_one(r);
    for (const auto& row : mat) {
        DETPSI_CHECK(row.size() == n, "det_lambda: matrix not square");
        for (const auto& e : row)
            for (const auto& t : e.p)
                DETPSI_CHECK(r.in_lambda(t.m), "det_lambda: entry not in Lambda");
    }
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = mat[i][j].p;
    bool neg = false;
    Poly prev = poly_const(r, 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (poly_is_zero(m[k][k])) {
            std::size_t piv = k + 1;
            while (piv < n && poly_is_zero(m[piv][k])) ++piv;
            if (piv == n) return re_zero();
            std::swap(m[k], m[piv]);
            neg = !neg;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly t = poly_sub(r, poly_mul_cover(r, m[i][j], m[k][k]),
                                  poly_mul_cover(r, m[i][k], m[k][j]));
                RingElem q = divide_exact_lambda(r, RingElem{t}, RingElem{prev});
                m[i][j] = q.p;
            }
            m[i][k] = poly_zero();
        }
        prev = m[k][k];
    }
    Poly det = m[n - 1][n - 1];
    if (neg) det = poly_neg(r, det);
    return {det};
}

RingElem det_ring(const Ring& r, const std::vector<std::vector<RingElem>>& mat) {
    std::size_t n = mat.size();
    if (n == 0) return re_one(r);
    for (const auto& row : mat) DETPSI_CHECK(row.size() == n, "det_ring: matrix not square");
    DETPSI_CHECK(n <= 12, "det_ring: size cap 12 exceeded");
    // f(mask) = det of rows [popcount(mask)..n) on columns not in mask
    std::unordered_map<std::uint32_t, RingElem> memo;
    std::vector<std::uint32_t> stack;
    std::function<const RingElem&(std::uint32_t)> f = [&](std::uint32_t mask) -> const RingElem& {
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        unsigned row = unsigned(__builtin_popcount(mask));
        RingElem acc;
        if (row == n) {
            acc = re_one(r);
        } else {
            bool sign = false;
            for (unsigned col = 0; col < n; ++col) {
                if (mask & (1u << col)) continue;
                if (!mat[row][col].is_zero()) {
                    RingElem sub = f(mask | (1u << col));
                    RingElem term = re_mul(r, mat[row][col], sub);
                    if (sign) term = re_neg(r, term);
                    acc = re_add(r, acc, term);
                }
                sign = !sign;
            }
        }
        return memo.emplace(mask, std::move(acc)).first->second;
    };
    return f(0);
}

RingElem norm(const Ring& r, const RingElem& a) {
    unsigned n = r.group_size();
    std::vector<std::vector<RingElem>> m(n, std::vector<RingElem>(n));
    for (unsigned j = 0; j < n; ++j) {
        RingElem col = re_of(r, poly_mul_term(r, a.p, r.group_basis()[j], 1));
        std::vector<RingElem> comps = lambda_components(r, col);
        for (unsigned i = 0; i < n; ++i) m[i][j] = comps[i];
    }
    return det_lambda(r, m);
}

bool is_non_zero_divisor(const Ring& r, const RingElem& a) {
    return !norm(r, a).is_zero();
}

// ---------------- Automorphisms ----------------

namespace {

RingElem gen_image_elem(const Ring& r, const Automorphism::GenImage& gi) {
    Mono m;
    for (unsigned j = 0; j < r.ngroup(); ++j) m = m.with_exp(r.d() + j, gi.exps[j]);
    return re_of(r, poly_mono(r, m, gi.c));
}

}  // namespace

Automorphism make_automorphism(const Ring& r,
                               const std::vector<Automorphism::GenImage>& images) {
    DETPSI_CHECK(images.size() == r.ngroup(), "automorphism: wrong number of generator images");
    Automorphism s;
    for (unsigned i = 0; i < images.size(); ++i) {
        auto gi = images[i];
        DETPSI_CHECK(gi.c != 0, "automorphism: zero coefficient");
        DETPSI_CHECK(gi.exps.size() == r.ngroup(), "automorphism: wrong exponent vector length");
        for (unsigned j = 0; j < r.ngroup(); ++j) gi.exps[j] %= r.group_order(j);
        // order compatibility: (c t^e)^{n_i} = 1
        unsigned ni = r.group_order(i);
        DETPSI_CHECK(r.fq().pow(gi.c, ni) == 1, "automorphism: coefficient order incompatible");
        for (unsigned j = 0; j < r.ngroup(); ++j)
            DETPSI_CHECK((std::uint64_t(ni) * gi.exps[j]) % r.group_order(j) == 0,
                         "automorphism: exponent order incompatible");
        s.images.push_back(gi);
    }
    // bijectivity on the group basis: induced exponent map is a permutation
    unsigned n = r.group_size();
    std::vector<char> seen(n, 0);
    for (unsigned idx = 0; idx < n; ++idx) {
        Mono gamma = r.group_basis()[idx];
        std::vector<unsigned> target(r.ngroup(), 0);
        for (unsigned i = 0; i < r.ngroup(); ++i) {
            unsigned e = gamma.exp(r.d() + i);
            for (unsigned j = 0; j < r.ngroup(); ++j)
                target[j] = (target[j] + e * s.images[i].exps[j]) % r.group_order(j);
        }
        unsigned tidx = 0, mult = 1;
        for (unsigned j = 0; j < r.ngroup(); ++j) {
            tidx += target[j] * mult;
            mult *= r.group_order(j);
        }
        DETPSI_CHECK(!seen[tidx], "automorphism: not bijective on group monomials");
        seen[tidx] = 1;
    }
    return s;
}

Automorphism involution_iota(const Ring& r) {
    std::vector<Automorphism::GenImage> images;
    for (unsigned i = 0; i < r.ngroup(); ++i) {
        Automorphism::GenImage gi;
        gi.c = 1;
        gi.exps.assign(r.ngroup(), 0);
        gi.exps[i] = (r.group_order(i) - 1) % r.group_order(i);
        images.push_back(gi);
    }
    return make_automorphism(r, images);
}

Automorphism identity_automorphism(const Ring& r) {
    std::vector<Automorphism::GenImage> images;
    for (unsigned i = 0; i < r.ngroup(); ++i) {
        Automorphism::GenImage gi;
        gi.c = 1;
        gi.exps.assign(r.ngroup(), 0);
        gi.exps[i] = r.group_order(i) == 1 ? 0 : 1;
        images.push_back(gi);
    }
    return make_automorphism(r, images);
}

RingElem automorphism_apply(const Ring& r, const Automorphism& s, const RingElem& a) {
    DETPSI_CHECK(s.images.size() == r.ngroup(), "automorphism_apply: wrong automorphism");
    RingElem out;
    for (const auto& t : a.p) {
        RingElem term = re_const(r, t.c);
        Mono xpart = t.m;
        for (unsigned i = 0; i < r.ngroup(); ++i) {
            unsigned v = r.d() + i;
            unsigned e = t.m.exp(v);
            xpart = xpart.with_exp(v, 0);
            if (e) term = re_mul(r, term, re_pow(r, gen_image_elem(r, s.images[i]), e));
        }
        term = re_mul(r, term, RingElem{poly_mono(r, xpart, 1)});
        out = re_add(r, out, term);
    }
    return out;
}

Automorphism compose(const Ring& r, const Automorphism& a, const Automorphism& b) {
    // (a o b)(t_i) = a(b(t_i)); b's image is a unit monomial so a's image is too
    std::vector<Automorphism::GenImage> images;
    for (unsigned i = 0; i < r.ngroup(); ++i) {
        RingElem img = automorphism_apply(r, a, gen_image_elem(r, b.images[i]));
        DETPSI_CHECK(img.p.size() == 1, "compose: image not a monomial");
        Automorphism::GenImage gi;
        gi.c = img.p[0].c;
        gi.exps.assign(r.ngroup(), 0);
        for (unsigned j = 0; j < r.ngroup(); ++j) gi.exps[j] = img.p[0].m.exp(r.d() + j);
        images.push_back(gi);
    }
    return make_automorphism(r, images);
}

bool automorphism_equal(const Automorphism& a, const Automorphism& b) {
    if (a.images.size() != b.images.size()) return false;
    for (std::size_t i = 0; i < a.images.size(); ++i)
        if (a.images[i].c != b.images[i].c || a.images[i].exps != b.images[i].exps)
            return false;
    return true;
}

// ---------------- printing / parsing ----------------

std::string poly_to_string(const Ring& r, const Poly& p) {
    if (p.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k) out += " + ";
        const Term& t = p[k];
        bool unit_coeff = (t.c == 1) && !t.m.is_one();
        std::string factors;
        for (unsigned i = 0; i < r.nvars(); ++i) {
            unsigned e = t.m.exp(i);
            if (!e) continue;
            if (!factors.empty()) factors += "*";
            factors += r.var_name(i);
            if (e > 1) factors += "^" + std::to_string(e);
        }
        if (!unit_coeff) {
            out += std::to_string(t.c);
            if (!factors.empty()) out += "*";
        }
        out += factors;
    }
    return out;
}

RingElem parse_elem(const Ring& r, const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace((unsigned char)ch)) s += ch;
    DETPSI_CHECK(!s.empty(), "parse_elem: empty input");
    RingElem out;
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    while (i <= s.size()) {
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        DETPSI_CHECK(!term.empty(), "parse_elem: empty term in '" + text + "'");
        RingElem factor = re_one(r);
        std::size_t k = 0;
        while (k < term.size()) {
            std::size_t e = k;
            while (e < term.size() && term[e] != '*') ++e;
            std::string f = term.substr(k, e - k);
            DETPSI_CHECK(!f.empty(), "parse_elem: empty factor in '" + text + "'");
            if (std::isdigit((unsigned char)f[0])) {
                factor = re_scale(r, factor, r.fq().of_int(std::stoll(f)));
            } else {
                std::string name = f;
                unsigned expn = 1;
                auto caret = f.find('^');
                if (caret != std::string::npos) {
                    name = f.substr(0, caret);
                    expn = unsigned(std::stoul(f.substr(caret + 1)));
                }
                int vi = r.var_index(name);
                DETPSI_CHECK(vi >= 0, "parse_elem: unknown variable '" + name + "'");
                factor = re_mul(r, factor, re_pow(r, re_var(r, unsigned(vi)), expn));
            }
            k = e + 1;
        }
        if (neg) factor = re_neg(r, factor);
        out = re_add(r, out, factor);
        if (j >= s.size()) break;
        neg = s[j] == '-';
        i = j + 1;
    }
    return out;
}

// ---------------- Vec operations ----------------

bool vec_is_zero(const Vec& v) { return v.empty(); }

int vterm_cmp(const VTerm& a, const VTerm& b, const OrderCtx& ord) {
    if (a.pos != b.pos) return a.pos < b.pos ? 1 : -1;  // lower position leads
    return mono_cmp(a.m, b.m, ord);
}

Vec vec_normalize(const Ring& r, std::vector<VTerm> terms, bool fold, const OrderCtx& ord) {
    if (fold) {
        for (auto& t : terms) {
            Mono m = t.m;
            for (unsigned i = 0; i < r.ngroup(); ++i) {
                unsigned v = i + r.d();
                unsigned n = r.group_order(i);
                unsigned e = m.exp(v);
                if (e >= n) m = m.with_exp(v, e % n);
            }
            t.m = m;
        }
    }
    std::sort(terms.begin(), terms.end(), [&](const VTerm& a, const VTerm& b) {
        return vterm_cmp(a, b, ord) > 0;
    });
    Vec out;
    const Fq& F = r.fq();
    for (const auto& t : terms) {
        if (!out.empty() && out.back().pos == t.pos && out.back().m == t.m)
            out.back().c = F.add(out.back().c, t.c);
        else
            out.push_back(t);
        if (!out.empty() && out.back().c == 0) out.pop_back();
    }
    return out;
}

Vec vec_add(const Ring& r, const Vec& a, const Vec& b, const OrderCtx& ord) {
    const Fq& F = r.fq();
    Vec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = vterm_cmp(a[i], b[j], ord);
        if (c > 0)
            out.push_back(a[i++]);
        else if (c < 0)
            out.push_back(b[j++]);
        else {
            fq_t s = F.add(a[i].c, b[j].c);
            if (s != 0) out.push_back(VTerm{a[i].pos, a[i].m, s});
            ++i;
            ++j;
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return out;
}

Vec vec_scale(const Ring& r, const Vec& a, fq_t c) {
    if (c == 0) return {};
    Vec out = a;
    for (auto& t : out) t.c = r.fq().mul(t.c, c);
    return out;
}

Vec vec_mul_term(const Ring& r, const Vec& a, Mono m, fq_t c) {
    if (c == 0) return {};
    Vec out;
    out.reserve(a.size());
    for (const auto& t : a) out.push_back(VTerm{t.pos, mono_mul(t.m, m), r.fq().mul(t.c, c)});
    return out;
}

Vec vec_axpy_term(const Ring& r, const Vec& v, fq_t c, Mono m, const Vec& w, const OrderCtx& ord) {
    return vec_add(r, v, vec_mul_term(r, w, m, c), ord);
}

Vec vec_fold(const Ring& r, const Vec& v, const OrderCtx& ord) {
    return vec_normalize(r, std::vector<VTerm>(v.begin(), v.end()), true, ord);
}

Vec vec_from_poly(const Poly& p, std::uint32_t pos) {
    Vec out;
    out.reserve(p.size());
    for (const auto& t : p) out.push_back(VTerm{pos, t.m, t.c});
    return out;
}

Poly vec_component(const Vec& v, std::uint32_t pos) {
    Poly out;
    for (const auto& t : v)
        if (t.pos == pos) out.push_back(Term{t.m, t.c});
    return out;
}

Vec vec_mul_poly(const Ring& r, const Vec& v, const Poly& p, const OrderCtx& ord) {
    Vec out;
    for (const auto& t : p) out = vec_add(r, out, vec_mul_term(r, v, t.m, t.c), ord);
    return out;
}

unsigned vec_rank_bound(const Vec& v) {
    unsigned m = 0;
    for (const auto& t : v) m = std::max(m, t.pos + 1);
    return m;
}

std::vector<Vec> transpose_columns(const Ring& r, const std::vector<Vec>& cols, unsigned nrows) {
    std::vector<std::vector<VTerm>> rows(nrows);
    for (std::uint32_t j = 0; j < cols.size(); ++j)
        for (const VTerm& t : cols[j]) {
            DETPSI_CHECK(t.pos < nrows, "transpose_columns: entry exceeds row count");
            rows[t.pos].push_back(VTerm{j, t.m, t.c});
        }
    std::vector<Vec> out;
    out.reserve(nrows);
    for (auto& terms : rows) out.push_back(vec_normalize(r, std::move(terms), true, r.order()));
    return out;
}

std::string vec_to_string(const Ring& r, const Vec& v) {
    if (v.empty()) return "0";
    std::string out = "(";
    unsigned rank = vec_rank_bound(v);
    for (unsigned p = 0; p < rank; ++p) {
        if (p) out += ", ";
        out += poly_to_string(r, vec_component(v, p));
    }
    return out + ")";
}

}  // namespace detpsi
