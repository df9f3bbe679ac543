#include "detpsi/groebner.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

namespace detpsi {

namespace {

struct Pair {
    unsigned deg;
    Mono lcm;
    std::uint32_t pos;
    std::uint32_t i, j;
};

struct PairLess {
    const OrderCtx* ord;
    bool operator()(const Pair& a, const Pair& b) const {
        if (a.deg != b.deg) return a.deg < b.deg;
        if (a.lcm != b.lcm) {
            int c = mono_cmp(a.lcm, b.lcm, *ord);
            if (c != 0) return c < 0;
        }
        if (a.pos != b.pos) return a.pos < b.pos;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

}  // namespace

Vec gb_reduce(const Ring& r, Vec v, const std::vector<Vec>& basis, const OrderCtx& ord) {
    const Fq& F = r.fq();
    std::size_t i = 0;
    while (i < v.size()) {
        const VTerm t = v[i];
        const Vec* hit = nullptr;
        for (const Vec& g : basis) {
            const VTerm& lt = g.front();
            if (lt.pos == t.pos && mono_divides(lt.m, t.m)) {
                hit = &g;
                break;
            }
        }
        if (!hit) {
            ++i;
            continue;
        }
        const VTerm& lt = hit->front();
        fq_t c = F.neg(F.div(t.c, lt.c));
        v = vec_axpy_term(r, v, c, mono_div(t.m, lt.m), *hit, ord);
        // the term at index i cancelled; earlier (larger) terms are untouched
    }
    return v;
}

std::vector<Vec> buchberger(const Ring& r, std::vector<Vec> gens, const OrderCtx& ord,
                            std::size_t max_basis) {
    const Fq& F = r.fq();
    std::vector<Vec> basis;
    std::set<Pair, PairLess> pairs(PairLess{&ord});

    auto add_pairs = [&](std::uint32_t k) {
        const VTerm& ltk = basis[k].front();
        for (std::uint32_t i = 0; i < k; ++i) {
            const VTerm& lti = basis[i].front();
            if (lti.pos != ltk.pos) continue;
            Mono L = mono_lcm(lti.m, ltk.m, r.nvars());
            pairs.insert(Pair{mono_deg(L, r.nvars()), L, ltk.pos, i, k});
        }
    };

    auto append = [&](Vec v) {
        DETPSI_CHECK(basis.size() < max_basis, "buchberger: basis size cap exceeded");
        basis.push_back(std::move(v));
        add_pairs(std::uint32_t(basis.size() - 1));
    };

    for (Vec& g : gens) {
        Vec v = gb_reduce(r, std::move(g), basis, ord);
        if (!vec_is_zero(v)) append(std::move(v));
    }
    while (!pairs.empty()) {
        Pair p = *pairs.begin();
        pairs.erase(pairs.begin());
        const Vec& gi = basis[p.i];
        const Vec& gj = basis[p.j];
        const VTerm& li = gi.front();
        const VTerm& lj = gj.front();
        Vec s = vec_mul_term(r, gi, mono_div(p.lcm, li.m), F.inv(li.c));
        s = vec_axpy_term(r, s, F.neg(F.inv(lj.c)), mono_div(p.lcm, lj.m), gj, ord);
        s = gb_reduce(r, std::move(s), basis, ord);
        if (!vec_is_zero(s)) append(std::move(s));
    }

    // minimalize: drop elements whose leading term another leading term divides
    std::vector<std::size_t> order_by_lt(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) order_by_lt[k] = k;
    std::sort(order_by_lt.begin(), order_by_lt.end(), [&](std::size_t a, std::size_t b) {
        int c = vterm_cmp(basis[a].front(), basis[b].front(), ord);
        if (c != 0) return c < 0;
        return a < b;
    });
    std::vector<Vec> minimal;
    for (std::size_t idx : order_by_lt) {
        const VTerm& lt = basis[idx].front();
        bool divisible = false;
        for (const Vec& h : minimal)
            if (h.front().pos == lt.pos && mono_divides(h.front().m, lt.m)) divisible = true;
        if (!divisible) minimal.push_back(basis[idx]);
    }
    // monic + tail interreduction to the unique reduced basis
    for (Vec& g : minimal) g = vec_scale(r, g, F.inv(g.front().c));
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k < minimal.size(); ++k) {
            std::vector<Vec> others;
            others.reserve(minimal.size() - 1);
            for (std::size_t l = 0; l < minimal.size(); ++l)
                if (l != k) others.push_back(minimal[l]);
            Vec red = gb_reduce(r, minimal[k], others, ord);
            if (!(red == minimal[k])) {
                changed = true;
                minimal[k] = std::move(red);  // leading term survives: lts are incomparable
            }
        }
    }
    std::sort(minimal.begin(), minimal.end(), [&](const Vec& a, const Vec& b) {
        return vterm_cmp(a.front(), b.front(), ord) > 0;
    });
    return minimal;
}

std::vector<Vec> relation_vectors(const Ring& r, unsigned rank) {
    std::vector<Vec> out;
    for (unsigned p = 0; p < rank; ++p)
        for (const Poly& rel : r.relations()) out.push_back(vec_from_poly(rel, p));
    return out;
}

Submodule make_submodule(RingPtr ring, unsigned rank, std::vector<Vec> gens) {
    Submodule s;
    s.ring = std::move(ring);
    s.rank = rank;
    const Ring& r = *s.ring;
    for (Vec& g : gens) {
        Vec f = vec_fold(r, g, r.order());
        if (!vec_is_zero(f)) {
            DETPSI_CHECK(vec_rank_bound(f) <= rank, "make_submodule: generator exceeds rank");
            s.gens.push_back(std::move(f));
        }
    }
    std::vector<Vec> input = s.gens;
    for (Vec& v : relation_vectors(r, rank)) input.push_back(std::move(v));
    s.gb = buchberger(r, std::move(input), r.order(), r.max_basis());
    return s;
}

Submodule make_ideal(RingPtr ring, std::vector<RingElem> gens) {
    std::vector<Vec> vs;
    for (const RingElem& g : gens) vs.push_back(vec_from_poly(g.p, 0));
    return make_submodule(std::move(ring), 1, std::move(vs));
}

Vec submodule_reduce(const Submodule& s, const Vec& v) {
    const Ring& r = *s.ring;
    return gb_reduce(r, vec_fold(r, v, r.order()), s.gb, r.order());
}

bool submodule_member(const Submodule& s, const Vec& v) {
    return vec_is_zero(submodule_reduce(s, v));
}

namespace {

void ensure_cert(const Submodule& s) {
    std::call_once(s.cert->once, [&]() {
        const Ring& r = *s.ring;
        std::vector<Vec> input;
        for (std::uint32_t j = 0; j < s.gens.size(); ++j) {
            Vec a = s.gens[j];
            a.push_back(VTerm{s.rank + j, Mono::one(), 1});  // tag: lowest precedence
            input.push_back(std::move(a));
        }
        for (Vec& v : relation_vectors(r, s.rank + unsigned(s.gens.size())))
            input.push_back(std::move(v));
        s.cert->basis = buchberger(r, std::move(input), r.order(), r.max_basis());
    });
}

}  // namespace

std::optional<std::vector<RingElem>> member_certificate(const Submodule& s, const Vec& v) {
    const Ring& r = *s.ring;
    Vec f = vec_fold(r, v, r.order());
    if (vec_is_zero(f)) return std::vector<RingElem>(s.gens.size());
    DETPSI_CHECK(vec_rank_bound(f) <= s.rank, "member_certificate: vector exceeds rank");
    ensure_cert(s);
    Vec red = gb_reduce(r, f, s.cert->basis, r.order());
    for (const VTerm& t : red)
        if (t.pos < s.rank) return std::nullopt;  // real block did not vanish
    std::vector<RingElem> out(s.gens.size());
    for (std::uint32_t j = 0; j < s.gens.size(); ++j)
        out[j] = re_of(r, poly_neg(r, vec_component(red, s.rank + j)));
    return out;
}

bool submodule_equal(const Submodule& a, const Submodule& b) {
    return a.ring == b.ring && a.rank == b.rank && a.gb == b.gb;
}

bool submodule_contains(const Submodule& outer, const Submodule& inner) {
    DETPSI_CHECK(outer.rank == inner.rank, "submodule_contains: rank mismatch");
    for (const Vec& g : inner.gens)
        if (!submodule_member(outer, g)) return false;
    return true;
}

Submodule kernel_of_matrix(RingPtr ring, const std::vector<Vec>& columns, unsigned target_rank,
                           const std::vector<Vec>& target_rels) {
    const Ring& r = *ring;
    unsigned ncols = unsigned(columns.size());
    std::vector<Vec> input;
    for (std::uint32_t j = 0; j < ncols; ++j) {
        Vec a = vec_fold(r, columns[j], r.order());
        DETPSI_CHECK(vec_rank_bound(a) <= target_rank, "kernel_of_matrix: column exceeds rank");
        a.push_back(VTerm{target_rank + j, Mono::one(), 1});
        input.push_back(vec_normalize(r, std::move(a), false, r.order()));
    }
    for (const Vec& t : target_rels) {
        Vec f = vec_fold(r, t, r.order());
        if (!vec_is_zero(f)) input.push_back(std::move(f));
    }
    for (Vec& v : relation_vectors(r, target_rank + ncols)) input.push_back(std::move(v));
    std::vector<Vec> gb = buchberger(r, std::move(input), r.order(), r.max_basis());
    std::vector<Vec> kernel_gens;
    for (const Vec& g : gb) {
        if (g.front().pos < target_rank) continue;  // real block present
        std::vector<VTerm> shifted;
        for (const VTerm& t : g) shifted.push_back(VTerm{t.pos - target_rank, t.m, t.c});
        Vec k = vec_normalize(r, std::move(shifted), true, r.order());
        if (!vec_is_zero(k)) kernel_gens.push_back(std::move(k));
    }
    return make_submodule(std::move(ring), ncols, std::move(kernel_gens));
}

Submodule syzygies(const Submodule& s) {
    return kernel_of_matrix(s.ring, s.gens, s.rank, {});
}

// ---- ideal operations ----

namespace {

void check_ideal(const Submodule& I) {
    DETPSI_CHECK(I.rank == 1, "ideal operation on a submodule of rank != 1");
}

std::vector<RingElem> ideal_elems(const Submodule& I) {
    std::vector<RingElem> out;
    for (const Vec& g : I.gens) out.push_back(re_of(*I.ring, vec_component(g, 0)));
    return out;
}

}  // namespace

bool ideal_member(const Submodule& I, const RingElem& f) {
    check_ideal(I);
    return submodule_member(I, vec_from_poly(f.p, 0));
}

Submodule ideal_sum(const Submodule& a, const Submodule& b) {
    check_ideal(a);
    check_ideal(b);
    std::vector<Vec> gens = a.gens;
    gens.insert(gens.end(), b.gens.begin(), b.gens.end());
    return make_submodule(a.ring, 1, std::move(gens));
}

Submodule ideal_product(const Submodule& a, const Submodule& b) {
    check_ideal(a);
    check_ideal(b);
    const Ring& r = *a.ring;
    std::vector<Vec> gens;
    for (const RingElem& f : ideal_elems(a))
        for (const RingElem& g : ideal_elems(b))
            gens.push_back(vec_from_poly(re_mul(r, f, g).p, 0));
    return make_submodule(a.ring, 1, std::move(gens));
}

Submodule ideal_intersect(const Submodule& a, const Submodule& b) {
    check_ideal(a);
    check_ideal(b);
    const Ring& r = *a.ring;
    // kernel of R -> R/a (+) R/b on the diagonal
    Vec diag = vec_add(r, vec_from_poly(poly_const(r, 1), 0), vec_from_poly(poly_const(r, 1), 1),
                       r.order());
    std::vector<Vec> rels;
    for (const Vec& g : a.gens) rels.push_back(g);  // position 0
    for (const Vec& g : b.gens) {
        std::vector<VTerm> sh;
        for (const VTerm& t : g) sh.push_back(VTerm{1, t.m, t.c});
        rels.push_back(vec_normalize(r, std::move(sh), false, r.order()));
    }
    Submodule k = kernel_of_matrix(a.ring, {diag}, 2, rels);
    return k;  // rank 1 by construction
}

Submodule ideal_colon(const Submodule& I, const RingElem& f) {
    check_ideal(I);
    Submodule k = kernel_of_matrix(I.ring, {vec_from_poly(f.p, 0)}, 1, I.gens);
    return k;
}

Submodule ideal_colon_ideal(const Submodule& I, const Submodule& J) {
    check_ideal(I);
    check_ideal(J);
    const Ring& r = *I.ring;
    if (J.gens.empty())  // (I : 0) = R
        return make_ideal(I.ring, {re_one(r)});
    // kernel of R -> (+)_j R/I,  r -> (r g_j)_j
    unsigned t = unsigned(J.gens.size());
    std::vector<VTerm> col;
    for (std::uint32_t j = 0; j < t; ++j)
        for (const Term& term : vec_component(J.gens[j], 0))
            col.push_back(VTerm{j, term.m, term.c});
    Vec column = vec_normalize(r, std::move(col), false, r.order());
    std::vector<Vec> rels;
    for (std::uint32_t j = 0; j < t; ++j)
        for (const Vec& g : I.gens) {
            std::vector<VTerm> sh;
            for (const VTerm& tm : g) sh.push_back(VTerm{j, tm.m, tm.c});
            rels.push_back(vec_normalize(r, std::move(sh), false, r.order()));
        }
    return kernel_of_matrix(I.ring, {column}, t, rels);
}

Submodule ideal_saturate(const Submodule& I, const RingElem& f) {
    check_ideal(I);
    Submodule cur = I;
    for (int round = 0; round < 64; ++round) {
        Submodule next = ideal_colon(cur, f);
        if (submodule_equal(next, cur)) return cur;
        cur = std::move(next);
    }
    throw error("ideal_saturate: no stabilization within 64 rounds");
}

Submodule ideal_saturate_ideal(const Submodule& I, const Submodule& J) {
    check_ideal(I);
    Submodule cur = I;
    for (int round = 0; round < 64; ++round) {
        Submodule next = ideal_colon_ideal(cur, J);
        if (submodule_equal(next, cur)) return cur;
        cur = std::move(next);
    }
    throw error("ideal_saturate_ideal: no stabilization within 64 rounds");
}

bool ideal_is_unit(const Submodule& I) {
    check_ideal(I);
    return ideal_member(I, re_one(*I.ring));
}

RingElem ideal_principal_gen(const Submodule& I) {
    check_ideal(I);
    if (I.gb.empty()) return re_zero();
    // the reduced basis may contain pure group-relation elements; the ideal is
    // witnessed principal only if exactly one basis element remains otherwise.
    // Over group rings we instead require a literal singleton basis.
    DETPSI_CHECK(I.gb.size() == 1, "ideal_principal_gen: reduced basis is not a singleton");
    return re_of(*I.ring, vec_component(I.gb[0], 0));
}

// ---- Lambda-side utilities ----

namespace {

void check_lambda_inputs(const Ring& r, const std::vector<RingElem>& gens) {
    for (const RingElem& g : gens)
        for (const Term& t : g.p)
            DETPSI_CHECK(r.in_lambda(t.m), "expected Lambda elements (no group variables)");
}

// reduced basis of a Lambda-ideal computed inside the polynomial subring
std::vector<Vec> lambda_gb(const Ring& r, const std::vector<RingElem>& gens) {
    check_lambda_inputs(r, gens);
    std::vector<Vec> input;
    for (const RingElem& g : gens)
        if (!g.is_zero()) input.push_back(vec_from_poly(g.p, 0));
    return buchberger(r, std::move(input), r.order(), r.max_basis());
}

}  // namespace

namespace {

// shared group-free base ring with the same coefficient field and order
RingPtr lambda_base_ring(const Ring& r) {
    static std::mutex mu;
    static std::map<std::tuple<unsigned, unsigned, std::string>, RingPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(r.q(), r.d(), r.spec().term_order);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    RingSpec sp;
    sp.q = r.q();
    sp.d = r.d();
    sp.group_orders = {};
    sp.term_order = r.spec().term_order;
    RingPtr out = Ring::make(sp);
    cache.emplace(std::move(key), out);
    return out;
}

}  // namespace

std::vector<RingElem> contract_to_lambda(const Submodule& I) {
    check_ideal(I);
    const Ring& r = *I.ring;
    if (r.ngroup() == 0) {
        std::vector<RingElem> out;
        for (const Vec& g : I.gens) {
            RingElem e = re_of(r, vec_component(g, 0));
            if (!e.is_zero()) out.push_back(e);
        }
        return out;
    }
    // R is a free Lambda-module on the group monomials, and the ideal is the
    // Lambda-span of mu * g over group monomials mu and generators g.  The
    // contraction is the intersection of that span with the coordinate line
    // carrying the trivial group monomial.  Module terms compare position
    // first with lower positions leading, so parking the trivial slot at the
    // LAST position makes this an elimination order: a basis element leading
    // there is supported there entirely, and those elements generate the
    // intersection.  One small-rank basis over the group-free base ring, no
    // tagged kernel.  (Elimination-order bases over the group ring itself
    // blow up badly; this stays in well-behaved territory.)
    RingPtr lr = lambda_base_ring(r);
    const Ring& L = *lr;
    unsigned gs = r.group_size();
    std::vector<Vec> cols;
    for (const Vec& g : I.gens) {
        RingElem ge = re_of(r, vec_component(g, 0));
        if (ge.is_zero()) continue;
        for (const Mono& mu : r.group_basis()) {
            RingElem prod = re_mul(r, ge, re_of(r, poly_mono(r, mu, fq_t(1))));
            std::vector<RingElem> comp = lambda_components(r, prod);
            Vec col;
            for (unsigned i = 0; i < gs; ++i) {
                if (comp[i].is_zero()) continue;
                // group-free monomials are shared between the rings and stay
                // sorted under the common order on the base variables
                unsigned pos = (i == 0) ? gs - 1 : i - 1;  // trivial slot last
                col = vec_add(L, col, vec_from_poly(comp[i].p, pos), L.order());
            }
            if (!vec_is_zero(col)) cols.push_back(col);
        }
    }
    Submodule span = make_submodule(lr, gs, std::move(cols));
    std::vector<RingElem> out;
    for (const Vec& k : span.gb) {
        if (k.front().pos != gs - 1) continue;
        out.push_back(re_of(r, vec_component(k, gs - 1)));
    }
    return out;
}

int krull_dim_lambda(const Ring& r, const std::vector<RingElem>& gens) {
    std::vector<Vec> gb = lambda_gb(r, gens);
    std::vector<Mono> lms;
    for (const Vec& g : gb) {
        if (g.front().m.is_one()) return -1;
        lms.push_back(g.front().m);
    }
    unsigned d = r.d();
    int best = -1;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        bool ok = true;
        for (Mono m : lms) {
            bool supported = true;  // every variable of m lies in the mask?
            for (unsigned i = 0; i < d && supported; ++i)
                if (m.exp(i) && !(mask & (1u << i))) supported = false;
            if (supported) ok = false;  // leading monomial inside k[mask]
            if (!ok) break;
        }
        if (ok) best = std::max(best, int(__builtin_popcount(mask)));
    }
    return best;
}

bool lambda_ideal_is_principal(const Ring& r, const std::vector<RingElem>& gens,
                               RingElem* gen_out) {
    std::vector<Vec> gb = lambda_gb(r, gens);
    if (gb.empty()) {
        if (gen_out) *gen_out = re_zero();
        return true;
    }
    if (gb.size() != 1) return false;
    if (gen_out) *gen_out = re_of(r, vec_component(gb[0], 0));
    return true;
}

RingElem lambda_hull_gen(RingPtr ring, const std::vector<RingElem>& gens) {
    const Ring& r = *ring;
    check_lambda_inputs(r, gens);
    RingElem f;
    for (const RingElem& g : gens)
        if (!g.is_zero()) {
            f = g;
            break;
        }
    DETPSI_CHECK(!f.is_zero(), "lambda_hull_gen: zero ideal has no divisorial hull");
    Submodule fI = make_ideal(ring, {f});
    Submodule A = make_ideal(ring, gens);
    Submodule inner = ideal_colon_ideal(fI, A);
    Submodule hull = ideal_colon_ideal(fI, inner);
    RingElem gen;
    bool principal = lambda_ideal_is_principal(r, contract_to_lambda(hull), &gen);
    DETPSI_CHECK(principal, "lambda_hull_gen: divisorial hull not principal");
    return re_monic(r, gen);
}

std::optional<RingElem> divide_exact_ring(RingPtr ring, const RingElem& a, const RingElem& f) {
    DETPSI_CHECK(!f.is_zero(), "divide_exact_ring: division by zero");
    if (a.is_zero()) return re_zero();
    Submodule fI = make_ideal(ring, {f});
    auto cert = member_certificate(fI, vec_from_poly(a.p, 0));
    if (!cert) return std::nullopt;
    return (*cert)[0];
}

}  // namespace detpsi
