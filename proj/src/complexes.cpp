#include "detpsi/complexes.hpp"

#include <algorithm>
#include <cstdint>

namespace detpsi {

namespace {

Vec vec_unit(std::uint32_t pos) { return Vec{VTerm{pos, Mono::one(), 1}}; }

Vec vec_negate(const Ring& r, Vec v) {
    for (VTerm& t : v) t.c = r.fq().neg(t.c);
    return v;
}

Vec vec_shift(const Vec& v, std::uint32_t delta) {
    Vec out;
    out.reserve(v.size());
    for (const VTerm& t : v) out.push_back(VTerm{t.pos + delta, t.m, t.c});
    return out;
}

Vec vec_from_coords(const Ring& r, const std::vector<RingElem>& coords) {
    std::vector<VTerm> terms;
    for (std::uint32_t j = 0; j < coords.size(); ++j)
        for (const Term& t : coords[j].p) terms.push_back(VTerm{j, t.m, t.c});
    return vec_normalize(r, std::move(terms), true, r.order());
}

Vec vec_apply_aut(const Ring& r, const Automorphism& s, const Vec& v) {
    std::vector<VTerm> terms;
    unsigned rb = vec_rank_bound(v);
    for (std::uint32_t p = 0; p < rb; ++p) {
        Poly comp = vec_component(v, p);
        if (poly_is_zero(comp)) continue;
        RingElem img = automorphism_apply(r, s, re_of(r, comp));
        for (const Term& t : img.p) terms.push_back(VTerm{p, t.m, t.c});
    }
    return vec_normalize(r, std::move(terms), true, r.order());
}

// entry (row, col) of a column matrix as a folded ring element
RingElem mat_entry(const Ring& r, const std::vector<Vec>& cols, unsigned row, unsigned col) {
    return re_of(r, vec_component(cols[col], row));
}

RingElem submatrix_det(const Ring& r, const std::vector<Vec>& cols,
                       const std::vector<unsigned>& rows, const std::vector<unsigned>& colsel) {
    std::size_t s = rows.size();
    DETPSI_CHECK(colsel.size() == s, "submatrix_det: shape mismatch");
    std::vector<std::vector<RingElem>> mat(s, std::vector<RingElem>(s));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) mat[i][j] = mat_entry(r, cols, rows[i], colsel[j]);
    return det_ring(r, mat);
}

} // namespace

unsigned FreeComplex::rank_at(int i) const {
    if (i < lo || i > hi()) return 0;
    return ranks[std::size_t(i - lo)];
}

const std::vector<Vec>* FreeComplex::diff_at(int i) const {
    if (i < lo || i + 1 > hi()) return nullptr;
    return &diffs[std::size_t(i - lo)];
}

Vec matvec(const Ring& r, const std::vector<Vec>& cols, const Vec& v) {
    Vec out;
    std::uint32_t last = UINT32_MAX;
    for (const VTerm& t : v) {
        if (t.pos == last) continue;
        last = t.pos;
        DETPSI_CHECK(t.pos < cols.size(), "matvec: position exceeds column count");
        Poly comp = vec_component(v, t.pos);
        out = vec_add(r, out, vec_mul_poly(r, cols[t.pos], comp, r.order()), r.order());
    }
    return out;
}

FreeComplex make_complex(RingPtr ring, int lo, std::vector<unsigned> ranks,
                         std::vector<std::vector<Vec>> diffs) {
    const Ring& r = *ring;
    DETPSI_CHECK(ranks.empty() ? diffs.empty() : diffs.size() + 1 == ranks.size(),
                 "make_complex: need one differential between consecutive degrees");
    for (std::size_t k = 0; k < diffs.size(); ++k) {
        DETPSI_CHECK(diffs[k].size() == ranks[k],
                     "make_complex: column count does not match the source rank");
        for (Vec& col : diffs[k]) {
            col = vec_fold(r, col, r.order());
            DETPSI_CHECK(vec_rank_bound(col) <= ranks[k + 1],
                         "make_complex: column exceeds the target rank");
        }
    }
    for (std::size_t k = 0; k + 1 < diffs.size(); ++k)
        for (const Vec& col : diffs[k])
            DETPSI_CHECK(vec_is_zero(matvec(r, diffs[k + 1], col)),
                         "make_complex: d o d != 0");
    return FreeComplex{std::move(ring), lo, std::move(ranks), std::move(diffs)};
}

FreeComplex trim_complex(const FreeComplex& c) {
    std::size_t a = 0, b = c.ranks.size();
    while (a < b && c.ranks[a] == 0) ++a;
    while (b > a && c.ranks[b - 1] == 0) --b;
    FreeComplex out;
    out.ring = c.ring;
    out.lo = c.lo + int(a);
    out.ranks.assign(c.ranks.begin() + a, c.ranks.begin() + b);
    if (b > a)
        out.diffs.assign(c.diffs.begin() + a, c.diffs.begin() + (b - 1));
    return out;
}

ChainMap make_chain_map(const FreeComplex& from, const FreeComplex& to,
                        std::vector<std::vector<Vec>> mats) {
    DETPSI_CHECK(from.ring == to.ring, "make_chain_map: complexes over different rings");
    const Ring& r = *from.ring;
    DETPSI_CHECK(mats.size() == from.ranks.size(),
                 "make_chain_map: one matrix per occupied degree of the source");
    for (std::size_t k = 0; k < mats.size(); ++k) {
        int i = from.lo + int(k);
        DETPSI_CHECK(mats[k].size() == from.ranks[k],
                     "make_chain_map: column count does not match the source rank");
        for (Vec& col : mats[k]) {
            col = vec_fold(r, col, r.order());
            DETPSI_CHECK(vec_rank_bound(col) <= to.rank_at(i),
                         "make_chain_map: column exceeds the target rank");
        }
    }
    for (std::size_t k = 0; k + 1 < mats.size(); ++k) {
        int i = from.lo + int(k);
        const std::vector<Vec>& dfrom = from.diffs[k];
        const std::vector<Vec>* dto = to.diff_at(i);
        for (std::size_t j = 0; j < dfrom.size(); ++j) {
            Vec lhs = matvec(r, mats[k + 1], dfrom[j]);
            Vec rhs = dto ? matvec(r, *dto, mats[k][j]) : Vec{};
            DETPSI_CHECK(vec_is_zero(vec_add(r, lhs, vec_negate(r, rhs), r.order())),
                         "make_chain_map: squares do not commute");
        }
    }
    ChainMap out;
    out.from = from;
    out.to = to;
    out.mats = std::move(mats);
    return out;
}

ChainMap identity_chain_map(const FreeComplex& c) {
    std::vector<std::vector<Vec>> mats(c.ranks.size());
    for (std::size_t k = 0; k < c.ranks.size(); ++k)
        for (std::uint32_t j = 0; j < c.ranks[k]; ++j) mats[k].push_back(vec_unit(j));
    return make_chain_map(c, c, std::move(mats));
}

ChainMap zero_chain_map(const FreeComplex& from, const FreeComplex& to) {
    std::vector<std::vector<Vec>> mats(from.ranks.size());
    for (std::size_t k = 0; k < from.ranks.size(); ++k) mats[k].assign(from.ranks[k], Vec{});
    return make_chain_map(from, to, std::move(mats));
}

FreeComplex shift_complex(const FreeComplex& c, int k) {
    FreeComplex out = c;
    out.lo = c.lo - k;
    if (k % 2 != 0)
        for (auto& cols : out.diffs)
            for (Vec& col : cols) col = vec_negate(*c.ring, col);
    return out;
}

FreeComplex cone_complex(const ChainMap& f) { return cone_triangle(f).cone; }

ConeTriangle cone_triangle(const ChainMap& f) {
    const FreeComplex& A = f.from;
    const FreeComplex& B = f.to;
    const Ring& r = *A.ring;
    if (A.ranks.empty() && B.ranks.empty()) {
        ConeTriangle out;
        out.cone = FreeComplex{A.ring, 0, {}, {}};
        out.incl = make_chain_map(B, out.cone, {});
        out.proj = make_chain_map(out.cone, shift_complex(A, 1), {});
        return out;
    }
    int lo = std::min(A.lo - 1, B.lo);
    int hi = std::max(A.hi() - 1, B.hi());
    std::vector<unsigned> ranks;
    for (int i = lo; i <= hi; ++i) ranks.push_back(A.rank_at(i + 1) + B.rank_at(i));
    std::vector<std::vector<Vec>> diffs;
    for (int i = lo; i < hi; ++i) {
        unsigned aoff = A.rank_at(i + 2); // offset of the B-part in cone^{i+1}
        std::vector<Vec> cols;
        const std::vector<Vec>* da = A.diff_at(i + 1);
        for (std::uint32_t j = 0; j < A.rank_at(i + 1); ++j) {
            Vec col = da ? vec_negate(r, (*da)[j]) : Vec{};
            int mk = i + 1 - A.lo;
            const Vec& fc = f.mats[std::size_t(mk)][j];
            col = vec_add(r, col, vec_shift(fc, aoff), r.order());
            cols.push_back(std::move(col));
        }
        const std::vector<Vec>* db = B.diff_at(i);
        for (std::uint32_t j = 0; j < B.rank_at(i); ++j)
            cols.push_back(db ? vec_shift((*db)[j], aoff) : Vec{});
        diffs.push_back(std::move(cols));
    }
    ConeTriangle out;
    out.cone = make_complex(A.ring, lo, std::move(ranks), std::move(diffs));

    std::vector<std::vector<Vec>> incl_mats(B.ranks.size());
    for (std::size_t k = 0; k < B.ranks.size(); ++k) {
        int i = B.lo + int(k);
        unsigned aoff = A.rank_at(i + 1);
        for (std::uint32_t j = 0; j < B.ranks[k]; ++j)
            incl_mats[k].push_back(vec_unit(aoff + j));
    }
    out.incl = make_chain_map(B, out.cone, std::move(incl_mats));

    FreeComplex a1 = shift_complex(A, 1);
    std::vector<std::vector<Vec>> proj_mats(out.cone.ranks.size());
    for (std::size_t k = 0; k < out.cone.ranks.size(); ++k) {
        int i = lo + int(k);
        unsigned na = A.rank_at(i + 1), nb = B.rank_at(i);
        for (std::uint32_t j = 0; j < na; ++j) proj_mats[k].push_back(vec_unit(j));
        for (std::uint32_t j = 0; j < nb; ++j) proj_mats[k].push_back(Vec{});
    }
    out.proj = make_chain_map(out.cone, a1, std::move(proj_mats));
    return out;
}

PresentedModule cohomology(const FreeComplex& c, int i) {
    if (i < c.lo || i > c.hi()) return zero_module(c.ring);
    unsigned n = c.rank_at(i);
    const std::vector<Vec>* d = c.diff_at(i);
    Submodule z = d ? kernel_of_matrix(c.ring, *d, c.rank_at(i + 1), {})
                    : kernel_of_matrix(c.ring, std::vector<Vec>(n), 0, {});
    const std::vector<Vec>* dprev = c.diff_at(i - 1);
    Submodule im = dprev ? make_submodule(c.ring, n, *dprev) : make_submodule(c.ring, n, {});
    return present_subquotient(c.ring, n, z.gens, im).module;
}

long long euler_char(const FreeComplex& c) {
    long long acc = 0;
    for (std::size_t k = 0; k < c.ranks.size(); ++k) {
        int i = c.lo + int(k);
        bool pos = ((i % 2) + 2) % 2 == 1; // (-1)^(i-1): odd degrees count +
        acc += pos ? (long long)c.ranks[k] : -(long long)c.ranks[k];
    }
    return acc;
}

FreeComplex dual_complex(const FreeComplex& c, const Automorphism* twist) {
    const Ring& r = *c.ring;
    FreeComplex out;
    out.ring = c.ring;
    if (c.ranks.empty()) {
        out.lo = -c.lo;
        return out;
    }
    out.lo = -c.hi();
    out.ranks.assign(c.ranks.rbegin(), c.ranks.rend());
    for (std::size_t k = 0; k + 1 < out.ranks.size(); ++k) {
        std::size_t idx = c.diffs.size() - 1 - k;
        std::vector<Vec> cols = transpose_columns(r, c.diffs[idx], c.ranks[idx + 1]);
        if (twist)
            for (Vec& col : cols) col = vec_apply_aut(r, *twist, col);
        out.diffs.push_back(std::move(cols));
    }
    return make_complex(out.ring, out.lo, std::move(out.ranks), std::move(out.diffs));
}

PsiResult psi_map(const FreeComplex& cin, unsigned l) {
    const Ring& r = *cin.ring;
    RingPtr ring = cin.ring;
    FreeComplex c = trim_complex(cin);
    DETPSI_CHECK(!c.ranks.empty(), "psi_map: complex has no cohomology to map");
    PresentedModule free1 = free_module(ring, 1);
    PsiResult out;

    if (c.lo >= 0 && c.hi() <= 1) {
        out.mode = PsiMode::strict;
        unsigned a = c.rank_at(0), n = c.rank_at(1);
        DETPSI_CHECK(n == a + l, "psi_map: Euler characteristic does not match l");
        const std::vector<Vec>* dp = c.diff_at(0);
        std::vector<Vec> acols = dp ? *dp : std::vector<Vec>{};
        if (a > 0)
            DETPSI_CHECK(kernel_of_matrix(ring, acols, n, {}).is_zero(),
                         "psi_map: H^0 must vanish in strict mode");
        out.h1 = make_module(ring, n, acols);
        PresentedModule wedge = exterior_power(out.h1, l);
        auto jsubs = subsets_lex(n, l);
        std::vector<Vec> cols;
        std::vector<RingElem> values;
        for (const auto& J : jsubs) {
            std::vector<std::vector<RingElem>> mat(n, std::vector<RingElem>(n));
            for (unsigned row = 0; row < n; ++row) {
                for (unsigned col = 0; col < a; ++col) mat[row][col] = mat_entry(r, acols, row, col);
                for (unsigned t = 0; t < l; ++t)
                    mat[row][a + t] = (row == J[t]) ? re_one(r) : re_zero();
            }
            RingElem val = det_ring(r, mat);
            values.push_back(val);
            cols.push_back(vec_from_poly(val.p, 0));
        }
        out.psi = make_hom(wedge, free1, cols, true);
        out.image = make_ideal(ring, values);
        // generalized Laplace: the Psi values are the a x a minors of alpha up
        // to sign, so the two ideals coincide
        std::vector<RingElem> minors;
        for (const auto& rows : subsets_lex(n, a)) {
            std::vector<unsigned> colsel(a);
            for (unsigned j = 0; j < a; ++j) colsel[j] = j;
            minors.push_back(submatrix_det(r, acols, rows, colsel));
        }
        out.minors = make_ideal(ring, minors);
        DETPSI_CHECK(submodule_equal(out.image, out.minors),
                     "psi_map: determinant values disagree with the maximal minors");
    } else if (c.lo >= 1 && c.hi() <= 2) {
        out.mode = PsiMode::kernel_side;
        unsigned m = c.rank_at(1);
        DETPSI_CHECK(c.rank_at(2) == 1, "psi_map: kernel-side mode needs a rank-1 degree-2 term");
        DETPSI_CHECK(m == l + 1, "psi_map: Euler characteristic does not match l");
        const std::vector<Vec>& bcols = *c.diff_at(1);
        PresentedModule h2 = make_module(ring, 1, bcols);
        DETPSI_CHECK(is_pseudo_null(h2), "psi_map: H^2 must be pseudo-null in kernel-side mode");
        Submodule jideal = make_submodule(ring, 1, bcols);
        auto f = find_nzd_in_ideal(jideal);
        DETPSI_CHECK(f.has_value(), "psi_map: image ideal contains no non-zero-divisor");
        auto wc = subquotient_coords(bcols, make_submodule(ring, 1, {}), vec_from_poly(f->p, 0));
        DETPSI_CHECK(wc.has_value(), "psi_map: no certificate for the image non-zero-divisor");
        Vec w = vec_from_coords(r, *wc);
        Subquotient ksq = present_subquotient(
            ring, m, kernel_of_matrix(ring, bcols, 1, {}).gens, make_submodule(ring, m, {}));
        out.h1 = ksq.module;
        PresentedModule wedge = exterior_power(out.h1, l);
        auto jsubs = subsets_lex(out.h1.ngens, l);
        std::vector<Vec> cols;
        std::vector<RingElem> values;
        for (const auto& J : jsubs) {
            std::vector<std::vector<RingElem>> mat(m, std::vector<RingElem>(m));
            for (unsigned row = 0; row < m; ++row) {
                for (unsigned t = 0; t < l; ++t)
                    mat[row][t] = re_of(r, vec_component(ksq.gen_vectors[J[t]], row));
                mat[row][l] = re_of(r, vec_component(w, row));
            }
            RingElem num = det_ring(r, mat);
            auto val = divide_exact_ring(ring, num, *f);
            DETPSI_CHECK(val.has_value(),
                         "psi_map: determinant not divisible by the image non-zero-divisor");
            values.push_back(*val);
            cols.push_back(vec_from_poly(val->p, 0));
        }
        out.psi = make_hom(wedge, free1, cols, true);
        out.image = make_ideal(ring, values);
        out.minors = out.image;
    } else {
        DETPSI_CHECK(false, "psi_map: amplitude outside [0,1] without a two-term representative");
    }

    KernelResult k = kernel_hom(out.psi);
    out.kernel = k.module;
    out.kernel_pre = k.preimage;
    out.cokernel = cokernel_hom(out.psi).module;
    return out;
}

bool reflexive_hull_detect(const FreeComplex& c, unsigned l) {
    PsiResult p = psi_map(c, l);
    DETPSI_CHECK(p.mode == PsiMode::strict, "reflexive_hull_detect: strict mode required");
    bool coker_pn = is_pseudo_null(p.cokernel);
    bool tor_pn = is_pseudo_null(torsion_submodule(p.h1).module);
    DETPSI_CHECK(coker_pn == tor_pn,
                 "reflexive_hull_detect: cokernel and torsion criteria disagree");
    return coker_pn;
}

BidualDetComparison bidual_det_compare(const FreeComplex& c, unsigned l) {
    RingPtr ring = c.ring;
    const Ring& r = *ring;
    BidualDetComparison out;
    out.psi = psi_map(c, l);
    DETPSI_CHECK(out.psi.mode == PsiMode::strict, "bidual_det_compare: strict mode required");
    DETPSI_CHECK(is_pseudo_null(torsion_submodule(out.psi.h1).module),
                 "bidual_det_compare: torsion part of H^1 must be pseudo-null");
    out.bidual = exterior_bidual(out.psi.h1, l);
    // The intersection module need not arrive with a one-generator
    // presentation; freeness of rank one is certified a posteriori by the
    // is_isomorphism check on the trivialization below.
    PresentedModule free1 = free_module(ring, 1);

    unsigned n = out.psi.h1.ngens;
    unsigned nd = out.bidual.dual.module.ngens;
    auto jsubs = subsets_lex(n, l);
    auto ksubs = subsets_lex(nd, l);
    for (std::size_t ji = 0; ji < jsubs.size(); ++ji) {
        RingElem psi_ref = re_of(r, vec_component(out.psi.psi.columns[ji], 0));
        if (psi_ref.is_zero()) continue;
        for (std::size_t ki = 0; ki < ksubs.size(); ++ki) {
            std::vector<std::vector<RingElem>> mat(l, std::vector<RingElem>(l));
            for (unsigned i = 0; i < l; ++i)
                for (unsigned t = 0; t < l; ++t)
                    mat[i][t] = re_of(
                        r, vec_component(out.bidual.dual.functionals[ksubs[ki][i]], jsubs[ji][t]));
            RingElem d0 = det_ring(r, mat);
            if (!is_non_zero_divisor(r, d0)) continue;
            std::vector<Vec> cols;
            bool ok = true;
            for (std::uint32_t u = 0; u < out.bidual.target.ngens && ok; ++u) {
                Poly comp = vec_component(out.bidual.wedge_dual.functionals[u], std::uint32_t(ki));
                RingElem raw = re_of(r, poly_mul_cover(r, comp, psi_ref.p));
                auto q = divide_exact_ring(ring, raw, d0);
                if (!q) {
                    ok = false;
                    break;
                }
                cols.push_back(vec_from_poly(q->p, 0));
            }
            if (!ok) continue;
            ModuleHom triv;
            try {
                triv = make_hom(out.bidual.target, free1, cols, true);
            } catch (const error&) {
                continue;
            }
            if (!hom_equal(compose_hom(triv, out.bidual.map), out.psi.psi)) continue;
            if (!is_isomorphism(triv)) continue;
            out.triv = triv;
            out.reference_minor = d0;
            return out;
        }
    }
    DETPSI_CHECK(false, "bidual_det_compare: no generic trivialization reference found");
    return out;
}

FractionalIdeal det_trivialization(const FreeComplex& cin) {
    RingPtr ring = cin.ring;
    const Ring& r = *cin.ring;
    FreeComplex c = trim_complex(cin);
    for (int i = c.lo; i <= c.hi(); ++i)
        DETPSI_CHECK(is_torsion(cohomology(c, i)),
                     "det_trivialization: cohomology is not torsion");
    RingElem num = re_one(r), den = re_one(r);
    std::vector<unsigned> scur;
    for (unsigned j = 0; j < c.rank_at(c.lo); ++j) scur.push_back(j);
    for (int i = c.lo; i < c.hi(); ++i) {
        unsigned s = unsigned(scur.size());
        unsigned nrows = c.rank_at(i + 1);
        std::vector<unsigned> tnext;
        if (s > 0) {
            const std::vector<Vec>& cols = *c.diff_at(i);
            bool found = false;
            for (const auto& rows : subsets_lex(nrows, s)) {
                std::vector<unsigned> rowsel(rows.begin(), rows.end());
                RingElem minor = submatrix_det(r, cols, rowsel, scur);
                if (!is_non_zero_divisor(r, minor)) continue;
                bool positive = ((i % 2) + 2) % 2 == 1; // exponent (-1)^(i-1)
                if (positive)
                    num = re_of(r, poly_mul_cover(r, num.p, minor.p));
                else
                    den = re_of(r, poly_mul_cover(r, den.p, minor.p));
                tnext = rowsel;
                found = true;
                break;
            }
            DETPSI_CHECK(found,
                         "det_trivialization: no pivot subset with a non-zero-divisor minor");
        }
        scur.clear();
        std::size_t tpos = 0;
        for (unsigned j = 0; j < nrows; ++j) {
            if (tpos < tnext.size() && tnext[tpos] == j) {
                ++tpos;
                continue;
            }
            scur.push_back(j);
        }
    }
    DETPSI_CHECK(scur.empty(), "det_trivialization: pivot partition left unmatched generators");
    return make_fractional(make_ideal(ring, {num}), den);
}

RingElem l_alg(const FreeComplex& cin) {
    RingPtr ring = cin.ring;
    const Ring& r = *cin.ring;
    FreeComplex c = trim_complex(cin);
    DETPSI_CHECK(!c.ranks.empty() && c.lo >= 1 && c.hi() <= 2,
                 "l_alg: complex must be supported in degrees [1, 2]");
    unsigned m = c.rank_at(1), n = c.rank_at(2);
    DETPSI_CHECK(m > 0 && n > 0, "l_alg: both degrees must be occupied");
    const std::vector<Vec>& bcols = *c.diff_at(1);
    DETPSI_CHECK(kernel_of_matrix(ring, bcols, n, {}).is_zero(), "l_alg: H^1 must vanish");
    DETPSI_CHECK(m == n, "l_alg: cohomology cannot be torsion for a non-square differential");
    std::vector<unsigned> all(m);
    for (unsigned j = 0; j < m; ++j) all[j] = j;
    RingElem det = submatrix_det(r, bcols, all, all);
    DETPSI_CHECK(is_non_zero_divisor(r, det), "l_alg: H^2 is not torsion");
    // coherence of the determinant with the degreewise trivialization
    DETPSI_CHECK(fractional_equal(det_trivialization(c), fractional_of_ideal(make_ideal(ring, {det}))),
                 "l_alg: determinant disagrees with the trivialization");
    return re_monic(r, det);
}

} // namespace detpsi
