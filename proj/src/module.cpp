#include "detpsi/module.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

namespace detpsi {

namespace {

Vec vec_unit(std::uint32_t pos) { return Vec{VTerm{pos, Mono::one(), 1}}; }

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

std::vector<RingElem> ideal_gens_of(const Submodule& I) {
    DETPSI_CHECK(I.rank == 1, "expected an ideal (rank-1 submodule)");
    std::vector<RingElem> out;
    for (const Vec& g : I.gens) out.push_back(re_of(*I.ring, vec_component(g, 0)));
    return out;
}

Submodule zero_submodule(RingPtr ring, unsigned rank) {
    return make_submodule(std::move(ring), rank, {});
}

void check_same_ring(const PresentedModule& a, const PresentedModule& b) {
    DETPSI_CHECK(a.ring == b.ring, "modules live over different rings");
}

// (T : J) as a submodule of the ambient R^a: all v with g v in T for every
// generator g of the ideal J
Submodule colon_submodule(const PresentedModule& m, const std::vector<RingElem>& jgens) {
    const Ring& r = *m.ring;
    unsigned a = m.ngens;
    unsigned blocks = unsigned(jgens.size());
    std::vector<Vec> cols(a);
    for (std::uint32_t j = 0; j < a; ++j) {
        std::vector<VTerm> terms;
        for (std::uint32_t i = 0; i < blocks; ++i)
            for (const Term& t : jgens[i].p) terms.push_back(VTerm{i * a + j, t.m, t.c});
        cols[j] = vec_normalize(r, std::move(terms), true, r.order());
    }
    std::vector<Vec> trels;
    for (std::uint32_t i = 0; i < blocks; ++i)
        for (const Vec& t : m.rels.gens) trels.push_back(vec_shift(t, i * a));
    return kernel_of_matrix(m.ring, cols, blocks * a, trels);
}

} // namespace

PresentedModule make_module(RingPtr ring, unsigned ngens, const std::vector<Vec>& rel_gens) {
    DETPSI_CHECK(ring != nullptr, "make_module: null ring");
    PresentedModule m;
    m.ring = ring;
    m.ngens = ngens;
    m.rels = make_submodule(std::move(ring), ngens, rel_gens);
    return m;
}

PresentedModule free_module(RingPtr ring, unsigned rank) {
    return make_module(std::move(ring), rank, {});
}

PresentedModule zero_module(RingPtr ring) { return make_module(std::move(ring), 0, {}); }

Vec element_reduce(const PresentedModule& m, const Vec& v) { return submodule_reduce(m.rels, v); }

bool element_is_zero(const PresentedModule& m, const Vec& v) {
    return vec_is_zero(element_reduce(m, v));
}

bool element_equal(const PresentedModule& m, const Vec& a, const Vec& b) {
    return element_reduce(m, a) == element_reduce(m, b);
}

bool is_zero_module(const PresentedModule& m) {
    for (std::uint32_t j = 0; j < m.ngens; ++j)
        if (!submodule_member(m.rels, vec_unit(j))) return false;
    return true;
}

ModuleHom make_hom(const PresentedModule& from, const PresentedModule& to,
                   const std::vector<Vec>& columns, bool validate) {
    check_same_ring(from, to);
    DETPSI_CHECK(columns.size() == from.ngens, "make_hom: one column per domain generator");
    const Ring& r = *from.ring;
    ModuleHom h;
    h.from = from;
    h.to = to;
    for (const Vec& c : columns) {
        Vec f = vec_fold(r, c, r.order());
        DETPSI_CHECK(vec_rank_bound(f) <= to.ngens, "make_hom: column exceeds codomain rank");
        h.columns.push_back(std::move(f));
    }
    if (validate)
        for (const Vec& t : from.rels.gens)
            DETPSI_CHECK(submodule_member(to.rels, hom_apply(h, t)),
                         "make_hom: map does not kill a domain relation");
    return h;
}

ModuleHom identity_hom(const PresentedModule& m) {
    std::vector<Vec> cols;
    for (std::uint32_t j = 0; j < m.ngens; ++j) cols.push_back(vec_unit(j));
    return make_hom(m, m, cols, false);
}

ModuleHom zero_hom(const PresentedModule& from, const PresentedModule& to) {
    return make_hom(from, to, std::vector<Vec>(from.ngens), false);
}

Vec hom_apply(const ModuleHom& h, const Vec& v) {
    const Ring& r = *h.from.ring;
    DETPSI_CHECK(vec_rank_bound(v) <= h.from.ngens, "hom_apply: vector exceeds domain rank");
    Vec acc;
    for (std::uint32_t j = 0; j < h.from.ngens; ++j) {
        Poly c = vec_component(v, j);
        if (poly_is_zero(c) || vec_is_zero(h.columns[j])) continue;
        acc = vec_add(r, acc, vec_mul_poly(r, h.columns[j], c, r.order()), r.order());
    }
    return vec_fold(r, acc, r.order());
}

ModuleHom compose_hom(const ModuleHom& g, const ModuleHom& f) {
    DETPSI_CHECK(f.to.ngens == g.from.ngens && submodule_equal(f.to.rels, g.from.rels),
                 "compose_hom: endpoints do not match");
    std::vector<Vec> cols;
    for (const Vec& c : f.columns) cols.push_back(hom_apply(g, c));
    return make_hom(f.from, g.to, cols, false);
}

bool hom_equal(const ModuleHom& a, const ModuleHom& b) {
    if (a.from.ngens != b.from.ngens || a.to.ngens != b.to.ngens) return false;
    if (!submodule_equal(a.to.rels, b.to.rels)) return false;
    for (std::size_t j = 0; j < a.columns.size(); ++j)
        if (!element_equal(a.to, a.columns[j], b.columns[j])) return false;
    return true;
}

Subquotient present_subquotient(RingPtr ring, unsigned ambient_rank,
                                const std::vector<Vec>& gens, const Submodule& denoms) {
    DETPSI_CHECK(denoms.rank == ambient_rank, "present_subquotient: denominator rank mismatch");
    const Ring& r = *ring;
    Subquotient sq;
    for (const Vec& g : gens) sq.gen_vectors.push_back(vec_fold(r, g, r.order()));
    Submodule rels = kernel_of_matrix(ring, sq.gen_vectors, ambient_rank, denoms.gens);
    sq.module = make_module(std::move(ring), unsigned(gens.size()), rels.gens);
    return sq;
}

std::optional<std::vector<RingElem>> subquotient_coords(const std::vector<Vec>& gens,
                                                        const Submodule& denoms,
                                                        const Vec& v) {
    const Ring& r = *denoms.ring;
    // make_submodule drops zero generators, so track which inputs survive
    std::vector<Vec> combined;
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < gens.size(); ++j) {
        Vec f = vec_fold(r, gens[j], r.order());
        if (!vec_is_zero(f)) {
            combined.push_back(std::move(f));
            kept.push_back(j);
        }
    }
    std::size_t nkept = kept.size();
    for (const Vec& g : denoms.gens) combined.push_back(g);
    Submodule s = make_submodule(denoms.ring, denoms.rank, combined);
    auto cert = member_certificate(s, v);
    if (!cert) return std::nullopt;
    std::vector<RingElem> coords(gens.size());
    for (std::size_t k = 0; k < nkept; ++k) coords[kept[k]] = (*cert)[k];
    return coords;
}

KernelResult kernel_hom(const ModuleHom& h) {
    KernelResult out;
    out.preimage = kernel_of_matrix(h.from.ring, h.columns, h.to.ngens, h.to.rels.gens);
    Subquotient sq = present_subquotient(h.from.ring, h.from.ngens, out.preimage.gens, h.from.rels);
    out.module = sq.module;
    out.incl = make_hom(out.module, h.from, sq.gen_vectors, false);
    return out;
}

CokernelResult cokernel_hom(const ModuleHom& h) {
    CokernelResult out;
    std::vector<Vec> rels = h.to.rels.gens;
    for (const Vec& c : h.columns) rels.push_back(c);
    out.module = make_module(h.to.ring, h.to.ngens, rels);
    std::vector<Vec> id;
    for (std::uint32_t j = 0; j < h.to.ngens; ++j) id.push_back(vec_unit(j));
    out.proj = make_hom(h.to, out.module, id, false);
    return out;
}

ImageResult image_hom(const ModuleHom& h) {
    ImageResult out;
    Subquotient sq = present_subquotient(h.to.ring, h.to.ngens, h.columns, h.to.rels);
    out.module = sq.module;
    out.incl = make_hom(out.module, h.to, sq.gen_vectors, false);
    return out;
}

PresentedModule quotient_by_submodule(const PresentedModule& m, const Submodule& s) {
    DETPSI_CHECK(s.rank == m.ngens, "quotient_by_submodule: rank mismatch");
    std::vector<Vec> rels = m.rels.gens;
    for (const Vec& g : s.gens) rels.push_back(g);
    return make_module(m.ring, m.ngens, rels);
}

DualData dual_module(const PresentedModule& m) {
    const Ring& r = *m.ring;
    std::vector<Vec> rows = transpose_columns(r, m.rels.gens, m.ngens);
    Submodule k = kernel_of_matrix(m.ring, rows, unsigned(m.rels.gens.size()), {});
    DualData out;
    out.functionals = k.gens;
    out.module = present_subquotient(m.ring, m.ngens, k.gens, zero_submodule(m.ring, m.ngens)).module;
    return out;
}

DualData dual_over_quotient(const PresentedModule& m, const RingElem& f) {
    DETPSI_CHECK(!f.is_zero(), "dual_over_quotient: zero modulus");
    const Ring& r = *m.ring;
    unsigned nr = unsigned(m.rels.gens.size());
    std::vector<Vec> rows = transpose_columns(r, m.rels.gens, m.ngens);
    std::vector<Vec> trels;
    for (std::uint32_t i = 0; i < nr; ++i) trels.push_back(vec_from_poly(f.p, i));
    Submodule k = kernel_of_matrix(m.ring, rows, nr, trels);
    std::vector<Vec> triv;
    for (std::uint32_t j = 0; j < m.ngens; ++j) triv.push_back(vec_from_poly(f.p, j));
    DualData out;
    out.functionals = k.gens;
    out.module =
        present_subquotient(m.ring, m.ngens, k.gens, make_submodule(m.ring, m.ngens, triv)).module;
    return out;
}

RingElem eval_functional(const Ring& r, const Vec& functional, const Vec& v) {
    Poly acc;
    std::uint32_t last = UINT32_MAX;
    for (const VTerm& t : v) {
        if (t.pos == last) continue;
        last = t.pos;
        Poly a = vec_component(functional, t.pos);
        if (poly_is_zero(a)) continue;
        acc = poly_add(r, acc, poly_mul_cover(r, a, vec_component(v, t.pos)));
    }
    return re_of(r, acc);
}

BidualData bidual_data(const PresentedModule& m) {
    const Ring& r = *m.ring;
    BidualData out;
    out.dual = dual_module(m);
    out.bidual = dual_module(out.dual.module);
    unsigned k1 = out.dual.module.ngens;
    Submodule none = zero_submodule(m.ring, k1);
    std::vector<Vec> eval = transpose_columns(r, out.dual.functionals, m.ngens);
    std::vector<Vec> cols;
    for (std::uint32_t j = 0; j < m.ngens; ++j) {
        auto coords = subquotient_coords(out.bidual.functionals, none, eval[j]);
        DETPSI_CHECK(coords.has_value(), "bidual_data: evaluation functional not in the bidual");
        cols.push_back(vec_from_coords(r, *coords));
    }
    out.alpha = make_hom(m, out.bidual.module, cols, true);
    return out;
}

HomModule hom_module(const PresentedModule& m, const PresentedModule& n) {
    check_same_ring(m, n);
    const Ring& r = *m.ring;
    unsigned a = m.ngens, b = n.ngens;
    unsigned tm = unsigned(m.rels.gens.size());
    // unknown matrix u flattened as (j, k) -> j*b + k; condition: u applied to
    // each domain relation lands in the codomain relations
    std::vector<Vec> cols(std::size_t(a) * b);
    for (std::uint32_t j = 0; j < a; ++j)
        for (std::uint32_t k = 0; k < b; ++k) {
            std::vector<VTerm> terms;
            for (std::uint32_t i = 0; i < tm; ++i)
                for (const VTerm& t : m.rels.gens[i])
                    if (t.pos == j) terms.push_back(VTerm{i * b + k, t.m, t.c});
            cols[std::size_t(j) * b + k] = vec_normalize(r, std::move(terms), true, r.order());
        }
    std::vector<Vec> trels;
    for (std::uint32_t i = 0; i < tm; ++i)
        for (const Vec& w : n.rels.gens) trels.push_back(vec_shift(w, i * b));
    Submodule k = kernel_of_matrix(m.ring, cols, tm * b, trels);
    std::vector<Vec> triv;
    for (std::uint32_t j = 0; j < a; ++j)
        for (const Vec& w : n.rels.gens) triv.push_back(vec_shift(w, j * b));
    HomModule out;
    out.module = present_subquotient(m.ring, a * b, k.gens,
                                     make_submodule(m.ring, a * b, triv))
                     .module;
    for (const Vec& u : k.gens) {
        std::vector<std::vector<VTerm>> mat(a);
        for (const VTerm& t : u) mat[t.pos / b].push_back(VTerm{t.pos % b, t.m, t.c});
        std::vector<Vec> hcols;
        for (auto& terms : mat) hcols.push_back(vec_normalize(r, std::move(terms), true, r.order()));
        out.matrices.push_back(std::move(hcols));
    }
    return out;
}

PresentedModule ext_module(const PresentedModule& m, unsigned i) {
    DETPSI_CHECK(i <= 6, "ext_module: degree too large");
    const Ring& r = *m.ring;
    // free resolution ... -> R^{rank[2]} -> R^{rank[1]} -> R^{rank[0]} -> M
    std::vector<std::vector<Vec>> diff(i + 2);
    std::vector<unsigned> rank(i + 2);
    rank[0] = m.ngens;
    diff[1] = m.rels.gens;
    rank[1] = unsigned(diff[1].size());
    for (unsigned s = 2; s <= i + 1; ++s) {
        diff[s] = kernel_of_matrix(m.ring, diff[s - 1], rank[s - 2], {}).gens;
        rank[s] = unsigned(diff[s].size());
    }
    std::vector<Vec> tcols = transpose_columns(r, diff[i + 1], rank[i]);
    Submodule ker = kernel_of_matrix(m.ring, tcols, rank[i + 1], {});
    Submodule denoms = i == 0
                           ? zero_submodule(m.ring, rank[0])
                           : make_submodule(m.ring, rank[i], transpose_columns(r, diff[i], rank[i - 1]));
    return present_subquotient(m.ring, rank[i], ker.gens, denoms).module;
}

std::vector<std::vector<unsigned>> subsets_lex(unsigned n, unsigned l) {
    std::vector<std::vector<unsigned>> out;
    if (l > n) return out;
    std::vector<unsigned> cur(l);
    for (unsigned i = 0; i < l; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        if (l == 0) break;
        int i = int(l) - 1;
        while (i >= 0 && cur[i] == n - l + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (unsigned j = unsigned(i) + 1; j < l; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

PresentedModule exterior_power(const PresentedModule& m, unsigned l) {
    const Ring& r = *m.ring;
    unsigned a = m.ngens;
    if (l == 0) return free_module(m.ring, 1);
    if (l > a) return zero_module(m.ring);
    auto subs = subsets_lex(a, l);
    DETPSI_CHECK(a < 32, "exterior_power: ambient rank too large");
    std::vector<unsigned> index(1u << a, UINT32_MAX);
    for (unsigned s = 0; s < subs.size(); ++s) {
        unsigned mask = 0;
        for (unsigned e : subs[s]) mask |= 1u << e;
        index[mask] = s;
    }
    std::vector<Vec> rels;
    for (const Vec& t : m.rels.gens)
        for (const auto& s : subsets_lex(a, l - 1)) {
            unsigned smask = 0;
            for (unsigned e : s) smask |= 1u << e;
            std::vector<VTerm> terms;
            for (const VTerm& vt : t) {
                if (smask & (1u << vt.pos)) continue;
                unsigned c = 0;
                for (unsigned e : s)
                    if (e < vt.pos) ++c;
                fq_t coef = (c % 2) ? r.fq().neg(vt.c) : vt.c;
                terms.push_back(VTerm{index[smask | (1u << vt.pos)], vt.m, coef});
            }
            Vec v = vec_normalize(r, std::move(terms), true, r.order());
            if (!vec_is_zero(v)) rels.push_back(std::move(v));
        }
    return make_module(m.ring, unsigned(subs.size()), rels);
}

SubmodulePart torsion_submodule(const PresentedModule& m) {
    BidualData b = bidual_data(m);
    KernelResult k = kernel_hom(b.alpha);
    return SubmodulePart{k.preimage, k.module, k.incl};
}

SubmodulePart pseudo_null_part(const PresentedModule& m) {
    const Ring& r = *m.ring;
    SubmodulePart tor = torsion_submodule(m);
    if (is_zero_module(tor.module)) return tor;
    const PresentedModule& n = tor.module;
    unsigned an = n.ngens;
    std::vector<RingElem> lam = annihilator_lambda(n);
    DETPSI_CHECK(!lam.empty(), "pseudo_null_part: torsion module with zero base annihilator");
    const RingElem& f = lam.front();
    // kernel of the double Hom(-, R/f) evaluation is exactly the part
    // supported in codimension >= 2
    DualData d1 = dual_over_quotient(n, f);
    DualData d2 = dual_over_quotient(d1.module, f);
    unsigned k1 = d1.module.ngens;
    std::vector<Vec> triv;
    for (std::uint32_t j = 0; j < k1; ++j) triv.push_back(vec_from_poly(f.p, j));
    Submodule denoms = make_submodule(m.ring, k1, triv);
    std::vector<Vec> eval = transpose_columns(r, d1.functionals, an);
    std::vector<Vec> cols;
    for (std::uint32_t s = 0; s < an; ++s) {
        auto coords = subquotient_coords(d2.functionals, denoms, eval[s]);
        DETPSI_CHECK(coords.has_value(), "pseudo_null_part: evaluation not in double dual");
        cols.push_back(vec_from_coords(r, *coords));
    }
    ModuleHom ev = make_hom(n, d2.module, cols, true);
    KernelResult k = kernel_hom(ev);
    std::vector<Vec> gens_in_m;
    for (const Vec& v : k.preimage.gens) gens_in_m.push_back(hom_apply(tor.incl, v));
    SubmodulePart out;
    std::vector<Vec> sub_gens = gens_in_m;
    for (const Vec& g : m.rels.gens) sub_gens.push_back(g);
    out.sub = make_submodule(m.ring, m.ngens, sub_gens);
    Subquotient sq = present_subquotient(m.ring, m.ngens, gens_in_m, m.rels);
    out.module = sq.module;
    out.incl = make_hom(out.module, m, sq.gen_vectors, false);
    return out;
}

SubmodulePart finite_part(const PresentedModule& m) {
    const Ring& r = *m.ring;
    std::vector<RingElem> mx;
    for (unsigned i = 0; i < r.d(); ++i) mx.push_back(re_var(r, i));
    Submodule s = m.rels;
    for (unsigned round = 0;; ++round) {
        DETPSI_CHECK(round < 64, "finite_part: saturation did not stabilize");
        PresentedModule stage = make_module(m.ring, m.ngens, s.gens);
        Submodule next = colon_submodule(stage, mx);
        if (submodule_contains(s, next)) break;
        s = next;
    }
    SubmodulePart out;
    out.sub = s;
    Subquotient sq = present_subquotient(m.ring, m.ngens, s.gens, m.rels);
    out.module = sq.module;
    out.incl = make_hom(out.module, m, sq.gen_vectors, false);
    return out;
}

Submodule fitting_ideal(const PresentedModule& m, int r) {
    const Ring& ring = *m.ring;
    if (r < 0) return make_ideal(m.ring, {});
    unsigned a = m.ngens;
    if (unsigned(r) >= a) return make_ideal(m.ring, {re_one(ring)});
    unsigned k = a - unsigned(r);
    unsigned t = unsigned(m.rels.gens.size());
    if (k > t) return make_ideal(m.ring, {});
    DETPSI_CHECK(k <= 12, "fitting_ideal: minor size exceeds determinant cap");
    std::vector<std::vector<RingElem>> entry(a, std::vector<RingElem>(t));
    for (std::uint32_t j = 0; j < t; ++j)
        for (const VTerm& vt : m.rels.gens[j]) entry[vt.pos][j].p.push_back(Term{vt.m, vt.c});
    auto rowsets = subsets_lex(a, k);
    auto colsets = subsets_lex(t, k);
    DETPSI_CHECK(rowsets.size() * colsets.size() <= 20000, "fitting_ideal: too many minors");
    std::vector<RingElem> gens;
    std::vector<std::vector<RingElem>> sub(k, std::vector<RingElem>(k));
    for (const auto& rows : rowsets)
        for (const auto& cols : colsets) {
            for (unsigned i = 0; i < k; ++i)
                for (unsigned j = 0; j < k; ++j) sub[i][j] = entry[rows[i]][cols[j]];
            RingElem d = det_ring(ring, sub);
            if (!d.is_zero()) gens.push_back(std::move(d));
        }
    return make_ideal(m.ring, gens);
}

Submodule annihilator(const PresentedModule& m) {
    if (m.ngens == 0) return make_ideal(m.ring, {re_one(*m.ring)});
    Submodule acc;
    for (std::uint32_t j = 0; j < m.ngens; ++j) {
        Submodule aj = kernel_of_matrix(m.ring, {vec_unit(j)}, m.ngens, m.rels.gens);
        acc = (j == 0) ? aj : ideal_intersect(acc, aj);
    }
    return acc;
}

std::vector<RingElem> annihilator_lambda(const PresentedModule& m) {
    return contract_to_lambda(annihilator(m));
}

bool ideal_contains_nzd(const Submodule& ideal) {
    return ideal_colon_ideal(make_ideal(ideal.ring, {}), ideal).is_zero();
}

std::optional<RingElem> find_nzd_in_ideal(const Submodule& ideal, unsigned budget) {
    const Ring& r = *ideal.ring;
    std::vector<RingElem> gens = ideal_gens_of(ideal);
    unsigned tried = 0;
    auto attempt = [&](const RingElem& c) -> bool {
        ++tried;
        return is_non_zero_divisor(r, c);
    };
    for (const RingElem& g : gens)
        if (tried < budget && attempt(g)) return g;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            for (fq_t c = 1; c < r.q(); ++c) {
                if (tried >= budget) break;
                RingElem cand = re_add(r, gens[i], re_scale(r, gens[j], c));
                if (attempt(cand)) return cand;
            }
    for (unsigned v = 0; v < r.nvars(); ++v)
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = 0; j < gens.size(); ++j) {
                if (i == j || tried >= budget) continue;
                RingElem cand = re_add(r, re_mul(r, re_var(r, v), gens[i]), gens[j]);
                if (attempt(cand)) return cand;
            }
    DETPSI_CHECK(!ideal_contains_nzd(ideal),
                 "find_nzd_in_ideal: ideal contains a non-zero-divisor but the sweep missed it");
    return std::nullopt;
}

unsigned generic_rank(const PresentedModule& m) {
    for (unsigned r = 0;; ++r) {
        if (r >= m.ngens) return m.ngens;
        if (ideal_contains_nzd(fitting_ideal(m, int(r)))) return r;
    }
}

bool is_torsion(const PresentedModule& m) { return generic_rank(m) == 0; }

bool is_pseudo_null(const PresentedModule& m) {
    const Ring& r = *m.ring;
    return krull_dim_lambda(r, annihilator_lambda(m)) <= int(r.d()) - 2;
}

bool is_finite(const PresentedModule& m) {
    return krull_dim_lambda(*m.ring, annihilator_lambda(m)) <= 0;
}

unsigned long long fq_dimension(const PresentedModule& m) {
    DETPSI_CHECK(is_finite(m), "fq_dimension: module is not finite over the base field");
    const Ring& r = *m.ring;
    // standard monomials of the cover basis (group relations included) count
    // an F_q-basis of the quotient, position by position
    std::vector<std::vector<Mono>> leads(m.ngens);
    for (const Vec& g : m.rels.gb) {
        const VTerm& lt = g.front();
        if (lt.pos < m.ngens) leads[lt.pos].push_back(lt.m);
    }
    unsigned long long total = 0;
    for (std::uint32_t p = 0; p < m.ngens; ++p) {
        std::unordered_set<std::uint64_t> seen;
        std::vector<Mono> queue{Mono::one()};
        seen.insert(Mono::one().e);
        while (!queue.empty()) {
            Mono cur = queue.back();
            queue.pop_back();
            bool reducible = false;
            for (const Mono& lm : leads[p])
                if (mono_divides(lm, cur)) {
                    reducible = true;
                    break;
                }
            if (reducible) continue;
            ++total;
            DETPSI_CHECK(total <= (1ull << 20), "fq_dimension: dimension overflow");
            for (unsigned i = 0; i < r.nvars(); ++i) {
                DETPSI_CHECK(cur.exp(i) < 120, "fq_dimension: exponent bound exceeded");
                Mono nxt = cur.with_exp(i, cur.exp(i) + 1);
                if (seen.insert(nxt.e).second) queue.push_back(nxt);
            }
        }
    }
    return total;
}

RingElem char_ideal_gen(const PresentedModule& m) {
    const Ring& r = *m.ring;
    DETPSI_CHECK(r.ngroup() == 0 && r.d() == 2,
                 "char_ideal_gen: defined over the two-variable base without group");
    DETPSI_CHECK(is_torsion(m), "char_ideal_gen: module must be torsion");
    Submodule f0 = fitting_ideal(m, 0);
    if (ideal_is_unit(f0)) return re_one(r);
    return lambda_hull_gen(m.ring, ideal_gens_of(f0));
}

DirectSum direct_sum(const PresentedModule& a, const PresentedModule& b) {
    check_same_ring(a, b);
    unsigned na = a.ngens, nb = b.ngens;
    std::vector<Vec> rels = a.rels.gens;
    for (const Vec& g : b.rels.gens) rels.push_back(vec_shift(g, na));
    DirectSum out;
    out.module = make_module(a.ring, na + nb, rels);
    std::vector<Vec> la, ra, pa(na + nb), pb(na + nb);
    for (std::uint32_t j = 0; j < na; ++j) {
        la.push_back(vec_unit(j));
        pa[j] = vec_unit(j);
    }
    for (std::uint32_t j = 0; j < nb; ++j) {
        ra.push_back(vec_unit(na + j));
        pb[na + j] = vec_unit(j);
    }
    out.incl_left = make_hom(a, out.module, la, false);
    out.incl_right = make_hom(b, out.module, ra, false);
    out.proj_left = make_hom(out.module, a, pa, false);
    out.proj_right = make_hom(out.module, b, pb, false);
    return out;
}

Automorphism automorphism_inverse(const RingPtr& ring, const Automorphism& a) {
    const Ring& r = *ring;
    Automorphism id = identity_automorphism(r);
    if (automorphism_equal(a, id)) return a;
    Automorphism prev = a;
    Automorphism cur = compose(r, a, a);
    for (unsigned k = 2; !automorphism_equal(cur, id); ++k) {
        DETPSI_CHECK(k < 512, "automorphism_inverse: order bound exceeded");
        prev = cur;
        cur = compose(r, cur, a);
    }
    return prev;
}

PresentedModule twist_module(const PresentedModule& m, const Automorphism& kappa) {
    const Ring& r = *m.ring;
    Automorphism inv = automorphism_inverse(m.ring, kappa);
    std::vector<Vec> rels;
    for (const Vec& g : m.rels.gens) {
        std::vector<VTerm> terms;
        std::uint32_t last = UINT32_MAX;
        for (const VTerm& t : g) {
            if (t.pos == last) continue;
            last = t.pos;
            RingElem img = automorphism_apply(r, inv, re_of(r, vec_component(g, t.pos)));
            for (const Term& it : img.p) terms.push_back(VTerm{t.pos, it.m, it.c});
        }
        rels.push_back(vec_normalize(r, std::move(terms), true, r.order()));
    }
    return make_module(m.ring, m.ngens, rels);
}

bool is_isomorphism(const ModuleHom& h) {
    if (!is_zero_module(kernel_hom(h).module)) return false;
    std::vector<Vec> span = h.columns;
    for (const Vec& g : h.to.rels.gens) span.push_back(g);
    Submodule s = make_submodule(h.to.ring, h.to.ngens, span);
    for (std::uint32_t j = 0; j < h.to.ngens; ++j)
        if (!submodule_member(s, vec_unit(j))) return false;
    return true;
}

ModuleHom inverse_of_iso(const ModuleHom& h) {
    DETPSI_CHECK(is_isomorphism(h), "inverse_of_iso: map is not an isomorphism");
    const Ring& r = *h.from.ring;
    std::vector<Vec> cols;
    for (std::uint32_t j = 0; j < h.to.ngens; ++j) {
        auto coords = subquotient_coords(h.columns, h.to.rels, vec_unit(j));
        DETPSI_CHECK(coords.has_value(), "inverse_of_iso: generator has no preimage");
        cols.push_back(vec_from_coords(r, *coords));
    }
    return make_hom(h.to, h.from, cols, true);
}

std::optional<unsigned> cyclic_generator(const PresentedModule& m) {
    for (std::uint32_t i = 0; i < m.ngens; ++i) {
        std::vector<Vec> span{vec_unit(i)};
        for (const Vec& g : m.rels.gens) span.push_back(g);
        Submodule s = make_submodule(m.ring, m.ngens, span);
        bool all = true;
        for (std::uint32_t j = 0; j < m.ngens && all; ++j)
            if (!submodule_member(s, vec_unit(j))) all = false;
        if (all) return i;
    }
    return std::nullopt;
}

FractionalIdeal make_fractional(const Submodule& num, const RingElem& den) {
    DETPSI_CHECK(num.rank == 1, "make_fractional: numerator must be an ideal");
    DETPSI_CHECK(is_non_zero_divisor(*num.ring, den),
                 "make_fractional: denominator must be a non-zero-divisor");
    return FractionalIdeal{num, den};
}

FractionalIdeal fractional_of_ideal(const Submodule& ideal) {
    DETPSI_CHECK(ideal.rank == 1, "fractional_of_ideal: expected an ideal");
    return FractionalIdeal{ideal, re_one(*ideal.ring)};
}

bool fractional_equal(const FractionalIdeal& a, const FractionalIdeal& b) {
    DETPSI_CHECK(a.num.ring == b.num.ring, "fractional_equal: different rings");
    RingPtr ring = a.num.ring;
    Submodule left = ideal_product(a.num, make_ideal(ring, {b.den}));
    Submodule right = ideal_product(b.num, make_ideal(ring, {a.den}));
    return submodule_equal(left, right);
}

FractionalIdeal fractional_mul(const FractionalIdeal& a, const FractionalIdeal& b) {
    DETPSI_CHECK(a.num.ring == b.num.ring, "fractional_mul: different rings");
    const Ring& r = *a.num.ring;
    return FractionalIdeal{ideal_product(a.num, b.num),
                           re_of(r, poly_mul_cover(r, a.den.p, b.den.p))};
}

ExteriorBidual exterior_bidual(const PresentedModule& m, unsigned l) {
    const Ring& r = *m.ring;
    ExteriorBidual out;
    out.source = exterior_power(m, l);
    out.dual = dual_module(m);
    PresentedModule wedge_dual_src = exterior_power(out.dual.module, l);
    out.wedge_dual = dual_module(wedge_dual_src);
    out.target = out.wedge_dual.module;

    unsigned nd = out.dual.module.ngens;
    auto ksubs = subsets_lex(nd, l);
    auto jsubs = subsets_lex(m.ngens, l);
    Submodule none = make_submodule(m.ring, unsigned(ksubs.size()), {});
    std::vector<Vec> cols;
    cols.reserve(jsubs.size());
    for (const auto& J : jsubs) {
        // value of alpha^l(e_J) on each functional-wedge phi_K
        std::vector<VTerm> terms;
        for (std::uint32_t ki = 0; ki < ksubs.size(); ++ki) {
            std::vector<std::vector<RingElem>> mat(l, std::vector<RingElem>(l));
            for (unsigned i = 0; i < l; ++i)
                for (unsigned t = 0; t < l; ++t)
                    mat[i][t] = re_of(r, vec_component(out.dual.functionals[ksubs[ki][i]], J[t]));
            RingElem d = det_ring(r, mat);
            for (const Term& t : d.p) terms.push_back(VTerm{ki, t.m, t.c});
        }
        Vec value = vec_normalize(r, std::move(terms), true, r.order());
        auto coords = subquotient_coords(out.wedge_dual.functionals, none, value);
        DETPSI_CHECK(coords.has_value(),
                     "exterior_bidual: evaluation wedge not in the double dual");
        cols.push_back(vec_from_coords(r, *coords));
    }
    out.map = make_hom(out.source, out.target, cols, true);
    return out;
}

} // namespace detpsi
