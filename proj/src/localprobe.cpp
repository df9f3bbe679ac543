#include "detpsi/localprobe.hpp"

#include <algorithm>
#include <string>

namespace detpsi {

MonomialPrime make_monomial_prime(const Ring& r, std::vector<unsigned> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (unsigned v : vars)
        DETPSI_CHECK(v < r.spec().d, "monomial prime: index is not a polynomial variable");
    return MonomialPrime{std::move(vars)};
}

std::vector<MonomialPrime> monomial_primes(const Ring& r, unsigned max_height) {
    unsigned d = r.spec().d;
    std::vector<MonomialPrime> out;
    for (unsigned h = 0; h <= max_height && h <= d; ++h)
        for (const auto& sub : subsets_lex(d, h)) out.push_back(MonomialPrime{sub});
    return out;
}

std::string prime_to_string(const Ring& r, const MonomialPrime& q) {
    if (q.vars.empty()) return "(0)";
    std::string s = "(";
    for (std::size_t i = 0; i < q.vars.size(); ++i) {
        if (i) s += ",";
        s += r.var_name(q.vars[i]);
    }
    return s + ")";
}

bool lambda_ideal_outside_prime(const Ring& r, const std::vector<RingElem>& gens,
                                const MonomialPrime& q) {
    unsigned d = r.spec().d, n = r.nvars();
    for (const RingElem& g : gens) {
        for (const Term& t : g.p) {
            for (unsigned i = d; i < n; ++i)
                DETPSI_CHECK(t.m.exp(i) == 0, "lambda-side prime test on a group element");
            bool avoids = true;
            for (unsigned v : q.vars)
                if (t.m.exp(v) != 0) { avoids = false; break; }
            if (avoids) return true;  // this monomial survives modulo q
        }
    }
    return false;
}

// present the rank-1 submodule I as a module on its own generators
static PresentedModule ideal_as_module(const Submodule& I) {
    return present_subquotient(I.ring, 1, I.gens, make_submodule(I.ring, 1, {})).module;
}

bool ideal_locally_unit(const Submodule& ideal, const MonomialPrime& q) {
    // I_q = R_q  <=>  (R/I)_q = 0  <=>  Ann_Lambda(R/I) = I ∩ Lambda ⊄ q
    return lambda_ideal_outside_prime(*ideal.ring, contract_to_lambda(ideal), q);
}

bool ideal_locally_zero(const Submodule& ideal, const MonomialPrime& q) {
    if (ideal.is_zero()) return true;
    return local_vanishes(ideal_as_module(ideal), q);
}

bool local_vanishes(const PresentedModule& m, const MonomialPrime& q) {
    return lambda_ideal_outside_prime(*m.ring, annihilator_lambda(m), q);
}

bool local_ideal_equal(const FractionalIdeal& a, const FractionalIdeal& b,
                       const MonomialPrime& q) {
    RingPtr ring = a.num.ring;
    Submodule cross_a = ideal_product(a.num, make_ideal(ring, {b.den}));
    Submodule cross_b = ideal_product(b.num, make_ideal(ring, {a.den}));
    if (cross_a.is_zero() && cross_b.is_zero()) return true;
    if (cross_a.is_zero() || cross_b.is_zero())
        return ideal_locally_zero(cross_a.is_zero() ? cross_b : cross_a, q);
    return ideal_locally_unit(ideal_colon_ideal(cross_a, cross_b), q) &&
           ideal_locally_unit(ideal_colon_ideal(cross_b, cross_a), q);
}

bool locally_free_at(const PresentedModule& m, const MonomialPrime& q) {
    // M_q free of rank r  <=>  (Fitt_r)_q = R_q and (Fitt_{r-1})_q = 0;
    // r is the least index whose Fitting ideal is locally the unit ideal
    // (Fitt_{ngens} = (1) guarantees termination).
    for (unsigned r = 0; r <= m.ngens; ++r) {
        if (!ideal_locally_unit(fitting_ideal(m, int(r)), q)) continue;
        if (r == 0) return true;  // M_q = 0
        return ideal_locally_zero(fitting_ideal(m, int(r) - 1), q);
    }
    return false;  // unreachable: the top Fitting ideal is the unit ideal
}

LocalPd local_pd_probe(const PresentedModule& m, const MonomialPrime& q, unsigned bound) {
    DETPSI_CHECK(bound >= 1, "pd probe: bound must be at least 1");
    if (local_vanishes(m, q)) return LocalPd{LocalPd::Kind::vanishes, 0};
    PresentedModule s = m;
    for (unsigned k = 0; k < bound; ++k) {
        if (locally_free_at(s, q)) return LocalPd{LocalPd::Kind::exact, k};
        // step to the syzygy module: ker(R^{ngens} -> S) = rels, presented
        // on its own generators with their syzygies as relations
        s = make_module(s.ring, unsigned(s.rels.gens.size()), syzygies(s.rels).gens);
    }
    return LocalPd{LocalPd::Kind::at_least, bound};
}

// all monomials of total degree deg in the variables q.vars
static void monomials_of_degree(const MonomialPrime& q, unsigned deg,
                                std::size_t idx, Mono acc, std::vector<Mono>& out) {
    if (idx + 1 == q.vars.size()) {
        out.push_back(acc.with_exp(q.vars[idx], deg));
        return;
    }
    for (unsigned e = 0; e <= deg; ++e)
        monomials_of_degree(q, deg - e, idx + 1, acc.with_exp(q.vars[idx], e), out);
}

unsigned long long length_at(const PresentedModule& m, const MonomialPrime& q) {
    RingPtr ring = m.ring;
    DETPSI_CHECK(ring->ngroup() == 0, "length_at: lengths are taken over the plain base");
    DETPSI_CHECK(q.height() >= 1, "length_at: the zero prime has no residue length");
    int dim = krull_dim_lambda(*ring, annihilator_lambda(m));
    DETPSI_CHECK(int(ring->spec().d) - dim >= int(q.height()),
                 "length_at: support has a component of codimension below the height of q");
    if (m.ngens == 0) return 0;

    // layer i is q^i M / q^{i+1} M, spanned by the degree-i monomials in the
    // q-variables times the generators; its localization at q is a vector
    // space over the residue field whose dimension is the least r with
    // Fitt_r(layer) ⊄ q.  Nakayama: a zero layer ends the filtration.
    constexpr unsigned kMaxLayers = 256;
    unsigned long long total = 0;
    for (unsigned i = 0; i < kMaxLayers; ++i) {
        std::vector<Mono> low, high;
        monomials_of_degree(q, i, 0, Mono::one(), low);
        monomials_of_degree(q, i + 1, 0, Mono::one(), high);
        std::vector<Vec> gens, denoms = m.rels.gens;
        for (Mono mo : low)
            for (unsigned j = 0; j < m.ngens; ++j)
                gens.push_back(Vec{VTerm{j, mo, 1}});
        for (Mono mo : high)
            for (unsigned j = 0; j < m.ngens; ++j)
                denoms.push_back(Vec{VTerm{j, mo, 1}});
        PresentedModule layer =
            present_subquotient(ring, m.ngens, gens, make_submodule(ring, m.ngens, denoms))
                .module;
        unsigned r = 0;
        while (!ideal_locally_unit(fitting_ideal(layer, int(r)), q)) ++r;
        if (r == 0) return total;
        total += r;
    }
    DETPSI_CHECK(false, "length_at: filtration did not terminate");
    return 0;
}

PsiLocalReport psi_local_checks(const FreeComplex& c, unsigned l, const MonomialPrime& q) {
    PsiResult psi = psi_map(c, l);
    FreeComplex t = trim_complex(c);
    PsiLocalReport rep;

    // cokernel identification under H^0(C)_q = 0
    PresentedModule h0 = cohomology(t, 0);
    rep.h0_vanishes = is_zero_module(h0) || local_vanishes(h0, q);
    if (rep.h0_vanishes) {
        Submodule target = fitting_ideal(ext_module(psi.h1, 1), 0);
        rep.coker_identified =
            local_ideal_equal(fractional_of_ideal(psi.image), fractional_of_ideal(target), q);
    }

    // bijectivity under local freeness of H^1 (plus locally vanishing top
    // cohomology in kernel mode) and local pd <= 2
    rep.collapses_at_q = locally_free_at(psi.h1, q);
    if (psi.mode == PsiMode::kernel_side && rep.collapses_at_q) {
        PresentedModule top = cohomology(t, t.hi());
        rep.collapses_at_q = is_zero_module(top) || local_vanishes(top, q);
    }
    LocalPd pd = local_pd_probe(psi.h1, q, 3);
    rep.pd_within_two = pd.kind != LocalPd::Kind::at_least;
    rep.psi_bijective = local_vanishes(psi.kernel, q) && local_vanishes(psi.cokernel, q);
    return rep;
}

}  // namespace detpsi
