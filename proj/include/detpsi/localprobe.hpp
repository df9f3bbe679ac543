#pragma once
// Behaviour at monomial primes of the coefficient ring Lambda: vanishing of
// localizations, local equality of fractional ideals, local freeness and a
// projective-dimension probe along the syzygy chain, lengths over Lambda_q
// via the q-adic associated graded, and the localized consistency checks for
// the determinant-line map Psi.

#include "detpsi/complexes.hpp"

namespace detpsi {

// The prime of Lambda generated by the polynomial variables x_i, i in vars
// (strictly increasing, each < d).  The empty set is the zero prime, i.e.
// the generic point.  Height equals vars.size().
struct MonomialPrime {
    std::vector<unsigned> vars;
    unsigned height() const { return unsigned(vars.size()); }
};

// sorts and deduplicates; rejects indices that are not polynomial variables
MonomialPrime make_monomial_prime(const Ring& r, std::vector<unsigned> vars);
// all monomial primes of height <= max_height, by height then lex
std::vector<MonomialPrime> monomial_primes(const Ring& r, unsigned max_height);
std::string prime_to_string(const Ring& r, const MonomialPrime& q);

// some listed element lies outside q, i.e. has a monomial free of every
// q-variable; inputs must be group-variable-free (Lambda elements)
bool lambda_ideal_outside_prime(const Ring& r, const std::vector<RingElem>& gens,
                                const MonomialPrime& q);

// ideal of R localizes to the unit ideal at q: (I ∩ Lambda) ⊄ q
bool ideal_locally_unit(const Submodule& ideal, const MonomialPrime& q);
// ideal of R localizes to zero at q: Ann(I) ∩ Lambda ⊄ q
bool ideal_locally_zero(const Submodule& ideal, const MonomialPrime& q);

// M_q = 0, i.e. Ann_Lambda(M) ⊄ q
bool local_vanishes(const PresentedModule& m, const MonomialPrime& q);

// I_q == J_q inside the total ring of fractions: cross-multiply the
// numerators against the opposite denominators and require both colon
// ideals to localize to the unit ideal
bool local_ideal_equal(const FractionalIdeal& a, const FractionalIdeal& b,
                       const MonomialPrime& q);

// M_q is free over R_q (possibly zero): least r with Fitt_r locally unit
// must have Fitt_{r-1} locally zero
bool locally_free_at(const PresentedModule& m, const MonomialPrime& q);

// projective dimension of M_q over R_q, probed along the syzygy chain:
// vanishes when M_q = 0, exact value pd when some syzygy module S_k with
// k < bound is locally free, otherwise at_least the bound.
struct LocalPd {
    enum class Kind { vanishes, exact, at_least } kind = Kind::exact;
    unsigned pd = 0;  // the value when exact; the probe bound when at_least
};
LocalPd local_pd_probe(const PresentedModule& m, const MonomialPrime& q,
                       unsigned bound = 6);

// length of M_q over Lambda_q, computed layer by layer along the q-adic
// filtration q^i M / q^{i+1} M (each layer is a vector space over the
// residue field, of dimension the least r with Fitt_r(layer) ⊄ q).
// Requires a group-free ring and codim(M) >= height(q); throws otherwise.
unsigned long long length_at(const PresentedModule& m, const MonomialPrime& q);

// Localized consistency checks for psi_map at a monomial prime q.
//   cokernel identification: under H^0(C)_q = 0, the image ideal of Psi and
//     Fitt_0(Ext^1(H^1, R)) generate the same ideal of R_q;
//   bijectivity: when H^1(C) is free at q (and the top cohomology vanishes
//     at q in kernel mode) and the local projective dimension of H^1 is at
//     most 2, Psi_q is bijective (kernel and cokernel both vanish at q).
// consistent() says every statement whose hypothesis holds was verified.
struct PsiLocalReport {
    bool h0_vanishes = false;       // hypothesis for the cokernel statement
    bool coker_identified = false;  // image(Psi)_q == Fitt_0(E^1(H^1))_q
    bool collapses_at_q = false;    // H^1_q free (+ top cohomology gone, kernel mode)
    bool pd_within_two = false;     // local pd probe of H^1 reported <= 2
    bool psi_bijective = false;     // Ker(Psi)_q = 0 and Coker(Psi)_q = 0
    bool bijectivity_hypotheses() const { return collapses_at_q && pd_within_two; }
    bool consistent() const {
        return (!h0_vanishes || coker_identified) &&
               (!bijectivity_hypotheses() || psi_bijective);
    }
};
PsiLocalReport psi_local_checks(const FreeComplex& c, unsigned l, const MonomialPrime& q);

}  // namespace detpsi
