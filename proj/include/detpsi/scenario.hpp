#pragma once
// Synthetic verification scenarios and suites.
//
// A Scenario holds a list of places (each with a local two-term complex), a
// global two-term complex C_U, connecting columns u_j into C_U, and the
// degree-l comparison sets T_1..T_n.  The verifiers machine-check, with
// membership-test exactness oracles, the composite statements built from
// these objects: the determinant-line comparison diagram and its cokernel
// identification, the global four-term snake sequence, localized verdicts at
// monomial primes, length additivity at height-2 primes, the l = 1 bidual-row
// sequence, and the Fitting-ideal identities suite (dual Fitting equality,
// double duality, randomized presentation repair, char * Fitt(E^2) = Fitt).
//
// Everything is deterministic in (seed, params): identical inputs produce
// identical reports, including all detail strings.

#include "detpsi/localprobe.hpp"

#include <cstdint>
#include <string>

namespace detpsi {

// Deterministic 64-bit generator (splitmix64), used for all sampling so that
// reports are reproducible across platforms.
struct SplitMix64 {
    std::uint64_t state = 0;
    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}
    std::uint64_t next();
    std::uint64_t below(std::uint64_t n);  // uniform over [0, n), n >= 1
};

struct ScenarioParams {
    unsigned q = 3;
    unsigned d = 1;
    std::vector<unsigned> group_orders;
    unsigned n = 2;                  // number of comparison slots T_1..T_n
    std::vector<unsigned> degs;      // place degrees; one place per entry
    unsigned max_resample = 200;     // rejection budget per condition
    unsigned terms_per_entry = 3;    // sparsity of random matrix entries
    unsigned max_entry_degree = 2;
};

// One place: an ideal J spanned by deg + 1 elements and its local complex
// L = [R^{deg+1} --row(J)--> R] in degrees 1, 2, with H^1(L) torsion-free of
// generic rank deg.  The generator pool is {x_1..x_d, t_k - 1} (repeats
// allowed); for d >= 2 this makes R/J a codimension >= 2 quotient.  Over a
// one-variable base a nonzero finite R/J obstructs the slot comparison map
// (its determinant ratios acquire zero-divisor denominators), so for d = 1
// every place appearing in some comparison set receives one unit generator
// (t_1, or 1 + x_1 when the group is trivial), making J the unit ideal and
// H^2(L) = 0; places outside every comparison set keep the plain pool and a
// finite nonzero R/J.
struct LocalDatum {
    unsigned index = 0;
    unsigned deg = 1;
    std::vector<RingElem> j_gens;
    FreeComplex complex_l;
};

struct Scenario {
    RingPtr ring;
    ScenarioParams params;
    std::uint64_t seed = 0;
    unsigned l = 0;  // sum of place degrees - d
    std::vector<LocalDatum> places;
    FreeComplex c_u;                            // [R^m --A--> R^{m+l}], degrees 1, 2
    std::vector<std::vector<Vec>> u_cols;       // per place: columns of u^2 : R^{r_j} -> R^{m+l}
    std::vector<std::vector<unsigned>> t_sets;  // n slots; each a place-index set of total degree l
    Automorphism kappa;                         // group inversion (an involution)
    unsigned resamples_used = 0;

    // L_T = direct sum of the member complexes, in degrees 1, 2 (empty set ->
    // empty complex).
    FreeComplex local_sum(const std::vector<unsigned>& t_set) const;
    // u_T : L_T[-1] -> C_U assembled from the member u-columns.
    ChainMap connecting_map(const std::vector<unsigned>& t_set) const;
    // cone(u_T); equals c_u when the set is empty.  Always square between
    // degrees 1 and 2.
    FreeComplex middle(const std::vector<unsigned>& t_set) const;
};

// Deterministic in (seed, params).  Samples C_U and the u-columns under
// rejection until: ker(A) = 0; every T-set's middle complex has a
// non-zero-divisor determinant (equivalently H^1 = 0 and H^2 torsion);
// every R/J_j has codimension >= 2 when d >= 2, while for d = 1 it is zero
// at places inside comparison sets and finite at the rest; and the slot
// comparison map exists at every singleton comparison set.  Errors when the
// budget is exhausted, with per-condition failure counts.
Scenario generate_scenario(std::uint64_t seed, const ScenarioParams& params);

enum class Verdict { pass, fail, hypothesis_not_met };
std::string verdict_name(Verdict v);

struct CheckResult {
    std::string check;
    Verdict verdict = Verdict::pass;
    std::string detail;  // deterministic: ideals, witnesses, counts
};

struct VerificationReport {
    std::string suite;
    std::string config;  // deterministic one-line echo of ring/seed/params
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool all_pass() const;  // no fail rows (hypothesis_not_met allowed)
    unsigned count(Verdict v) const;
    void add(const std::string& check, bool ok, const std::string& detail = "");
    void add(const std::string& check, Verdict v, const std::string& detail = "");
};

// Samples `count` strict two-term complexes over the given ring and checks,
// per sample: Ker(Psi) equals the wedge-torsion computed independently;
// Coker(Psi) is R/Fitt(E^1(H^1)) with the Ext side computed by syzygies; the
// localized consistency report at every monomial prime of height <= 2 (with
// bijectivity wherever the hypotheses hold); and the reflexive-hull detection
// agreeing with pseudo-nullity of the H^1 torsion.
VerificationReport verify_psi_suite(std::uint64_t seed, unsigned count, const RingSpec& spec);

// The determinant-line comparison at every slot of the scenario plus the
// global four-term sequence and localized verdicts at q:
//  (a) one unit per slot makes the Psi squares commute (rigid across all
//      wedge generators),
//  (b) Coker(row of unit-scaled L-generators) is cyclic with Fitting ideal
//      (L_1..L_n),
//  (c) the four-term sequence 0 -> Coker(Ker f2 -> Ker f3) -> W ->
//      R/(L_1..L_n) -> Coker(f3) -> 0 is exact by membership oracles,
//  (d) at q, when every in-play place satisfies the local projective-dimension
//      probe (<= 2) and twisted local vanishing: per-slot Psi cokernels
//      vanish locally, the snake corner vanishes locally, and the target
//      ideal (im Psi-bar + sum L_i) agrees locally with the twisted
//      Fitt_0(E^1(H^2(C_U))),
//  (e) when d = 2, no group, and q of height 2: exact length additivity
//      len_q(R/sum L) + len_q(corner) = len_q(W) + len_q(Coker f3)
//      (the corner term vanishes at hypothesis-met primes).
VerificationReport verify_main_sequence(const Scenario& s, const MonomialPrime& q);

// Length additivity of (e) swept over every height-2 monomial prime
// (d = 2, no group).
VerificationReport verify_chern_additivity(const Scenario& s);

// The l = 1 bidual-row diagram: rows 0 -> D -> D** -> 0 (local side; the
// kernel modules are second syzygies, so reflexive) and the four/five-term
// row of H^2(C_U) whose outer terms are E^1/E^2 of H^2 of the dual complex;
// vertical maps f1 (connecting), f2 (bidual functor).  Checks: the
// pseudo-nullity hypothesis on H^2 of the dual complex (finiteness when
// d = 1); the torsion-freeness equivalence H^2(C_U)_tor = 0 <=> hypothesis;
// row exactness and square commutativity; Coker(f2) cyclic with annihilator
// exactly (L_1, L_2); exactness of 0 -> A -> R/(L_1, L_2) -> E^2(B)^kappa
// -> 0 where A = Coker(f1) and B = H^2(dual of C_U) (for d = 1 the kernel
// corner is allowed to be a nonzero finite module and is reported); the
// finite part of A cyclic or zero.
VerificationReport verify_l1_sequence(const Scenario& s);

// Fitting-ideal identities on sampled modules:
//  (A.1) P = coker of a square matrix with non-zero-divisor determinant:
//        Fitt(E^1(P)) = Fitt(P) = (det), with E^1 computed both by the
//        transpose resolution and by the syzygy engine, and the double-dual
//        map E^1(E^1(P)) -> P an isomorphism;
//  (A.2) M a full-codimension quotient with projective dimension <= 2
//        (regular-sequence quotients and direct sums): Fitt(E^2(M)) =
//        Fitt(M) and E^2(E^2(M)) ~ M via the constructed map;
//  (A.3) randomized presentation repair [f I_n; H + f X]: sample X over the
//        polynomial base, scale until every square minor of H + f X has
//        nonzero norm; reports round counts, budget exhaustion is a report
//        entry;
//  (A.4) d = 2 base only: Fitt(M) = char(M) * Fitt(E^2(M)) on random torsion
//        modules, plus the multiplicativity Fitt(M) =
//        Fitt(M / M_codim2) * Fitt(M_codim2).
VerificationReport appendix_suite(std::uint64_t seed, unsigned count, const RingSpec& spec);

// The trivial-action comparison module R/(t_1 - 1, .., t_g - 1, x_1, .., x_d)
// used as the rank-one reference corner in l = 1 reports.
PresentedModule trivial_action_module(RingPtr ring);

// wedge^l of a hom on chosen generator matrices: column J of the result is
// sum_K det(mat[K, J]) e_K over lex K.  mat is given by columns.
std::vector<Vec> wedge_columns(const Ring& r, const std::vector<Vec>& cols, unsigned nrows,
                               unsigned l);

}  // namespace detpsi
