#pragma once
// Finitely presented modules over R and the toolkit built on them:
// kernels/cokernels/images of explicit maps, duals, Ext via iterated
// syzygies, exterior powers, bidual maps, torsion / pseudo-null / finite
// parts, Fitting ideals, annihilators, generic rank, and (for d = 2 over
// the plain polynomial base) characteristic ideals.

#include "detpsi/groebner.hpp"

#include <optional>
#include <vector>

namespace detpsi {

// M = R^ngens / rels where rels is a submodule of R^ngens.
// rels.gens holds the presentation columns (module relations only; the
// group-algebra relations are implicit in the ring and are not columns).
struct PresentedModule {
    RingPtr ring;
    unsigned ngens = 0;
    Submodule rels;
};

PresentedModule make_module(RingPtr ring, unsigned ngens, const std::vector<Vec>& rel_gens);
PresentedModule free_module(RingPtr ring, unsigned rank);
PresentedModule zero_module(RingPtr ring);

// Elements of M are vectors in the ambient R^ngens, canonicalized by
// reduction modulo rels.
Vec element_reduce(const PresentedModule& m, const Vec& v);
bool element_is_zero(const PresentedModule& m, const Vec& v);
bool element_equal(const PresentedModule& m, const Vec& a, const Vec& b);
bool is_zero_module(const PresentedModule& m);

// A map M -> N given on generators: columns[j] in R^{N.ngens} is the image
// of e_j. Stored with copies of both endpoints so homs are self-contained.
struct ModuleHom {
    PresentedModule from;
    PresentedModule to;
    std::vector<Vec> columns;
};

// validate = check the map kills every relation of the domain.
ModuleHom make_hom(const PresentedModule& from, const PresentedModule& to,
                   const std::vector<Vec>& columns, bool validate = true);
ModuleHom identity_hom(const PresentedModule& m);
ModuleHom zero_hom(const PresentedModule& from, const PresentedModule& to);
ModuleHom compose_hom(const ModuleHom& g, const ModuleHom& f); // g after f
Vec hom_apply(const ModuleHom& h, const Vec& v);
bool hom_equal(const ModuleHom& a, const ModuleHom& b);

// Subquotient presentation: given generators inside R^{ambient_rank} and a
// denominator submodule T, present (gens + T)/T. incl maps the new module's
// generators back to the ambient vectors.
struct Subquotient {
    PresentedModule module;
    std::vector<Vec> gen_vectors; // in the ambient R^{ambient_rank}
};
Subquotient present_subquotient(RingPtr ring, unsigned ambient_rank,
                                const std::vector<Vec>& gens, const Submodule& denoms);

// Express v in terms of gens modulo denoms: coefficients c with
// v = sum c_j gens[j] (mod denoms), or nullopt if v is not in the span.
std::optional<std::vector<RingElem>> subquotient_coords(const std::vector<Vec>& gens,
                                                        const Submodule& denoms,
                                                        const Vec& v);

struct KernelResult {
    PresentedModule module;
    ModuleHom incl;     // module -> domain of h
    Submodule preimage; // submodule of the domain's ambient (contains rels)
};
KernelResult kernel_hom(const ModuleHom& h);

struct CokernelResult {
    PresentedModule module;
    ModuleHom proj; // codomain of h -> module
};
CokernelResult cokernel_hom(const ModuleHom& h);

struct ImageResult {
    PresentedModule module;
    ModuleHom incl; // module -> codomain of h
};
ImageResult image_hom(const ModuleHom& h);

// M / (S + rels) for a submodule S of the ambient R^{M.ngens}.
PresentedModule quotient_by_submodule(const PresentedModule& m, const Submodule& s);

// Dual Hom(M, R). functionals[k] in R^{M.ngens} is the k-th generator of the
// dual, acting by v |-> sum_j functionals[k][j] * v[j].
struct DualData {
    PresentedModule module;
    std::vector<Vec> functionals;
};
DualData dual_module(const PresentedModule& m);

// Hom(M, R/(f)): functionals with values taken mod f, modulo those with all
// components in (f). Requires f to be a nonzero annihilator-friendly scalar.
DualData dual_over_quotient(const PresentedModule& m, const RingElem& f);

RingElem eval_functional(const Ring& r, const Vec& functional, const Vec& v);

// alpha: M -> M** together with both duals.
struct BidualData {
    DualData dual;
    DualData bidual;
    ModuleHom alpha;
};
BidualData bidual_data(const PresentedModule& m);

// Hom(M, N) as a module; matrices[k] holds the columns of the k-th generator
// viewed as a map M -> N.
struct HomModule {
    PresentedModule module;
    std::vector<std::vector<Vec>> matrices;
};
HomModule hom_module(const PresentedModule& m, const PresentedModule& n);

// Ext^i(M, R) via iterated syzygies of the presentation.
PresentedModule ext_module(const PresentedModule& m, unsigned i);

// Lex-ordered l-subsets of {0..n-1} and the exterior power they index.
std::vector<std::vector<unsigned>> subsets_lex(unsigned n, unsigned l);
PresentedModule exterior_power(const PresentedModule& m, unsigned l);

struct SubmodulePart {
    Submodule sub;          // submodule of the ambient R^{M.ngens}, contains rels
    PresentedModule module; // the part presented on its own generators
    ModuleHom incl;         // part -> M
};
SubmodulePart torsion_submodule(const PresentedModule& m);
SubmodulePart pseudo_null_part(const PresentedModule& m);
SubmodulePart finite_part(const PresentedModule& m);

Submodule fitting_ideal(const PresentedModule& m, int r);
Submodule annihilator(const PresentedModule& m);
std::vector<RingElem> annihilator_lambda(const PresentedModule& m);

// Exact: (0 : I) = 0 over R, via the norm-based zero-divisor test inside
// the colon computation.
bool ideal_contains_nzd(const Submodule& ideal);
// Deterministic sweep for an explicit witness; throws if the ideal provably
// contains one but the sweep budget is exhausted.
std::optional<RingElem> find_nzd_in_ideal(const Submodule& ideal, unsigned budget = 512);

unsigned generic_rank(const PresentedModule& m);
bool is_torsion(const PresentedModule& m);
bool is_pseudo_null(const PresentedModule& m);
bool is_finite(const PresentedModule& m);
// F_q-dimension of a finite module (throws if not finite).
unsigned long long fq_dimension(const PresentedModule& m);

// Characteristic ideal generator for torsion modules over the d = 2 plain
// polynomial base (no group): the divisorial hull of Fitt_0. Monic.
RingElem char_ideal_gen(const PresentedModule& m);

struct DirectSum {
    PresentedModule module;
    ModuleHom incl_left, incl_right;
    ModuleHom proj_left, proj_right;
};
DirectSum direct_sum(const PresentedModule& a, const PresentedModule& b);

// Same underlying group with action twisted through kappa:
// r *_new m = kappa(r) m, presented by applying kappa^{-1} to relations.
PresentedModule twist_module(const PresentedModule& m, const Automorphism& kappa);
Automorphism automorphism_inverse(const RingPtr& ring, const Automorphism& a);

bool is_isomorphism(const ModuleHom& h);
ModuleHom inverse_of_iso(const ModuleHom& h);

// Index of a single generator that generates all of M, if one exists.
std::optional<unsigned> cyclic_generator(const PresentedModule& m);

// num / den with den a non-zero-divisor; equality by cross-multiplication.
struct FractionalIdeal {
    Submodule num;
    RingElem den;
};
FractionalIdeal make_fractional(const Submodule& num, const RingElem& den);
FractionalIdeal fractional_of_ideal(const Submodule& ideal);
bool fractional_equal(const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal fractional_mul(const FractionalIdeal& a, const FractionalIdeal& b);

// The intersection-with-wedge map alpha^l : wedge^l M -> (wedge^l M*)*.
// Columns of map are indexed by lex l-subsets J of M's generators; the value
// on the functional-wedge phi_{k_1} ^ .. ^ phi_{k_l} is det(phi_{k_i}(e_{j_t})).
struct ExteriorBidual {
    PresentedModule source;  // wedge^l M
    PresentedModule target;  // (wedge^l M*)*
    ModuleHom map;           // alpha^l
    DualData dual;           // M*
    DualData wedge_dual;     // (wedge^l M*)* with its functionals
};
ExteriorBidual exterior_bidual(const PresentedModule& m, unsigned l);

} // namespace detpsi
