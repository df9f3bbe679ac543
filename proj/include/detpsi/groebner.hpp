#pragma once
// Groebner engine for submodules of R^rank, R = Lambda[G].
//
// All bases are computed in the polynomial cover P = F_q[x.., t..]: the group
// relations t_i^{n_i} - 1 (times each free-module position) are adjoined to
// every generating set, so cover normal forms are automatically folded and
// quotient arithmetic in R comes for free.
//
// Certificates use a single augmentation mechanism: generators are extended
// with unit tags at positions after the real block (lower precedence in the
// position-over-term order). In the reduced basis of the augmented module,
// elements whose real block vanished carry syzygies in their tags, and a full
// reduction of (v, 0) leaves the membership certificate of v in the tag block.
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "detpsi/ring.hpp"

namespace detpsi {

// full normal form of v against basis (leading-term divisibility, all terms)
Vec gb_reduce(const Ring& r, Vec v, const std::vector<Vec>& basis, const OrderCtx& ord);

// Buchberger with deterministic pair selection, no pair criteria, followed by
// interreduction to the unique reduced basis (monic, sorted by leading term)
std::vector<Vec> buchberger(const Ring& r, std::vector<Vec> gens, const OrderCtx& ord,
                            std::size_t max_basis);

// group relation vectors (t_i^{n_i} - 1) e_pos for all pos < rank
std::vector<Vec> relation_vectors(const Ring& r, unsigned rank);

struct Submodule {
    RingPtr ring;
    unsigned rank = 1;
    std::vector<Vec> gens;  // folded generators (zero vectors dropped)
    std::vector<Vec> gb;    // reduced cover basis of <gens> + group relations

    // gens are folded and nonzero, so emptiness characterizes the zero module
    // (gb may still hold pure group-relation elements)
    bool is_zero() const { return gens.empty(); }
    std::size_t ngens() const { return gens.size(); }

    struct CertData {
        std::once_flag once;
        std::vector<Vec> basis;  // reduced basis of the tag-augmented module
    };
    std::shared_ptr<CertData> cert = std::make_shared<CertData>();
};

Submodule make_submodule(RingPtr ring, unsigned rank, std::vector<Vec> gens);
Submodule make_ideal(RingPtr ring, std::vector<RingElem> gens);

// canonical representative of v modulo the submodule (and group relations)
Vec submodule_reduce(const Submodule& s, const Vec& v);
bool submodule_member(const Submodule& s, const Vec& v);
// coefficients c with v = sum c_j gens[j] in R^rank, if v is a member
std::optional<std::vector<RingElem>> member_certificate(const Submodule& s, const Vec& v);
bool submodule_equal(const Submodule& a, const Submodule& b);
bool submodule_contains(const Submodule& outer, const Submodule& inner);

// kernel of R^{#columns} -> R^target_rank / <target_rels>  (columns as Vecs)
Submodule kernel_of_matrix(RingPtr ring, const std::vector<Vec>& columns, unsigned target_rank,
                           const std::vector<Vec>& target_rels);

// syzygies of s.gens as elements of R^rank (group relations included)
Submodule syzygies(const Submodule& s);

// ---- ideal operations (rank-1 submodules) ----

bool ideal_member(const Submodule& I, const RingElem& f);
Submodule ideal_sum(const Submodule& a, const Submodule& b);
Submodule ideal_product(const Submodule& a, const Submodule& b);
Submodule ideal_intersect(const Submodule& a, const Submodule& b);
Submodule ideal_colon(const Submodule& I, const RingElem& f);        // (I : f)
Submodule ideal_colon_ideal(const Submodule& I, const Submodule& J);  // (I : J)
Submodule ideal_saturate(const Submodule& I, const RingElem& f);      // (I : f^inf)
Submodule ideal_saturate_ideal(const Submodule& I, const Submodule& J);
bool ideal_is_unit(const Submodule& I);
// the generator of a principal ideal, as witnessed by a singleton reduced
// basis; error when the basis is not a singleton
RingElem ideal_principal_gen(const Submodule& I);

// ---- Lambda-side utilities (inputs must avoid group variables) ----

// generators of I ∩ Lambda via the group-block elimination order
std::vector<RingElem> contract_to_lambda(const Submodule& I);
// Krull dimension of Lambda/(gens): -1 for the unit ideal, d for the zero ideal
int krull_dim_lambda(const Ring& r, const std::vector<RingElem>& gens);
// reduced basis of a Lambda-ideal is a singleton <=> principal; gen_out monic
bool lambda_ideal_is_principal(const Ring& r, const std::vector<RingElem>& gens,
                               RingElem* gen_out);
// divisorial hull of a nonzero Lambda-ideal: (f) : ((f) : A), principal over
// the factorial ring Lambda; returns the monic generator
RingElem lambda_hull_gen(RingPtr ring, const std::vector<RingElem>& gens);

// exact quotient a / f over the full group ring; nullopt when a is not a
// multiple of f.  The quotient is unique only when f is a non-zero-divisor,
// which the caller guarantees.
std::optional<RingElem> divide_exact_ring(RingPtr ring, const RingElem& a, const RingElem& f);

}  // namespace detpsi
