#pragma once
// Bounded complexes of finite free R-modules with explicit differentials:
// chain maps, shifts, cones and their triangles, cohomology, duals with
// automorphism twists, the determinant-line map Psi on wedge powers of
// degree-1 cohomology, reflexive-hull detection, certification of the
// intersection-with-bidual determinant comparison, generic-fiber determinant
// trivializations, and algebraic L-generators.

#include "detpsi/module.hpp"

namespace detpsi {

// C^{lo+k} has rank ranks[k]; diffs[k] holds the columns of
// d^{lo+k} : C^{lo+k} -> C^{lo+k+1}.  diffs has one entry fewer than ranks
// (none for single-degree or empty complexes).  d o d = 0 is validated at
// construction.
struct FreeComplex {
    RingPtr ring;
    int lo = 0;
    std::vector<unsigned> ranks;
    std::vector<std::vector<Vec>> diffs;

    int hi() const { return lo + int(ranks.size()) - 1; }
    unsigned rank_at(int i) const;
    // columns of d^i, or nullptr when i or i+1 falls outside the support
    const std::vector<Vec>* diff_at(int i) const;
};

FreeComplex make_complex(RingPtr ring, int lo, std::vector<unsigned> ranks,
                         std::vector<std::vector<Vec>> diffs);
// drop zero-rank degrees at both ends (identity on already-trimmed complexes)
FreeComplex trim_complex(const FreeComplex& c);

// apply a matrix given by columns to a vector: sum_j v_j * cols[j]
Vec matvec(const Ring& r, const std::vector<Vec>& cols, const Vec& v);

// degreewise maps f^i : from^i -> to^i with commuting squares, validated at
// construction.  mats[k] holds the columns of f^{from.lo+k}.
struct ChainMap {
    FreeComplex from;
    FreeComplex to;
    std::vector<std::vector<Vec>> mats;
};
ChainMap make_chain_map(const FreeComplex& from, const FreeComplex& to,
                        std::vector<std::vector<Vec>> mats);
ChainMap identity_chain_map(const FreeComplex& c);
ChainMap zero_chain_map(const FreeComplex& from, const FreeComplex& to);

// C[k]^i = C^{i+k} with differential (-1)^k d
FreeComplex shift_complex(const FreeComplex& c, int k);

// cone(f)^i = from^{i+1} (+) to^i, differential [[-d_from, 0], [f, d_to]].
// incl : to -> cone and proj : cone -> from[1] realize the triangle.
struct ConeTriangle {
    FreeComplex cone;
    ChainMap incl;
    ChainMap proj;
};
ConeTriangle cone_triangle(const ChainMap& f);
FreeComplex cone_complex(const ChainMap& f);

PresentedModule cohomology(const FreeComplex& c, int i);
// sum over degrees of (-1)^(i-1) * rank_i  (degree 1 counts positively)
long long euler_char(const FreeComplex& c);

// degrees i -> -i, differentials transposed, entries optionally twisted by a
// ring automorphism.  Applying it twice with no twist reproduces the input
// exactly.
FreeComplex dual_complex(const FreeComplex& c, const Automorphism* twist = nullptr);

enum class PsiMode { strict, kernel_side };

// Psi maps wedge^l H^1(C) to a rank-1 free module.
//  - strict mode: representative [R^a -> R^{a+l}] in degrees [0, 1] with
//    H^0 = 0; Psi(e_J) = det[alpha-columns | e_{j_1} .. e_{j_l}].
//  - kernel-side mode: representative [R^{l+1} -> R] in degrees [1, 2] with
//    H^2 pseudo-null; Psi(y_1 ^..^ y_l) = det[y_1 .. y_l  w] / f for a
//    non-zero-divisor f = sum_s w_s b_s in the image ideal of b.
struct PsiResult {
    PsiMode mode = PsiMode::strict;
    PresentedModule h1;     // degree-1 cohomology presented for the mode
    ModuleHom psi;          // wedge^l h1 -> rank-1 free
    PresentedModule kernel;
    Submodule kernel_pre;   // preimage submodule in the wedge ambient
    PresentedModule cokernel;
    Submodule image;        // ideal generated by the Psi values
    Submodule minors;       // strict mode: a x a minors of alpha (equals image)
};
PsiResult psi_map(const FreeComplex& c, unsigned l);

// Coker(Psi) pseudo-null <=> torsion part of H^1 pseudo-null; both sides are
// computed and their agreement is asserted. Strict mode only.
bool reflexive_hull_detect(const FreeComplex& c, unsigned l);

// Certifies that the intersection module (wedge^l of the dual of H^1) dualized
// is a trivializable determinant line: builds the generic trivialization
// c : intersection -> R with c o alpha^l = Psi and certifies it is an
// isomorphism.  Requires H^i pseudo-null for i != 1 and (H^1)_tor pseudo-null.
struct BidualDetComparison {
    PsiResult psi;
    ExteriorBidual bidual;    // alpha^l on H^1
    ModuleHom triv;           // certified isomorphism: intersection -> R
    RingElem reference_minor; // the non-zero-divisor minor anchoring c
};
BidualDetComparison bidual_det_compare(const FreeComplex& c, unsigned l);

// Generic-fiber determinant trivialization of a complex with torsion
// cohomology: greedy pivot partitions, one non-zero-divisor minor per
// differential, alternating exponents (-1)^(i-1).
FractionalIdeal det_trivialization(const FreeComplex& c);

// For C in degrees [1, 2] with H^1 = 0 and H^2 torsion: the monic-normalized
// generator of d_R(C) = Fitt(H^2(C)).
RingElem l_alg(const FreeComplex& c);

} // namespace detpsi
