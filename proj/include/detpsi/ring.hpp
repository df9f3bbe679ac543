#pragma once
// The ambient ring R = Lambda[G] with Lambda = F_q[x_1..x_d] and G a finite
// abelian group in cyclic form: R = F_q[x_1..x_d, t_1..t_g] / (t_i^{n_i} - 1).
//
// Elements live on two levels:
//   Poly / Vec   sorted sparse representations over the polynomial cover
//                F_q[x.., t..] (no group reduction) — the Groebner engine's
//                currency; Vec entries carry a free-module position.
//   RingElem     a Poly kept in normal form (group exponents < n_i) — the
//                user-facing element of R.
// Vec ordering is position-over-term: lower position index has higher
// precedence, then the ring's term order on monomials.
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "detpsi/fq.hpp"
#include "detpsi/monomial.hpp"

namespace detpsi {

struct Term {
    Mono m;
    fq_t c;
    bool operator==(const Term& o) const { return m == o.m && c == o.c; }
};
using Poly = std::vector<Term>;  // sorted descending in the term order

struct VTerm {
    std::uint32_t pos;
    Mono m;
    fq_t c;
    bool operator==(const VTerm& o) const { return pos == o.pos && m == o.m && c == o.c; }
};
using Vec = std::vector<VTerm>;  // sorted: pos ascending, then term order descending

struct RingSpec {
    unsigned q = 3;
    unsigned d = 1;
    std::vector<unsigned> group_orders;  // cyclic decomposition of G
    std::string term_order = "degrevlex";
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
  public:
    static RingPtr make(const RingSpec& spec);

    const Fq& fq() const { return *fq_; }
    unsigned q() const { return fq_->q(); }
    unsigned d() const { return spec_.d; }
    unsigned ngroup() const { return unsigned(spec_.group_orders.size()); }
    unsigned nvars() const { return spec_.d + ngroup(); }
    unsigned group_order(unsigned i) const { return spec_.group_orders[i]; }
    unsigned group_size() const { return group_size_; }
    const RingSpec& spec() const { return spec_; }
    const OrderCtx& order() const { return ord_; }
    const OrderCtx& elim_order() const { return elim_ord_; }
    std::size_t max_basis() const { return max_basis_; }

    // group monomial basis of R over Lambda, in a fixed deterministic order
    const std::vector<Mono>& group_basis() const { return group_basis_; }

    // the relations t_i^{n_i} - 1 as cover polynomials (empty if no group)
    const std::vector<Poly>& relations() const { return relations_; }

    bool is_group_var(unsigned i) const { return i >= spec_.d; }
    // true if monomial uses no group variable
    bool in_lambda(Mono m) const {
        for (unsigned i = spec_.d; i < nvars(); ++i)
            if (m.exp(i)) return false;
        return true;
    }

    std::string var_name(unsigned i) const;
    int var_index(const std::string& name) const;  // -1 if unknown

  private:
    RingSpec spec_;
    FqPtr fq_;
    OrderCtx ord_, elim_ord_;
    unsigned group_size_ = 1;
    std::vector<Mono> group_basis_;
    std::vector<Poly> relations_;
    std::size_t max_basis_ = 20000;
};

// ---- Poly operations (cover level unless stated otherwise) ----

Poly poly_zero();
Poly poly_const(const Ring& r, fq_t c);
Poly poly_var(const Ring& r, unsigned i);
Poly poly_mono(const Ring& r, Mono m, fq_t c);
bool poly_is_zero(const Poly& p);
int poly_cmp(const Poly& a, const Poly& b);  // lexicographic on sorted terms

Poly poly_add(const Ring& r, const Poly& a, const Poly& b);
Poly poly_neg(const Ring& r, const Poly& a);
Poly poly_sub(const Ring& r, const Poly& a, const Poly& b);
Poly poly_scale(const Ring& r, const Poly& a, fq_t c);
Poly poly_mul_term(const Ring& r, const Poly& a, Mono m, fq_t c);
Poly poly_mul_cover(const Ring& r, const Poly& a, const Poly& b);

// reduce group exponents modulo the group orders and re-normalize
Poly poly_fold(const Ring& r, const Poly& a);
// fold + sort + merge: full normal form of an arbitrary term list
Poly poly_normalize(const Ring& r, std::vector<Term> terms, bool fold = true);

unsigned poly_total_deg(const Ring& r, const Poly& a);

// ---- RingElem: elements of R in normal form ----

struct RingElem {
    Poly p;  // folded, sorted, merged
    bool is_zero() const { return p.empty(); }
    bool operator==(const RingElem& o) const { return p == o.p; }
    bool operator!=(const RingElem& o) const { return p != o.p; }
};

RingElem re_zero();
RingElem re_const(const Ring& r, fq_t c);
RingElem re_one(const Ring& r);
RingElem re_var(const Ring& r, unsigned i);
RingElem re_of(const Ring& r, const Poly& cover);  // fold into normal form
RingElem re_add(const Ring& r, const RingElem& a, const RingElem& b);
RingElem re_sub(const Ring& r, const RingElem& a, const RingElem& b);
RingElem re_neg(const Ring& r, const RingElem& a);
RingElem re_scale(const Ring& r, const RingElem& a, fq_t c);
RingElem re_mul(const Ring& r, const RingElem& a, const RingElem& b);
RingElem re_pow(const Ring& r, const RingElem& a, unsigned e);

// leading coefficient in the ring's term order (0 for zero)
fq_t re_lead_coeff(const RingElem& a);
// rescale so the leading coefficient is 1 (identity on zero)
RingElem re_monic(const Ring& r, const RingElem& a);

// decompose a in R = (+)_gamma Lambda * t^gamma over the group basis;
// result[i] is the Lambda-coefficient of group_basis()[i]
std::vector<RingElem> lambda_components(const Ring& r, const RingElem& a);

// determinant of the multiplication-by-a matrix on the Lambda-basis of R
RingElem norm(const Ring& r, const RingElem& a);
bool is_non_zero_divisor(const Ring& r, const RingElem& a);

// determinant of a square matrix over Lambda (fraction-free Gauss/Bareiss;
// requires all entries group-variable-free) — exact over the domain Lambda
RingElem det_lambda(const Ring& r, const std::vector<std::vector<RingElem>>& mat);
// determinant of a square matrix over R (Laplace expansion with column-subset
// memoization; sizes capped at 12)
RingElem det_ring(const Ring& r, const std::vector<std::vector<RingElem>>& mat);

// exact division over Lambda: a = q*b returns q; error if not divisible or if
// inputs use group variables
RingElem divide_exact_lambda(const Ring& r, const RingElem& a, const RingElem& b);

// ---- Automorphism: identity on polynomial vars, group generator t_i -> c_i * t^{e_i}

struct Automorphism {
    // image of t_i as a unit monomial: coefficient and group-exponent vector
    struct GenImage {
        fq_t c;
        std::vector<unsigned> exps;  // length = ngroup
    };
    std::vector<GenImage> images;
};

// validation: each image is a unit monomial whose n_i-th power is 1 and the
// induced map permutes the group basis bijectively (up to unit coefficients)
Automorphism make_automorphism(const Ring& r, const std::vector<Automorphism::GenImage>& images);
Automorphism involution_iota(const Ring& r);   // t_i -> t_i^{n_i - 1}
Automorphism identity_automorphism(const Ring& r);
Automorphism compose(const Ring& r, const Automorphism& a, const Automorphism& b);
bool automorphism_equal(const Automorphism& a, const Automorphism& b);

RingElem automorphism_apply(const Ring& r, const Automorphism& s, const RingElem& a);

// ---- parsing/printing (tests, CLI, serialization) ----

std::string poly_to_string(const Ring& r, const Poly& p);
inline std::string re_to_string(const Ring& r, const RingElem& a) { return poly_to_string(r, a.p); }
// grammar: terms split on +/-; term = optional integer coefficient and
// '*'-separated powers like x^2, y, t, t2^3; constants are integers mod p
RingElem parse_elem(const Ring& r, const std::string& text);

// ---- Vec operations (position-over-term order) ----

bool vec_is_zero(const Vec& v);
int vterm_cmp(const VTerm& a, const VTerm& b, const OrderCtx& ord);  // >0 if a leads
Vec vec_normalize(const Ring& r, std::vector<VTerm> terms, bool fold, const OrderCtx& ord);
Vec vec_add(const Ring& r, const Vec& a, const Vec& b, const OrderCtx& ord);
Vec vec_scale(const Ring& r, const Vec& a, fq_t c);
Vec vec_mul_term(const Ring& r, const Vec& a, Mono m, fq_t c);
// v + c * m * w  (single fused op used by reduction loops)
Vec vec_axpy_term(const Ring& r, const Vec& v, fq_t c, Mono m, const Vec& w, const OrderCtx& ord);
Vec vec_fold(const Ring& r, const Vec& v, const OrderCtx& ord);
Vec vec_from_poly(const Poly& p, std::uint32_t pos);
Poly vec_component(const Vec& v, std::uint32_t pos);
Vec vec_mul_poly(const Ring& r, const Vec& v, const Poly& p, const OrderCtx& ord);
unsigned vec_rank_bound(const Vec& v);  // 1 + max position (0 for zero)
std::string vec_to_string(const Ring& r, const Vec& v);

// rows of a column list: result[i] collects component i of every column j at
// position j (the transposed matrix, again given column by column)
std::vector<Vec> transpose_columns(const Ring& r, const std::vector<Vec>& cols, unsigned nrows);

}  // namespace detpsi
