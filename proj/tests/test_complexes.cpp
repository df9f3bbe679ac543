#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "detpsi/complexes.hpp"

#include <random>

using namespace detpsi;

namespace {

RingPtr lam1() { return Ring::make({3, 1, {}, "degrevlex"}); }  // F3[x]
RingPtr lam2() { return Ring::make({3, 2, {}, "degrevlex"}); }  // F3[x,y]
RingPtr grp1() { return Ring::make({3, 1, {3}, "degrevlex"}); } // F3[x][Z/3]

Vec V(const Ring& r, const std::vector<std::string>& comps) {
    std::vector<VTerm> terms;
    for (std::uint32_t i = 0; i < comps.size(); ++i) {
        RingElem e = parse_elem(r, comps[i]);
        for (const Term& t : e.p) terms.push_back(VTerm{i, t.m, t.c});
    }
    return vec_normalize(r, std::move(terms), true, r.order());
}

RingElem E(const Ring& r, const std::string& s) { return parse_elem(r, s); }

Submodule I(RingPtr ring, const std::vector<std::string>& gens) {
    std::vector<RingElem> es;
    for (const auto& s : gens) es.push_back(parse_elem(*ring, s));
    return make_ideal(ring, es);
}

// two-term complex from string entries: columns of the matrix sending
// R^{cols} -> R^{rows}, placed in degrees [lo, lo+1]
FreeComplex two_term(RingPtr ring, int lo, unsigned rows,
                     const std::vector<std::vector<std::string>>& columns) {
    std::vector<Vec> cols;
    for (const auto& c : columns) cols.push_back(V(*ring, c));
    return make_complex(ring, lo, {unsigned(columns.size()), rows}, {cols});
}

// random ring element of small degree for property sampling
RingElem random_elem(const Ring& r, std::mt19937_64& rng, bool allow_const = true) {
    static const char* pool2[] = {"x", "y", "x+y", "x*y", "x^2", "y^2", "x+1", "y+2", "1", "2"};
    std::uniform_int_distribution<int> pick(allow_const ? 0 : 0, allow_const ? 9 : 7);
    return parse_elem(r, pool2[pick(rng)]);
}

} // namespace

TEST_CASE("complex construction validates shapes and d o d = 0") {
    auto r = lam2();
    // Koszul complex on (x, y): R -> R^2 -> R
    FreeComplex kos = make_complex(
        r, 0, {1, 2, 1},
        {{V(*r, {"y", "2*x"})}, {V(*r, {"x"}), V(*r, {"y"})}});
    CHECK(kos.rank_at(1) == 2);
    CHECK(kos.rank_at(5) == 0);
    CHECK_THROWS(make_complex(r, 0, {1, 2, 1},
                              {{V(*r, {"y", "x"})}, {V(*r, {"x"}), V(*r, {"y"})}}));
    CHECK_THROWS(make_complex(r, 0, {2, 1}, {{V(*r, {"x"})}}));
}

TEST_CASE("cohomology of two-term complexes") {
    auto r = lam2();
    FreeComplex c = two_term(r, 0, 1, {{"x"}});
    CHECK(is_zero_module(cohomology(c, 0)));
    PresentedModule h1 = cohomology(c, 1);
    CHECK(submodule_equal(fitting_ideal(h1, 0), I(r, {"x"})));
    CHECK(is_zero_module(cohomology(c, 2)));

    // Koszul complex on (x, y) resolves R/(x,y): only top cohomology
    FreeComplex kos = make_complex(
        r, 0, {1, 2, 1},
        {{V(*r, {"y", "2*x"})}, {V(*r, {"x"}), V(*r, {"y"})}});
    CHECK(is_zero_module(cohomology(kos, 0)));
    CHECK(is_zero_module(cohomology(kos, 1)));
    CHECK(submodule_equal(fitting_ideal(cohomology(kos, 2), 0), I(r, {"x", "y"})));
}

TEST_CASE("euler characteristic sign convention") {
    auto r = lam2();
    FreeComplex c = two_term(r, 0, 2, {{"x", "y"}}); // [R -> R^2] degrees 0, 1
    CHECK(euler_char(c) == 1);
    FreeComplex d = make_complex(r, 1, {3, 1},
                                 {{V(*r, {"x"}), V(*r, {"y"}), V(*r, {"x+y"})}});
    CHECK(euler_char(d) == 2); // [R^3 -> R] degrees 1, 2
    CHECK(euler_char(shift_complex(c, 1)) == -1);
}

TEST_CASE("shift flips differentials by (-1)^k and reindexes") {
    auto r = lam2();
    FreeComplex c = two_term(r, 0, 1, {{"x"}});
    FreeComplex s = shift_complex(c, 1);
    CHECK(s.lo == -1);
    CHECK(re_of(*r, vec_component(s.diffs[0][0], 0)) == E(*r, "2*x")); // -x mod 3
    FreeComplex s2 = shift_complex(s, -1);
    CHECK(s2.lo == 0);
    CHECK(s2.diffs[0][0] == c.diffs[0][0]);
}

TEST_CASE("cone of the identity is acyclic") {
    auto r = lam2();
    FreeComplex c = make_complex(
        r, 0, {1, 2, 1},
        {{V(*r, {"y", "2*x"})}, {V(*r, {"x"}), V(*r, {"y"})}});
    ConeTriangle t = cone_triangle(identity_chain_map(c));
    for (int i = t.cone.lo; i <= t.cone.hi(); ++i)
        CHECK(is_zero_module(cohomology(t.cone, i)));
}

TEST_CASE("cone of the zero map is the direct sum with the shift") {
    auto r = lam2();
    FreeComplex c = two_term(r, 0, 1, {{"x"}});
    FreeComplex d = two_term(r, 0, 1, {{"y"}});
    FreeComplex cone = cone_complex(zero_chain_map(c, d));
    // cone = d (+) c[1]: degrees -1..1 with ranks 1, 2, 1
    CHECK(cone.lo == -1);
    CHECK(cone.ranks == std::vector<unsigned>{1, 2, 1});
    PresentedModule hm1 = cohomology(cone, -1);
    CHECK(is_zero_module(hm1)); // H^{-1}(c[1]) = H^0(c) = 0
    PresentedModule h0 = cohomology(cone, 0);
    // H^0 = H^0(d) (+) H^1(c[1] part) = 0 (+) R/(x)
    CHECK(submodule_equal(fitting_ideal(h0, 0), I(r, {"x"})));
    PresentedModule h1 = cohomology(cone, 1);
    CHECK(submodule_equal(fitting_ideal(h1, 0), I(r, {"y"})));
    CHECK(euler_char(cone) == euler_char(d) - euler_char(c));
}

TEST_CASE("triangle chi additivity over random two-term maps") {
    auto r = lam2();
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 30; ++trial) {
        // A = [R --a--> R], B = A, f = (s, s) always commutes
        RingElem a = random_elem(*r, rng);
        RingElem s = random_elem(*r, rng);
        FreeComplex A = two_term(r, 0, 1, {{poly_to_string(*r, a.p)}});
        ChainMap f = make_chain_map(
            A, A, {{vec_from_poly(s.p, 0)}, {vec_from_poly(s.p, 0)}});
        ConeTriangle t = cone_triangle(f);
        CHECK(euler_char(t.cone) == euler_char(A) - euler_char(A));
        CHECK(euler_char(shift_complex(A, 2)) == euler_char(A));
    }
}

TEST_CASE("cone cohomology realizes kernel and cokernel on H^1") {
    auto r = lam1();
    // A = [R --x^2--> R], B = [R --x--> R], f = (x, 1): on H^1 this is the
    // projection R/(x^2) -> R/(x). Long exact sequence: H^0(cone) = kernel
    // (x)/(x^2), H^1(cone) = cokernel = 0.
    FreeComplex A = two_term(r, 0, 1, {{"x^2"}});
    FreeComplex B = two_term(r, 0, 1, {{"x"}});
    ChainMap f = make_chain_map(A, B, {{V(*r, {"x"})}, {V(*r, {"1"})}});
    ConeTriangle t = cone_triangle(f);
    CHECK(is_zero_module(cohomology(t.cone, -1)));
    PresentedModule h0 = cohomology(t.cone, 0);
    CHECK(fq_dimension(h0) == 1); // (x)/(x^2) has F_q-dimension 1
    CHECK(is_zero_module(cohomology(t.cone, 1)));
}

TEST_CASE("dual complex transposes, reindexes, and is an involution") {
    auto r = lam2();
    FreeComplex c = make_complex(
        r, 0, {1, 2, 1},
        {{V(*r, {"y", "2*x"})}, {V(*r, {"x"}), V(*r, {"y"})}});
    FreeComplex d = dual_complex(c);
    CHECK(d.lo == -2);
    CHECK(d.ranks == std::vector<unsigned>{1, 2, 1});
    // first dual differential = transpose of the last original one
    CHECK(re_of(*r, vec_component(d.diffs[0][0], 0)) == E(*r, "x"));
    CHECK(re_of(*r, vec_component(d.diffs[0][0], 1)) == E(*r, "y"));
    FreeComplex dd = dual_complex(d);
    CHECK(dd.lo == c.lo);
    CHECK(dd.ranks == c.ranks);
    CHECK(dd.diffs == c.diffs);
}

TEST_CASE("dual complex with involution twist over the group ring") {
    auto g = grp1();
    Automorphism iota = involution_iota(*g);
    FreeComplex c = two_term(g, 0, 1, {{"t-1"}});
    FreeComplex d = dual_complex(c, &iota);
    // t -> t^2: entry becomes t^2 - 1
    CHECK(re_of(*g, vec_component(d.diffs[0][0], 0)) == E(*g, "t^2-1"));
    FreeComplex dd = dual_complex(d, &iota);
    CHECK(dd.diffs == c.diffs);
    CHECK(dd.lo == c.lo);
}

TEST_CASE("psi map strict mode: frozen examples") {
    auto r = lam2();
    SUBCASE("l = 1 on the (x,y) column") {
        FreeComplex c = two_term(r, 0, 2, {{"x", "y"}});
        PsiResult p = psi_map(c, 1);
        CHECK(p.mode == PsiMode::strict);
        CHECK(is_zero_module(p.kernel));
        CHECK(submodule_equal(fitting_ideal(p.cokernel, 0), I(r, {"x", "y"})));
        CHECK(submodule_equal(p.image, I(r, {"x", "y"})));
        CHECK(is_pseudo_null(p.cokernel));
    }
    SUBCASE("l = 0 gives the determinant ideal") {
        FreeComplex c = two_term(r, 0, 1, {{"x"}});
        PsiResult p = psi_map(c, 0);
        CHECK(submodule_equal(p.image, I(r, {"x"})));
        CHECK(submodule_equal(fitting_ideal(p.cokernel, 0), I(r, {"x"})));
    }
    SUBCASE("free H^1: psi is an isomorphism") {
        FreeComplex c = make_complex(r, 1, {2}, {});
        PsiResult p = psi_map(c, 2);
        CHECK(is_zero_module(p.kernel));
        CHECK(is_zero_module(p.cokernel));
    }
    SUBCASE("H^0 != 0 errors") {
        auto g = grp1();
        FreeComplex c = two_term(g, 0, 1, {{"t-1"}});
        CHECK_THROWS_AS(psi_map(c, 0), error);
    }
    SUBCASE("chi mismatch errors") {
        FreeComplex c = two_term(r, 0, 2, {{"x", "y"}});
        CHECK_THROWS_AS(psi_map(c, 2), error);
    }
}

TEST_CASE("psi map kernel side: wedge of the kernel divided by the image nzd") {
    auto r = lam2();
    // L = [R^2 --(x, y)--> R] in degrees 1, 2: H^2 = R/(x,y) pseudo-null,
    // H^1 = ker = the rank-1 syzygy module generated by (y, -x) (free here)
    FreeComplex L = make_complex(r, 1, {2, 1}, {{V(*r, {"x"}), V(*r, {"y"})}});
    PsiResult p = psi_map(L, 1);
    CHECK(p.mode == PsiMode::kernel_side);
    CHECK(p.h1.ngens == 1);
    // the kernel generator (y,-x) together with the certificate w spans R^2
    // generically: det[(y,-x) w] = f up to a unit, so the image is all of R
    CHECK(ideal_is_unit(p.image));
    CHECK(is_zero_module(p.kernel));
    CHECK(is_zero_module(p.cokernel));

    // H^2 not pseudo-null: error
    FreeComplex bad = make_complex(r, 1, {2, 1}, {{V(*r, {"x"}), V(*r, {"x*y"})}});
    CHECK_THROWS_AS(psi_map(bad, 1), error);
}

TEST_CASE("reflexive hull detection") {
    auto r = lam2();
    FreeComplex good = two_term(r, 0, 2, {{"x", "y"}});
    CHECK(reflexive_hull_detect(good, 1));
    // H^1 = Lambda/(x) (+) Lambda: torsion part has codimension 1
    FreeComplex bad = two_term(r, 0, 2, {{"x", "0"}});
    CHECK(!reflexive_hull_detect(bad, 1));
}

TEST_CASE("bidual determinant comparison certifies the intersection line") {
    auto r = lam2();
    SUBCASE("rank-1 torsion-free H^1") {
        FreeComplex c = two_term(r, 0, 2, {{"x", "y"}});
        BidualDetComparison b = bidual_det_compare(c, 1);
        CHECK(is_isomorphism(b.triv));
        CHECK(hom_equal(compose_hom(b.triv, b.bidual.map), b.psi.psi));
    }
    SUBCASE("free H^1 of rank 2") {
        FreeComplex c = make_complex(r, 1, {2}, {});
        BidualDetComparison b = bidual_det_compare(c, 2);
        CHECK(is_isomorphism(b.triv));
    }
    SUBCASE("pseudo-null torsion part is allowed") {
        // alpha = [[x],[y],[0]] padded: H^1 = R^3/(x,y,0)R has torsion part 0
        FreeComplex c = make_complex(r, 0, {1, 3},
                                     {{V(*r, {"x", "y", "0"})}});
        BidualDetComparison b = bidual_det_compare(c, 2);
        CHECK(is_isomorphism(b.triv));
    }
    SUBCASE("codimension-1 torsion errors") {
        FreeComplex bad = two_term(r, 0, 2, {{"x", "0"}});
        CHECK_THROWS_AS(bidual_det_compare(bad, 1), error);
    }
}

TEST_CASE("determinant trivialization of torsion complexes") {
    auto r = lam2();
    SUBCASE("square two-term in degrees 1, 2") {
        FreeComplex c = two_term(r, 1, 1, {{"x"}});
        FractionalIdeal f = det_trivialization(c);
        CHECK(fractional_equal(f, fractional_of_ideal(I(r, {"x"}))));
    }
    SUBCASE("degrees 0, 1 inverts the ideal") {
        FreeComplex c = two_term(r, 0, 1, {{"x"}});
        FractionalIdeal f = det_trivialization(c);
        CHECK(fractional_equal(f, make_fractional(I(r, {"1"}), E(*r, "x"))));
    }
    SUBCASE("three-term with torsion cohomology") {
        // [R --x--> R --0--> R --y--> R] is not a complex; use Koszul-like:
        // [R --(y,2x)--> R^2 --(x y)--> R] degrees 0..2 has H^0 = 0, H^1, H^2
        // torsion? H^2 = R/(x,y) torsion, H^1 = 0 here, H^0 = 0: d_R =
        // det-minors alternating.
        FreeComplex kos = make_complex(
            r, 0, {1, 2, 1},
            {{V(*r, {"y", "2*x"})}, {V(*r, {"x"}), V(*r, {"y"})}});
        FractionalIdeal f = det_trivialization(kos);
        // the only cohomology is H^2 = R/(x,y), pseudo-null; determinant
        // ideals only see height-1 behavior, so d_R = (1)
        CHECK(fractional_equal(f, fractional_of_ideal(I(r, {"1"}))));
    }
    SUBCASE("non-torsion cohomology errors") {
        FreeComplex c = two_term(r, 0, 2, {{"x", "y"}});
        CHECK_THROWS_AS(det_trivialization(c), error);
    }
}

TEST_CASE("multiplicativity of the trivialization on cones") {
    auto r = lam1();
    std::mt19937_64 rng(777);
    const char* pool[] = {"x", "x^2", "x+1", "x^2+x+1", "2*x", "x^3+2"};
    for (int trial = 0; trial < 20; ++trial) {
        RingElem a = parse_elem(*r, pool[rng() % 6]);
        RingElem s = parse_elem(*r, pool[rng() % 6]);
        FreeComplex A = two_term(r, 1, 1, {{poly_to_string(*r, a.p)}});
        ChainMap f = make_chain_map(A, A, {{vec_from_poly(s.p, 0)}, {vec_from_poly(s.p, 0)}});
        ConeTriangle t = cone_triangle(f);
        FractionalIdeal da = det_trivialization(A);
        FractionalIdeal dc = det_trivialization(t.cone);
        // d_R(B) = d_R(A) * d_R(cone) with B = A here
        CHECK(fractional_equal(fractional_mul(da, dc), da));
    }
}

TEST_CASE("algebraic L generator") {
    auto r = lam2();
    SUBCASE("single entry") {
        FreeComplex c = two_term(r, 1, 1, {{"2*x"}});
        CHECK(l_alg(c) == E(*r, "x")); // monic normalization
    }
    SUBCASE("diagonal") {
        FreeComplex c = make_complex(r, 1, {2, 2},
                                     {{V(*r, {"x", "0"}), V(*r, {"0", "y"})}});
        CHECK(l_alg(c) == E(*r, "x*y"));
    }
    SUBCASE("zero map errors") {
        FreeComplex c = make_complex(r, 1, {1, 1}, {{Vec{}}});
        CHECK_THROWS_AS(l_alg(c), error);
    }
    SUBCASE("group ring zero divisor errors") {
        auto g = grp1();
        FreeComplex c = two_term(g, 1, 1, {{"t-1"}});
        CHECK_THROWS_AS(l_alg(c), error);
    }
    SUBCASE("group ring nzd works") {
        auto g = grp1();
        FreeComplex c = two_term(g, 1, 1, {{"x*t+x+1"}});
        RingElem v = l_alg(c);
        CHECK(!v.is_zero());
        CHECK(submodule_equal(make_ideal(g, {v}),
                              make_ideal(g, {E(*g, "x*t+x+1")})));
    }
}
