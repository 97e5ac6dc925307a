#include "doctest.h"
#include "goodred/families.hpp"
#include "goodred/parse.hpp"

using namespace goodred;

TEST_CASE("family members match their closed forms") {
    // family 1 at (p, d) = (2, 4): z + (t^{-1} z^4 - 1)
    auto f1 = make_family(1, 2, 4);
    auto p1 = parse_map("z + (t^-1*z^4 - 1)", "F2((t))");
    CHECK(f1.degree() == 4);
    for (long long i = 0; i <= 4; ++i)
        CHECK(f1.num()[(size_t)i].certainly_equal(p1.num()[(size_t)i]));
    // family 2 at (2, 3): z + t^2/(z^2 - t)
    auto f2 = make_family(2, 2, 3);
    auto p2 = parse_map("z + t^2/(z^2 - t)", "F2((t))");
    CHECK(f2.degree() == 3);
    for (long long i = 0; i <= 3; ++i)
        CHECK(f2.num()[(size_t)i].certainly_equal(p2.num()[(size_t)i]));
    // family 3 at (3, 2): t/z^2
    auto f3 = make_family(3, 3, 2);
    auto p3 = parse_map("t/z^2", "F3((t))");
    CHECK(f3.num()[0].certainly_equal(p3.num()[0]));
}

TEST_CASE("family applicability") {
    CHECK_THROWS_AS(make_family(1, 2, 3), CaseInapplicable);  // 2 does not divide 3
    CHECK_THROWS_AS(make_family(2, 2, 4), CaseInapplicable);  // 2 does not divide 3
    CHECK_THROWS_AS(make_family(1, 5, 4), CaseInapplicable);
    CHECK_THROWS_AS(make_family(3, 2, 4), CaseInapplicable);  // B = 12 there, not d+1
    CHECK_NOTHROW(make_family(3, 5, 4));                      // B = 5 = d+1
}

TEST_CASE("sharpness: family 3 at (3, 2)") {
    auto rep = verify_sharpness(3, 3, 2);
    CHECK(rep.sharp);
    CHECK(rep.B == 3);
    CHECK(rep.lower_bound == 3);
    CHECK(rep.model_degree == 3);
    CHECK(rep.bad_reduction_over_base);
    CHECK(rep.conjugate_good_reduction);
    CHECK(rep.invariant_verified);
    CHECK(rep.finder_agrees);
    CHECK(rep.totally_ramified);
    // model is exactly 1/z^2
    CHECK(rep.psi.num().degree() == 0);
    CHECK(rep.psi.den().degree() == 2);
}

TEST_CASE("sharpness: family 1 at (2, 4)") {
    auto rep = verify_sharpness(1, 2, 4);
    CHECK(rep.sharp);
    CHECK(rep.B == 12);
    CHECK(rep.lower_bound == 12);
    CHECK(rep.model_degree == 12);
    // invariant point zeta(alpha, 1/3) with v(alpha) = 1/4
    CHECK(rep.invariant_point.radius_val() == Rational(1, 3));
    CHECK(rep.invariant_point.center().val() == Valuation(Rational(1, 4)));
    // monic polynomial model with lead exactly one
    CHECK(rep.psi.den().degree() == 0);
    CHECK(rep.psi.num().lead().certainly_equal(
        PuiseuxElement::one(rep.psi.config()).promote(rep.psi.level())));
    // audit: binomials vanish and every bound holds
    REQUIRE(rep.audit.size() == 3);
    for (auto& a : rep.audit) {
        CHECK(a.binomial_vanishes);
        CHECK(a.bound_holds);
        CHECK(a.exponent > Rational(-1));
    }
}

TEST_CASE("sharpness: family 2 at (2, 3)") {
    auto rep = verify_sharpness(2, 2, 3);
    CHECK(rep.sharp);
    CHECK(rep.B == 6);
    CHECK(rep.lower_bound == 6);
    CHECK(rep.model_degree == 6);
    // reduction of the model is (z^3 + 1)/z^2
    ReducedMap rm = reduce(rep.psi);
    const ResidueField* F = rm.F;
    RPoly wn = {F->one(), F->zero(), F->zero(), F->one()};
    RPoly wd = {F->zero(), F->zero(), F->one()};
    ReducedMap want;
    want.F = F;
    want.num = wn;
    want.den = wd;
    want.degree = 3;
    CHECK(rm.equal_as_map(want));
}

TEST_CASE("sharpness holds across the small applicable grid") {
    // every applicable (family, p, d) with B <= 24 stays desk-scale
    struct Item { int fam; long long p, d; long long B; };
    std::vector<Item> grid = {
        {1, 2, 4, 12}, {1, 3, 3, 6},  {1, 2, 6, 10}, {1, 5, 5, 20},
        {2, 2, 3, 6},  {2, 3, 4, 12}, {2, 2, 5, 20}, {2, 5, 6, 30},
        {3, 3, 2, 3},  {3, 5, 2, 3},  {3, 2, 2, 3},  {3, 5, 3, 4},
        {3, 0, 4, 5},  {3, 7, 5, 6},
    };
    for (auto& it : grid) {
        if (it.B > 24) continue;
        CAPTURE(it.fam);
        CAPTURE(it.p);
        CAPTURE(it.d);
        auto rep = verify_sharpness(it.fam, it.p, it.d);
        CHECK(rep.B == it.B);
        CHECK(rep.sharp);
        CHECK(rep.model_degree == rep.B);
        CHECK(rep.lower_bound == rep.B);
    }
}
