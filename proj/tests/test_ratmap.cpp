#include "doctest.h"
#include "goodred/ratmap.hpp"
#include "support/gen.hpp"

using namespace goodred;
using namespace goodred::testgen;

namespace {
const FieldConfig* cfg5() { return FieldConfig::get(5, 1); }
const FieldConfig* cfg3() { return FieldConfig::get(3, 1); }

RationalMap one_over_zd(const FieldConfig* cfg, long long d, bool with_t) {
    auto one = PuiseuxElement::one(cfg);
    auto t = PuiseuxElement::t_power(cfg, Rational(1));
    std::vector<PuiseuxElement> den((size_t)d + 1, PuiseuxElement::zero(cfg));
    den[(size_t)d] = one;
    return RationalMap::normalize(Poly::constant(with_t ? t : one), Poly(cfg, den));
}
}  // namespace

TEST_CASE("normalize scales by a t-power") {
    auto one = PuiseuxElement::one(cfg5());
    auto t = PuiseuxElement::t_power(cfg5(), Rational(1));
    auto zero = PuiseuxElement::zero(cfg5());
    // (t z^2, z + t): already min-valuation 0
    Poly f(cfg5(), {zero, zero, t});
    Poly g(cfg5(), {t, one});
    auto m = RationalMap::normalize(f, g);
    CHECK(m.num()[2].certainly_equal(t));
    // (t z, t) -> (z, 1)
    Poly f2(cfg5(), {zero, t});
    Poly g2 = Poly::constant(t);
    auto m2 = RationalMap::normalize(f2, g2);
    CHECK(m2.num()[1].certainly_equal(one));
    CHECK(m2.den()[0].certainly_equal(one));
    // t/z^d stays as given
    auto m3 = one_over_zd(cfg3(), 2, true);
    CHECK(m3.num()[0].certainly_equal(PuiseuxElement::t_power(cfg3(), Rational(1))));
}

TEST_CASE("reduce examples") {
    // 1/z^d reduces to 1/z^d
    auto m = one_over_zd(cfg3(), 2, false);
    auto rm = reduce(m);
    CHECK(rm.degree == 2);
    CHECK(!rm.is_infinity);
    // t/z^d: numerator vanishes mod the maximal ideal, degree drops to 0
    auto m2 = one_over_zd(cfg3(), 2, true);
    auto rm2 = reduce(m2);
    CHECK(rm2.degree == 0);
    CHECK(rp_deg(rm2.F, rm2.num) < 0);
}

TEST_CASE("good reduction: degree test and resultant test agree") {
    CHECK(has_good_reduction(one_over_zd(cfg3(), 2, false)));
    CHECK(!has_good_reduction(one_over_zd(cfg3(), 2, true)));
}

TEST_CASE("characterization equivalence on random maps") {
    Rng rng(31);
    for (int i = 0; i < 400; ++i) {
        auto phi = random_map(rng, cfg5(), uniform(rng, 2, 4));
        CHECK_NOTHROW(has_good_reduction(phi));  // equivalence is checked internally
    }
}

TEST_CASE("conjugation by the scaling map: t/z^d becomes 1/z^d") {
    auto cfg = cfg3();
    auto phi = one_over_zd(cfg, 2, true);
    auto beta = PuiseuxElement::t_power(cfg, Rational(1, 3));
    auto binv = PuiseuxElement::one(cfg).promote(beta.level()).div(beta);
    auto psi = conjugate(phi, MobiusMap::affine(binv, PuiseuxElement::zero(cfg)));
    CHECK(has_good_reduction(psi));
    CHECK(psi.num().degree() == 0);
    CHECK(psi.num()[0].certainly_equal(PuiseuxElement::one(cfg).promote(psi.level())));
}

TEST_CASE("conjugation by the identity") {
    auto phi = one_over_zd(cfg3(), 2, true);
    auto psi = conjugate(phi, MobiusMap::identity(cfg3()));
    CHECK(psi.num()[0].certainly_equal(phi.num()[0].promote(psi.level())));
    CHECK(psi.den()[2].certainly_equal(phi.den()[2].promote(psi.level())));
}

TEST_CASE("property: conjugation round-trip and degree preservation") {
    Rng rng(32);
    for (int i = 0; i < 60; ++i) {
        auto phi = random_map(rng, cfg5(), uniform(rng, 2, 3));
        auto h = random_mobius(rng, cfg5());
        auto psi = conjugate(phi, h);
        CHECK(psi.degree() == phi.degree());
        auto back = conjugate(psi, h.inverse());
        CHECK(back.degree() == phi.degree());
        // equality as maps: conjugation round trips up to a unit scalar,
        // since normalization rescales by t-powers only
        Level lv = join(back.level(), phi.level());
        Poly l = back.num().promote(lv) * phi.den().promote(lv);
        Poly r = back.den().promote(lv) * phi.num().promote(lv);
        REQUIRE(!l.is_zero());
        REQUIRE(!r.is_zero());
        PuiseuxElement s = l.lead().div(r.lead());
        for (long long j = 0; j <= std::max(l.degree(), r.degree()); ++j) {
            PuiseuxElement dj = l.coeff_or_zero(j) - r.coeff_or_zero(j) * s;
            CHECK(dj.terms().empty());
        }
    }
}

TEST_CASE("good reduction is invariant under integral unit conjugation") {
    Rng rng(33);
    const ResidueField* F = ResidueField::get(5, 1);
    int tried = 0;
    for (int i = 0; i < 200 && tried < 40; ++i) {
        auto phi = random_good_reduction_map(rng, cfg5(), 2);
        // integral entries with unit determinant reduction
        PuiseuxElement a = PuiseuxElement::constant(cfg5(), Level{1, 1}, random_residue(rng, F));
        PuiseuxElement b = PuiseuxElement::constant(cfg5(), Level{1, 1}, random_residue(rng, F));
        PuiseuxElement c = PuiseuxElement::constant(cfg5(), Level{1, 1}, random_residue(rng, F));
        PuiseuxElement d = PuiseuxElement::constant(cfg5(), Level{1, 1}, random_residue(rng, F));
        auto det = a * d - b * c;
        if (det.is_exact_zero() || det.val() != Valuation(Rational(0))) continue;
        ++tried;
        auto psi = conjugate(phi, MobiusMap(a, b, c, d));
        CHECK(has_good_reduction(psi));
    }
    CHECK(tried >= 40);
}

TEST_CASE("multipliers at finite points and infinity") {
    auto cfg = cfg5();
    auto one = PuiseuxElement::one(cfg);
    auto zero = PuiseuxElement::zero(cfg);
    // z^2: lambda = 0 at 0 and at infinity
    Poly zsq(cfg, {zero, zero, one});
    auto phi = RationalMap::normalize(zsq, Poly::constant(one));
    CHECK(multiplier_at(phi, Point::finite(zero)).is_exact_zero());
    CHECK(multiplier_at(phi, Point::infinity(cfg)).is_exact_zero());
    // z + z^2 at 0: lambda = 1
    Poly f(cfg, {zero, one, one});
    auto phi2 = RationalMap::normalize(f, Poly::constant(one));
    CHECK(multiplier_at(phi2, Point::finite(zero)).certainly_equal(one));
    // not fixed
    CHECK_THROWS_AS(multiplier_at(phi2, Point::finite(one)), NotFixed);
}
