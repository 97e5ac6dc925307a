#include "doctest.h"
#include "goodred/families.hpp"
#include "goodred/goodmodel.hpp"
#include "support/gen.hpp"

using namespace goodred;
using namespace goodred::testgen;

namespace {
const FieldConfig* cfg3() { return FieldConfig::get(3, 1); }
const FieldConfig* cfg5() { return FieldConfig::get(5, 1); }

RationalMap map_of(const FieldConfig* cfg, std::vector<PuiseuxElement> num,
                   std::vector<PuiseuxElement> den) {
    return RationalMap::normalize(Poly(cfg, std::move(num)), Poly(cfg, std::move(den)));
}
}  // namespace

TEST_CASE("degree bound: pinned values") {
    CHECK(degree_bound(2, 4) == 12);
    CHECK(degree_bound(2, 3) == 6);
    CHECK(degree_bound(5, 3) == 4);
    CHECK(degree_bound(0, 7) == 8);
    CHECK(degree_bound(3, 2) == 3);
    CHECK(degree_bound(3, 10) == 90);
}

TEST_CASE("degree bound: envelope on a grid") {
    for (long long p : {0LL, 2LL, 3LL, 5LL, 7LL, 11LL}) {
        for (long long d = 2; d <= 12; ++d) {
            long long B = degree_bound(p, d);
            if (d >= 3) CHECK(B <= d * (d - 1));
            if (d == 2 || (p > d)) CHECK(B == d + 1);
            if (p == 0) CHECK(B == d + 1);
        }
    }
}

TEST_CASE("low degree point in a disk: base cases") {
    auto one = PuiseuxElement::one(cfg5());
    auto t = PuiseuxElement::t_power(cfg5(), Rational(1));
    // q = 1 over F5 for n = 2: the linear coefficient polynomial root
    // f = (z - t)(z - 2t): both roots in the closed disk of radius val 1
    Poly f = Poly(cfg5(), {-t, one}) * Poly(cfg5(), {-t.scalar_mul(one.residue_field()->from_int(2)), one});
    ClosedDisk V{PuiseuxElement::zero(cfg5()), Rational(1)};
    Point a = low_degree_point_in_disk(f, V);
    REQUIRE(!a.inf);
    CHECK(a.v.level().degree() == 1);  // base rational
    auto d = a.v - V.center.promote(a.v.level());
    CHECK(d.val() >= Valuation(Rational(1)));
}

TEST_CASE("low degree point in a disk: wild cluster over F2") {
    // f = z^2 - 2 t z + t^3-style shape with both roots near t: the
    // coefficient polynomial has degree q = 2 and its root lands in the disk
    auto cfg = FieldConfig::get(2, 1);
    auto one = PuiseuxElement::one(cfg);
    auto t = PuiseuxElement::t_power(cfg, Rational(1));
    // roots t + t^2 and t + t^3 (cluster at t, radius val 2)
    Poly f = Poly(cfg, {-(t + t * t), one}) * Poly(cfg, {-(t + t * t * t), one});
    ClosedDisk V{t, Rational(2)};
    Point a = low_degree_point_in_disk(f, V);
    REQUIRE(!a.inf);
    auto d = a.v - V.center.promote(a.v.level());
    CHECK(!(d.val_lower() < Valuation(Rational(2))));
    CHECK(a.v.level().degree() <= 2);  // extension degree at most q = 2
}

TEST_CASE("find_good_model: t/z^2 over F3 reaches 1/z^2 at degree B = 3") {
    auto one = PuiseuxElement::one(cfg3());
    auto zero = PuiseuxElement::zero(cfg3());
    auto t = PuiseuxElement::t_power(cfg3(), Rational(1));
    auto phi = map_of(cfg3(), {t}, {zero, zero, one});
    auto mr = find_good_model(phi);
    REQUIRE(mr.has_value());
    CHECK(mr->extension_degree == 3);
    CHECK(mr->bound == 3);
    CHECK(has_good_reduction(mr->psi));
    CHECK(mr->psi.num().degree() == 0);
    CHECK(mr->psi.den().degree() == 2);
    CHECK(mr->psi.num()[0].certainly_equal(PuiseuxElement::one(cfg3()).promote(mr->psi.level())));
    for (long long i = 0; i < 2; ++i) CHECK(mr->psi.den()[(size_t)i].is_exact_zero());
}

TEST_CASE("find_good_model: good reduction input needs no extension") {
    auto one = PuiseuxElement::one(cfg3());
    auto zero = PuiseuxElement::zero(cfg3());
    auto phi = map_of(cfg3(), {one}, {zero, zero, one});
    auto mr = find_good_model(phi);
    REQUIRE(mr.has_value());
    CHECK(mr->extension_degree == 1);
    REQUIRE(!mr->trace.empty());
    CHECK(mr->trace[0].label == 1);
}

TEST_CASE("find_good_model: round trip through a known conjugation") {
    // conjugate z^2 by z -> z + c with v(c) < 0; the model is recovered over
    // the base field
    auto one = PuiseuxElement::one(cfg5());
    auto zero = PuiseuxElement::zero(cfg5());
    auto c = PuiseuxElement::one(cfg5()).div(PuiseuxElement::t_power(cfg5(), Rational(1)));
    auto psi = map_of(cfg5(), {zero, zero, one}, {one});
    auto phi = conjugate(psi, MobiusMap::affine(one, c));
    CHECK(!has_good_reduction(phi));
    auto mr = find_good_model(phi);
    REQUIRE(mr.has_value());
    CHECK(mr->extension_degree == 1);
    CHECK(has_good_reduction(mr->psi));
}

TEST_CASE("find_good_model: the degree-4 family runs cases 6, 3, 1") {
    auto cfg = FieldConfig::get(2, 1);
    auto one = PuiseuxElement::one(cfg);
    auto zero = PuiseuxElement::zero(cfg);
    auto t = PuiseuxElement::t_power(cfg, Rational(1));
    auto tinv = one.div(t);
    Poly num(cfg, {-one, one, zero, zero, tinv});
    auto phi = RationalMap::normalize(num, Poly::constant(one));
    auto mr = find_good_model(phi);
    REQUIRE(mr.has_value());
    CHECK(mr->extension_degree == 12);
    CHECK(mr->bound == 12);
    CHECK(has_good_reduction(mr->psi));
    REQUIRE(mr->trace.size() == 3);
    CHECK(mr->trace[0].label == 6);
    CHECK(mr->trace[1].label == 3);
    CHECK(mr->trace[2].label == 1);
}

TEST_CASE("find_good_model: indifferent single-component example runs case 5") {
    // z + t^(1/2) z^2 over F2((t^(1/2)))-shifted coordinates: build a map whose
    // invariant point is hidden at radius 1/2 and whose single rational
    // component is indifferent. Conjugate z + t z^2 by z -> t^(1/2) z over the
    // ramified level, then rebuild it as a base-field map in disguise.
    auto cfg = FieldConfig::get(5, 1);
    auto one = PuiseuxElement::one(cfg);
    auto zero = PuiseuxElement::zero(cfg);
    auto t = PuiseuxElement::t_power(cfg, Rational(1));
    // phi = z / (t z + 1) has an indifferent fixed disk of radius |t|^(-1/2)?
    // Instead, verify the alpha construction directly on a two-component case:
    // z + t z^2 at the Gauss point is indifferent on the inner disk.
    auto phi = map_of(cfg, {zero, one, t}, {one});
    TypeIIPoint gauss = TypeIIPoint::gauss(cfg);
    Direction Uin = direction_of(Point::finite(zero), gauss);
    Point w = Point::finite(zero);
    Point alpha = point_outside_indifferent_component(phi, gauss, Uin, w);
    Direction da = direction_of(alpha, gauss);
    CHECK(!da.same_direction(Uin));
}

TEST_CASE("point outside attracting component: degree bound p^(v_p(d))") {
    // p = 3, d = 2: bound p^0 = 1, the point is base rational
    auto one = PuiseuxElement::one(cfg3());
    auto zero = PuiseuxElement::zero(cfg3());
    auto t = PuiseuxElement::t_power(cfg3(), Rational(1));
    auto phi = map_of(cfg3(), {t, zero, one}, {one});  // z^2 + t
    TypeIIPoint gauss = TypeIIPoint::gauss(cfg3());
    Direction Uin = direction_of(Point::finite(zero), gauss);
    auto cc = classify_component(phi, gauss, Uin);
    REQUIRE(cc.status == ComponentStatus::attracting);
    Point alpha = point_outside_attracting_component(phi, gauss, Uin, Point::finite(zero));
    REQUIRE(!alpha.inf);
    CHECK(alpha.v.minimize().level().degree() == 1);
    CHECK(!direction_of(alpha, gauss).same_direction(Uin));
}

TEST_CASE("two-component constructions: attracting and indifferent modes") {
    // z + t^{-1} z^5 over F5 hides its invariant point at radius 1/4; the
    // outside component is attracting of mapping degree 5 and the scaling
    // root has degree ell - 1 = 4
    auto one = PuiseuxElement::one(cfg5());
    auto zero = PuiseuxElement::zero(cfg5());
    auto tinv = one.div(PuiseuxElement::t_power(cfg5(), Rational(1)));
    Poly num(cfg5(), {zero, one, zero, zero, zero, tinv});
    auto phi = RationalMap::normalize(num, Poly::constant(one));
    REQUIRE(phi.degree() == 5);
    auto mr = find_good_model(phi);
    REQUIRE(mr.has_value());
    CHECK(mr->extension_degree == 4);
    REQUIRE(mr->trace.size() == 2);
    CHECK(mr->trace[0].label == 3);
    CHECK(mr->trace[1].label == 1);
    CHECK(has_good_reduction(mr->psi));

    // both components indifferent at the Gauss point: the sibling-preimage
    // construction yields a base-rational point outside both
    Poly n2(cfg5(), {zero, one, zero, one});      // z^3 + z
    Poly d2(cfg5(), {one + one, zero, one});      // z^2 + 2
    auto psi = RationalMap::normalize(n2, d2);
    REQUIRE(has_good_reduction(psi));
    TypeIIPoint gauss = TypeIIPoint::gauss(cfg5());
    Direction Uin = direction_of(Point::finite(zero), gauss);
    Direction Uout = direction_of(Point::infinity(cfg5()), gauss);
    auto cin = classify_component(psi, gauss, Uin);
    auto cout_ = classify_component(psi, gauss, Uout);
    REQUIRE(cin.status == ComponentStatus::indifferent);
    REQUIRE(cout_.status == ComponentStatus::indifferent);
    Point alpha = point_outside_two_components(
        psi, gauss, Uin, Point::finite(zero), Uout, Point::infinity(cfg5()),
        TwoComponentMode::both_fixed_or_attracting, cin.status);
    REQUIRE(!alpha.inf);
    CHECK(alpha.v.minimize().level().degree() == 1);
    CHECK(!direction_of(alpha, gauss).same_direction(Uin));
    CHECK(!direction_of(alpha, gauss).outside);
}

TEST_CASE("ramification lower bound: pinned examples and monotonicity") {
    auto cfg = FieldConfig::get(2, 1);
    Level base{1, 1};
    CHECK(ramification_lower_bound(Point::finite(PuiseuxElement::zero(cfg)), Rational(1, 3),
                                   base) == 3);
    CHECK(ramification_lower_bound(
              Point::finite(PuiseuxElement::t_power(cfg, Rational(1, 4))), Rational(1, 3),
              base) == 12);
    CHECK(ramification_lower_bound(Point::finite(PuiseuxElement::zero(cfg)), Rational(2),
                                   base) == 1);
    // refining the base lattice never increases the bound
    Rng rng(71);
    for (int i = 0; i < 200; ++i) {
        Rational va(uniform(rng, 1, 12), uniform(rng, 1, 6));
        Rational rb(uniform(rng, 1, 12), uniform(rng, 1, 6));
        Point a = Point::finite(PuiseuxElement::t_power(cfg, va));
        long long coarse = ramification_lower_bound(a, rb, Level{1, 1});
        long long e2 = uniform(rng, 1, 4);
        long long fine = ramification_lower_bound(a, rb, Level{e2, 1});
        CHECK(fine <= coarse);
        CHECK(coarse % fine == 0);
    }
}

TEST_CASE("the dispatcher reaches the exact bound on the sharp families") {
    struct Item { int fam; long long p, d, B; };
    std::vector<Item> grid = {
        {2, 2, 3, 6}, {1, 3, 3, 6}, {2, 3, 4, 12}, {3, 5, 3, 4}, {1, 2, 6, 10},
    };
    for (auto& it : grid) {
        CAPTURE(it.fam);
        CAPTURE(it.p);
        CAPTURE(it.d);
        auto phi = make_family(it.fam, it.p, it.d);
        auto mr = find_good_model(phi);
        REQUIRE(mr.has_value());
        CHECK(mr->extension_degree == it.B);
        CHECK(mr->bound == it.B);
        CHECK(has_good_reduction(mr->psi));
        REQUIRE(!mr->trace.empty());
        CHECK(mr->trace.back().label == 1);
    }
}

TEST_CASE("property: recovered models stay within the bound") {
    Rng rng(72);
    int ok = 0, inconclusive = 0;
    const int want = 30;
    for (int i = 0; ok + inconclusive < want; ++i) {
        long long d = uniform(rng, 2, 3);
        auto psi = random_good_reduction_map(rng, cfg5(), d);
        Level hl{(long long)uniform(rng, 1, 3), (long long)uniform(rng, 1, 2)};
        auto h = random_mobius(rng, cfg5(), hl);
        auto phi = conjugate(psi, h);
        try {
            auto mr = find_good_model(phi);
            if (!mr) { ++inconclusive; continue; }
            CHECK(has_good_reduction(mr->psi));
            CHECK(mr->extension_degree <= mr->bound);
            ++ok;
        } catch (const WildBranchUnsupported&) {
            ++inconclusive;
        } catch (const WildRootUnsupported&) {
            ++inconclusive;
        }
    }
    CHECK(ok >= want * 9 / 10);
}
