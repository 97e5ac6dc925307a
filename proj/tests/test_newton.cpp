#include "doctest.h"
#include "goodred/newton.hpp"
#include "support/gen.hpp"

using namespace goodred;
using namespace goodred::testgen;

namespace {
const FieldConfig* cfg5() { return FieldConfig::get(5, 1); }

Poly from_roots(const std::vector<PuiseuxElement>& roots) {
    const FieldConfig* cfg = roots[0].config();
    Poly f = Poly::constant(PuiseuxElement::one(cfg));
    for (auto& r : roots) {
        Level lv = join(f.level(), r.level());
        f = f.promote(lv) * Poly(cfg, {-r.promote(lv), PuiseuxElement::one(cfg).promote(lv)});
    }
    return f;
}
}  // namespace

TEST_CASE("polygon of z^2 - t: one segment, two roots of valuation 1/2") {
    auto one = PuiseuxElement::one(cfg5());
    auto t = PuiseuxElement::t_power(cfg5(), Rational(1));
    auto zero = PuiseuxElement::zero(cfg5());
    Poly f(cfg5(), {-t, zero, one});
    auto np = newton_polygon(f);
    REQUIRE(np.segments.size() == 1);
    CHECK(np.segments[0].slope == Rational(-1, 2));
    CHECK(np.segments[0].length == 2);
    auto roots = puiseux_roots(f);
    REQUIRE(roots.size() == 2);
    for (auto& r : roots) CHECK(r.value.val() == Valuation(Rational(1, 2)));
}

TEST_CASE("z^2 - tz: root of valuation 1 and an exact root at 0") {
    auto one = PuiseuxElement::one(cfg5());
    auto t = PuiseuxElement::t_power(cfg5(), Rational(1));
    auto zero = PuiseuxElement::zero(cfg5());
    Poly f(cfg5(), {zero, -t, one});
    auto roots = puiseux_roots(f);
    bool zero_root = false, t_root = false;
    for (auto& r : roots) {
        if (r.value.is_exact_zero()) zero_root = true;  // valuation +infinity
        if (r.value.certainly_equal(t)) t_root = true;
    }
    CHECK(zero_root);
    CHECK(t_root);
}

TEST_CASE("fixed points of t/z^d: d+1 roots of valuation 1/(d+1)") {
    auto one = PuiseuxElement::one(cfg5());
    auto t = PuiseuxElement::t_power(cfg5(), Rational(1));
    auto zero = PuiseuxElement::zero(cfg5());
    Poly F(cfg5(), {t, zero, zero, -one});  // t - z^3 for d = 2
    auto roots = puiseux_roots(F);
    long long total = 0;
    for (auto& r : roots) {
        total += r.multiplicity;
        CHECK(r.value.val() == Valuation(Rational(1, 3)));
        CHECK(r.value.pow(3).certainly_equal(t.promote(r.value.level())));
    }
    CHECK(total == 3);
}

TEST_CASE("property: root multiset matches polygon slopes") {
    Rng rng(41);
    for (int i = 0; i < 40; ++i) {
        long long deg = uniform(rng, 1, 4);
        std::vector<PuiseuxElement> c;
        for (long long j = 0; j <= deg; ++j)
            c.push_back(random_element(rng, cfg5(), Level{1, 1}, 0, 5));
        c.back() = random_nonzero_element(rng, cfg5(), Level{1, 1}, 0, 2);
        Poly f(cfg5(), c);
        if (f.degree() < 1) continue;
        std::vector<PuiseuxRoot> roots;
        try {
            roots = puiseux_roots(f);
        } catch (const WildBranchUnsupported&) {
            continue;
        }
        // multiset of valuations vs negated slopes with multiplicity
        std::vector<Rational> from_polygon, from_roots;
        long long nonzero_span = 0;
        auto np = [&] {
            long long m0 = 0;
            while (m0 <= f.degree() && f[(size_t)m0].is_exact_zero()) ++m0;
            std::vector<std::tuple<long long, Rational, bool>> pts;
            for (long long j = m0; j <= f.degree(); ++j) {
                if (f[(size_t)j].is_exact_zero()) continue;
                pts.push_back({j, f[(size_t)j].val().finite(), true});
            }
            return polygon_from_points(pts);
        }();
        for (auto& s : np.segments) {
            nonzero_span += s.length;
            for (long long k = 0; k < s.length; ++k) from_polygon.push_back(-s.slope);
        }
        for (auto& r : roots) {
            if (r.value.is_exact_zero()) continue;
            for (long long k = 0; k < r.multiplicity; ++k)
                from_roots.push_back(r.value.val().finite());
        }
        std::sort(from_polygon.begin(), from_polygon.end());
        std::sort(from_roots.begin(), from_roots.end());
        REQUIRE(from_polygon.size() == from_roots.size());
        for (size_t k = 0; k < from_polygon.size(); ++k)
            CHECK(from_polygon[k] == from_roots[k]);
        // total degree accounted
        long long total = 0;
        for (auto& r : roots) total += r.multiplicity;
        CHECK(total == f.degree());
    }
}

TEST_CASE("roots constructed from chosen targets are recovered") {
    Rng rng(42);
    for (int i = 0; i < 25; ++i) {
        std::vector<PuiseuxElement> want;
        int n = (int)uniform(rng, 1, 3);
        for (int j = 0; j < n; ++j) {
            Level lv{(long long)uniform(rng, 1, 2), 1};
            want.push_back(random_element(rng, cfg5(), lv, 0, 4, 2));
        }
        Poly f = from_roots(want);
        auto roots = puiseux_roots(f, Rational(30));
        for (auto& w : want) {
            bool found = false;
            for (auto& r : roots) {
                Level lv = join(w.level(), r.value.level());
                auto d = w.promote(lv) - r.value.promote(lv);
                if (d.is_exact_zero() || (d.is_apparent_zero() && *d.prec() >= Rational(20)))
                    found = true;
            }
            CHECK(found);
        }
    }
}

TEST_CASE("disk images: examples") {
    auto one = PuiseuxElement::one(cfg5());
    auto t = PuiseuxElement::t_power(cfg5(), Rational(1));
    auto zero = PuiseuxElement::zero(cfg5());
    // z^2 maps D(0, rho=1) to D(0, 2)
    Poly zsq(cfg5(), {zero, zero, one});
    auto phi = RationalMap::normalize(zsq, Poly::constant(one));
    auto di = disk_image(phi, zero, Rational(1));
    CHECK(di.radius_val == Rational(2));
    CHECK(di.center.v.is_exact_zero());
    // z + t: isometry
    Poly sh(cfg5(), {t, one});
    auto phi2 = RationalMap::normalize(sh, Poly::constant(one));
    auto di2 = disk_image(phi2, zero, Rational(1));
    CHECK(di2.radius_val == Rational(1));
    CHECK(di2.center.v.certainly_equal(t));
    // pole inside
    Poly zd(cfg5(), {zero, zero, one});
    auto phi3 = RationalMap::normalize(Poly::constant(one), zd);
    CHECK_THROWS_AS(disk_image(phi3, zero, Rational(1)), PoleInDisk);
}

TEST_CASE("weierstrass degrees") {
    auto one = PuiseuxElement::one(cfg5());
    auto t = PuiseuxElement::t_power(cfg5(), Rational(1));
    auto zero = PuiseuxElement::zero(cfg5());
    Poly zsq(cfg5(), {zero, zero, one});
    auto phi = RationalMap::normalize(zsq, Poly::constant(one));
    auto w = weierstrass_degree(phi, zero, Rational(0));
    CHECK(w.ell == 2);
    // z + t z^2 is one-to-one on the unit disk
    Poly f(cfg5(), {zero, one, t});
    auto phi2 = RationalMap::normalize(f, Poly::constant(one));
    CHECK(weierstrass_degree(phi2, zero, Rational(0)).ell == 1);
}

TEST_CASE("property: weierstrass ell-to-1 preimage counts") {
    Rng rng(43);
    int done = 0;
    for (int i = 0; i < 600 && done < 25; ++i) {
        auto phi = random_map(rng, cfg5(), uniform(rng, 2, 3));
        auto a = random_element(rng, cfg5(), Level{1, 1}, 0, 2, 2);
        Rational rho(uniform(rng, 0, 2));
        WeierstrassData w;
        try {
            w = weierstrass_degree(phi, a, rho);
        } catch (const Error&) {
            continue;
        }
        if (w.attained.size() != 1) continue;  // boundary ties: skip
        // pick y strictly inside the image disk of the difference and count
        // solutions of phi(z) = y + phi(a) in D(a, rho)
        auto ex = local_expansion(phi, a, phi.degree() + 1);
        PuiseuxElement y = PuiseuxElement::t_power(cfg5(), w.sigma + Rational(1)) + ex.coeff(0);
        // solutions: roots of num - y*den
        Poly eq = phi.num() - phi.den().scalar_mul(y);
        std::vector<PuiseuxRoot> roots;
        try {
            roots = puiseux_roots(eq.promote(join(eq.level(), a.level())), Rational(30));
        } catch (const Error&) {
            continue;
        }
        long long inside = 0;
        bool decidable = true;
        for (auto& r : roots) {
            auto d = r.value - a.promote(r.value.level());
            if (d.is_exact_zero()) { inside += r.multiplicity; continue; }
            if (d.is_apparent_zero()) { decidable = false; break; }
            if (d.val().finite() > rho) inside += r.multiplicity;
        }
        if (!decidable) continue;
        CHECK(inside == w.ell);
        ++done;
    }
    CHECK(done >= 25);
}
