#include "goodred/families.hpp"

#include "goodred/errors.hpp"

namespace goodred {

namespace {

long long pow_ll(long long b, long long e) {
    long long r = 1;
    for (long long i = 0; i < e; ++i) r = detail::checked_cast(__int128(r) * b, "pow");
    return r;
}

long long binom_ll(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    __int128 r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * (n - k + i);
        r /= i;
    }
    return detail::checked_cast(r, "binomial");
}

struct FamilyShape {
    long long q, m, e;
};

FamilyShape family_shape(int which, long long p, long long d) {
    if (which == 1) {
        if (d < 3) throw CaseInapplicable("family 1 needs d >= 3");
        long long e = p_adic_val(p, d);
        if (p < 2 || e < 1) throw CaseInapplicable("family 1 needs p | d");
        long long q = pow_ll(p, e);
        return {q, d / q, e};
    }
    if (which == 2) {
        if (d < 3) throw CaseInapplicable("family 2 needs d >= 3");
        long long e = p_adic_val(p, d - 1);
        if (p < 2 || e < 1) throw CaseInapplicable("family 2 needs p | d-1");
        long long q = pow_ll(p, e);
        return {q, (d - 1) / q, e};
    }
    if (which == 3) {
        if (degree_bound(p, d) != d + 1)
            throw CaseInapplicable("family 3 witnesses B = d+1 only");
        return {1, 1, 0};
    }
    throw CaseInapplicable("family must be 1, 2 or 3");
}

}  // namespace

RationalMap make_family(int which, long long p, long long d) {
    if (d < 2) throw CaseInapplicable("families need d >= 2");
    const FieldConfig* cfg = FieldConfig::get(p, 1);
    PuiseuxElement t = PuiseuxElement::t_power(cfg, Rational(1));
    PuiseuxElement one = PuiseuxElement::one(cfg);
    PuiseuxElement zero = PuiseuxElement::zero(cfg);
    FamilyShape fs = family_shape(which, p, d);

    if (which == 1) {
        // z + (t^{-1} z^q - 1)^m, cleared by t^m: num = t^m z + sum_i
        // C(m,i)(-1)^(m-i) t^(m-i) z^(qi), den = t^m
        long long q = fs.q, m = fs.m;
        std::vector<PuiseuxElement> num((size_t)(q * m) + 1, zero);
        num[1] = num[1] + t.pow(m);
        const ResidueField* RF = one.residue_field();
        for (long long i = 0; i <= m; ++i) {
            long long b = binom_ll(m, i);
            RElem c = RF->from_int(((m - i) % 2 == 0) ? b : -b);
            PuiseuxElement term = PuiseuxElement::constant(cfg, Level{1, 1}, c) * t.pow(m - i);
            num[(size_t)(q * i)] = num[(size_t)(q * i)] + term;
        }
        Poly N(cfg, std::move(num));
        Poly D = Poly::constant(t.pow(m));
        RationalMap phi = RationalMap::normalize(N, D);
        if (phi.degree() != d) throw InternalError("family 1 degree mismatch");
        return phi;
    }
    if (which == 2) {
        // z + t^(d-1) / (z^q - t^(q-1))^m
        long long q = fs.q, m = fs.m;
        std::vector<PuiseuxElement> base((size_t)q + 1, zero);
        base[0] = -t.pow(q - 1);
        base[(size_t)q] = one;
        Poly den_inner(cfg, std::move(base));
        Poly D = Poly::constant(one);
        for (long long i = 0; i < m; ++i) D = D * den_inner;
        Poly N = Poly::z(cfg) * D + Poly::constant(t.pow(d - 1));
        RationalMap phi = RationalMap::normalize(N, D);
        if (phi.degree() != d) throw InternalError("family 2 degree mismatch");
        return phi;
    }
    // family 3: t / z^d
    std::vector<PuiseuxElement> dd((size_t)d + 1, zero);
    dd[(size_t)d] = one;
    RationalMap phi = RationalMap::normalize(Poly::constant(t), Poly(cfg, std::move(dd)));
    if (phi.degree() != d) throw InternalError("family 3 degree mismatch");
    return phi;
}

SharpnessReport verify_sharpness(int which, long long p, long long d) {
    const FieldConfig* cfg = FieldConfig::get(p, 1);
    FamilyShape fs = family_shape(which, p, d);
    long long B = degree_bound(p, d);
    long long q = fs.q, m = fs.m;

    RationalMap phi = make_family(which, p, d);

    PuiseuxElement t = PuiseuxElement::t_power(cfg, Rational(1));
    PuiseuxElement one = PuiseuxElement::one(cfg);
    PuiseuxElement gamma = t.nth_root(B);  // level (B, 1), exact
    Level L = gamma.level();
    if (L.degree() != B) throw InternalError("radical level degree mismatch");

    // case data: alpha, beta, conjugator h, and the paper invariant point
    PuiseuxElement alpha, beta, center;
    Rational rho(0);
    MobiusMap h = MobiusMap::identity(cfg);
    if (which == 1) {
        alpha = gamma.pow(d - 1);
        beta = gamma.pow(q);
        // h = beta^{-m} (z - alpha)
        PuiseuxElement bm = one.promote(L).div(beta.pow(m));
        h = MobiusMap::affine(bm, -(alpha * bm));
        center = alpha;
        rho = Rational(m) * beta.val().finite();
    } else if (which == 2) {
        alpha = gamma.pow(d);
        beta = gamma.pow(q);
        PuiseuxElement bd = one.promote(L).div(beta.pow(d - 1));
        h = MobiusMap::affine(bd, -(alpha.pow(q - 1) * bd));
        center = alpha.pow(q - 1);
        rho = Rational(d - 1) * beta.val().finite();
    } else {
        beta = gamma;
        alpha = PuiseuxElement::zero(cfg, L);
        PuiseuxElement binv = one.promote(L).div(beta);
        h = MobiusMap::affine(binv, PuiseuxElement::zero(cfg, L));
        center = alpha;
        rho = beta.val().finite();
    }

    RationalMap psi = conjugate(phi.promote(join(phi.level(), L)), h);
    TypeIIPoint xi(center, rho);
    SharpnessReport rep(h, psi, xi);
    rep.family = which;
    rep.p = p;
    rep.d = d;
    rep.q = q;
    rep.m = m;
    rep.B = B;

    auto fail = [&](const std::string& clause) { rep.failures.push_back(clause); };

    rep.bad_reduction_over_base = !has_good_reduction(phi);
    if (!rep.bad_reduction_over_base) fail("map has good reduction over the base field");

    rep.conjugate_good_reduction = has_good_reduction(psi);
    if (!rep.conjugate_good_reduction) fail("conjugate lacks good reduction");

    rep.model_level = L;
    rep.model_degree = L.degree();
    if (rep.model_degree != B) fail("model level degree differs from B");
    rep.totally_ramified = (L.f == 1);

    rep.invariant_verified = is_totally_invariant(phi, xi);
    if (!rep.invariant_verified) fail("paper invariant point fails verification");
    if (!mobius_on_type2(h, xi).is_gauss()) fail("conjugator does not move the point to Gauss");

    try {
        auto found = find_invariant_point(phi);
        rep.finder_agrees = found && found->same_point(xi.canonical());
    } catch (const Error&) {
        rep.finder_agrees = false;
    }
    if (!rep.finder_agrees) fail("invariant point finder disagrees");

    rep.lower_bound = ramification_lower_bound(Point::finite(center), rho, Level{1, 1});
    if (rep.lower_bound != B) fail("ramification lower bound differs from B");

    // inner-coefficient audit for families 1 and 2: over k((t)) the binomial
    // C(q, j) vanishes for 0 < j < q, so the generic strict bound holds with
    // the coefficient exactly zero
    if (which == 1 || which == 2) {
        const ResidueField* RF = one.residue_field();
        for (long long j = 1; j <= q - 1; ++j) {
            CoefficientAudit a;
            a.j = j;
            if (which == 1)
                a.exponent = Rational(j - q) / Rational(q * (d - 1));
            else
                a.exponent = -(Rational(q - j) * Rational(d - q)) / Rational(d * q);
            a.binomial_vanishes = RF->is_zero(RF->from_int(binom_ll(q, j)));
            bool exponent_ok = a.exponent > Rational(-1);
            PuiseuxElement coef;
            if (which == 1) {
                // C(q,j) alpha^{-j} beta^{mj-1}
                coef = PuiseuxElement::constant(cfg, L, RF->from_int(binom_ll(q, j)))
                           .promote(L) *
                       beta.pow(m * j - 1) / alpha.pow(j);
            } else {
                // C(q,j) alpha^{(q-j)(q-1)} beta^{-(q-j)(d-1)}
                coef = PuiseuxElement::constant(cfg, L, RF->from_int(binom_ll(q, j)))
                           .promote(L) *
                       alpha.pow((q - j) * (q - 1)) / beta.pow((q - j) * (d - 1));
            }
            bool integral = coef.is_exact_zero() ||
                            (coef.has_certified_val() && coef.val() > Valuation(Rational(0)));
            a.bound_holds = exponent_ok && (a.binomial_vanishes ? coef.is_exact_zero() : integral);
            if (!a.bound_holds) fail("coefficient audit fails at j = " + std::to_string(j));
            rep.audit.push_back(a);
        }
    }

    // family-specific shape checks
    if (which == 1) {
        // monic integral polynomial model; the positive-valuation claim
        // concerns the coefficients inside the m-th power, audited above
        if (psi.den().degree() != 0) fail("family 1 model is not a polynomial");
        PuiseuxElement lead = psi.num().lead().div(psi.den()[0]);
        if (!lead.certainly_equal(one.promote(lead.level())))
            fail("family 1 model is not monic");
        for (long long i = 0; i < psi.num().degree(); ++i) {
            const PuiseuxElement& c = psi.num()[(size_t)i];
            if (c.is_exact_zero()) continue;
            if (!(c.val_lower() >= Valuation(Rational(0)))) {
                fail("family 1 coefficient " + std::to_string(i) + " is not integral");
                break;
            }
        }
    } else if (which == 2) {
        // reduction equals (z^d + 1) / z^(d-1)
        ReducedMap rm = reduce(psi);
        const ResidueField* F = rm.F;
        RPoly want_num((size_t)d + 1, F->zero());
        want_num[0] = F->one();
        want_num[(size_t)d] = F->one();
        RPoly want_den((size_t)d, F->zero());
        want_den[(size_t)(d - 1)] = F->one();
        ReducedMap want;
        want.F = F;
        want.num = want_num;
        want.den = want_den;
        want.degree = d;
        if (rm.is_infinity || !rm.equal_as_map(want))
            fail("family 2 reduction is not (z^d+1)/z^(d-1)");
    } else {
        // model is exactly 1/z^d
        bool exact = psi.num().degree() == 0 && psi.den().degree() == d &&
                     psi.num()[0].certainly_equal(one.promote(psi.level()));
        if (exact) {
            for (long long i = 0; i < d; ++i)
                if (!psi.den()[(size_t)i].is_exact_zero()) exact = false;
            if (!psi.den()[(size_t)d].certainly_equal(one.promote(psi.level()))) exact = false;
        }
        if (!exact) fail("family 3 model is not exactly 1/z^d");
    }

    rep.sharp = rep.failures.empty();
    return rep;
}

}  // namespace goodred
