#include "goodred/ratmap.hpp"

#include <algorithm>

#include "goodred/errors.hpp"

namespace goodred {

MobiusMap::MobiusMap(PuiseuxElement a, PuiseuxElement b, PuiseuxElement c, PuiseuxElement d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    Level lv = join(join(a_.level(), b_.level()), join(c_.level(), d_.level()));
    a_ = a_.promote(lv);
    b_ = b_.promote(lv);
    c_ = c_.promote(lv);
    d_ = d_.promote(lv);
    PuiseuxElement det = a_ * d_ - b_ * c_;
    if (det.is_exact_zero()) throw DegenerateTriple("mobius map with zero determinant");
    if (det.is_apparent_zero())
        throw PrecisionExhausted("mobius determinant certified only to O(t^" +
                                 det.prec()->str() + ")");
}

MobiusMap MobiusMap::identity(const FieldConfig* cfg) {
    return MobiusMap(PuiseuxElement::one(cfg), PuiseuxElement::zero(cfg),
                     PuiseuxElement::zero(cfg), PuiseuxElement::one(cfg));
}

MobiusMap MobiusMap::affine(const PuiseuxElement& a, const PuiseuxElement& b) {
    const FieldConfig* cfg = a.config();
    return MobiusMap(a, b, PuiseuxElement::zero(cfg), PuiseuxElement::one(cfg));
}

MobiusMap MobiusMap::inversion(const FieldConfig* cfg) {
    return MobiusMap(PuiseuxElement::zero(cfg), PuiseuxElement::one(cfg),
                     PuiseuxElement::one(cfg), PuiseuxElement::zero(cfg));
}

Level MobiusMap::level() const { return a_.level(); }

Point MobiusMap::apply(const Point& x) const {
    const FieldConfig* cfg = config();
    if (x.inf) {
        if (c_.is_exact_zero()) return Point::infinity(cfg);
        if (c_.is_apparent_zero()) throw PrecisionExhausted("mobius at infinity");
        return Point::finite(a_.div(c_));
    }
    PuiseuxElement numv = a_ * x.v + b_;
    PuiseuxElement denv = c_ * x.v + d_;
    if (denv.is_exact_zero()) return Point::infinity(cfg);
    if (denv.is_apparent_zero()) throw PrecisionExhausted("mobius denominator uncertifiable");
    return Point::finite(numv.div(denv));
}

MobiusMap MobiusMap::inverse() const { return MobiusMap(d_, -b_, -c_, a_); }

MobiusMap MobiusMap::compose(const MobiusMap& o) const {
    return MobiusMap(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                     c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

MobiusMap MobiusMap::promote(Level target) const {
    return MobiusMap(a_.promote(target), b_.promote(target), c_.promote(target),
                     d_.promote(target));
}

std::string MobiusMap::str() const {
    return "(" + a_.str() + ", " + b_.str() + ", " + c_.str() + ", " + d_.str() + ")";
}

bool ReducedMap::equal_as_map(const ReducedMap& o) const {
    if (is_infinity != o.is_infinity) return false;
    if (is_infinity) return true;
    if (F != o.F) return false;
    // cross-multiplied equality up to a scalar
    RPoly l = rp_mul(F, num, o.den), r = rp_mul(F, o.num, den);
    if (rp_deg(F, l) != rp_deg(F, r)) return false;
    if (l.empty()) return r.empty();
    if (r.empty()) return false;
    RElem s = F->div(l.back(), r.back());
    return rp_eq(F, l, rp_scalar(F, r, s));
}

std::string ReducedMap::str() const {
    if (is_infinity) return "inf";
    return "(" + rp_str(F, num) + ")/(" + rp_str(F, den) + ")";
}

RationalMap RationalMap::normalize(const Poly& f, const Poly& g) {
    if (f.is_zero() && g.is_zero()) throw InternalError("normalize(0, 0)");
    const FieldConfig* cfg = f.config() ? f.config() : g.config();
    Level lv = join(f.level(), g.level());
    Poly F = f.promote(lv), G = g.promote(lv);

    // minimal coefficient valuation across both polynomials
    bool have = false;
    Rational m(0);
    bool ambiguous = false;
    Rational amb_bound(0);
    auto scan = [&](const Poly& P) {
        for (auto& c : P.coeffs()) {
            if (c.is_exact_zero()) continue;
            if (c.is_apparent_zero()) {
                if (!ambiguous || *c.prec() < amb_bound) { ambiguous = true; amb_bound = *c.prec(); }
                continue;
            }
            Rational v = c.val().finite();
            if (!have || v < m) { have = true; m = v; }
        }
    };
    scan(F);
    scan(G);
    if (!have) throw PrecisionExhausted("normalize: no certified coefficient");
    if (ambiguous && !(m < amb_bound))
        throw PrecisionExhausted("normalize: minimal valuation uncertifiable");

    RationalMap r;
    r.num_ = F.shift_t(-m);
    r.den_ = G.shift_t(-m);
    r.deg_ = std::max(r.num_.degree(), r.den_.degree());
    if (r.deg_ < 0) throw InternalError("normalize: empty map");
    if (r.deg_ >= 1) {
        // formal degree-d resultant: also sees degeneration at infinity
        r.res_ = resultant(r.num_, r.den_, r.deg_);
        if (r.res_.is_exact_zero())
            throw NotCoprime("numerator and denominator share a factor");
    } else {
        r.res_ = PuiseuxElement::one(cfg);
    }
    Level lv2 = join(r.num_.level(), r.den_.level());
    r.num_ = r.num_.promote(lv2);
    r.den_ = r.den_.promote(lv2);
    return r;
}

RationalMap RationalMap::promote(Level target) const {
    RationalMap r;
    r.num_ = num_.promote(target);
    r.den_ = den_.promote(target);
    r.deg_ = deg_;
    r.res_ = res_.promote(target);
    return r;
}

Level RationalMap::minimal_level() const {
    return join(num_.minimal_level(), den_.minimal_level());
}

Point RationalMap::eval(const Point& x) const {
    const FieldConfig* cfg = config();
    if (x.inf) {
        long long dn = num_.degree(), dd = den_.degree();
        if (dn > dd) return Point::infinity(cfg);
        if (dn < dd) return Point::finite(PuiseuxElement::zero(cfg, level()));
        return Point::finite(num_.lead().div(den_.lead()));
    }
    PuiseuxElement nv = num_.eval(x.v);
    PuiseuxElement dv = den_.eval(x.v);
    if (dv.is_exact_zero()) {
        if (nv.is_exact_zero()) throw InternalError("eval: 0/0 on coprime map");
        return Point::infinity(cfg);
    }
    if (dv.is_apparent_zero()) {
        if (!nv.is_apparent_zero() && !nv.is_exact_zero() &&
            nv.val() < Valuation(*dv.prec()))
            return Point::infinity(cfg);  // pole dominates
        throw PrecisionExhausted("eval: denominator uncertifiable");
    }
    return Point::finite(nv.div(dv));
}

std::string RationalMap::str() const {
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

ReducedMap reduce(const RationalMap& phi) {
    ReducedMap r;
    RPoly fb = residue_poly(phi.num());
    RPoly gb = residue_poly(phi.den());
    const ResidueField* F =
        phi.config()->p == 0
            ? ResidueField::rationals()
            : ResidueField::get(phi.config()->p, (int)(phi.config()->f0 * phi.level().f));
    r.F = F;
    if (rp_deg(F, fb) < 0 && rp_deg(F, gb) < 0)
        throw InternalError("reduce: both polynomials vanish on a normalized map");
    RPoly g = rp_gcd_monic(F, fb, gb);
    if (rp_deg(F, g) >= 1) {
        if (rp_deg(F, fb) >= 0) fb = rp_divmod(F, fb, g).first;
        if (rp_deg(F, gb) >= 0) gb = rp_divmod(F, gb, g).first;
    }
    if (rp_deg(F, gb) < 0) {
        r.is_infinity = true;
        r.degree = 0;
        return r;
    }
    r.num = fb;
    r.den = gb;
    r.degree = std::max(rp_deg(F, fb), rp_deg(F, gb));
    if (r.degree < 0) r.degree = 0;
    return r;
}

bool has_good_reduction(const RationalMap& phi) {
    ReducedMap rm = reduce(phi);
    bool by_degree = !rm.is_infinity && rm.degree == phi.degree();
    bool by_resultant;
    const PuiseuxElement& res = phi.res();
    if (res.is_apparent_zero())
        throw PrecisionExhausted("resultant valuation uncertifiable");
    by_resultant = !res.is_exact_zero() && res.val() == Valuation(Rational(0));
    if (by_degree != by_resultant)
        throw InconsistentCharacterizations(
            "reduction degree test = " + std::to_string(by_degree) +
            ", resultant test = " + std::to_string(by_resultant) + " on " + phi.str());
    return by_degree;
}

RationalMap conjugate(const RationalMap& phi, const MobiusMap& h) {
    const FieldConfig* cfg = phi.config();
    Level lv = join(phi.level(), h.level());
    RationalMap P = phi.promote(lv);
    MobiusMap H = h.promote(lv);

    // sigma = h^{-1} = (d z - b) / (-c z + a)
    PuiseuxElement sa = H.d(), sb = -H.b(), sc = -H.c(), sd = H.a();
    long long d = std::max(P.num().degree(), P.den().degree());

    Poly top(cfg, {sb, sa});
    Poly bot(cfg, {sd, sc});

    // powers of top and bot
    std::vector<Poly> tp(d + 1, Poly(cfg, lv)), bp(d + 1, Poly(cfg, lv));
    tp[0] = Poly::constant(PuiseuxElement::one(cfg).promote(lv));
    bp[0] = tp[0];
    for (long long i = 1; i <= d; ++i) {
        tp[i] = tp[i - 1] * top;
        bp[i] = bp[i - 1] * bot;
    }
    auto subst = [&](const Poly& poly) {
        Poly acc(cfg, lv);
        for (long long i = 0; i <= d; ++i) {
            PuiseuxElement ci = poly.coeff_or_zero(i);
            if (ci.is_exact_zero()) continue;
            acc = acc + (tp[i] * bp[d - i]).scalar_mul(ci);
        }
        return acc;
    };
    Poly Fs = subst(P.num());
    Poly Gs = subst(P.den());
    // apply h on the outside
    Poly newnum = Fs.scalar_mul(H.a()) + Gs.scalar_mul(H.b());
    Poly newden = Fs.scalar_mul(H.c()) + Gs.scalar_mul(H.d());
    RationalMap out = RationalMap::normalize(newnum, newden);
    if (out.degree() != phi.degree())
        throw InternalError("conjugation changed the degree from " +
                            std::to_string(phi.degree()) + " to " +
                            std::to_string(out.degree()));
    return out;
}

PuiseuxElement multiplier_at(const RationalMap& phi, const Point& x) {
    const FieldConfig* cfg = phi.config();
    if (x.inf) {
        // move infinity to 0 via z -> 1/z
        RationalMap psi = conjugate(phi, MobiusMap::inversion(cfg));
        return multiplier_at(psi, Point::finite(PuiseuxElement::zero(cfg, phi.level())));
    }
    Point img = phi.eval(x);
    if (img.inf) throw NotFixed("phi(x) is infinite at x = " + x.str());
    if (img.v.certainly_distinct(x.v))
        throw NotFixed("phi(" + x.str() + ") = " + img.v.str());
    PuiseuxElement fx = phi.num().eval(x.v);
    PuiseuxElement gx = phi.den().eval(x.v);
    PuiseuxElement fpx = phi.num().derivative().eval(x.v);
    PuiseuxElement gpx = phi.den().derivative().eval(x.v);
    // (f'g - fg')/g^2
    return (fpx * gx - fx * gpx).div(gx * gx);
}

}  // namespace goodred
