#include "goodred/berkovich.hpp"

#include "goodred/errors.hpp"

namespace goodred {

TypeIIPoint::TypeIIPoint(PuiseuxElement center, Rational radius_val)
    : center_(std::move(center)), rho_(std::move(radius_val)) {
    // keep the radius representable in the point's own lattice
    Level lv = join(center_.level(), Level{rho_.den(), 1});
    center_ = center_.promote(lv);
}

TypeIIPoint TypeIIPoint::gauss(const FieldConfig* cfg) {
    return TypeIIPoint(PuiseuxElement::zero(cfg), Rational(0));
}

TypeIIPoint TypeIIPoint::canonical() const {
    return TypeIIPoint(center_.truncate_at_exact(rho_), rho_);
}

bool TypeIIPoint::same_point(const TypeIIPoint& o) const {
    if (rho_ != o.rho_) return false;
    PuiseuxElement d = center_ - o.center_;
    if (d.is_exact_zero()) return true;
    if (d.is_apparent_zero()) {
        if (*d.prec() >= rho_) return true;
        throw PrecisionExhausted("type-II point equality undecidable");
    }
    return d.val().finite() >= rho_;
}

bool TypeIIPoint::is_gauss() const {
    return same_point(TypeIIPoint::gauss(config()));
}

std::string TypeIIPoint::str() const {
    return "zeta(" + center_.str() + ", " + rho_.str() + ")";
}

bool Direction::same_direction(const Direction& o) const {
    if (outside != o.outside) return false;
    if (outside) return true;
    if (rho != o.rho) return false;
    PuiseuxElement d = center - o.center;
    if (d.is_exact_zero()) return true;
    if (d.is_apparent_zero()) {
        if (*d.prec() > rho) return true;
        throw PrecisionExhausted("direction equality undecidable");
    }
    return d.val().finite() > rho;
}

std::string Direction::str() const {
    if (outside) return "outside";
    return "D(" + center.str() + ", " + rho.str() + ")";
}

Direction direction_of(const Point& x, const TypeIIPoint& xi) {
    Direction dir;
    dir.rho = xi.radius_val();
    if (x.inf) {
        dir.outside = true;
        dir.center = PuiseuxElement::zero(xi.config(), xi.level());
        return dir;
    }
    PuiseuxElement d = x.v - xi.center();
    Valuation v = d.val_lower();
    if (d.is_apparent_zero()) {
        if (!(Valuation(*d.prec()) >= Valuation(dir.rho)))
            throw PrecisionExhausted("direction of point undecidable");
    } else if (!d.is_exact_zero()) {
        v = Valuation(d.val().finite());
    }
    if (v < Valuation(dir.rho)) {
        dir.outside = true;
        dir.center = PuiseuxElement::zero(xi.config(), xi.level());
        return dir;
    }
    dir.outside = false;
    dir.center = x.v.truncate_at_exact(dir.rho);
    return dir;
}

MobiusMap three_point_mobius(const Point& a, const Point& b, const Point& c) {
    const FieldConfig* cfg = a.inf ? (b.inf ? c.v.config() : b.v.config()) : a.v.config();
    auto distinct = [&](const Point& x, const Point& y) {
        if (x.inf || y.inf) return !(x.inf && y.inf);
        return x.v.certainly_distinct(y.v);
    };
    if (!distinct(a, b) || !distinct(a, c) || !distinct(b, c))
        throw DegenerateTriple("three_point_mobius needs pairwise distinct points");
    PuiseuxElement one = PuiseuxElement::one(cfg);
    PuiseuxElement zero = PuiseuxElement::zero(cfg);
    // h(z) = (z - a)(c - b) / ((z - b)(c - a)), with limits at infinity
    if (a.inf) {
        // h(z) = (c - b)/(z - b)
        return MobiusMap(zero, c.v - b.v, one, -b.v);
    }
    if (b.inf) {
        // h(z) = (z - a)/(c - a)
        PuiseuxElement den = c.v - a.v;
        return MobiusMap(one, -a.v, zero, den);
    }
    if (c.inf) {
        // h(z) = (z - a)/(z - b)
        return MobiusMap(one, -a.v, one, -b.v);
    }
    PuiseuxElement cb = c.v - b.v;
    PuiseuxElement ca = c.v - a.v;
    return MobiusMap(cb, -(a.v * cb), ca, -(b.v * ca));
}

TypeIIPoint mobius_on_type2(const MobiusMap& h, const TypeIIPoint& xi) {
    const FieldConfig* cfg = xi.config();
    Level lv = join(h.level(), xi.level());
    MobiusMap H = h.promote(lv);
    TypeIIPoint Xi(xi.center().promote(lv), xi.radius_val());

    // three exact points in distinct directions: the center, center + t^rho,
    // and infinity
    PuiseuxElement a = Xi.center();
    PuiseuxElement tr = PuiseuxElement::t_power(cfg, Xi.radius_val()).promote(lv);
    Point p1 = Point::finite(a);
    Point p2 = Point::finite(a + tr);
    Point p3 = Point::infinity(cfg);

    Point q1 = H.apply(p1), q2 = H.apply(p2), q3 = H.apply(p3);

    auto val_between = [&](const Point& x, const Point& y) -> Rational {
        PuiseuxElement d = x.v - y.v;
        if (!d.has_certified_val() || d.is_exact_zero())
            throw PrecisionExhausted("image points too close to separate");
        return d.val().finite();
    };

    TypeIIPoint out = TypeIIPoint::gauss(cfg);
    int n_inf = (q1.inf ? 1 : 0) + (q2.inf ? 1 : 0) + (q3.inf ? 1 : 0);
    if (n_inf > 1) throw InternalError("mobius image has two infinite points");
    if (n_inf == 1) {
        const Point* f1 = nullptr;
        const Point* f2 = nullptr;
        for (const Point* p : {&q1, &q2, &q3}) {
            if (p->inf) continue;
            if (!f1) f1 = p;
            else f2 = p;
        }
        out = TypeIIPoint(f1->v, val_between(*f1, *f2));
    } else {
        Rational v12 = val_between(q1, q2);
        Rational v13 = val_between(q1, q3);
        Rational v23 = val_between(q2, q3);
        // separating radius: the maximal pairwise valuation; its pair gives
        // the center and the third point sits outside (or ties, equilateral)
        Rational rho = v12;
        const Point* ctr = &q1;
        if (v13 > rho) { rho = v13; ctr = &q1; }
        if (v23 > rho) { rho = v23; ctr = &q2; }
        out = TypeIIPoint(ctr->v, rho);
    }

    // cross-check against the direct disk image when h has no pole in the
    // closed disk: pole of h is at z = -d/c
    bool pole_in_closure = false;
    if (!H.c().is_exact_zero()) {
        PuiseuxElement pole = (-H.d()).div(H.c());
        PuiseuxElement diff = pole - a;
        if (diff.is_exact_zero()) pole_in_closure = true;
        else if (!diff.is_apparent_zero() && diff.val().finite() >= Xi.radius_val())
            pole_in_closure = true;
        else if (diff.is_apparent_zero())
            pole_in_closure = true;  // cannot certify; skip the cross-check
    }
    if (!pole_in_closure) {
        Poly hn(cfg, {H.b(), H.a()});
        Poly hd(cfg, {H.d(), H.c()});
        RationalMap hm = RationalMap::normalize(hn, hd);
        DiskImage di = disk_image(hm, a, Xi.radius_val());
        TypeIIPoint direct(di.center.v, di.radius_val);
        if (!out.same_point(direct))
            throw InternalError("type-II image mismatch: three-point " + out.str() +
                                " vs disk image " + direct.str());
    }
    return out;
}

}  // namespace goodred
