#include "goodred/dynamics.hpp"

#include <algorithm>

#include "goodred/errors.hpp"

namespace goodred {

std::vector<FixedPointData> fixed_points(const RationalMap& phi, Rational target_prec) {
    const FieldConfig* cfg = phi.config();
    long long d = phi.degree();
    if (d < 2) throw InternalError("fixed_points needs degree >= 2");
    // F = num - z*den
    Poly zden = phi.den() * Poly::z(cfg);
    Poly F = phi.num() - zden;
    std::vector<FixedPointData> out;
    long long inf_mult = d + 1 - (F.is_zero() ? 0 : F.degree());
    if (F.is_zero()) throw InternalError("identity map has no fixed-point divisor");
    if (F.degree() >= 1) {
        for (auto& root : puiseux_roots(F, target_prec)) {
            FixedPointData fp;
            fp.location = Point::finite(root.value);
            fp.multiplicity = root.multiplicity;
            fp.multiplier = multiplier_at(phi.promote(join(phi.level(), root.value.level())),
                                          fp.location);
            if (fp.multiplier.is_exact_zero()) fp.kind = FixedKind::attracting;
            else if (fp.multiplier.is_apparent_zero()) {
                if (*fp.multiplier.prec() > Rational(0)) fp.kind = FixedKind::attracting;
                else throw PrecisionExhausted("multiplier classification");
            } else {
                Rational v = fp.multiplier.val().finite();
                fp.kind = v > Rational(0)   ? FixedKind::attracting
                          : v == Rational(0) ? FixedKind::indifferent
                                             : FixedKind::repelling;
            }
            out.push_back(std::move(fp));
        }
    }
    if (inf_mult > 0) {
        FixedPointData fp;
        fp.location = Point::infinity(cfg);
        fp.multiplicity = inf_mult;
        fp.multiplier = multiplier_at(phi, fp.location);
        if (fp.multiplier.is_exact_zero()) fp.kind = FixedKind::attracting;
        else if (fp.multiplier.is_apparent_zero()) {
            if (*fp.multiplier.prec() > Rational(0)) fp.kind = FixedKind::attracting;
            else throw PrecisionExhausted("multiplier classification at infinity");
        } else {
            Rational v = fp.multiplier.val().finite();
            fp.kind = v > Rational(0)   ? FixedKind::attracting
                      : v == Rational(0) ? FixedKind::indifferent
                                         : FixedKind::repelling;
        }
        out.push_back(std::move(fp));
    }
    long long total = 0;
    for (auto& fp : out) total += fp.multiplicity;
    if (total != d + 1)
        throw InternalError("fixed point multiplicities sum to " + std::to_string(total) +
                            ", expected " + std::to_string(d + 1));
    return out;
}

MobiusMap move_to_gauss(const TypeIIPoint& xi) {
    const FieldConfig* cfg = xi.config();
    TypeIIPoint c = xi.canonical();
    PuiseuxElement tau = PuiseuxElement::t_power(cfg, c.radius_val());
    Level lv = join(c.level(), tau.level());
    PuiseuxElement tau_inv = PuiseuxElement::one(cfg).promote(lv).div(tau.promote(lv));
    // z -> (z - a) / t^rho
    return MobiusMap::affine(tau_inv, -(c.center().promote(lv) * tau_inv));
}

bool is_totally_invariant(const RationalMap& phi, const TypeIIPoint& xi) {
    MobiusMap h = move_to_gauss(xi);
    RationalMap psi = conjugate(phi.promote(join(phi.level(), h.level())), h);
    return has_good_reduction(psi);
}

ComponentClass classify_component(const RationalMap& phi, const TypeIIPoint& xi,
                                  const Direction& U) {
    const FieldConfig* cfg = phi.config();
    ComponentClass cc;
    cc.dir = U;

    // move U to the open unit disk at the Gauss point
    MobiusMap N = MobiusMap::identity(cfg);
    if (U.outside) {
        // z -> t^rho / (z - a)
        TypeIIPoint c = xi.canonical();
        PuiseuxElement tau = PuiseuxElement::t_power(cfg, c.radius_val());
        Level lv = join(c.level(), tau.level());
        N = MobiusMap(PuiseuxElement::zero(cfg).promote(lv), tau.promote(lv),
                      PuiseuxElement::one(cfg).promote(lv), -c.center().promote(lv));
    } else {
        // z -> (z - b) / t^rho
        PuiseuxElement tau = PuiseuxElement::t_power(cfg, U.rho);
        Level lv = join(U.center.level(), tau.level());
        PuiseuxElement tau_inv = PuiseuxElement::one(cfg).promote(lv).div(tau.promote(lv));
        N = MobiusMap::affine(tau_inv, -(U.center.promote(lv) * tau_inv));
    }
    RationalMap psi = conjugate(phi.promote(join(phi.level(), N.level())), N);
    PuiseuxElement zero = PuiseuxElement::zero(cfg, psi.level());

    // a pole inside the moved disk means the image is not the disk
    DiskImage di;
    try {
        di = disk_image(psi, zero, Rational(0));
    } catch (const PoleInDisk&) {
        cc.status = ComponentStatus::not_fixed;
        return cc;
    }
    bool fixed = false;
    if (!di.center.inf) {
        Valuation vb = di.center.v.val_lower();
        if (di.radius_val == Rational(0) && vb > Valuation(Rational(0)) &&
            (di.center.v.is_exact_zero() || di.center.v.is_apparent_zero() ||
             di.center.v.val().finite() > Rational(0)))
            fixed = true;
        if (di.center.v.is_apparent_zero() && !(Valuation(*di.center.v.prec()) > Valuation(Rational(0))))
            throw PrecisionExhausted("image center position undecidable");
    }
    if (!fixed) {
        cc.status = ComponentStatus::not_fixed;
        return cc;
    }

    WeierstrassData w = weierstrass_degree(psi, zero, Rational(0));
    cc.ell = w.ell;
    if (w.ell == 1) {
        cc.status = ComponentStatus::indifferent;
        return cc;
    }
    cc.status = ComponentStatus::attracting;
    // attracting fixed point: the unique root of num - z*den with positive
    // valuation
    Poly F = psi.num() - psi.den() * Poly::z(cfg);
    for (auto& root : puiseux_roots_above(F, Rational(0))) {
        if (root.value.is_exact_zero() || (!root.value.is_apparent_zero() &&
                                           root.value.val().finite() > Rational(0)) ||
            (root.value.is_apparent_zero() && *root.value.prec() > Rational(0))) {
            cc.attractor = N.inverse().apply(Point::finite(root.value));
            break;
        }
    }
    if (!cc.attractor)
        throw InternalError("attracting component without interior fixed point");
    return cc;
}

namespace {

void add_candidate(std::vector<TypeIIPoint>& cands, const PuiseuxElement& center,
                   const Rational& rho) {
    // canonical exact center, minimized so joins stay small
    PuiseuxElement c;
    try {
        c = center.truncate_at_exact(rho).minimize();
    } catch (const PrecisionExhausted&) {
        return;  // center not known deep enough for this radius
    }
    TypeIIPoint xi(c, rho);
    for (auto& e : cands) {
        try {
            if (e.same_point(xi)) return;
        } catch (const Error&) {
            // uncomparable representatives: keep both
        }
    }
    cands.push_back(std::move(xi));
}

}  // namespace

std::optional<TypeIIPoint> find_invariant_point(const RationalMap& phi) {
    const FieldConfig* cfg = phi.config();
    if (phi.degree() < 2) throw InternalError("find_invariant_point needs degree >= 2");
    std::vector<TypeIIPoint> cands;
    cands.push_back(TypeIIPoint::gauss(cfg));

    // centers: finite fixed points and finite poles
    std::vector<PuiseuxElement> centers;
    std::vector<FixedPointData> fps;
    try {
        fps = fixed_points(phi);
    } catch (const Error&) {
        fps.clear();  // fixed-point data is an optional candidate source
    }
    for (auto& fp : fps)
        if (!fp.location.inf) centers.push_back(fp.location.v);
    try {
        if (phi.den().degree() >= 1)
            for (auto& r : puiseux_roots(phi.den())) centers.push_back(r.value);
    } catch (const Error&) {
    }

    // pairwise distances
    for (size_t i = 0; i < centers.size(); ++i)
        for (size_t j = i + 1; j < centers.size(); ++j) {
            try {
                PuiseuxElement d = centers[i] - centers[j];
                if (!d.has_certified_val() || d.is_exact_zero()) continue;
                add_candidate(cands, centers[i], d.val().finite());
            } catch (const Error&) {
                continue;  // incomparable levels or precision loss
            }
        }

    // local balance radii (Laurent polygon slopes at each center)
    for (auto& c : centers) {
        std::vector<Rational> radii;
        try {
            RationalMap ph = phi.promote(join(phi.level(), c.level()));
            radii = local_balance_radii(ph, c, phi.degree() + 1);
        } catch (const Error&) {
            continue;
        }
        for (auto& r : radii) add_candidate(cands, c, r);
    }

    // fixed point at infinity: repeat in inverted coordinates
    bool inf_fixed = false;
    for (auto& fp : fps)
        if (fp.location.inf) inf_fixed = true;
    bool inf_pole = phi.num().degree() > phi.den().degree();
    if (inf_fixed || inf_pole) {
        MobiusMap inv = MobiusMap::inversion(cfg);
        RationalMap psi = conjugate(phi, inv);
        PuiseuxElement z0 = PuiseuxElement::zero(cfg, psi.level());
        std::vector<Rational> radii;
        try {
            radii = local_balance_radii(psi, z0, phi.degree() + 1);
        } catch (const Error&) {
            radii.clear();
        }
        for (auto& r : radii) {
            // zeta(0, r) in inverted coordinates maps back to zeta(0, -r)
            TypeIIPoint cand(PuiseuxElement::zero(cfg), -r);
            bool seen = false;
            for (auto& e : cands)
                if (e.same_point(cand)) seen = true;
            if (!seen) cands.push_back(cand);
        }
    }

    // deterministic order: radius ascending, then center string
    std::sort(cands.begin(), cands.end(), [](const TypeIIPoint& a, const TypeIIPoint& b) {
        if (a.radius_val() != b.radius_val()) return a.radius_val() < b.radius_val();
        return a.center().str() < b.center().str();
    });

    for (auto& cand : cands) {
        try {
            if (is_totally_invariant(phi, cand)) return cand.canonical();
        } catch (const PrecisionExhausted&) {
            continue;
        } catch (const NotCoprime&) {
            continue;
        } catch (const ResidueFieldTooLarge&) {
            continue;
        }
    }
    return std::nullopt;
}

}  // namespace goodred
