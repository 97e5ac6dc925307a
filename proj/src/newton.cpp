#include "goodred/newton.hpp"

#include <algorithm>

#include "goodred/errors.hpp"

namespace goodred {

namespace {
constexpr long long kMaxRamification = 512;
constexpr int kMaxBranchDepth = 160;
}  // namespace

NewtonPolygon polygon_from_points(
    const std::vector<std::tuple<long long, Rational, bool>>& pts) {
    // certified points, sorted by index
    std::vector<std::pair<long long, Rational>> cert;
    for (auto& [i, v, ok] : pts)
        if (ok) cert.push_back({i, v});
    std::sort(cert.begin(), cert.end());
    if (cert.empty()) throw PrecisionExhausted("newton polygon without certified points");

    // monotone lower hull
    std::vector<std::pair<long long, Rational>> hull;
    for (auto& p : cert) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // keep b if it is strictly below segment a-p
            // cross: (p.i - a.i)(b.v - a.v) - (b.i - a.i)(p.v - a.v) < 0 keeps b
            Rational lhs = Rational(p.first - a.first) * (b.second - a.second);
            Rational rhs = Rational(b.first - a.first) * (p.second - a.second);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(p);
    }

    NewtonPolygon np;
    np.vertices = hull;
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        PolygonSegment s;
        s.i_from = hull[k].first;
        s.i_to = hull[k + 1].first;
        s.length = s.i_to - s.i_from;
        s.slope = (hull[k + 1].second - hull[k].second) / Rational(s.length);
        np.segments.push_back(s);
    }

    // uncertified points must not lie strictly below the hull
    auto hull_value = [&](long long i) -> std::optional<Rational> {
        if (i < hull.front().first || i > hull.back().first) return std::nullopt;
        for (size_t k = 0; k + 1 < hull.size(); ++k) {
            if (i >= hull[k].first && i <= hull[k + 1].first) {
                Rational s = (hull[k + 1].second - hull[k].second) /
                             Rational(hull[k + 1].first - hull[k].first);
                return hull[k].second + s * Rational(i - hull[k].first);
            }
        }
        return std::nullopt;
    };
    for (auto& [i, v, ok] : pts) {
        if (ok) continue;
        auto hv = hull_value(i);
        if (!hv)
            throw PrecisionExhausted("coefficient at index " + std::to_string(i) +
                                     " outside the certified range");
        if (v <= *hv)
            throw PrecisionExhausted("hull membership of index " + std::to_string(i) +
                                     " undecidable (bound " + v.str() + ")");
    }
    return np;
}

NewtonPolygon newton_polygon(const Poly& f) {
    if (f.is_zero()) throw InternalError("newton polygon of zero polynomial");
    std::vector<std::tuple<long long, Rational, bool>> pts;
    for (long long i = 0; i <= f.degree(); ++i) {
        const PuiseuxElement& c = f[(size_t)i];
        if (c.is_exact_zero()) continue;
        if (c.is_apparent_zero()) pts.push_back({i, *c.prec(), false});
        else pts.push_back({i, c.val().finite(), true});
    }
    return polygon_from_points(pts);
}

namespace {

// residue polynomial attached to a polygon segment of g
RPoly segment_residue_poly(const Poly& g, const PolygonSegment& seg) {
    const ResidueField* F = g.coeffs().empty()
                                ? ResidueField::rationals()
                                : g.coeffs()[0].residue_field();
    RPoly R((size_t)(seg.length + 1), F->zero());
    Rational v0(0);
    // valuation at i_from
    v0 = g[(size_t)seg.i_from].val().finite();
    for (long long i = seg.i_from; i <= seg.i_to; ++i) {
        const PuiseuxElement& c = g[(size_t)i];
        Rational vline = v0 + seg.slope * Rational(i - seg.i_from);
        if (c.is_exact_zero()) continue;
        if (c.prec() && *c.prec() <= vline)
            throw PrecisionExhausted("residue coefficient at index " + std::to_string(i));
        R[(size_t)(i - seg.i_from)] = c.coeff(vline);
    }
    return R;
}

struct ResidueRoot {
    RElem root;
    long long mult;
    int ext;  // residue extension degree adjoined
};

std::vector<ResidueRoot> residue_roots_all(const ResidueField* F, const RPoly& R) {
    long long total = rp_deg(F, R);
    if (total < 1) return {};
    std::vector<ResidueRoot> out;
    if (F->is_rationals()) {
        RPoly T = rp_trim(F, R);
        if (T.size() == 2) {
            out.push_back({F->neg(F->div(T[0], T[1])), 1, 1});
            return out;
        }
        // two-term polynomials a*w^n + b: rational n-th roots when they exist
        bool two_term = true;
        for (size_t i = 1; i + 1 < T.size(); ++i)
            if (!F->is_zero(T[i])) { two_term = false; break; }
        if (two_term) {
            long long n = (long long)T.size() - 1;
            RElem c = F->neg(F->div(T[0], T.back()));
            auto [k, r] = nth_root_in_extension(F, c, n);  // throws if irrational
            (void)k;
            out.push_back({r, 1, 1});
            // remaining roots differ by roots of unity: only +-1 rational
            if (n % 2 == 0) out.push_back({F->neg(r), 1, 1});
            return out;
        }
        throw UnsupportedField("residue root finding over the rationals");
    }
    long long found = 0;
    for (int k = 1; k <= (int)total && found < total; ++k) {
        const ResidueField* E;
        try {
            E = ResidueField::get(F->p(), F->deg() * k);
        } catch (const ResidueFieldTooLarge&) {
            break;
        }
        RPoly Re(R.size(), E->zero());
        for (size_t i = 0; i < R.size(); ++i) Re[i] = E->embed(R[i]);
        auto roots = rp_roots(E, Re);
        for (auto& [r, m] : roots) {
            bool is_new = true;
            for (int j = 1; j < k; ++j)
                if (k % j == 0 && E->in_subfield(r, F->deg() * j)) { is_new = false; break; }
            if (!is_new) continue;
            out.push_back({r, m, k});
            found += m;
        }
    }
    if (found < total)
        throw ResidueFieldTooLarge("residue roots not found within the field size cap");
    return out;
}

struct NpContext {
    const FieldConfig* cfg;
    Rational target;
    std::vector<PuiseuxRoot>* out;
};

void np_worker(NpContext& ctx, Poly g, PuiseuxElement sigma,
               std::optional<Rational> bound, long long expected, int depth) {
    if (expected <= 0) return;
    if (depth > kMaxBranchDepth)
        throw PrecisionExhausted("newton-puiseux branch depth exceeded");
    if (g.level().e > kMaxRamification)
        throw WildBranchUnsupported("ramification grew beyond " +
                                    std::to_string(kMaxRamification) +
                                    "; the branch is inseparable or Artin-Schreier type");

    // exact roots at sigma: z^m0 | g
    long long m0 = 0;
    while (m0 <= g.degree() && g[(size_t)m0].is_exact_zero()) ++m0;
    long long emitted = 0;
    if (m0 > 0) {
        if (m0 > expected)
            throw InternalError("more exact roots than the branch owns");
        ctx.out->push_back({sigma, m0});
        emitted = m0;
    }
    if (emitted == expected) return;
    if (m0 > g.degree())
        throw InternalError("zero polynomial in a branch that owns roots");

    std::vector<std::tuple<long long, Rational, bool>> cert, uncert;
    for (long long i = m0; i <= g.degree(); ++i) {
        const PuiseuxElement& c = g[(size_t)i];
        if (c.is_exact_zero()) continue;
        if (c.is_apparent_zero()) uncert.push_back({i, *c.prec(), false});
        else cert.push_back({i, c.val().finite(), true});
    }
    if (cert.empty()) throw PrecisionExhausted("no certified coefficient in branch");
    NewtonPolygon CP = polygon_from_points(cert);
    long long cert_front = CP.vertices.front().first;

    // uncertified coefficients: above the certified hull they are harmless;
    // left of it they may hide roots pinned at sigma beyond the target depth
    bool have_left_uncert = false;
    for (auto& [i, P, okflag] : uncert) {
        (void)okflag;
        if (i > cert_front) {
            // inside or right of the certified span: must lie on or above the hull
            std::vector<std::tuple<long long, Rational, bool>> all = cert;
            all.push_back({i, P, false});
            polygon_from_points(all);  // throws when undecidable
        } else {
            have_left_uncert = true;
        }
    }
    if (have_left_uncert) {
        // pessimistic hull: every uncertified value at its lower bound; the
        // appended left segments bound the hidden root depths from below
        std::vector<std::tuple<long long, Rational, bool>> all = cert;
        for (auto& u : uncert) all.push_back({std::get<0>(u), std::get<1>(u), true});
        NewtonPolygon PH = polygon_from_points(all);
        for (auto& s : PH.segments) {
            if (s.i_to > cert_front) continue;  // certified part
            Rational mu = -s.slope;
            if (mu < ctx.target)
                throw PrecisionExhausted("hidden roots of depth possibly " + mu.str() +
                                         " below target " + ctx.target.str());
            if (bound && !(mu > *bound))
                throw PrecisionExhausted("hidden roots interleave the branch bound");
        }
    }

    long long hidden = cert_front - m0;
    // certified segments that belong to this branch
    struct Seg {
        PolygonSegment s;
        bool deep;
    };
    std::vector<Seg> segs;
    long long seg_total = 0;
    for (auto& s : CP.segments) {
        Rational mu = -s.slope;
        if (bound && !(mu > *bound)) continue;
        segs.push_back({s, mu >= ctx.target});
        seg_total += s.length;
    }
    if (emitted + hidden + seg_total != expected)
        throw InternalError("branch accounting: " + std::to_string(emitted) + "+" +
                            std::to_string(hidden) + "+" + std::to_string(seg_total) +
                            " != " + std::to_string(expected));

    // emission at sigma requires the constant term to certify the target
    bool sigma_certifies =
        g[0].val_lower() >= Valuation(ctx.target);
    long long deep_count = hidden;
    std::vector<Seg> work;
    for (auto& sg : segs) {
        if (sg.deep && sigma_certifies) deep_count += sg.s.length;
        else work.push_back(sg);
    }
    if (hidden > 0 && !sigma_certifies)
        throw PrecisionExhausted("hidden roots but g(sigma) does not certify the target");
    if (deep_count > 0) ctx.out->push_back({sigma.truncate(ctx.target), deep_count});

    for (auto& sg : work) {
        const PolygonSegment& seg = sg.s;
        Rational mu = -seg.slope;
        RPoly R = segment_residue_poly(g, seg);
        const ResidueField* F = g.coeffs()[0].residue_field();
        auto rroots = residue_roots_all(F, R);
        long long seg_found = 0;
        for (auto& rr : rroots) {
            Level lvb{lcm_ll(g.level().e, mu.den()), g.level().f * rr.ext};
            Poly gb = g.promote(lvb);
            PuiseuxElement corr =
                PuiseuxElement::monomial(ctx.cfg, lvb, rr.root, mu);
            PuiseuxElement sigma_b = sigma.promote(lvb) + corr;
            Poly gshift = gb.recenter(corr);
            np_worker(ctx, gshift, sigma_b, mu, rr.mult, depth + 1);
            seg_found += rr.mult;
        }
        if (seg_found != seg.length) {
            if (F->is_rationals())
                throw UnsupportedField("not all residue roots are rational");
            throw InternalError("segment root count mismatch: " +
                                std::to_string(seg_found) + " vs " +
                                std::to_string(seg.length));
        }
    }
}

}  // namespace

std::vector<PuiseuxRoot> puiseux_roots(const Poly& f, Rational target_prec) {
    if (f.is_zero()) throw InternalError("roots of the zero polynomial");
    if (target_prec <= Rational(0)) target_prec = f.config()->default_prec;
    std::vector<PuiseuxRoot> out;
    NpContext ctx{f.config(), target_prec, &out};
    np_worker(ctx, f, PuiseuxElement::zero(f.config(), f.level()), std::nullopt, f.degree(), 0);
    long long total = 0;
    for (auto& r : out) total += r.multiplicity;
    if (total != f.degree())
        throw InternalError("root count " + std::to_string(total) + " != degree " +
                            std::to_string(f.degree()));
    return out;
}

std::vector<PuiseuxRoot> puiseux_roots_above(const Poly& f, const Rational& bound_exclusive,
                                             Rational target_prec) {
    if (f.is_zero()) throw InternalError("roots of the zero polynomial");
    if (target_prec <= Rational(0)) target_prec = f.config()->default_prec;
    // expected count: exact zeros plus segments beyond the bound
    long long m0 = 0;
    while (m0 <= f.degree() && f[(size_t)m0].is_exact_zero()) ++m0;
    long long expected = m0;
    if (m0 < f.degree()) {
        std::vector<std::tuple<long long, Rational, bool>> pts;
        for (long long i = m0; i <= f.degree(); ++i) {
            const PuiseuxElement& c = f[(size_t)i];
            if (c.is_exact_zero()) continue;
            if (c.is_apparent_zero()) pts.push_back({i, *c.prec(), false});
            else pts.push_back({i, c.val().finite(), true});
        }
        NewtonPolygon np = polygon_from_points(pts);
        for (auto& s : np.segments)
            if (-s.slope > bound_exclusive) expected += s.length;
    }
    std::vector<PuiseuxRoot> out;
    if (expected == 0) return out;
    NpContext ctx{f.config(), target_prec, &out};
    np_worker(ctx, f, PuiseuxElement::zero(f.config(), f.level()), bound_exclusive, expected, 0);
    return out;
}

PuiseuxElement LocalExpansion::coeff(long long n) const {
    long long idx = n + pole_order;
    if (idx < 0 || idx >= (long long)c.size())
        throw InternalError("local expansion coefficient out of range");
    return c[(size_t)idx];
}

LocalExpansion local_expansion(const RationalMap& phi, const PuiseuxElement& a,
                               long long terms) {
    const FieldConfig* cfg = phi.config();
    Level lv = join(phi.level(), a.level());
    Poly num = phi.num().promote(lv).recenter(a.promote(lv));
    Poly den = phi.den().promote(lv).recenter(a.promote(lv));

    long long k = 0;
    while (k <= den.degree() && den[(size_t)k].is_exact_zero()) ++k;
    if (k > den.degree()) throw InternalError("zero denominator");
    if (den[(size_t)k].is_apparent_zero())
        throw PrecisionExhausted("pole order at the center uncertifiable");

    // u = den / z^k, invert as a power series
    std::vector<PuiseuxElement> u;
    for (long long i = k; i <= den.degree(); ++i) u.push_back(den[(size_t)i]);
    long long N = terms + k;  // need numerator coefficients up to N
    std::vector<PuiseuxElement> inv((size_t)N + 1, PuiseuxElement::zero(cfg, lv));
    PuiseuxElement u0 = u[0];
    inv[0] = PuiseuxElement::one(cfg).promote(lv).div(u0);
    for (long long n = 1; n <= N; ++n) {
        PuiseuxElement s = PuiseuxElement::zero(cfg, lv);
        for (long long j = 1; j <= n && j < (long long)u.size(); ++j)
            s = s + u[(size_t)j] * inv[(size_t)(n - j)];
        inv[(size_t)n] = (-s).div(u0);
    }
    LocalExpansion ex;
    ex.pole_order = k;
    ex.c.assign((size_t)(terms + k + 1), PuiseuxElement::zero(cfg, lv));
    for (long long n = 0; n <= terms + k; ++n) {
        PuiseuxElement s = PuiseuxElement::zero(cfg, lv);
        for (long long j = 0; j <= n && j <= num.degree(); ++j)
            s = s + num[(size_t)j] * inv[(size_t)(n - j)];
        ex.c[(size_t)n] = s;  // coefficient of z^(n - k)
    }
    return ex;
}

namespace {

void check_no_pole(const RationalMap& phi, const PuiseuxElement& a, const Rational& rho) {
    Level lv = join(phi.level(), a.level());
    Poly den = phi.den().promote(lv).recenter(a.promote(lv));
    long long k = 0;
    while (k <= den.degree() && den[(size_t)k].is_exact_zero()) ++k;
    if (k > den.degree()) throw InternalError("zero denominator");
    if (den[(size_t)k].is_apparent_zero())
        throw PrecisionExhausted("pole location uncertifiable");
    if (k > 0) throw PoleInDisk("pole at the disk center");
    if (den.degree() == 0) return;
    NewtonPolygon np = newton_polygon(den);
    for (auto& s : np.segments)
        if (-s.slope > rho)
            throw PoleInDisk("pole of valuation " + (-s.slope).str() + " inside radius " +
                             rho.str());
}

struct SigmaData {
    Rational sigma;
    long long ell;       // least minimizer among n >= 1
    long long ell_full;  // least minimizer among n >= 0
    std::vector<long long> attained;
};

SigmaData image_radius(const LocalExpansion& ex, const Rational& rho, long long d) {
    bool have = false;
    Rational sigma(0);
    for (long long n = 1; n <= d + 1; ++n) {
        const PuiseuxElement& c = ex.coeff(n);
        if (c.is_exact_zero() || c.is_apparent_zero()) continue;
        Rational v = c.val().finite() + Rational(n) * rho;
        if (!have || v < sigma) { have = true; sigma = v; }
    }
    if (!have) throw PrecisionExhausted("image radius has no certified term");
    for (long long n = 1; n <= d + 1; ++n) {
        const PuiseuxElement& c = ex.coeff(n);
        if (!c.is_apparent_zero()) continue;
        if (*c.prec() + Rational(n) * rho <= sigma)
            throw PrecisionExhausted("image radius undercut by uncertified coefficient " +
                                     std::to_string(n));
    }
    SigmaData out;
    out.sigma = sigma;
    out.ell = -1;
    out.ell_full = -1;
    for (long long n = 1; n <= d + 1; ++n) {
        const PuiseuxElement& c = ex.coeff(n);
        if (c.is_exact_zero() || c.is_apparent_zero()) continue;
        if (c.val().finite() + Rational(n) * rho == sigma) {
            out.attained.push_back(n);
            if (out.ell < 0) out.ell = n;
        }
    }
    // constant term for ell_full
    const PuiseuxElement& c0 = ex.coeff(0);
    bool c0_lower = false;
    if (!c0.is_exact_zero()) {
        if (c0.is_apparent_zero()) {
            if (*c0.prec() <= sigma)
                throw PrecisionExhausted("constant term vs image radius undecidable");
        } else if (c0.val().finite() <= sigma) {
            c0_lower = true;
        }
    }
    out.ell_full = c0_lower ? 0 : out.ell;
    return out;
}

}  // namespace

DiskImage disk_image(const RationalMap& phi, const PuiseuxElement& a, const Rational& rho) {
    check_no_pole(phi, a, rho);
    long long d = phi.degree();
    LocalExpansion ex = local_expansion(phi, a, d + 1);
    SigmaData sd = image_radius(ex, rho, d);
    DiskImage di;
    di.center = Point::finite(ex.coeff(0));
    di.radius_val = sd.sigma;
    return di;
}

WeierstrassData weierstrass_degree(const RationalMap& phi, const PuiseuxElement& a,
                                   const Rational& rho) {
    check_no_pole(phi, a, rho);
    long long d = phi.degree();
    LocalExpansion ex = local_expansion(phi, a, d + 1);
    SigmaData sd = image_radius(ex, rho, d);
    WeierstrassData w;
    w.center = a;
    w.rho = rho;
    w.ell = sd.ell;
    w.ell_full = sd.ell_full;
    w.sigma = sd.sigma;
    w.attained = sd.attained;
    return w;
}

std::vector<Rational> local_balance_radii(const RationalMap& phi, const PuiseuxElement& a,
                                          long long terms) {
    LocalExpansion ex = local_expansion(phi, a, terms);
    std::vector<std::tuple<long long, Rational, bool>> pts;
    std::vector<Rational> out;
    for (long long n = -ex.pole_order; n <= ex.max_exponent(); ++n) {
        if (n == 0) continue;
        const PuiseuxElement& c = ex.coeff(n);
        if (c.is_exact_zero()) continue;
        if (c.is_apparent_zero()) {
            pts.push_back({n, *c.prec(), false});
            continue;
        }
        pts.push_back({n, c.val().finite(), true});
        // radius at which the n-th term alone maps the sphere to itself
        if (n != 1) out.push_back(c.val().finite() / Rational(1 - n));
    }
    if (pts.empty()) return out;
    NewtonPolygon np;
    try {
        np = polygon_from_points(pts);
    } catch (const PrecisionExhausted&) {
        return out;  // candidates only; an undecidable hull yields none
    }
    for (auto& s : np.segments) out.push_back(-s.slope);
    return out;
}

}  // namespace goodred
