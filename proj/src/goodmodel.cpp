#include "goodred/goodmodel.hpp"

#include <algorithm>

#include "goodred/errors.hpp"

namespace goodred {

long long p_adic_val(long long p, long long n) {
    if (p < 2 || n == 0) return 0;
    long long e = 0;
    while (n % p == 0) { n /= p; ++e; }
    return e;
}

long long degree_bound(long long p, long long d) {
    if (d < 2) throw InternalError("degree_bound needs d >= 2");
    if (d >= 3) {
        long long e = p_adic_val(p, d);
        if (e >= 1) {
            long long q = 1;
            for (long long i = 0; i < e; ++i) q *= p;
            return q * (d - 1);
        }
        e = p_adic_val(p, d - 1);
        if (e >= 1) {
            long long q = 1;
            for (long long i = 0; i < e; ++i) q *= p;
            return d * q;
        }
    }
    return d + 1;
}

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

// evaluation with explicit relative precision for the final division
Point eval_prec(const RationalMap& phi, const Point& x, const Rational& rel) {
    if (x.inf) {
        long long dn = phi.num().degree(), dd = phi.den().degree();
        if (dn > dd) return Point::infinity(phi.config());
        if (dn < dd) return Point::finite(PuiseuxElement::zero(phi.config(), phi.level()));
        return Point::finite(phi.num().lead().div(phi.den().lead(), rel));
    }
    PuiseuxElement nv = phi.num().eval(x.v);
    PuiseuxElement dv = phi.den().eval(x.v);
    if (dv.is_exact_zero()) return Point::infinity(phi.config());
    if (dv.is_apparent_zero()) throw PrecisionExhausted("eval_prec: denominator uncertifiable");
    return Point::finite(nv.div(dv, rel));
}

bool in_closed_disk(const PuiseuxElement& x, const ClosedDisk& V) {
    PuiseuxElement d = x - V.center.promote(join(x.level(), V.center.level()));
    if (d.is_exact_zero()) return true;
    if (d.is_apparent_zero()) {
        if (*d.prec() >= V.rho) return true;
        throw PrecisionExhausted("disk membership undecidable");
    }
    return d.val().finite() >= V.rho;
}

// deterministic root choice: smallest minimized level degree, then print order
std::vector<PuiseuxRoot> sorted_roots(const Poly& f, Rational prec) {
    auto roots = puiseux_roots(f, prec);
    for (auto& r : roots) r.value = r.value.minimize();
    std::sort(roots.begin(), roots.end(), [](const PuiseuxRoot& a, const PuiseuxRoot& b) {
        long long da = a.value.level().degree(), db = b.value.level().degree();
        if (da != db) return da < db;
        return a.value.str() < b.value.str();
    });
    return roots;
}

}  // namespace


// modest, radius-based root target scaled by the retry ladder
Rational alpha_target(const Rational& rho, const Rational& root_prec, const Rational& dflt) {
    Rational base = rho * Rational(2) + Rational(4);
    if (base < Rational(4)) base = Rational(4);
    Rational scale(1);
    if (root_prec > Rational(0) && root_prec > dflt) scale = root_prec / dflt;
    return base * scale;
}

Point low_degree_point_in_disk(const Poly& f, const ClosedDisk& V, Rational root_prec) {
    if (f.is_zero() || f.degree() < 1) throw InternalError("low_degree_point_in_disk: degree < 1");
    const FieldConfig* cfg = f.config();
    long long n = f.degree();
    long long e = p_adic_val(cfg->p, n);
    long long q = cfg->p >= 2 ? pow_ll(cfg->p, e) : 1;
    // resolve roots just past the disk radius; membership is what matters
    Rational tgt = root_prec;
    if (tgt <= Rational(0)) {
        tgt = V.rho * Rational(2) + Rational(4);
        if (tgt < Rational(4)) tgt = Rational(4);
    }
    Rational rel = tgt * Rational(n + 2) + Rational(24);

    // monic normalization
    Poly fm = f.scalar_mul(PuiseuxElement::one(cfg).promote(f.level()).div(f.lead(), rel));

    // g(tau) = coefficient of z^(n-q) in f(z + tau)
    std::vector<PuiseuxElement> gc((size_t)q + 1, PuiseuxElement::zero(cfg, fm.level()));
    for (long long i = n - q; i <= n; ++i) {
        long long bin = binom_ll(i, n - q);
        PuiseuxElement ai = fm.coeff_or_zero(i);
        gc[(size_t)(i - (n - q))] =
            ai.scalar_mul(ai.residue_field()->from_int(bin));
    }
    Poly g(cfg, std::move(gc));
    if (g.degree() != q)
        throw InternalError("binomial coefficient C(n, q) vanished; expected a unit");

    for (auto& r : sorted_roots(g, tgt)) {
        try {
            if (in_closed_disk(r.value, V)) return Point::finite(r.value);
        } catch (const PrecisionExhausted&) {
            continue;
        }
    }
    throw RootOutsideDisk("no root of the coefficient polynomial lies in the disk");
}

namespace {

// Moebius map sending the component U to the outside direction of its image
// point, with the new infinity not fixed. Returns the move and the moved map.
struct MovedSetup {
    MobiusMap move;
    RationalMap phi;
    TypeIIPoint xi;
    Point start;  // image of the component's rational witness
};

bool certified_not_fixed(const RationalMap& phi, const Point& w) {
    try {
        Point img = phi.eval(w);
        if (w.inf) return !img.inf;
        if (img.inf) return true;
        return img.v.certainly_distinct(w.v);
    } catch (const Error&) {
        return false;
    }
}

MovedSetup move_component_outside(const RationalMap& phi, const TypeIIPoint& xi,
                                  const Direction& U, const Point& witness,
                                  bool require_infinity_not_fixed) {
    const FieldConfig* cfg = phi.config();
    bool need_move = !U.outside;
    if (!need_move && require_infinity_not_fixed)
        need_move = !certified_not_fixed(phi, Point::infinity(cfg));
    if (!need_move) {
        return {MobiusMap::identity(cfg), phi, xi, witness};
    }
    // choose a non-fixed rational point w inside U and use z -> 1/(z - w)
    std::vector<Point> tries;
    if (U.outside) {
        // far points: t^-k beyond the disk radius
        long long k0 = std::max<long long>(1, (-xi.radius_val()).floor() + 2);
        for (long long k = k0; k < k0 + 8; ++k)
            tries.push_back(Point::finite(PuiseuxElement::t_power(cfg, Rational(-k))
                                              .promote(join(phi.level(), Level{1, 1}))));
    } else {
        long long k0 = U.rho.floor() + 1;
        for (long long k = k0; k < k0 + 8; ++k)
            tries.push_back(Point::finite(
                U.center + PuiseuxElement::t_power(cfg, Rational(k)).promote(U.center.level())));
    }
    if (!witness.inf) tries.insert(tries.begin(), witness);
    for (auto& w : tries) {
        if (w.inf) continue;
        if (!certified_not_fixed(phi, w)) continue;
        // z -> 1/(z - w)
        MobiusMap M(PuiseuxElement::zero(cfg), PuiseuxElement::one(cfg),
                    PuiseuxElement::one(cfg), -w.v);
        RationalMap moved = conjugate(phi.promote(join(phi.level(), M.level())), M);
        TypeIIPoint moved_xi = mobius_on_type2(M, xi);
        return {M, moved, moved_xi, M.apply(witness)};
    }
    throw InternalError("no non-fixed rational point found in the component");
}

}  // namespace

Point point_outside_indifferent_component(const RationalMap& phi, const TypeIIPoint& xi,
                                          const Direction& U, const Point& witness,
                                          Rational root_prec) {
    const FieldConfig* cfg = phi.config();
    long long d = phi.degree();
    MovedSetup ms = move_component_outside(phi, xi, U, witness, false);
    Rational tgt = alpha_target(ms.xi.radius_val(), root_prec, cfg->default_prec);
    Rational rel = tgt * Rational(d + 2) + Rational(24);

    // d - 1 preimages of phi(inf) other than inf itself
    Point y0 = eval_prec(ms.phi, Point::infinity(cfg), rel);
    Poly f(cfg);
    if (y0.inf) {
        f = ms.phi.den();
    } else {
        Poly num = ms.phi.num();
        Poly scaled_den = ms.phi.den().scalar_mul(y0.v);
        f = num - scaled_den;
    }
    if (f.degree() != d - 1)
        throw InternalError("preimage polynomial has degree " + std::to_string(f.degree()) +
                            ", expected " + std::to_string(d - 1) +
                            " (component not one-to-one?)");
    TypeIIPoint c = ms.xi.canonical();
    ClosedDisk V{c.center(), c.radius_val()};
    Point alpha_moved = low_degree_point_in_disk(f, V, tgt);
    Point alpha = ms.move.inverse().apply(alpha_moved);
    // postcondition: alpha lies outside U
    Direction da = direction_of(alpha, xi);
    if (da.same_direction(U))
        throw RootOutsideDisk("constructed point landed inside the indifferent component");
    return alpha;
}

Point point_outside_attracting_component(const RationalMap& phi, const TypeIIPoint& xi,
                                         const Direction& U, const Point& witness,
                                         Rational root_prec) {
    const FieldConfig* cfg = phi.config();
    long long d = phi.degree();
    MovedSetup ms = move_component_outside(phi, xi, U, witness, true);
    Rational tgt = alpha_target(ms.xi.radius_val(), root_prec, cfg->default_prec);
    Rational rel = tgt * Rational(d + 2) + Rational(24);

    // F = num - z*den of degree d+1 (infinity is not fixed)
    Poly F = ms.phi.num() - ms.phi.den() * Poly::z(cfg);
    if (F.degree() != d + 1)
        throw InternalError("fixed-point polynomial degree " + std::to_string(F.degree()));

    TypeIIPoint c = ms.xi.canonical();
    ClosedDisk V{c.center(), c.radius_val()};

    // iterate the orbit of the rational point of U
    Point x = ms.start.inf ? eval_prec(ms.phi, ms.start, rel) : ms.start;
    for (int n = 0; n <= 32; ++n) {
        if (x.inf) throw InternalError("orbit left the affine line");
        PuiseuxElement Fx = F.eval(x.v);
        Poly Gn = F - Poly::constant(Fx);
        Poly fn = Gn.divide_linear(x.v);
        // certificate: every root of fn lies in the closed disk V
        bool ok = true;
        try {
            Poly sh = fn.recenter(V.center.promote(join(fn.level(), V.center.level())));
            NewtonPolygon np = newton_polygon(sh);
            for (auto& s : np.segments)
                if (-s.slope < V.rho) ok = false;
        } catch (const PrecisionExhausted&) {
            ok = false;
        }
        if (ok) {
            Point alpha_moved = low_degree_point_in_disk(fn, V, tgt);
            Point alpha = ms.move.inverse().apply(alpha_moved);
            Direction da = direction_of(alpha, xi);
            if (da.same_direction(U))
                throw RootOutsideDisk("constructed point landed inside the attracting component");
            return alpha;
        }
        x = eval_prec(ms.phi, x, rel);
    }
    throw IterationBudgetExceeded("orbit perturbation did not separate within 32 steps");
}

Point point_outside_two_components(const RationalMap& phi, const TypeIIPoint& xi,
                                   const Direction& U, const Point& u_witness,
                                   const Direction& V, const Point& v_witness,
                                   TwoComponentMode mode, ComponentStatus u_status,
                                   Rational root_prec) {
    const FieldConfig* cfg = phi.config();
    long long d = phi.degree();
    (void)V;

    // move u -> 0, v -> infinity
    MobiusMap N = MobiusMap::identity(cfg);
    if (u_witness.inf) {
        if (v_witness.inf) throw InternalError("two components with the same witness");
        N = MobiusMap(PuiseuxElement::zero(cfg), PuiseuxElement::one(cfg),
                      PuiseuxElement::one(cfg), -v_witness.v);
    } else if (v_witness.inf) {
        N = MobiusMap::affine(PuiseuxElement::one(cfg).promote(u_witness.v.level()),
                              -u_witness.v);
    } else {
        N = MobiusMap(PuiseuxElement::one(cfg), -u_witness.v, PuiseuxElement::one(cfg),
                      -v_witness.v);
    }
    RationalMap moved = conjugate(phi.promote(join(phi.level(), N.level())), N);
    TypeIIPoint moved_xi = mobius_on_type2(N, xi);
    TypeIIPoint c = moved_xi.canonical();
    Rational tgt = alpha_target(c.radius_val(), root_prec, cfg->default_prec);
    Rational rel = tgt * Rational(d + 2) + Rational(24);

    Point alpha_moved = Point::infinity(cfg);
    if (mode == TwoComponentMode::other_not_fixed) {
        // poles of the moved map avoid both components
        if (moved.den().degree() != d)
            throw InternalError("pole polynomial degree " + std::to_string(moved.den().degree()) +
                                ", expected " + std::to_string(d));
        bool found = false;
        for (auto& r : sorted_roots(moved.den(), tgt)) {
            Point cand = Point::finite(r.value);
            try {
                Direction dc = direction_of(cand, moved_xi);
                Direction dU = direction_of(Point::finite(PuiseuxElement::zero(cfg, c.level())),
                                            moved_xi);
                if (!dc.outside && !dc.same_direction(dU)) {
                    alpha_moved = cand;
                    found = true;
                    break;
                }
            } catch (const PrecisionExhausted&) {
                continue;
            }
        }
        if (!found) throw RootOutsideDisk("no pole outside the two components");
    } else if (u_status == ComponentStatus::attracting) {
        // mapping degree on the moved disk D(0, rho) and the scaling lemma
        Rational rho = c.radius_val();
        WeierstrassData w =
            weierstrass_degree(moved, PuiseuxElement::zero(cfg, c.level()), rho);
        long long ell = w.ell;
        if (ell < 2) throw ModeMismatch("attracting component with mapping degree 1");
        LocalExpansion ex =
            local_expansion(moved, PuiseuxElement::zero(cfg, c.level()), d + 1);
        PuiseuxElement cl = ex.coeff(ell);
        if (!cl.has_certified_val())
            throw PrecisionExhausted("scaling coefficient uncertifiable");
        if (!(cl.val().finite() == (Rational(1) - Rational(ell)) * rho))
            throw InternalError("scaling coefficient valuation mismatch");
        // leading monomial of 1/c_ell: an exact element of valuation (ell-1)rho
        const ResidueField* RF = cl.residue_field();
        PuiseuxElement cmono = PuiseuxElement::monomial(
            cfg, cl.level(), RF->inv(cl.leading_coeff()), -cl.val().finite());
        PuiseuxElement alpha = cmono.nth_root(ell - 1, rel);
        alpha_moved = Point::finite(alpha.minimize());
    } else {
        // both fixed, U indifferent: siblings of 0 among preimages of phi(0)
        Point y0 = eval_prec(moved, Point::finite(PuiseuxElement::zero(cfg, c.level())), rel);
        if (y0.inf) throw InternalError("phi(0) infinite on an indifferent component");
        Poly g = moved.num() - moved.den().scalar_mul(y0.v);
        if (g.degree() != d)
            throw InternalError("preimage polynomial degree " + std::to_string(g.degree()));
        Poly f = g.divide_linear(PuiseuxElement::zero(cfg, g.level()));
        if (f.degree() != d - 1)
            throw InternalError("sibling polynomial degree " + std::to_string(f.degree()));
        bool found = false;
        for (auto& r : sorted_roots(f, tgt)) {
            Point cand = Point::finite(r.value);
            try {
                Direction dc = direction_of(cand, moved_xi);
                Direction dU = direction_of(Point::finite(PuiseuxElement::zero(cfg, c.level())),
                                            moved_xi);
                if (!dc.outside && !dc.same_direction(dU)) {
                    alpha_moved = cand;
                    found = true;
                    break;
                }
            } catch (const PrecisionExhausted&) {
                continue;
            }
        }
        if (!found) throw RootOutsideDisk("no sibling preimage outside the two components");
    }

    Point alpha = N.inverse().apply(alpha_moved);
    Direction da = direction_of(alpha, xi);
    if (da.same_direction(U) || da.same_direction(V))
        throw RootOutsideDisk("constructed point landed inside a component");
    return alpha;
}

long long ramification_lower_bound(const Point& a, const Rational& rho_b, const Level& level) {
    if (a.inf) throw InternalError("ramification_lower_bound with center at infinity");
    long long m = value_group_index(rho_b, level);
    Valuation va = a.v.is_exact_zero() ? Valuation::infinity() : a.v.val();
    if (va >= Valuation(rho_b)) return m;
    long long j = value_group_index(va.finite(), level);
    return lcm_ll(j, m);
}

namespace {

struct Census {
    bool c_rational = false;
    bool rho_in_lattice = false;
    PuiseuxElement c_minus;  // at the working level when rational
    Rational rho{0};
};

Census take_census(const TypeIIPoint& xi, const FieldConfig* cfg, const Level& base) {
    Census cs;
    cs.rho = xi.radius_val();
    cs.rho_in_lattice = in_lattice(cs.rho, base);
    PuiseuxElement cm = xi.center().truncate_below_exact(cs.rho);
    Level big = join(cm.level(), base);
    PuiseuxElement cmb = cm.promote(big);
    bool ok = true;
    for (auto& [q, coeff] : cmb.terms()) {
        if (!in_lattice(q, base)) { ok = false; break; }
        if (cfg->p > 0 &&
            !cmb.residue_field()->in_subfield(coeff, (int)(cfg->f0 * base.f))) {
            ok = false;
            break;
        }
    }
    cs.c_rational = ok;
    if (ok) cs.c_minus = cmb.minimize().promote(base);
    return cs;
}

}  // namespace

std::optional<ModelResult> find_good_model(const RationalMap& phi, const FindModelOptions& opts) {
    const FieldConfig* cfg = phi.config();
    long long d = phi.degree();
    if (d < 2) throw InternalError("find_good_model needs degree >= 2");
    long long B = degree_bound(cfg->p, d);

    Rational base_prec = opts.root_prec;
    if (base_prec <= Rational(0)) base_prec = cfg->default_prec;

    for (int attempt = 0; attempt <= opts.retries; ++attempt) {
        Rational rp = base_prec * Rational(1LL << attempt);
        try {
            // work over the map's own minimal field of definition
            Level base = phi.minimal_level();
            RationalMap cur = phi;  // stays at its original level; base tracks the field
            auto inv = find_invariant_point(cur);
            if (!inv) return std::nullopt;
            TypeIIPoint xi = *inv;

            std::vector<CaseStep> trace;
            Level level_cur = base;

            for (int round = 0; round < 4; ++round) {
                Census cs = take_census(xi, cfg, level_cur);
                if (cs.c_rational && cs.rho_in_lattice) {
                    // three rational directions: c-, infinity, c- + t^rho
                    PuiseuxElement a = cs.c_minus;
                    PuiseuxElement tr = PuiseuxElement::t_power(cfg, cs.rho).promote(level_cur);
                    Point pa = Point::finite(a);
                    Point pb = Point::infinity(cfg);
                    Point pc = Point::finite(a + tr);
                    MobiusMap h = three_point_mobius(pa, pb, pc);
                    RationalMap psi = conjugate(cur.promote(join(cur.level(), h.level())), h);
                    if (!has_good_reduction(psi))
                        throw InternalError("case 1 conjugate lost good reduction");
                    trace.push_back({1, "witnesses " + pa.str() + ", inf, " + pc.str()});
                    ModelResult mr(h, psi, xi);
                    mr.base_level = base;
                    mr.model_level = level_cur;
                    mr.extension_degree = level_cur.degree() / base.degree();
                    mr.trace = std::move(trace);
                    mr.bound = B;
                    if (mr.extension_degree > B)
                        throw InternalError("constructed extension degree " +
                                            std::to_string(mr.extension_degree) +
                                            " exceeds the bound " + std::to_string(B));
                    return mr;
                }

                if (cs.c_rational) {
                    // two rational directions: D(c-, rho) and the outside
                    Direction Uin;
                    Uin.outside = false;
                    Uin.center = cs.c_minus.promote(join(cs.c_minus.level(), xi.level()));
                    Uin.rho = cs.rho;
                    Direction Uout;
                    Uout.outside = true;
                    Uout.center = PuiseuxElement::zero(cfg, xi.level());
                    Uout.rho = cs.rho;
                    Point win = Point::finite(cs.c_minus);
                    Point wout = Point::infinity(cfg);

                    ComponentClass cin = classify_component(cur, xi, Uin);
                    ComponentClass cout = classify_component(cur, xi, Uout);

                    if (cin.status == ComponentStatus::not_fixed &&
                        cout.status == ComponentStatus::not_fixed) {
                        // neither fixed: adjoin a fixed point or the radius radical
                        long long m = value_group_index(cs.rho, level_cur);
                        Level rad_level = join(level_cur, Level{cs.rho.den(), 1});
                        long long best_deg = rad_level.degree() / level_cur.degree();
                        Level best = rad_level;
                        std::string note = "radius radical of index " + std::to_string(m);
                        try {
                            // minimal constructed degree first, ties by the
                            // printed series
                            auto fps = fixed_points(cur, rp);
                            std::vector<std::pair<Level, std::string>> cands;
                            for (auto& fp : fps) {
                                if (fp.location.inf) continue;
                                Direction df = direction_of(fp.location, xi);
                                if (df.outside || df.same_direction(Uin)) continue;
                                cands.push_back({join(level_cur, fp.location.v.minimal_level()),
                                                 fp.location.v.str()});
                            }
                            std::sort(cands.begin(), cands.end(),
                                      [&](const auto& a, const auto& b) {
                                          if (a.first.degree() != b.first.degree())
                                              return a.first.degree() < b.first.degree();
                                          return a.second < b.second;
                                      });
                            if (!cands.empty() &&
                                cands[0].first.degree() / level_cur.degree() < best_deg) {
                                best_deg = cands[0].first.degree() / level_cur.degree();
                                best = cands[0].first;
                                note = "fixed point " + cands[0].second;
                            }
                        } catch (const Error&) {
                        }
                        trace.push_back({4, note});
                        level_cur = best;
                        continue;
                    }

                    // the radius radical opens a third rational direction
                    // whenever only the lattice blocks it; the case-specific
                    // construction competes with it on extension degree
                    Level rad_level = join(level_cur, Level{cs.rho.den(), 1});
                    long long rad_deg = rad_level.degree() / level_cur.degree();
                    long long m_idx = value_group_index(cs.rho, level_cur);

                    int label;
                    std::string kind;
                    Direction U = Uin;
                    Point uw = win;
                    Direction Vd = Uout;
                    Point vw = wout;
                    ComponentStatus ustat = cin.status;
                    TwoComponentMode mode = TwoComponentMode::both_fixed_or_attracting;
                    if (cin.status == ComponentStatus::indifferent &&
                        cout.status == ComponentStatus::not_fixed) {
                        label = 2;
                        kind = "pole ";
                        mode = TwoComponentMode::other_not_fixed;
                    } else if (cout.status == ComponentStatus::indifferent &&
                               cin.status == ComponentStatus::not_fixed) {
                        label = 2;
                        kind = "pole ";
                        mode = TwoComponentMode::other_not_fixed;
                        U = Uout; uw = wout; Vd = Uin; vw = win;
                        ustat = cout.status;
                    } else {
                        label = 3;
                        if (cin.status != ComponentStatus::attracting &&
                            cout.status == ComponentStatus::attracting) {
                            U = Uout; uw = wout; Vd = Uin; vw = win;
                            ustat = cout.status;
                        }
                        kind = ustat == ComponentStatus::attracting ? "scaling root "
                                                                    : "sibling preimage ";
                    }
                    std::optional<Level> alpha_level;
                    std::string note;
                    try {
                        Point alpha =
                            point_outside_two_components(cur, xi, U, uw, Vd, vw, mode, ustat, rp);
                        if (!alpha.inf) {
                            alpha_level = join(level_cur, alpha.v.minimal_level());
                            note = kind + alpha.str();
                        } else {
                            alpha_level = level_cur;
                            note = kind + "inf";
                        }
                    } catch (const Error&) {
                        // fall back to the radical
                    }
                    if (!alpha_level ||
                        alpha_level->degree() / level_cur.degree() > rad_deg) {
                        alpha_level = rad_level;
                        note = "radius radical of index " + std::to_string(m_idx);
                    }
                    trace.push_back({label, note});
                    level_cur = *alpha_level;
                    continue;
                }

                // single rational direction: the outside one
                Direction Uout;
                Uout.outside = true;
                Uout.center = PuiseuxElement::zero(cfg, xi.level());
                Uout.rho = cs.rho;
                Point wout = Point::infinity(cfg);
                ComponentClass cout = classify_component(cur, xi, Uout);
                if (cout.status == ComponentStatus::indifferent) {
                    Point alpha =
                        point_outside_indifferent_component(cur, xi, Uout, wout, rp);
                    trace.push_back({5, "preimage point " + alpha.str()});
                    if (!alpha.inf) level_cur = join(level_cur, alpha.v.minimal_level());
                    continue;
                }
                if (cout.status == ComponentStatus::attracting) {
                    Point alpha =
                        point_outside_attracting_component(cur, xi, Uout, wout, rp);
                    trace.push_back({6, "perturbation point " + alpha.str()});
                    if (!alpha.inf) level_cur = join(level_cur, alpha.v.minimal_level());
                    continue;
                }
                throw InternalError(
                    "the single rational component is not fixed; classification "
                    "contradicts total invariance");
            }
            throw InternalError("case recursion exceeded the expected depth");
        } catch (const PrecisionExhausted&) {
            if (attempt == opts.retries) throw;
            continue;
        }
    }
    return std::nullopt;
}

}  // namespace goodred
