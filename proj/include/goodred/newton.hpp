#pragma once

#include <optional>
#include <vector>

#include "goodred/ratmap.hpp"

namespace goodred {

// Lower convex hull of (index, coefficient valuation). A segment of slope s
// and horizontal length l accounts for l roots of valuation -s.
struct PolygonSegment {
    Rational slope;
    long long length;
    long long i_from, i_to;
};

struct NewtonPolygon {
    std::vector<std::pair<long long, Rational>> vertices;  // hull vertices
    std::vector<PolygonSegment> segments;                  // slopes strictly increasing
};

// Polygon from explicit points. Certified points carry exact valuations;
// uncertified points carry lower bounds and must not dip below the hull.
NewtonPolygon polygon_from_points(
    const std::vector<std::tuple<long long, Rational, bool>>& pts);

NewtonPolygon newton_polygon(const Poly& f);

struct PuiseuxRoot {
    PuiseuxElement value;
    long long multiplicity;
};

// All roots of f (with multiplicity) at enlarged levels; each returned root r
// satisfies v(f(r)) >= target_prec, exact roots are exact. target_prec <= 0
// selects the configuration default.
std::vector<PuiseuxRoot> puiseux_roots(const Poly& f, Rational target_prec = Rational(0));

// Only the roots of valuation strictly greater than the bound.
std::vector<PuiseuxRoot> puiseux_roots_above(const Poly& f, const Rational& bound_exclusive,
                                             Rational target_prec = Rational(0));

// Laurent expansion of phi at a finite center: coefficient c[i] multiplies
// z^(i - pole_order).
struct LocalExpansion {
    long long pole_order = 0;
    std::vector<PuiseuxElement> c;
    PuiseuxElement coeff(long long n) const;  // coefficient of z^n
    long long max_exponent() const { return (long long)c.size() - 1 - pole_order; }
};

LocalExpansion local_expansion(const RationalMap& phi, const PuiseuxElement& a, long long terms);

struct DiskImage {
    Point center;
    Rational radius_val;
};

// Image of the open disk D(a, |t|^rho) containing no poles.
DiskImage disk_image(const RationalMap& phi, const PuiseuxElement& a, const Rational& rho);

struct WeierstrassData {
    PuiseuxElement center;
    Rational rho;
    long long ell;        // least n >= 1 minimizing v(c_n) + n*rho (mapping degree)
    long long ell_full;   // least n >= 0 minimizing
    Rational sigma;       // min over n >= 1
    std::vector<long long> attained;  // all minimizing indices n >= 1
};

WeierstrassData weierstrass_degree(const RationalMap& phi, const PuiseuxElement& a,
                                   const Rational& rho);

// Segment slopes, negated, of the Laurent polygon of phi at a finite center
// (terms z^n, n != 0). Used as candidate radii for invariant disks.
std::vector<Rational> local_balance_radii(const RationalMap& phi, const PuiseuxElement& a,
                                          long long terms);

}  // namespace goodred
