#pragma once

#include "goodred/newton.hpp"
#include "goodred/ratmap.hpp"

namespace goodred {

// Type-II point zeta(a, r) with r = |t|^rho: the closed disk of center a and
// radius valuation rho. Two representatives name the same point iff
// v(a - a') >= rho and the radii agree.
class TypeIIPoint {
public:
    TypeIIPoint(PuiseuxElement center, Rational radius_val);

    static TypeIIPoint gauss(const FieldConfig* cfg);

    const PuiseuxElement& center() const { return center_; }
    const Rational& radius_val() const { return rho_; }
    const FieldConfig* config() const { return center_.config(); }
    Level level() const { return center_.level(); }

    // canonical representative: center truncated at exponents <= rho
    TypeIIPoint canonical() const;
    bool same_point(const TypeIIPoint& o) const;
    bool is_gauss() const;

    std::string str() const;

private:
    PuiseuxElement center_;
    Rational rho_;
};

// A connected component of the complement of a type-II point: either the set
// outside the closed disk, or an open disk D(b, rho) with canonical center b
// (the series of b truncated at exponents <= rho).
struct Direction {
    bool outside = false;
    PuiseuxElement center;  // canonical, meaningful when !outside
    Rational rho;

    bool same_direction(const Direction& o) const;
    std::string str() const;
};

Direction direction_of(const Point& x, const TypeIIPoint& xi);

// Unique Moebius map with a -> 0, b -> inf, c -> 1.
MobiusMap three_point_mobius(const Point& a, const Point& b, const Point& c);

// Image of a type-II point: computed from three points in distinct directions
// and cross-checked by a direct disk-image computation when applicable.
TypeIIPoint mobius_on_type2(const MobiusMap& h, const TypeIIPoint& xi);

}  // namespace goodred
