#pragma once

#include <optional>
#include <string>

#include "goodred/poly.hpp"

namespace goodred {

// A point of P^1: a finite field-tower element or infinity.
struct Point {
    bool inf = false;
    PuiseuxElement v;

    static Point infinity(const FieldConfig* cfg) {
        Point p;
        p.inf = true;
        p.v = PuiseuxElement::zero(cfg);
        return p;
    }
    static Point finite(PuiseuxElement x) {
        Point p;
        p.v = std::move(x);
        return p;
    }
    std::string str() const { return inf ? "inf" : v.str(); }
};

// Invertible linear fractional map z -> (a z + b) / (c z + d).
class MobiusMap {
public:
    MobiusMap(PuiseuxElement a, PuiseuxElement b, PuiseuxElement c, PuiseuxElement d);
    static MobiusMap identity(const FieldConfig* cfg);
    // z -> a z + b
    static MobiusMap affine(const PuiseuxElement& a, const PuiseuxElement& b);
    // z -> 1/z
    static MobiusMap inversion(const FieldConfig* cfg);

    const PuiseuxElement& a() const { return a_; }
    const PuiseuxElement& b() const { return b_; }
    const PuiseuxElement& c() const { return c_; }
    const PuiseuxElement& d() const { return d_; }
    const FieldConfig* config() const { return a_.config(); }
    Level level() const;

    Point apply(const Point& x) const;
    MobiusMap inverse() const;
    MobiusMap compose(const MobiusMap& o) const;  // this after o
    MobiusMap promote(Level target) const;

    std::string str() const;

private:
    PuiseuxElement a_, b_, c_, d_;
};

// Reduction of a normalized map to the residue field.
struct ReducedMap {
    bool is_infinity = false;  // denominator reduced to zero
    const ResidueField* F = nullptr;
    RPoly num, den;  // coprime over F (common factors cancelled)
    long long degree = 0;

    // compare as maps of P^1 (up to a common scalar)
    bool equal_as_map(const ReducedMap& o) const;
    std::string str() const;
};

// Normalized rational map of degree >= 0: coprime numerator/denominator at a
// common level, scaled by a t-power so the minimal coefficient valuation is 0.
class RationalMap {
public:
    // Normalizes and certifies coprimality (resultant != 0).
    static RationalMap normalize(const Poly& f, const Poly& g);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    long long degree() const { return deg_; }
    const FieldConfig* config() const { return num_.config(); }
    const Level& level() const { return num_.level(); }
    const PuiseuxElement& res() const { return res_; }

    RationalMap promote(Level target) const;
    Level minimal_level() const;

    Point eval(const Point& x) const;
    std::string str() const;

private:
    RationalMap() = default;
    Poly num_, den_;
    long long deg_ = 0;
    PuiseuxElement res_;
};

ReducedMap reduce(const RationalMap& phi);
bool has_good_reduction(const RationalMap& phi);

// h o phi o h^{-1}, normalized; degree is preserved.
RationalMap conjugate(const RationalMap& phi, const MobiusMap& h);

// Multiplier phi'(x) at a fixed point (finite or infinite).
PuiseuxElement multiplier_at(const RationalMap& phi, const Point& x);

}  // namespace goodred
