#pragma once

#include <vector>

#include "goodred/puiseux.hpp"

namespace goodred {

// Dense polynomial over a field-tower level, coefficients ascending. The
// leading coefficient is certified nonzero; inner coefficients may be known
// only up to precision. The zero polynomial has no coefficients.
class Poly {
public:
    Poly() : cfg_(nullptr) {}
    explicit Poly(const FieldConfig* cfg, Level lv = {1, 1}) : cfg_(cfg), lv_(lv) {}
    // Trims trailing zeros; throws PrecisionExhausted if the leading
    // coefficient cannot be certified.
    Poly(const FieldConfig* cfg, std::vector<PuiseuxElement> coeffs);

    static Poly from_coeffs(std::vector<PuiseuxElement> coeffs);
    static Poly z(const FieldConfig* cfg);  // the identity polynomial z
    static Poly constant(const PuiseuxElement& c);

    const FieldConfig* config() const { return cfg_; }
    const Level& level() const { return lv_; }
    bool is_zero() const { return c_.empty(); }
    long long degree() const { return (long long)c_.size() - 1; }  // -1 for zero
    const std::vector<PuiseuxElement>& coeffs() const { return c_; }
    const PuiseuxElement& operator[](size_t i) const { return c_[i]; }
    PuiseuxElement coeff_or_zero(long long i) const;
    const PuiseuxElement& lead() const;

    Poly promote(Level target) const;
    Level minimal_level() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scalar_mul(const PuiseuxElement& s) const;
    Poly shift_t(const Rational& q) const;  // multiply every coefficient by t^q
    Poly derivative() const;

    PuiseuxElement eval(const PuiseuxElement& x) const;
    // f(z + s)
    Poly recenter(const PuiseuxElement& s) const;
    // f(a*z + b)
    Poly compose_affine(const PuiseuxElement& a, const PuiseuxElement& b) const;
    // quotient by (z - root); remainder must vanish up to precision.
    Poly divide_linear(const PuiseuxElement& root) const;
    // generic reversal: z^deg * f(1/z)
    Poly reverse() const;

    std::string str(const std::string& var = "z") const;

private:
    void trim();

    const FieldConfig* cfg_;
    Level lv_{1, 1};
    std::vector<PuiseuxElement> c_;
};

// Sylvester resultant. Valuation-pivoted elimination; the determinant is
// exact when all entries are exact and every pivot division is by a monomial,
// and is otherwise certified to working precision. Sign convention: the
// Sylvester matrix with the rows of f first. When formal_deg is given, both
// polynomials are treated as forms of that degree (the homogeneous resultant,
// sensitive to leading-coefficient degeneration).
PuiseuxElement resultant(const Poly& f, const Poly& g, long long formal_deg = -1);

// Coefficient-wise residue image (requires all v >= 0 certified).
RPoly residue_poly(const Poly& f);

}  // namespace goodred
