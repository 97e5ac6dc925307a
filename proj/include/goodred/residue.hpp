#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "goodred/rational.hpp"

namespace goodred {

class ResidueField;

// Element of a residue field. For p > 0 the coefficient vector has length
// deg(F) over F_p; for the rational field the value lives in `q`.
struct RElem {
    const ResidueField* F = nullptr;
    Rational q;
    std::vector<int32_t> c;
};

// A residue field: either F_{p^deg} for prime p, or the rationals (p = 0).
//
// Finite fields are interned per (p, deg) and represented as F_p[x]/(m(x))
// where m is the first monic polynomial, in the fixed enumeration order, that
// is irreducible, primitive, and norm-compatible with the moduli already
// chosen for the proper subfields. Primitivity plus norm compatibility makes
// the generator-power embeddings between any two fields of the tower commute,
// so elements can be moved between levels along any route.
class ResidueField {
public:
    static const ResidueField* get(long long p, int deg);
    static const ResidueField* rationals();

    long long p() const { return p_; }
    int deg() const { return deg_; }
    bool is_rationals() const { return p_ == 0; }
    unsigned long long size() const { return size_; }  // p^deg (finite fields only)
    const std::vector<int32_t>& modulus() const { return modulus_; }

    RElem zero() const;
    RElem one() const;
    RElem from_int(long long n) const;
    RElem from_rational(const Rational& r) const;  // rationals only
    RElem generator() const;                       // class of x (deg >= 2)
    RElem element_by_index(unsigned long long i) const;
    unsigned long long index_of(const RElem& a) const;

    bool is_zero(const RElem& a) const;
    bool eq(const RElem& a, const RElem& b) const;

    RElem add(const RElem& a, const RElem& b) const;
    RElem sub(const RElem& a, const RElem& b) const;
    RElem neg(const RElem& a) const;
    RElem mul(const RElem& a, const RElem& b) const;
    RElem inv(const RElem& a) const;
    RElem div(const RElem& a, const RElem& b) const;
    RElem pow(const RElem& a, long long e) const;

    // x -> x^p; identity on the rationals.
    RElem frobenius(const RElem& a) const;
    // Unique p-th root (inverse Frobenius).
    RElem pth_root(const RElem& a) const;

    // Move an element of a subfield (same p, deg dividing ours) into this field.
    RElem embed(const RElem& a) const;
    // True if a lies in the subfield of degree subdeg | deg.
    bool in_subfield(const RElem& a, int subdeg) const;
    // Express a (known to lie in the subfield) as an element of it.
    RElem project(const RElem& a, const ResidueField* sub) const;

    std::string str(const RElem& a) const;

private:
    ResidueField(long long p, int deg);

    std::vector<int32_t> poly_mul_mod(const std::vector<int32_t>& a,
                                      const std::vector<int32_t>& b) const;

    long long p_ = 0;
    int deg_ = 1;
    unsigned long long size_ = 0;
    std::vector<int32_t> modulus_;           // monic, length deg+1 (deg >= 2)
    std::vector<std::vector<int32_t>> gen_pow_;  // cached powers of the generator image
};

// Dense polynomial over a residue field, coefficients ascending.
using RPoly = std::vector<RElem>;

RPoly rp_trim(const ResidueField* F, RPoly a);
long long rp_deg(const ResidueField* F, const RPoly& a);  // -1 for zero
RPoly rp_add(const ResidueField* F, const RPoly& a, const RPoly& b);
RPoly rp_sub(const ResidueField* F, const RPoly& a, const RPoly& b);
RPoly rp_mul(const ResidueField* F, const RPoly& a, const RPoly& b);
RPoly rp_scalar(const ResidueField* F, const RPoly& a, const RElem& s);
// Quotient/remainder by a nonzero divisor.
std::pair<RPoly, RPoly> rp_divmod(const ResidueField* F, const RPoly& a, const RPoly& b);
RPoly rp_gcd_monic(const ResidueField* F, RPoly a, RPoly b);
RElem rp_eval(const ResidueField* F, const RPoly& a, const RElem& x);
RPoly rp_monic(const ResidueField* F, const RPoly& a);
bool rp_eq(const ResidueField* F, const RPoly& a, const RPoly& b);
std::string rp_str(const ResidueField* F, const RPoly& a);  // in variable "z"

// All roots in F with multiplicities, in canonical element order (exhaustive;
// F must be finite and not too large).
std::vector<std::pair<RElem, long long>> rp_roots(const ResidueField* F, const RPoly& a);

// Smallest k >= 1 such that z^n = c has a solution in F_{p^(deg*k)}, and the
// first such solution in canonical order. c must be nonzero.
std::pair<int, RElem> nth_root_in_extension(const ResidueField* F, const RElem& c, long long n);

}  // namespace goodred
