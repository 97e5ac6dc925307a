#pragma once

#include <map>
#include <optional>
#include <string>

#include "goodred/rational.hpp"
#include "goodred/residue.hpp"

namespace goodred {

// Base field description: K = k((t)) with k = F_{p^f0} (p prime) or Q (p = 0).
// Valuations are normalized so v(t) = 1.
struct FieldConfig {
    long long p;   // residue characteristic, 0 or prime
    int f0;        // base residue degree (1 for Q)
    Rational default_prec{24};

    static const FieldConfig* get(long long p, int f0 = 1);
};

// A level in the field tower over K: exponents in (1/e)Z, coefficients in
// F_{p^(f0*f)}. Degree over K is e*f.
struct Level {
    long long e = 1;
    long long f = 1;

    bool operator==(const Level& o) const { return e == o.e && f == o.f; }
    bool operator!=(const Level& o) const { return !(*this == o); }
    long long degree() const { return detail::checked_cast(__int128(e) * f, "level degree"); }
    bool contains(const Level& o) const { return e % o.e == 0 && f % o.f == 0; }
    std::string str() const { return "(e=" + std::to_string(e) + ",f=" + std::to_string(f) + ")"; }
};

inline Level join(const Level& a, const Level& b) {
    return Level{lcm_ll(a.e, b.e), lcm_ll(a.f, b.f)};
}

// Truncated Puiseux series: finitely many known terms below an absolute
// truncation order `prec`. An element without `prec` is exactly known.
// Exact zero (no terms, no prec) is distinct from zero up to precision.
class PuiseuxElement {
public:
    PuiseuxElement() : cfg_(nullptr) {}

    static PuiseuxElement zero(const FieldConfig* cfg, Level lv = {1, 1});
    static PuiseuxElement zero_to_prec(const FieldConfig* cfg, Level lv, const Rational& prec);
    static PuiseuxElement from_int(const FieldConfig* cfg, long long n);
    static PuiseuxElement constant(const FieldConfig* cfg, Level lv, const RElem& c);
    // c * t^q at the given level (lattice must contain q).
    static PuiseuxElement monomial(const FieldConfig* cfg, Level lv, const RElem& c,
                                   const Rational& q);
    static PuiseuxElement t_power(const FieldConfig* cfg, const Rational& q);
    static PuiseuxElement one(const FieldConfig* cfg) { return from_int(cfg, 1); }

    const FieldConfig* config() const { return cfg_; }
    const Level& level() const { return lv_; }
    const ResidueField* residue_field() const;
    const std::map<Rational, RElem>& terms() const { return terms_; }
    const std::optional<Rational>& prec() const { return prec_; }

    bool is_exact() const { return !prec_.has_value(); }
    bool is_exact_zero() const { return terms_.empty() && is_exact(); }
    bool is_apparent_zero() const { return terms_.empty() && prec_.has_value(); }
    bool has_certified_val() const { return !terms_.empty() || is_exact_zero(); }

    // Exact valuation; throws PrecisionExhausted for apparent zero.
    Valuation val() const;
    // Lower bound on the valuation (prec for apparent zero, +inf for exact 0).
    Valuation val_lower() const;
    // Leading coefficient (at the valuation); element must have certified val.
    RElem leading_coeff() const;
    // Coefficient at exponent q (certified-zero coefficients are returned as
    // zero; throws if q is at or beyond prec).
    RElem coeff(const Rational& q) const;

    PuiseuxElement promote(Level target) const;
    // Smallest level holding every term (exponent lattice + coefficient field).
    Level minimal_level() const;
    PuiseuxElement minimize() const { return promote_down(minimal_level()); }

    PuiseuxElement operator-() const;
    PuiseuxElement operator+(const PuiseuxElement& o) const;
    PuiseuxElement operator-(const PuiseuxElement& o) const;
    PuiseuxElement operator*(const PuiseuxElement& o) const;
    // rel_prec: relative precision of the quotient when both operands are
    // exact and the divisor has more than one term (0 = config default).
    PuiseuxElement div(const PuiseuxElement& o, Rational rel_prec = Rational(0)) const;
    PuiseuxElement operator/(const PuiseuxElement& o) const { return div(o); }

    PuiseuxElement scalar_mul(const RElem& s) const;
    PuiseuxElement shift_t(const Rational& q) const;  // multiply by t^q
    PuiseuxElement pow(long long k, Rational rel_prec = Rational(0)) const;
    PuiseuxElement truncate(const Rational& prec) const;
    // Terms with exponent < cutoff, as an exact element.
    PuiseuxElement truncate_below_exact(const Rational& cutoff) const;
    // Terms with exponent <= cutoff, as an exact element.
    PuiseuxElement truncate_at_exact(const Rational& cutoff) const;

    // n-th root at an enlarged level; rel_prec as in div.
    PuiseuxElement nth_root(long long n, Rational rel_prec = Rational(0)) const;

    // Image in the residue field; requires certified v >= 0.
    RElem residue_image() const;

    // x == y certified exactly (difference is exact zero).
    bool certainly_equal(const PuiseuxElement& o) const;
    // difference is zero up to its precision (or exact zero).
    bool agree_up_to_prec(const PuiseuxElement& o) const;
    // difference has a certified nonzero term.
    bool certainly_distinct(const PuiseuxElement& o) const;

    std::string str() const;

private:
    PuiseuxElement(const FieldConfig* cfg, Level lv) : cfg_(cfg), lv_(lv) {}
    void insert_term(const Rational& q, const RElem& c);
    void prune();
    void check_compatible(const PuiseuxElement& o) const;
    PuiseuxElement promote_down(Level target) const;

    const FieldConfig* cfg_;
    Level lv_{1, 1};
    std::map<Rational, RElem> terms_;
    std::optional<Rational> prec_;
};

// Minimal n >= 1 with n*s in the value group (1/e)Z of the level.
long long value_group_index(const Rational& s, const Level& level);

// True if q lies in the exponent lattice (1/e)Z.
bool in_lattice(const Rational& q, const Level& level);

}  // namespace goodred
