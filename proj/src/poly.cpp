#include "goodred/poly.hpp"

#include <algorithm>

#include "goodred/errors.hpp"

namespace goodred {

Poly::Poly(const FieldConfig* cfg, std::vector<PuiseuxElement> coeffs) : cfg_(cfg) {
    Level lv{1, 1};
    for (auto& c : coeffs) lv = join(lv, c.level());
    lv_ = lv;
    c_.reserve(coeffs.size());
    for (auto& c : coeffs) c_.push_back(c.promote(lv));
    trim();
}

Poly Poly::from_coeffs(std::vector<PuiseuxElement> coeffs) {
    if (coeffs.empty()) throw InternalError("from_coeffs with no coefficients");
    const FieldConfig* cfg = coeffs[0].config();
    return Poly(cfg, std::move(coeffs));
}

Poly Poly::z(const FieldConfig* cfg) {
    return Poly(cfg, {PuiseuxElement::zero(cfg), PuiseuxElement::one(cfg)});
}

Poly Poly::constant(const PuiseuxElement& c) { return Poly(c.config(), {c}); }

void Poly::trim() {
    while (!c_.empty()) {
        const PuiseuxElement& lead = c_.back();
        if (lead.is_exact_zero()) { c_.pop_back(); continue; }
        if (lead.is_apparent_zero())
            throw PrecisionExhausted("leading coefficient certified only to O(t^" +
                                     lead.prec()->str() + ")");
        break;
    }
}

PuiseuxElement Poly::coeff_or_zero(long long i) const {
    if (i < 0 || i >= (long long)c_.size()) return PuiseuxElement::zero(cfg_, lv_);
    return c_[i];
}

const PuiseuxElement& Poly::lead() const {
    if (c_.empty()) throw InternalError("lead of zero polynomial");
    return c_.back();
}

Poly Poly::promote(Level target) const {
    Poly r(cfg_, target);
    r.c_.reserve(c_.size());
    for (auto& c : c_) r.c_.push_back(c.promote(target));
    return r;
}

Level Poly::minimal_level() const {
    Level lv{1, 1};
    for (auto& c : c_) lv = join(lv, c.minimal_level());
    return lv;
}

Poly Poly::operator+(const Poly& o) const {
    Level lv = join(lv_, o.lv_);
    std::vector<PuiseuxElement> r(std::max(c_.size(), o.c_.size()), PuiseuxElement::zero(cfg_, lv));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < c_.size()) r[i] = r[i] + c_[i];
        if (i < o.c_.size()) r[i] = r[i] + o.c_[i];
    }
    return Poly(cfg_, std::move(r));
}

Poly Poly::operator-() const {
    Poly r(cfg_, lv_);
    r.c_.reserve(c_.size());
    for (auto& c : c_) r.c_.push_back(-c);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (c_.empty() || o.c_.empty()) return Poly(cfg_, join(lv_, o.lv_));
    Level lv = join(lv_, o.lv_);
    std::vector<PuiseuxElement> r(c_.size() + o.c_.size() - 1, PuiseuxElement::zero(cfg_, lv));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_exact_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return Poly(cfg_, std::move(r));
}

Poly Poly::scalar_mul(const PuiseuxElement& s) const {
    std::vector<PuiseuxElement> r;
    r.reserve(c_.size());
    for (auto& c : c_) r.push_back(c * s);
    if (r.empty()) return Poly(cfg_, lv_);
    return Poly(cfg_, std::move(r));
}

Poly Poly::shift_t(const Rational& q) const {
    std::vector<PuiseuxElement> r;
    r.reserve(c_.size());
    for (auto& c : c_) r.push_back(c.shift_t(q));
    if (r.empty()) return Poly(cfg_, join(lv_, Level{q.den(), 1}));
    return Poly(cfg_, std::move(r));
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(cfg_, lv_);
    std::vector<PuiseuxElement> r;
    r.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        r.push_back(c_[i].scalar_mul(c_[i].residue_field()->from_int((long long)i)));
    return Poly(cfg_, std::move(r));
}

PuiseuxElement Poly::eval(const PuiseuxElement& x) const {
    PuiseuxElement acc = PuiseuxElement::zero(cfg_, join(lv_, x.level()));
    for (long long i = (long long)c_.size() - 1; i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

Poly Poly::recenter(const PuiseuxElement& s) const {
    // synthetic shift: repeated division by (z - (-s)) accumulation
    if (c_.empty()) return *this;
    Level lv = join(lv_, s.level());
    std::vector<PuiseuxElement> a;
    a.reserve(c_.size());
    for (auto& c : c_) a.push_back(c.promote(lv));
    PuiseuxElement se = s.promote(lv);
    size_t n = a.size();
    for (size_t k = 0; k + 1 < n; ++k) {
        for (size_t i = n - 1; i >= k + 1; --i) {
            a[i - 1] = a[i - 1] + a[i] * se;
            if (i == k + 1) break;
        }
    }
    return Poly(cfg_, std::move(a));
}

Poly Poly::compose_affine(const PuiseuxElement& a, const PuiseuxElement& b) const {
    // f(a z + b) = recenter by b then scale z by a
    Poly shifted = recenter(b);
    std::vector<PuiseuxElement> r;
    r.reserve(shifted.c_.size());
    PuiseuxElement apow = PuiseuxElement::one(cfg_);
    for (size_t i = 0; i < shifted.c_.size(); ++i) {
        r.push_back(shifted.c_[i] * apow);
        apow = apow * a;
    }
    if (r.empty()) return Poly(cfg_, lv_);
    return Poly(cfg_, std::move(r));
}

Poly Poly::divide_linear(const PuiseuxElement& root) const {
    if (c_.empty()) return *this;
    Level lv = join(lv_, root.level());
    PuiseuxElement r = root.promote(lv);
    std::vector<PuiseuxElement> q(c_.size() - 1, PuiseuxElement::zero(cfg_, lv));
    PuiseuxElement carry = c_.back().promote(lv);
    for (long long i = (long long)c_.size() - 2; i >= 0; --i) {
        q[i] = carry;
        carry = c_[i].promote(lv) + carry * r;
    }
    if (!carry.terms().empty())
        throw InternalError("divide_linear: remainder " + carry.str() + " not zero");
    if (q.empty()) return Poly(cfg_, lv);
    return Poly(cfg_, std::move(q));
}

Poly Poly::reverse() const {
    std::vector<PuiseuxElement> r(c_.rbegin(), c_.rend());
    if (r.empty()) return *this;
    return Poly(cfg_, std::move(r));
}

std::string Poly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string s;
    for (long long i = (long long)c_.size() - 1; i >= 0; --i) {
        const PuiseuxElement& c = c_[i];
        if (c.is_exact_zero()) continue;
        if (!s.empty()) s += " + ";
        std::string cs = c.str();
        bool simple = c.terms().size() <= 1 && !c.prec().has_value() &&
                      cs.find('+') == std::string::npos;
        if (i == 0) { s += simple ? cs : "(" + cs + ")"; continue; }
        std::string zs = (i == 1) ? var : var + "^" + std::to_string(i);
        if (cs == "1") { s += zs; continue; }
        s += (simple ? cs : "(" + cs + ")") + "*" + zs;
    }
    if (s.empty()) s = "0";
    return s;
}

PuiseuxElement resultant(const Poly& f, const Poly& g, long long formal_deg) {
    if (f.is_zero() || g.is_zero()) {
        if (f.is_zero() && g.is_zero()) throw InternalError("resultant of two zero polynomials");
        // Res(f, 0) = 0 for deg >= 1
        return PuiseuxElement::zero(f.config(), join(f.level(), g.level()));
    }
    long long m = formal_deg >= 0 ? formal_deg : f.degree();
    long long n = formal_deg >= 0 ? formal_deg : g.degree();
    if (m < f.degree() || n < g.degree())
        throw InternalError("formal degree below the actual degree");
    if (m + n < 1) throw InternalError("resultant needs deg f + deg g >= 1");
    const FieldConfig* cfg = f.config();
    Level lv = join(f.level(), g.level());
    Poly F = f.promote(lv), G = g.promote(lv);
    long long size = m + n;
    // Sylvester matrix, rows of f first.
    std::vector<std::vector<PuiseuxElement>> M(
        (size_t)size, std::vector<PuiseuxElement>((size_t)size, PuiseuxElement::zero(cfg, lv)));
    for (long long r = 0; r < n; ++r)
        for (long long k = 0; k <= m; ++k) M[r][r + k] = F.coeff_or_zero(m - k).promote(lv);
    for (long long r = 0; r < m; ++r)
        for (long long k = 0; k <= n; ++k) M[n + r][r + k] = G.coeff_or_zero(n - k).promote(lv);

    // valuation-pivoted Gaussian elimination
    PuiseuxElement det = PuiseuxElement::one(cfg).promote(lv);
    int sign = 1;
    for (long long col = 0; col < size; ++col) {
        long long piv = -1;
        Valuation best = Valuation::infinity();
        bool ambiguous = false;
        for (long long r = col; r < size; ++r) {
            const PuiseuxElement& e = M[r][col];
            if (e.is_exact_zero()) continue;
            if (e.is_apparent_zero()) { ambiguous = true; continue; }
            Valuation v = e.val();
            if (piv < 0 || v < best) { piv = r; best = v; }
        }
        if (piv < 0) {
            if (ambiguous)
                throw PrecisionExhausted("resultant pivot column " + std::to_string(col) +
                                         " uncertifiable");
            return PuiseuxElement::zero(cfg, lv);  // exactly singular
        }
        if (piv != col) { std::swap(M[piv], M[col]); sign = -sign; }
        const PuiseuxElement pivot = M[col][col];
        det = det * pivot;
        for (long long r = col + 1; r < size; ++r) {
            if (M[r][col].is_exact_zero()) continue;
            PuiseuxElement factor = M[r][col].div(pivot);
            for (long long k = col; k < size; ++k)
                M[r][k] = M[r][k] - factor * M[col][k];
        }
    }
    if (sign < 0) det = -det;
    return det;
}

RPoly residue_poly(const Poly& f) {
    RPoly r;
    r.reserve(f.coeffs().size());
    for (auto& c : f.coeffs()) r.push_back(c.residue_image());
    const ResidueField* F =
        f.coeffs().empty()
            ? (f.config()->p == 0 ? ResidueField::rationals()
                                  : ResidueField::get(f.config()->p, (int)(f.config()->f0 * f.level().f)))
            : f.coeffs()[0].residue_field();
    return rp_trim(F, r);
}

}  // namespace goodred
