#include "goodred/puiseux.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "goodred/errors.hpp"

namespace goodred {

namespace {
std::mutex g_cfg_mutex;
std::map<std::pair<long long, int>, std::unique_ptr<FieldConfig>>& cfg_registry() {
    static std::map<std::pair<long long, int>, std::unique_ptr<FieldConfig>> r;
    return r;
}
}  // namespace

const FieldConfig* FieldConfig::get(long long p, int f0) {
    if (p == 0 && f0 != 1) throw UnsupportedField("rational residue field has no extensions");
    std::lock_guard<std::mutex> lk(g_cfg_mutex);
    auto key = std::make_pair(p, f0);
    auto it = cfg_registry().find(key);
    if (it != cfg_registry().end()) return it->second.get();
    auto cfg = std::make_unique<FieldConfig>();
    cfg->p = p;
    cfg->f0 = f0;
    if (p > 0) ResidueField::get(p, f0);  // validate early
    auto* raw = cfg.get();
    cfg_registry().emplace(key, std::move(cfg));
    return raw;
}

const ResidueField* PuiseuxElement::residue_field() const {
    if (cfg_->p == 0) return ResidueField::rationals();
    return ResidueField::get(cfg_->p, (int)(cfg_->f0 * lv_.f));
}

bool in_lattice(const Rational& q, const Level& level) {
    return (q * Rational(level.e)).is_integer();
}

long long value_group_index(const Rational& s, const Level& level) {
    // minimal n with n*s*e integral: den(s*e) in lowest terms
    Rational se = s * Rational(level.e);
    return se.den();
}

PuiseuxElement PuiseuxElement::zero(const FieldConfig* cfg, Level lv) {
    return PuiseuxElement(cfg, lv);
}

PuiseuxElement PuiseuxElement::zero_to_prec(const FieldConfig* cfg, Level lv,
                                            const Rational& prec) {
    PuiseuxElement x(cfg, lv);
    x.prec_ = prec;
    return x;
}

PuiseuxElement PuiseuxElement::from_int(const FieldConfig* cfg, long long n) {
    PuiseuxElement x(cfg, Level{1, 1});
    RElem c = x.residue_field()->from_int(n);
    if (!x.residue_field()->is_zero(c)) x.terms_.emplace(Rational(0), c);
    return x;
}

PuiseuxElement PuiseuxElement::constant(const FieldConfig* cfg, Level lv, const RElem& c) {
    PuiseuxElement x(cfg, lv);
    if (!x.residue_field()->is_zero(c)) x.terms_.emplace(Rational(0), x.residue_field()->embed(c));
    return x;
}

PuiseuxElement PuiseuxElement::monomial(const FieldConfig* cfg, Level lv, const RElem& c,
                                        const Rational& q) {
    if (!in_lattice(q, lv)) throw LevelMismatch("monomial exponent outside lattice " + q.str());
    PuiseuxElement x(cfg, lv);
    RElem ce = x.residue_field()->embed(c);
    if (!x.residue_field()->is_zero(ce)) x.terms_.emplace(q, ce);
    return x;
}

PuiseuxElement PuiseuxElement::t_power(const FieldConfig* cfg, const Rational& q) {
    Level lv{q.den(), 1};
    PuiseuxElement x(cfg, lv);
    x.terms_.emplace(q, x.residue_field()->one());
    return x;
}

Valuation PuiseuxElement::val() const {
    if (!terms_.empty()) return Valuation(terms_.begin()->first);
    if (is_exact()) return Valuation::infinity();
    throw PrecisionExhausted("valuation of apparent zero (prec " + prec_->str() + ")");
}

Valuation PuiseuxElement::val_lower() const {
    if (!terms_.empty()) return Valuation(terms_.begin()->first);
    if (is_exact()) return Valuation::infinity();
    return Valuation(*prec_);
}

RElem PuiseuxElement::leading_coeff() const {
    if (terms_.empty()) throw PrecisionExhausted("leading coefficient of zero element");
    return terms_.begin()->second;
}

RElem PuiseuxElement::coeff(const Rational& q) const {
    if (prec_ && q >= *prec_) throw PrecisionExhausted("coefficient at " + q.str() + " beyond prec");
    auto it = terms_.find(q);
    if (it == terms_.end()) return residue_field()->zero();
    return it->second;
}

void PuiseuxElement::insert_term(const Rational& q, const RElem& c) {
    if (residue_field()->is_zero(c)) return;
    if (prec_ && q >= *prec_) return;
    auto [it, ok] = terms_.emplace(q, c);
    if (!ok) {
        RElem s = residue_field()->add(it->second, c);
        if (residue_field()->is_zero(s)) terms_.erase(it);
        else it->second = s;
    }
}

void PuiseuxElement::prune() {
    if (!prec_) return;
    auto it = terms_.lower_bound(*prec_);
    terms_.erase(it, terms_.end());
}

void PuiseuxElement::check_compatible(const PuiseuxElement& o) const {
    if (cfg_ != o.cfg_) throw LevelMismatch("elements over different base fields");
}

PuiseuxElement PuiseuxElement::promote(Level target) const {
    if (!target.contains(lv_)) throw LevelMismatch("promote to non-refining level");
    if (target == lv_) return *this;
    PuiseuxElement r(cfg_, target);
    const ResidueField* RF = r.residue_field();
    for (auto& [q, c] : terms_) r.terms_.emplace(q, RF->embed(c));
    r.prec_ = prec_;
    return r;
}

PuiseuxElement PuiseuxElement::promote_down(Level target) const {
    if (!lv_.contains(target)) throw LevelMismatch("minimize to non-sublevel");
    if (target == lv_) return *this;
    PuiseuxElement r(cfg_, target);
    const ResidueField* sub = r.residue_field();
    const ResidueField* cur = residue_field();
    for (auto& [q, c] : terms_) {
        if (!in_lattice(q, target)) throw LevelMismatch("exponent outside target lattice");
        r.terms_.emplace(q, cur->project(c, sub));
    }
    r.prec_ = prec_;
    return r;
}

Level PuiseuxElement::minimal_level() const {
    long long e = 1;
    const ResidueField* RF = residue_field();
    for (auto& [q, c] : terms_) e = lcm_ll(e, q.den());
    long long f = lv_.f;
    if (cfg_->p > 0) {
        for (long long cand = 1; cand <= lv_.f; ++cand) {
            if (lv_.f % cand != 0) continue;
            bool ok = true;
            for (auto& [q, c] : terms_)
                if (!RF->in_subfield(c, (int)(cfg_->f0 * cand))) { ok = false; break; }
            if (ok) { f = cand; break; }
        }
    } else {
        f = 1;
    }
    return Level{e, f};
}

PuiseuxElement PuiseuxElement::operator-() const {
    PuiseuxElement r = *this;
    const ResidueField* RF = residue_field();
    for (auto& [q, c] : r.terms_) c = RF->neg(c);
    return r;
}

PuiseuxElement PuiseuxElement::operator+(const PuiseuxElement& o) const {
    check_compatible(o);
    Level lv = join(lv_, o.lv_);
    PuiseuxElement a = promote(lv), b = o.promote(lv);
    PuiseuxElement r(cfg_, lv);
    if (a.prec_ && b.prec_) r.prec_ = std::min(*a.prec_, *b.prec_);
    else if (a.prec_) r.prec_ = a.prec_;
    else if (b.prec_) r.prec_ = b.prec_;
    for (auto& [q, c] : a.terms_) r.insert_term(q, c);
    for (auto& [q, c] : b.terms_) r.insert_term(q, c);
    r.prune();
    return r;
}

PuiseuxElement PuiseuxElement::operator-(const PuiseuxElement& o) const { return *this + (-o); }

PuiseuxElement PuiseuxElement::operator*(const PuiseuxElement& o) const {
    check_compatible(o);
    Level lv = join(lv_, o.lv_);
    PuiseuxElement a = promote(lv), b = o.promote(lv);
    PuiseuxElement r(cfg_, lv);
    // prec = min(v(a) + prec(b), v(b) + prec(a)) with lower bounds for apparent zeros
    std::optional<Rational> prec;
    if (b.prec_) {
        Valuation va = a.val_lower();
        if (!va.is_inf()) prec = va.finite() + *b.prec_;
    }
    if (a.prec_) {
        Valuation vb = b.val_lower();
        if (!vb.is_inf()) {
            Rational cand = vb.finite() + *a.prec_;
            if (!prec || cand < *prec) prec = cand;
        }
    }
    if (a.is_exact_zero() || b.is_exact_zero()) return PuiseuxElement(cfg_, lv);
    r.prec_ = prec;
    const ResidueField* RF = r.residue_field();
    for (auto& [qa, ca] : a.terms_)
        for (auto& [qb, cb] : b.terms_) {
            Rational q = qa + qb;
            if (r.prec_ && q >= *r.prec_) continue;
            r.insert_term(q, RF->mul(ca, cb));
        }
    r.prune();
    return r;
}

PuiseuxElement PuiseuxElement::scalar_mul(const RElem& s) const {
    PuiseuxElement r(cfg_, lv_);
    r.prec_ = prec_;
    const ResidueField* RF = residue_field();
    RElem se = RF->embed(s);
    if (RF->is_zero(se)) {
        if (is_exact()) return PuiseuxElement(cfg_, lv_);
        return r;
    }
    for (auto& [q, c] : terms_) r.terms_.emplace(q, RF->mul(c, se));
    return r;
}

PuiseuxElement PuiseuxElement::shift_t(const Rational& q) const {
    Level lv = join(lv_, Level{q.den(), 1});
    PuiseuxElement a = promote(lv);
    PuiseuxElement r(cfg_, lv);
    for (auto& [e, c] : a.terms_) r.terms_.emplace(e + q, c);
    if (a.prec_) r.prec_ = *a.prec_ + q;
    return r;
}

PuiseuxElement PuiseuxElement::div(const PuiseuxElement& o, Rational rel_prec) const {
    check_compatible(o);
    if (o.is_exact_zero()) throw DivisionByZero("puiseux division");
    if (o.is_apparent_zero())
        throw DivisionByApparentZero("divisor known only to O(t^" + o.prec_->str() + ")");
    if (is_exact_zero()) return PuiseuxElement(cfg_, join(lv_, o.lv_));
    if (rel_prec.is_zero() || rel_prec < Rational(0)) rel_prec = cfg_->default_prec;

    Level lv = join(lv_, o.lv_);
    PuiseuxElement a = promote(lv), b = o.promote(lv);
    const ResidueField* RF = a.residue_field();

    Rational vb = b.val().finite();
    RElem lead = b.leading_coeff();

    // single-term divisor: exact shift and scale
    if (b.terms_.size() == 1) {
        PuiseuxElement r = a.scalar_mul(RF->inv(lead));
        return r.shift_t(-vb);
    }

    // effective relative precision
    Rational R = rel_prec;
    if (a.prec_) {
        if (a.terms_.empty()) {
            // apparent zero over a unit: still apparent zero
            return zero_to_prec(cfg_, lv, *a.prec_ - vb);
        }
        R = std::min(R, *a.prec_ - a.val().finite());
    }
    if (b.prec_) R = std::min(R, *b.prec_ - vb);
    if (!(R > Rational(0))) throw PrecisionExhausted("division with nonpositive relative precision");

    // u = b / (lead * t^vb) = 1 + w, v(w) > 0
    PuiseuxElement u = b.shift_t(-vb).scalar_mul(RF->inv(lead));
    PuiseuxElement w = u - one(cfg_).promote(lv);
    // geometric series: inv_u = sum (-w)^k, truncated at relative order R
    PuiseuxElement inv_u = one(cfg_).promote(lv).truncate(R);
    PuiseuxElement term = one(cfg_).promote(lv).truncate(R);
    PuiseuxElement neg_w = (-w).truncate(R);
    Rational vw = w.is_apparent_zero() || w.terms_.empty() ? R : w.val().finite();
    long long steps = vw.is_zero() ? 0 : (R / vw).ceil() + 1;
    for (long long k = 0; k < steps; ++k) {
        term = (term * neg_w).truncate(R);
        if (term.terms_.empty()) break;
        inv_u = (inv_u + term).truncate(R);
    }
    PuiseuxElement r = (a * inv_u).truncate(R + a.val().finite() + Rational(0));
    r = r.scalar_mul(RF->inv(lead)).shift_t(-vb);
    // final precision: v(a) - v(b) + R
    Rational final_prec = a.val().finite() - vb + R;
    return r.truncate(final_prec);
}

PuiseuxElement PuiseuxElement::pow(long long k, Rational rel_prec) const {
    if (k == 0) return one(cfg_).promote(lv_);
    if (k < 0) return one(cfg_).promote(lv_).div(pow(-k, rel_prec), rel_prec);
    PuiseuxElement base = *this, acc = one(cfg_).promote(lv_);
    long long e = k;
    while (e) {
        if (e & 1) acc = acc * base;
        base = (e >>= 1) ? base * base : base;
    }
    return acc;
}

PuiseuxElement PuiseuxElement::truncate(const Rational& prec) const {
    PuiseuxElement r = *this;
    if (!r.prec_ || prec < *r.prec_) r.prec_ = prec;
    r.prune();
    return r;
}

PuiseuxElement PuiseuxElement::truncate_below_exact(const Rational& cutoff) const {
    if (prec_ && *prec_ < cutoff)
        throw PrecisionExhausted("truncation below " + cutoff.str() + " needs prec beyond " +
                                 prec_->str());
    PuiseuxElement r(cfg_, lv_);
    for (auto& [q, c] : terms_) {
        if (q < cutoff) r.terms_.emplace(q, c);
    }
    return r;
}

PuiseuxElement PuiseuxElement::truncate_at_exact(const Rational& cutoff) const {
    if (prec_ && *prec_ <= cutoff)
        throw PrecisionExhausted("truncation at " + cutoff.str() + " needs prec beyond " +
                                 prec_->str());
    PuiseuxElement r(cfg_, lv_);
    for (auto& [q, c] : terms_) {
        if (q <= cutoff) r.terms_.emplace(q, c);
    }
    return r;
}

PuiseuxElement PuiseuxElement::nth_root(long long n, Rational rel_prec) const {
    if (n < 1) throw InternalError("nth_root with n < 1");
    if (n == 1) return *this;
    if (is_exact_zero()) return *this;
    if (is_apparent_zero()) throw PrecisionExhausted("nth_root of apparent zero");
    if (rel_prec.is_zero() || rel_prec < Rational(0)) rel_prec = cfg_->default_prec;

    long long p = cfg_->p;
    PuiseuxElement x = *this;
    long long tame = n;
    // wild part: exact Frobenius inverse, exponents divided by p
    while (p > 1 && tame % p == 0) {
        if (!x.is_exact())
            throw WildRootUnsupported("p-th root of a series that is not exactly stored");
        PuiseuxElement y(cfg_, Level{lcm_ll(x.lv_.e * p, 1), x.lv_.f});
        const ResidueField* RF = y.residue_field();
        const ResidueField* XF = x.residue_field();
        for (auto& [q, c] : x.terms_) y.terms_.emplace(q / Rational(p), RF->embed(XF->pth_root(c)));
        x = y;
        tame /= p;
    }
    if (tame == 1) return x;

    Rational vx = x.val().finite();
    Rational w = vx / Rational(tame);
    Level lv{lcm_ll(x.lv_.e, w.den()), x.lv_.f};
    x = x.promote(lv);
    PuiseuxElement u = x.shift_t(-vx);  // unit with u(0) != 0
    const ResidueField* RF = u.residue_field();
    RElem c0 = u.coeff(Rational(0));
    if (RF->is_zero(c0)) throw InternalError("unit part without constant term");

    auto [k, r0] = nth_root_in_extension(RF, c0, tame);
    Level lv2{lv.e, lv.f * k};
    u = u.promote(lv2);
    const ResidueField* RF2 = u.residue_field();

    Rational R = rel_prec;
    if (x.prec_) R = std::min(R, *x.prec_ - vx);

    PuiseuxElement y = constant(cfg_, lv2, RF2->embed(r0));
    PuiseuxElement n_el = from_int(cfg_, tame).promote(lv2);
    // Newton iteration for y^tame = u
    for (int it = 0; it < 64; ++it) {
        PuiseuxElement err = (y.pow(tame) - u).truncate(R);
        if (err.terms_.empty()) break;
        PuiseuxElement deriv = n_el * y.pow(tame - 1);
        PuiseuxElement delta = err.div(deriv, R);
        y = (y - delta).truncate(R);
    }
    PuiseuxElement result = y.shift_t(w);
    if (result.is_exact() && is_exact() && (result.pow(n) - *this).is_exact_zero())
        return result;  // exact root, keep it exact
    Rational final_prec = w + R;
    result = result.truncate(final_prec);
    // certify
    PuiseuxElement check = (result.pow(n) - *this).truncate(vx + R);
    if (!check.terms_.empty())
        throw PrecisionExhausted("nth_root certification failed");
    return result;
}

RElem PuiseuxElement::residue_image() const {
    if (!terms_.empty() && terms_.begin()->first < Rational(0))
        throw NegativeValuation("residue image of element with v = " +
                                terms_.begin()->first.str());
    if (terms_.empty() && prec_ && *prec_ <= Rational(0))
        throw PrecisionExhausted("residue image needs certified v >= 0");
    if (prec_ && *prec_ <= Rational(0))
        throw PrecisionExhausted("residue image needs prec > 0");
    auto it = terms_.find(Rational(0));
    if (it == terms_.end()) return residue_field()->zero();
    return it->second;
}

bool PuiseuxElement::certainly_equal(const PuiseuxElement& o) const {
    PuiseuxElement d = *this - o;
    return d.is_exact_zero();
}

bool PuiseuxElement::agree_up_to_prec(const PuiseuxElement& o) const {
    PuiseuxElement d = *this - o;
    return d.terms_.empty();
}

bool PuiseuxElement::certainly_distinct(const PuiseuxElement& o) const {
    PuiseuxElement d = *this - o;
    return !d.terms_.empty();
}

std::string PuiseuxElement::str() const {
    std::string s;
    const ResidueField* RF = residue_field();
    for (auto& [q, c] : terms_) {
        if (!s.empty()) s += " + ";
        std::string cs = RF->str(c);
        if (q.is_zero()) { s += cs; continue; }
        std::string ts;
        if (q == Rational(1)) ts = "t";
        else if (q.is_integer()) ts = "t^" + q.str();
        else ts = "t^(" + q.str() + ")";
        if (cs == "1") s += ts;
        else s += cs + "*" + ts;
    }
    if (prec_) {
        if (!s.empty()) s += " + ";
        Rational q = *prec_;
        std::string ts;
        if (q.is_integer()) ts = "t^" + q.str();
        else ts = "t^(" + q.str() + ")";
        if (q == Rational(1)) ts = "t";
        s += "O(" + ts + ")";
    }
    if (s.empty()) s = "0";
    return s;
}

}  // namespace goodred
