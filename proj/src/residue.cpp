#include "goodred/residue.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "goodred/errors.hpp"

namespace goodred {

namespace {

constexpr unsigned long long kFieldSizeCap = 1ull << 22;

std::mutex g_registry_mutex;
std::map<std::pair<long long, int>, std::unique_ptr<ResidueField>>& registry() {
    static std::map<std::pair<long long, int>, std::unique_ptr<ResidueField>> r;
    return r;
}

bool is_prime_ll(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<long long> prime_factors(unsigned long long n) {
    std::vector<long long> out;
    for (unsigned long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back((long long)d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back((long long)n);
    return out;
}

// Arithmetic in F_p[x] mod a monic modulus, coefficients ascending.
struct ModCtx {
    long long p;
    const std::vector<int32_t>& m;  // monic, degree n
    int n() const { return (int)m.size() - 1; }

    std::vector<int32_t> reduce(std::vector<int32_t> a) const {
        while ((int)a.size() > n()) {
            int32_t lead = a.back();
            size_t shift = a.size() - m.size();
            if (lead != 0) {
                for (size_t i = 0; i < m.size(); ++i) {
                    long long v = (long long)a[shift + i] - (long long)lead * m[i];
                    a[shift + i] = (int32_t)(((v % p) + p) % p);
                }
            }
            a.pop_back();
        }
        a.resize(n(), 0);
        return a;
    }
    std::vector<int32_t> mul(const std::vector<int32_t>& a, const std::vector<int32_t>& b) const {
        std::vector<long long> acc(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < b.size(); ++j) acc[i + j] += (long long)a[i] * b[j];
        }
        std::vector<int32_t> out(acc.size());
        for (size_t i = 0; i < acc.size(); ++i) out[i] = (int32_t)(((acc[i] % p) + p) % p);
        return reduce(std::move(out));
    }
    std::vector<int32_t> powx(unsigned long long e) const {
        std::vector<int32_t> base(n(), 0), r(n(), 0);
        if (n() == 1) {
            // x reduces to a constant; not used for n == 1
            throw InternalError("powx on degree-1 modulus");
        }
        base[1] = 1;
        r[0] = 1;
        return pow(base, e, r);
    }
    std::vector<int32_t> pow(std::vector<int32_t> base, unsigned long long e,
                             std::vector<int32_t> acc) const {
        while (e) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }
};

bool vec_is_one(const std::vector<int32_t>& a) {
    if (a.empty() || a[0] != 1) return false;
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i] != 0) return false;
    return true;
}
bool vec_is_zero(const std::vector<int32_t>& a) {
    for (int32_t v : a)
        if (v != 0) return false;
    return true;
}

bool is_irreducible(long long p, const std::vector<int32_t>& m) {
    ModCtx ctx{p, m};
    int n = ctx.n();
    // x^(p^n) == x, and x^(p^(n/l)) != x for every prime l | n.
    auto frob_iter = [&](int k) {
        // x^(p^k) mod m by repeated Frobenius.
        std::vector<int32_t> r(n, 0);
        r[1 % n] = 1;
        if (n == 1) return r;
        for (int i = 0; i < k; ++i) r = ctx.pow(r, (unsigned long long)p, [&] {
            std::vector<int32_t> one(n, 0);
            one[0] = 1;
            return one;
        }());
        return r;
    };
    std::vector<int32_t> x(n, 0);
    if (n >= 2) x[1] = 1; else x[0] = 0;
    auto xn = frob_iter(n);
    if (xn != x) return false;
    for (long long l : prime_factors((unsigned long long)n)) {
        auto xm = frob_iter((int)(n / l));
        if (xm == x) return false;
    }
    return true;
}

bool is_primitive(long long p, const std::vector<int32_t>& m, unsigned long long q) {
    ModCtx ctx{p, m};
    unsigned long long order = q - 1;
    for (long long l : prime_factors(order)) {
        auto y = ctx.powx(order / (unsigned long long)l);
        if (vec_is_one(y)) return false;
    }
    return true;
}

long long least_primitive_root(long long p) {
    if (p == 2) return 1;
    auto factors = prime_factors((unsigned long long)(p - 1));
    for (long long g = 2; g < p; ++g) {
        bool ok = true;
        for (long long l : factors) {
            long long e = (p - 1) / l;
            long long r = 1, b = g % p;
            while (e) {
                if (e & 1) r = r * b % p;
                b = b * b % p;
                e >>= 1;
            }
            if (r == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw InternalError("no primitive root");
}

}  // namespace

ResidueField::ResidueField(long long p, int deg) : p_(p), deg_(deg) {
    if (p == 0) { size_ = 0; return; }
    if (!is_prime_ll(p)) throw UnsupportedField("characteristic must be 0 or prime");
    unsigned long long s = 1;
    for (int i = 0; i < deg; ++i) {
        if (s > kFieldSizeCap / (unsigned long long)p)
            throw ResidueFieldTooLarge("F_" + std::to_string(p) + "^" + std::to_string(deg));
        s *= (unsigned long long)p;
    }
    size_ = s;
    if (deg == 1) return;

    // Subfield moduli first (recursive interning).
    std::vector<const ResidueField*> subs;
    for (int m = 2; m < deg; ++m)
        if (deg % m == 0) subs.push_back(ResidueField::get(p, m));

    for (unsigned long long idx = 0;; ++idx) {
        if (idx >= size_) throw InternalError("no compatible primitive modulus found");
        std::vector<int32_t> cand(deg + 1, 0);
        unsigned long long t = idx;
        for (int i = 0; i < deg; ++i) { cand[i] = (int32_t)(t % (unsigned long long)p); t /= (unsigned long long)p; }
        cand[deg] = 1;
        if (cand[0] == 0) continue;  // divisible by x
        if (!is_irreducible(p, cand)) continue;
        if (!is_primitive(p, cand, size_)) continue;
        ModCtx ctx{p, cand};
        bool compatible = true;
        // norm down to the prime field must hit the least primitive root
        if (p > 2) {
            auto y = ctx.powx((size_ - 1) / (unsigned long long)(p - 1));
            std::vector<int32_t> want(deg, 0);
            want[0] = (int32_t)least_primitive_root(p);
            if (y != want) compatible = false;
        }
        if (compatible)
        for (const ResidueField* S : subs) {
            unsigned long long e = (size_ - 1) / (S->size() - 1);
            auto y = ctx.powx(e);
            // evaluate S->modulus at y, mod cand
            std::vector<int32_t> acc(deg, 0);
            std::vector<int32_t> ypow(deg, 0);
            ypow[0] = 1;
            for (size_t i = 0; i < S->modulus().size(); ++i) {
                int32_t co = S->modulus()[i];
                if (co != 0)
                    for (int j = 0; j < deg; ++j)
                        acc[j] = (int32_t)(((acc[j] + (long long)co * ypow[j]) % p + p) % p);
                if (i + 1 < S->modulus().size()) ypow = ctx.mul(ypow, y);
            }
            if (!vec_is_zero(acc)) { compatible = false; break; }
        }
        if (!compatible) continue;
        modulus_ = cand;
        break;
    }
}

const ResidueField* ResidueField::get(long long p, int deg) {
    if (p == 0) return rationals();
    if (deg < 1) throw UnsupportedField("degree must be >= 1");
    auto key = std::make_pair(p, deg);
    {
        std::lock_guard<std::mutex> lock(g_registry_mutex);
        auto it = registry().find(key);
        if (it != registry().end()) return it->second.get();
    }
    // Construct without the lock held; construction recurses into subfields.
    std::unique_ptr<ResidueField> f(new ResidueField(p, deg));
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto [it, inserted] = registry().emplace(key, std::move(f));
    return it->second.get();
}

const ResidueField* ResidueField::rationals() {
    static ResidueField q(0, 1);
    return &q;
}

RElem ResidueField::zero() const {
    RElem e;
    e.F = this;
    if (p_ > 0) e.c.assign(deg_, 0);
    return e;
}
RElem ResidueField::one() const { return from_int(1); }

RElem ResidueField::from_int(long long n) const {
    RElem e = zero();
    if (p_ == 0) { e.q = Rational(n); return e; }
    e.c[0] = (int32_t)(((n % p_) + p_) % p_);
    return e;
}

RElem ResidueField::from_rational(const Rational& r) const {
    if (p_ != 0) throw InternalError("from_rational on finite field");
    RElem e = zero();
    e.q = r;
    return e;
}

RElem ResidueField::generator() const {
    if (p_ == 0 || deg_ < 2) throw InternalError("generator() needs deg >= 2");
    RElem e = zero();
    e.c[1] = 1;
    return e;
}

RElem ResidueField::element_by_index(unsigned long long i) const {
    if (p_ == 0) throw InternalError("element_by_index on rationals");
    RElem e = zero();
    for (int k = 0; k < deg_; ++k) { e.c[k] = (int32_t)(i % (unsigned long long)p_); i /= (unsigned long long)p_; }
    return e;
}

unsigned long long ResidueField::index_of(const RElem& a) const {
    unsigned long long i = 0;
    for (int k = deg_ - 1; k >= 0; --k) i = i * (unsigned long long)p_ + (unsigned long long)a.c[k];
    return i;
}

bool ResidueField::is_zero(const RElem& a) const {
    if (p_ == 0) return a.q.is_zero();
    return vec_is_zero(a.c);
}

bool ResidueField::eq(const RElem& a, const RElem& b) const {
    if (a.F != b.F) throw LevelMismatch("residue elements from different fields");
    if (p_ == 0) return a.q == b.q;
    return a.c == b.c;
}

RElem ResidueField::add(const RElem& a, const RElem& b) const {
    RElem r = zero();
    if (p_ == 0) { r.q = a.q + b.q; return r; }
    for (int i = 0; i < deg_; ++i) r.c[i] = (int32_t)((a.c[i] + b.c[i]) % p_);
    return r;
}
RElem ResidueField::sub(const RElem& a, const RElem& b) const { return add(a, neg(b)); }
RElem ResidueField::neg(const RElem& a) const {
    RElem r = zero();
    if (p_ == 0) { r.q = -a.q; return r; }
    for (int i = 0; i < deg_; ++i) r.c[i] = (int32_t)((p_ - a.c[i]) % p_);
    return r;
}

std::vector<int32_t> ResidueField::poly_mul_mod(const std::vector<int32_t>& a,
                                                const std::vector<int32_t>& b) const {
    ModCtx ctx{p_, modulus_};
    return ctx.mul(a, b);
}

RElem ResidueField::mul(const RElem& a, const RElem& b) const {
    RElem r = zero();
    if (p_ == 0) { r.q = a.q * b.q; return r; }
    if (deg_ == 1) { r.c[0] = (int32_t)(((long long)a.c[0] * b.c[0]) % p_); return r; }
    r.c = poly_mul_mod(a.c, b.c);
    return r;
}

RElem ResidueField::inv(const RElem& a) const {
    if (is_zero(a)) throw DivisionByZero("residue inverse of zero");
    RElem r = zero();
    if (p_ == 0) { r.q = Rational(1) / a.q; return r; }
    if (deg_ == 1) {
        // extended Euclid mod p
        long long t = 0, newt = 1, rr = p_, newr = a.c[0];
        while (newr != 0) {
            long long q = rr / newr;
            std::swap(t -= q * newt, newt);
            std::swap(rr -= q * newr, newr);
        }
        r.c[0] = (int32_t)(((t % p_) + p_) % p_);
        return r;
    }
    // a^(q-2)
    return pow(a, (long long)(size_ - 2));
}

RElem ResidueField::div(const RElem& a, const RElem& b) const { return mul(a, inv(b)); }

RElem ResidueField::pow(const RElem& a, long long e) const {
    if (e < 0) return pow(inv(a), -e);
    RElem base = a, acc = one();
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

RElem ResidueField::frobenius(const RElem& a) const {
    if (p_ == 0) return a;
    return pow(a, p_);
}

RElem ResidueField::pth_root(const RElem& a) const {
    if (p_ == 0) return a;
    RElem r = a;
    for (int i = 0; i < deg_ - 1; ++i) r = frobenius(r);  // a^(p^(deg-1))
    return r;
}

namespace {
std::mutex g_embed_mutex;
// Cached powers of the generator image, keyed by (target, source degree).
std::map<std::pair<const ResidueField*, int>, std::vector<std::vector<int32_t>>>& embed_cache() {
    static std::map<std::pair<const ResidueField*, int>, std::vector<std::vector<int32_t>>> c;
    return c;
}
}  // namespace

RElem ResidueField::embed(const RElem& a) const {
    const ResidueField* S = a.F;
    if (S == this) return a;
    if (p_ == 0 && S->p_ == 0) return a;
    if (S->p_ != p_ || deg_ % S->deg_ != 0)
        throw LevelMismatch("embed: not a subfield");
    if (S->deg_ == 1) {
        RElem r = zero();
        r.c[0] = a.c[0];
        return r;
    }
    const std::vector<std::vector<int32_t>>* powers = nullptr;
    {
        std::lock_guard<std::mutex> lk(g_embed_mutex);
        auto key = std::make_pair(this, S->deg_);
        auto it = embed_cache().find(key);
        if (it == embed_cache().end()) {
            unsigned long long e = (size_ - 1) / (S->size() - 1);
            ModCtx ctx{p_, modulus_};
            auto G = ctx.powx(e);
            std::vector<std::vector<int32_t>> tab(S->deg_);
            std::vector<int32_t> gp(deg_, 0);
            gp[0] = 1;
            for (int i = 0; i < S->deg_; ++i) {
                tab[i] = gp;
                if (i + 1 < S->deg_) gp = ctx.mul(gp, G);
            }
            it = embed_cache().emplace(key, std::move(tab)).first;
        }
        powers = &it->second;
    }
    RElem r = zero();
    std::vector<int32_t> acc(deg_, 0);
    for (int i = 0; i < S->deg_; ++i) {
        int32_t co = a.c[i];
        if (co != 0)
            for (int j = 0; j < deg_; ++j)
                acc[j] = (int32_t)(((acc[j] + (long long)co * (*powers)[i][j]) % p_ + p_) % p_);
    }
    r.c = std::move(acc);
    return r;
}

bool ResidueField::in_subfield(const RElem& a, int subdeg) const {
    if (p_ == 0) return true;
    if (deg_ % subdeg != 0) return false;
    RElem f = a;
    for (int i = 0; i < subdeg; ++i) f = frobenius(f);
    return eq(f, a);
}

RElem ResidueField::project(const RElem& a, const ResidueField* sub) const {
    if (sub == this) return a;
    if (p_ == 0) return a;
    if (sub->p_ != p_ || deg_ % sub->deg_ != 0) throw LevelMismatch("project: not a subfield");
    if (sub->deg_ == 1) {
        if (!in_subfield(a, 1)) throw InternalError("project: element not in prime field");
        RElem r = sub->zero();
        r.c[0] = a.c[0];
        return r;
    }
    // Solve embed(y) = a by Gaussian elimination over F_p on the basis images.
    int bdim = deg_, adim = sub->deg_;
    std::vector<std::vector<int32_t>> cols(adim);
    {
        unsigned long long e = (size_ - 1) / (sub->size() - 1);
        ModCtx ctx{p_, modulus_};
        auto G = ctx.powx(e);
        std::vector<int32_t> gp(bdim, 0);
        gp[0] = 1;
        for (int i = 0; i < adim; ++i) {
            cols[i] = gp;
            if (i + 1 < adim) gp = ctx.mul(gp, G);
        }
    }
    // Augmented system: bdim equations, adim unknowns.
    std::vector<std::vector<long long>> M(bdim, std::vector<long long>(adim + 1, 0));
    for (int r = 0; r < bdim; ++r) {
        for (int cidx = 0; cidx < adim; ++cidx) M[r][cidx] = cols[cidx][r];
        M[r][adim] = a.c[r];
    }
    auto inv_mod = [&](long long x) {
        long long t = 0, newt = 1, rr = p_, newr = ((x % p_) + p_) % p_;
        while (newr != 0) {
            long long q = rr / newr;
            std::swap(t -= q * newt, newt);
            std::swap(rr -= q * newr, newr);
        }
        return ((t % p_) + p_) % p_;
    };
    int row = 0;
    std::vector<int> pivot_col(bdim, -1);
    for (int col = 0; col < adim && row < bdim; ++col) {
        int pr = -1;
        for (int r = row; r < bdim; ++r)
            if (M[r][col] % p_ != 0) { pr = r; break; }
        if (pr < 0) continue;
        std::swap(M[row], M[pr]);
        long long piv = inv_mod(M[row][col]);
        for (int k = col; k <= adim; ++k) M[row][k] = (M[row][k] % p_ + p_) % p_ * piv % p_;
        for (int r = 0; r < bdim; ++r) {
            if (r == row) continue;
            long long f = ((M[r][col] % p_) + p_) % p_;
            if (f == 0) continue;
            for (int k = col; k <= adim; ++k)
                M[r][k] = ((M[r][k] - f * M[row][k]) % p_ + p_) % p_;
        }
        pivot_col[row] = col;
        ++row;
    }
    RElem y = sub->zero();
    for (int r = 0; r < bdim; ++r) {
        if (pivot_col[r] >= 0) {
            y.c[pivot_col[r]] = (int32_t)(((M[r][adim] % p_) + p_) % p_);
        } else {
            if (((M[r][adim] % p_) + p_) % p_ != 0)
                throw InternalError("project: element not in subfield");
        }
    }
    return y;
}

std::string ResidueField::str(const RElem& a) const {
    if (p_ == 0) return a.q.str();
    if (deg_ == 1) return std::to_string(a.c[0]);
    std::string s;
    bool first = true;
    for (int i = deg_ - 1; i >= 0; --i) {
        if (a.c[i] == 0) continue;
        if (!first) s += "+";
        first = false;
        if (i == 0) { s += std::to_string(a.c[i]); continue; }
        if (a.c[i] != 1) s += std::to_string(a.c[i]) + "*";
        s += (i == 1) ? "g" : "g^" + std::to_string(i);
    }
    if (first) return "0";
    if (s.find('+') != std::string::npos || s.find('*') != std::string::npos) return "(" + s + ")";
    return s;
}

// ---------------------------------------------------------------------------
// polynomials over a residue field

RPoly rp_trim(const ResidueField* F, RPoly a) {
    while (!a.empty() && F->is_zero(a.back())) a.pop_back();
    return a;
}
long long rp_deg(const ResidueField* F, const RPoly& a) {
    for (long long i = (long long)a.size() - 1; i >= 0; --i)
        if (!F->is_zero(a[i])) return i;
    return -1;
}
RPoly rp_add(const ResidueField* F, const RPoly& a, const RPoly& b) {
    RPoly r(std::max(a.size(), b.size()), F->zero());
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] = F->add(r[i], a[i]);
        if (i < b.size()) r[i] = F->add(r[i], b[i]);
    }
    return rp_trim(F, r);
}
RPoly rp_sub(const ResidueField* F, const RPoly& a, const RPoly& b) {
    RPoly nb(b.size());
    for (size_t i = 0; i < b.size(); ++i) nb[i] = F->neg(b[i]);
    return rp_add(F, a, nb);
}
RPoly rp_mul(const ResidueField* F, const RPoly& a, const RPoly& b) {
    if (a.empty() || b.empty()) return {};
    RPoly r(a.size() + b.size() - 1, F->zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (F->is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F->add(r[i + j], F->mul(a[i], b[j]));
    }
    return rp_trim(F, r);
}
RPoly rp_scalar(const ResidueField* F, const RPoly& a, const RElem& s) {
    RPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F->mul(a[i], s);
    return rp_trim(F, r);
}
std::pair<RPoly, RPoly> rp_divmod(const ResidueField* F, const RPoly& a, const RPoly& b) {
    RPoly rem = rp_trim(F, a), bb = rp_trim(F, b);
    if (bb.empty()) throw DivisionByZero("residue polynomial division");
    long long db = (long long)bb.size() - 1;
    RElem lead_inv = F->inv(bb.back());
    RPoly quot;
    while ((long long)rem.size() - 1 >= db && !rem.empty()) {
        long long k = (long long)rem.size() - 1 - db;
        RElem c = F->mul(rem.back(), lead_inv);
        if ((long long)quot.size() < k + 1) quot.resize(k + 1, F->zero());
        quot[k] = c;
        for (long long i = 0; i <= db; ++i)
            rem[k + i] = F->sub(rem[k + i], F->mul(c, bb[i]));
        rem = rp_trim(F, rem);
    }
    return {rp_trim(F, quot), rem};
}
RPoly rp_monic(const ResidueField* F, const RPoly& a) {
    RPoly t = rp_trim(F, a);
    if (t.empty()) return t;
    return rp_scalar(F, t, F->inv(t.back()));
}
RPoly rp_gcd_monic(const ResidueField* F, RPoly a, RPoly b) {
    a = rp_trim(F, a);
    b = rp_trim(F, b);
    while (!b.empty()) {
        auto [q, r] = rp_divmod(F, a, b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return rp_monic(F, a);
}
RElem rp_eval(const ResidueField* F, const RPoly& a, const RElem& x) {
    RElem acc = F->zero();
    for (long long i = (long long)a.size() - 1; i >= 0; --i)
        acc = F->add(F->mul(acc, x), a[i]);
    return acc;
}
bool rp_eq(const ResidueField* F, const RPoly& a, const RPoly& b) {
    RPoly ta = rp_trim(F, a), tb = rp_trim(F, b);
    if (ta.size() != tb.size()) return false;
    for (size_t i = 0; i < ta.size(); ++i)
        if (!F->eq(ta[i], tb[i])) return false;
    return true;
}
std::string rp_str(const ResidueField* F, const RPoly& a) {
    RPoly t = rp_trim(F, a);
    if (t.empty()) return "0";
    std::string s;
    for (long long i = (long long)t.size() - 1; i >= 0; --i) {
        if (F->is_zero(t[i])) continue;
        if (!s.empty()) s += " + ";
        std::string cs = F->str(t[i]);
        if (i == 0) { s += cs; continue; }
        std::string zs = (i == 1) ? "z" : "z^" + std::to_string(i);
        if (cs == "1") s += zs;
        else s += cs + "*" + zs;
    }
    return s;
}

std::vector<std::pair<RElem, long long>> rp_roots(const ResidueField* F, const RPoly& a) {
    if (F->is_rationals()) {
        // rational roots via the rational root theorem restricted to small
        // candidates would be incomplete; exhaustive search is impossible.
        // Only linear polynomials are solved exactly here.
        RPoly t = rp_trim(F, a);
        std::vector<std::pair<RElem, long long>> out;
        if (t.size() == 2) {
            RElem root = F->neg(F->div(t[0], t[1]));
            out.push_back({root, 1});
        } else if (t.size() > 2) {
            throw UnsupportedField("root finding over the rationals is limited to linear factors");
        }
        return out;
    }
    std::vector<std::pair<RElem, long long>> out;
    RPoly cur = rp_trim(F, a);
    if (cur.empty()) throw InternalError("roots of zero polynomial");
    for (unsigned long long i = 0; i < F->size(); ++i) {
        if ((long long)cur.size() - 1 < 1) break;
        RElem x = F->element_by_index(i);
        if (!F->is_zero(rp_eval(F, cur, x))) continue;
        long long mult = 0;
        RPoly lin = {F->neg(x), F->one()};
        while (true) {
            auto [q, r] = rp_divmod(F, cur, lin);
            if (!r.empty()) break;
            cur = q;
            ++mult;
            if (cur.empty()) break;
        }
        out.push_back({x, mult});
    }
    return out;
}

std::pair<int, RElem> nth_root_in_extension(const ResidueField* F, const RElem& c, long long n) {
    if (F->is_zero(c)) throw InternalError("nth_root_in_extension of zero");
    if (F->is_rationals()) {
        // handle the easy exact cases: c = a^n for rational a with small search
        Rational q = c.q;
        // try sign and integer-root extraction on numerator/denominator
        auto iroot = [](long long v, long long n) -> long long {
            if (v == 0) return 0;
            long long lo = 0, hi = 2;
            auto powll = [](long long b, long long e) -> __int128 {
                __int128 r = 1;
                for (long long i = 0; i < e; ++i) r *= b;
                return r;
            };
            while (powll(hi, n) < v) hi *= 2;
            while (lo < hi) {
                long long mid = lo + (hi - lo) / 2;
                if (powll(mid, n) < v) lo = mid + 1; else hi = mid;
            }
            return lo;
        };
        bool negative = q.num() < 0;
        if (negative && n % 2 == 0)
            throw UnsupportedField("even root of negative rational");
        long long an = iroot(std::abs(q.num()), n), ad = iroot(q.den(), n);
        __int128 pn = 1, pd = 1;
        for (long long i = 0; i < n; ++i) { pn *= an; pd *= ad; }
        if (pn != (negative ? -q.num() : q.num()) || pd != q.den())
            throw UnsupportedField("rational has no rational n-th root");
        Rational r(negative ? -an : an, ad);
        return {1, F->from_rational(r)};
    }
    for (int k = 1; k <= (int)n + 1; ++k) {
        unsigned long long sz = 1;
        bool too_big = false;
        for (int i = 0; i < F->deg() * k; ++i) {
            if (sz > kFieldSizeCap / (unsigned long long)F->p()) { too_big = true; break; }
            sz *= (unsigned long long)F->p();
        }
        if (too_big) break;
        const ResidueField* E = ResidueField::get(F->p(), F->deg() * k);
        RElem ce = E->embed(c);
        for (unsigned long long i = 0; i < E->size(); ++i) {
            RElem x = E->element_by_index(i);
            if (E->is_zero(x)) continue;
            if (E->eq(E->pow(x, n), ce)) return {k, x};
        }
    }
    throw ResidueFieldTooLarge("no n-th root found within the field size cap");
}

}  // namespace goodred
