#include "goodred/parse.hpp"

#include <cctype>

#include "goodred/errors.hpp"

namespace goodred {

namespace {

// rational function representation during evaluation: num/den polynomial pair
struct RatExpr {
    Poly num, den;
};

class Parser {
public:
    Parser(const std::string& src, const FieldConfig* cfg, bool allow_z)
        : s_(src), cfg_(cfg), allow_z_(allow_z) {}

    RatExpr parse() {
        RatExpr e = expr();
        skip_ws();
        if (pos_ != s_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return e;
    }

    bool saw_oterm = false;
    Rational oterm_prec{0};

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool eat(char c) {
        if (peek(c)) { ++pos_; return true; }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }

    long long integer() {
        skip_ws();
        size_t start = pos_;
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= s_.size() || !std::isdigit((unsigned char)s_[pos_]))
            throw SyntaxError("expected an integer", start);
        long long v = 0;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) {
            v = detail::checked_cast(__int128(v) * 10 + (s_[pos_] - '0'), "integer literal");
            ++pos_;
        }
        return neg ? -v : v;
    }

    Rational exponent() {
        skip_ws();
        if (eat('(')) {
            long long n = integer();
            long long d = 1;
            if (eat('/')) d = integer();
            expect(')');
            return Rational(n, d);
        }
        return Rational(integer());
    }

    RatExpr constant(const PuiseuxElement& e) {
        return {Poly::constant(e), Poly::constant(PuiseuxElement::one(cfg_))};
    }

    RatExpr expr() {
        RatExpr acc = term();
        while (true) {
            if (eat('+')) {
                RatExpr r = term();
                acc = add(acc, r);
            } else if (peek('-')) {
                // leave the minus for term() so "-" binds as part of the sum
                ++pos_;
                RatExpr r = term();
                acc = add(acc, neg(r));
            } else {
                break;
            }
        }
        return acc;
    }

    RatExpr term() {
        RatExpr acc = unary();
        while (true) {
            if (eat('*')) acc = mul(acc, unary());
            else if (eat('/')) acc = divide(acc, unary());
            else break;
        }
        return acc;
    }

    RatExpr unary() {
        if (eat('-')) return neg(unary());
        return power();
    }

    RatExpr power() {
        RatExpr base = atom();
        if (eat('^')) {
            size_t at = pos_;
            Rational e = exponent();
            if (!e.is_integer()) {
                // fractional power: only t^(a/b) literals are meaningful
                if (base.num.degree() != 0 || base.den.degree() != 0)
                    throw SyntaxError("fractional exponent on a non-monomial", at);
                PuiseuxElement v = base.num[0].div(base.den[0]);
                if (v.terms().size() != 1 || v.prec())
                    throw SyntaxError("fractional exponent needs a t-monomial", at);
                auto [q, c] = *v.terms().begin();
                if (!v.residue_field()->eq(c, v.residue_field()->one()))
                    throw SyntaxError("fractional exponent needs a pure t-power", at);
                return constant(PuiseuxElement::t_power(cfg_, q * e));
            }
            long long k = e.num();
            RatExpr acc = constant(PuiseuxElement::one(cfg_));
            RatExpr b = base;
            long long n = k < 0 ? -k : k;
            for (long long i = 0; i < n; ++i) acc = mul(acc, b);
            if (k < 0) acc = inverse(acc);
            return acc;
        }
        return base;
    }

    RatExpr atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RatExpr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit((unsigned char)c)) {
            long long v = integer();
            return constant(PuiseuxElement::from_int(cfg_, v));
        }
        if (c == 't') {
            ++pos_;
            return constant(PuiseuxElement::t_power(cfg_, Rational(1)));
        }
        if (c == 'z') {
            if (!allow_z_) throw SyntaxError("'z' is not allowed in an element", pos_);
            ++pos_;
            return {Poly::z(cfg_), Poly::constant(PuiseuxElement::one(cfg_))};
        }
        if (c == 'g') {
            if (cfg_->p == 0 || cfg_->f0 < 2)
                throw SyntaxError("'g' needs a residue extension field", pos_);
            ++pos_;
            const ResidueField* F = ResidueField::get(cfg_->p, cfg_->f0);
            return constant(PuiseuxElement::constant(cfg_, Level{1, 1}, F->generator()));
        }
        if (c == 'O') {
            ++pos_;
            expect('(');
            RatExpr inner = expr();
            expect(')');
            if (allow_z_) throw SyntaxError("O(...) is not allowed in a map", pos_);
            if (inner.num.is_zero() || inner.num.degree() != 0 || inner.den.degree() != 0)
                throw SyntaxError("O(...) needs a t-monomial", pos_);
            PuiseuxElement v = inner.num[0].div(inner.den[0]);
            if (!v.has_certified_val())
                throw SyntaxError("O(...) needs a t-monomial", pos_);
            Rational p = v.val().finite();
            if (!saw_oterm || p < oterm_prec) oterm_prec = p;
            saw_oterm = true;
            return constant(PuiseuxElement::zero(cfg_));
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    RatExpr add(const RatExpr& a, const RatExpr& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    RatExpr neg(const RatExpr& a) { return {-a.num, a.den}; }
    RatExpr mul(const RatExpr& a, const RatExpr& b) { return {a.num * b.num, a.den * b.den}; }
    RatExpr inverse(const RatExpr& a) {
        if (a.num.is_zero()) throw SyntaxError("division by zero expression", pos_);
        return {a.den, a.num};
    }
    RatExpr divide(const RatExpr& a, const RatExpr& b) { return mul(a, inverse(b)); }

    const std::string& s_;
    const FieldConfig* cfg_;
    bool allow_z_;
    size_t pos_ = 0;
};

}  // namespace

const FieldConfig* parse_field(const std::string& src) {
    size_t pos = 0;
    auto skip = [&] {
        while (pos < src.size() && std::isspace((unsigned char)src[pos])) ++pos;
    };
    skip();
    if (pos >= src.size()) throw SyntaxError("empty field spec", pos);
    long long p = 0;
    int f0 = 1;
    if (src[pos] == 'Q') {
        ++pos;
    } else if (src[pos] == 'F') {
        ++pos;
        size_t start = pos;
        while (pos < src.size() && std::isdigit((unsigned char)src[pos])) ++pos;
        if (pos == start) throw SyntaxError("expected a characteristic", pos);
        p = std::stoll(src.substr(start, pos - start));
        if (pos < src.size() && src[pos] == '^') {
            ++pos;
            size_t s2 = pos;
            while (pos < src.size() && std::isdigit((unsigned char)src[pos])) ++pos;
            if (pos == s2) throw SyntaxError("expected an extension degree", pos);
            f0 = std::stoi(src.substr(s2, pos - s2));
        }
    } else {
        throw SyntaxError("field spec must start with F or Q", pos);
    }
    skip();
    const std::string rest = "((t))";
    if (src.compare(pos, rest.size(), rest) != 0)
        throw SyntaxError("expected ((t))", pos);
    pos += rest.size();
    skip();
    if (pos != src.size()) throw SyntaxError("unexpected trailing input", pos);
    if (p == 0 && f0 != 1) throw UnsupportedField("Q((t)) has no residue extensions");
    try {
        return FieldConfig::get(p, f0);
    } catch (const Error& e) {
        throw UnsupportedField(e.what());
    }
}

RationalMap parse_map(const std::string& src, const FieldConfig* cfg) {
    Parser p(src, cfg, true);
    RatExpr e = p.parse();
    return RationalMap::normalize(e.num, e.den);
}

RationalMap parse_map(const std::string& src, const std::string& field) {
    return parse_map(src, parse_field(field));
}

PuiseuxElement parse_element(const std::string& src, const FieldConfig* cfg) {
    Parser p(src, cfg, false);
    RatExpr e = p.parse();
    if (e.num.degree() > 0 || e.den.degree() > 0)
        throw SyntaxError("element contains z", 0);
    PuiseuxElement v = e.num.is_zero()
                           ? PuiseuxElement::zero(cfg)
                           : e.num[0].div(e.den[0]);
    if (p.saw_oterm) v = v.truncate(p.oterm_prec);
    return v;
}

std::string print_field(const FieldConfig* cfg) {
    if (cfg->p == 0) return "Q((t))";
    std::string s = "F" + std::to_string(cfg->p);
    if (cfg->f0 > 1) s += "^" + std::to_string(cfg->f0);
    return s + "((t))";
}

}  // namespace goodred
