#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "goodred/errors.hpp"

namespace goodred {

namespace detail {
inline long long checked_cast(__int128 v, const char* ctx) {
    if (v > __int128(INT64_MAX) || v < __int128(INT64_MIN)) throw OverflowError(ctx);
    return static_cast<long long>(v);
}
}  // namespace detail

// Exact rational number on 64-bit words; all operations overflow-checked.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return Rational(-num_, den_); }

    Rational operator+(const Rational& o) const {
        __int128 n = __int128(num_) * o.den_ + __int128(o.num_) * den_;
        __int128 d = __int128(den_) * o.den_;
        return from128(n, d);
    }
    Rational operator-(const Rational& o) const { return *this + (-o); }
    Rational operator*(const Rational& o) const {
        __int128 n = __int128(num_) * o.num_;
        __int128 d = __int128(den_) * o.den_;
        return from128(n, d);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw DivisionByZero("rational division");
        __int128 n = __int128(num_) * o.den_;
        __int128 d = __int128(den_) * o.num_;
        return from128(n, d);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return __int128(num_) * o.den_ < __int128(o.num_) * den_;
    }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    // Largest integer <= value.
    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    long long ceil() const { return -((-*this).floor()); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    static Rational from128(__int128 n, __int128 d) {
        if (d == 0) throw DivisionByZero("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 g = gcd128(a, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num_ = detail::checked_cast(n, "rational numerator");
        r.den_ = detail::checked_cast(d, "rational denominator");
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }
    void normalize() {
        if (den_ == 0) throw DivisionByZero("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_;
    long long den_;
};

// A valuation: a rational number or +infinity (valuation of exact zero).
struct Valuation {
    bool inf;
    Rational v;

    Valuation() : inf(true), v(0) {}
    explicit Valuation(const Rational& r) : inf(false), v(r) {}
    static Valuation infinity() { return Valuation(); }

    bool is_inf() const { return inf; }
    const Rational& finite() const {
        if (inf) throw InternalError("finite() on infinite valuation");
        return v;
    }

    bool operator==(const Valuation& o) const {
        if (inf || o.inf) return inf == o.inf;
        return v == o.v;
    }
    bool operator<(const Valuation& o) const {
        if (inf) return false;
        if (o.inf) return true;
        return v < o.v;
    }
    bool operator<=(const Valuation& o) const { return *this < o || *this == o; }
    bool operator>(const Valuation& o) const { return o < *this; }
    bool operator>=(const Valuation& o) const { return o <= *this; }

    Valuation operator+(const Valuation& o) const {
        if (inf || o.inf) return infinity();
        return Valuation(v + o.v);
    }

    std::string str() const { return inf ? "inf" : v.str(); }
};

inline long long lcm_ll(long long a, long long b) {
    __int128 l = __int128(a) / std::gcd(a, b) * b;
    return detail::checked_cast(l, "lcm");
}

}  // namespace goodred
