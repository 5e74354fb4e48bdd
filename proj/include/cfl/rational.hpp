#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "cfl/error.hpp"

namespace cfl {

/// Exact rational number on 64-bit numerator/denominator.
///
/// All parameters that gate physical validity (the (half)integer order ell,
/// the Lifshitz exponent z, generator coefficients) are kept in this type so
/// that sign decisions are never subject to floating-point roundoff.
/// Intermediates go through 128-bit arithmetic; anything that cannot be
/// normalized back into 64 bits throws.
class Rational {
public:
    constexpr Rational() = default;
    Rational(long long num) : num_(num), den_(1) {}
    Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }

    static Rational from_i128(__int128 num, __int128 den) {
        if (den == 0) throw error(errc::invalid_argument, "rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        __int128 g = gcd128(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
            throw error(errc::out_of_supported_range, "rational overflow");
        Rational r;
        r.num_ = static_cast<long long>(num);
        r.den_ = static_cast<long long>(den);
        return r;
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const { return from_i128(-(__int128)num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                         (__int128)a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw error(errc::invalid_argument, "rational division by zero");
        return from_i128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    /// "p" for integers, "p/q" otherwise.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "p", "p/q". Throws on anything else.
    static Rational parse(const std::string& s) {
        if (s.empty()) throw error(errc::invalid_argument, "empty rational literal");
        auto slash = s.find('/');
        try {
            size_t used = 0;
            if (slash == std::string::npos) {
                long long n = std::stoll(s, &used);
                if (used != s.size()) throw error(errc::invalid_argument, "bad rational literal: " + s);
                return Rational(n);
            }
            long long n = std::stoll(s.substr(0, slash), &used);
            if (used != slash) throw error(errc::invalid_argument, "bad rational literal: " + s);
            long long d = std::stoll(s.substr(slash + 1), &used);
            if (used != s.size() - slash - 1)
                throw error(errc::invalid_argument, "bad rational literal: " + s);
            return Rational(n, d);
        } catch (const std::invalid_argument&) {
            throw error(errc::invalid_argument, "bad rational literal: " + s);
        } catch (const std::out_of_range&) {
            throw error(errc::out_of_supported_range, "rational literal out of range: " + s);
        }
    }

    /// Decimal string -> exact p/10^k rational, truncated at 12 fractional
    /// digits (the documented input grain for continuum parameters).
    static Rational parse_decimal(const std::string& s) {
        auto dot = s.find('.');
        if (dot == std::string::npos) return parse(s);
        std::string head = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (frac.size() > 12) frac = frac.substr(0, 12);
        for (char c : frac)
            if (c < '0' || c > '9') throw error(errc::invalid_argument, "bad decimal literal: " + s);
        bool neg = !head.empty() && head[0] == '-';
        long long ip = head.empty() || head == "-" ? 0 : std::stoll(head);
        __int128 den = 1;
        for (size_t i = 0; i < frac.size(); ++i) den *= 10;
        __int128 num = (__int128)(ip < 0 ? -ip : ip) * den + (frac.empty() ? 0 : std::stoll(frac));
        if (neg || ip < 0) num = -num;
        return from_i128(num, den);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    long long num_ = 0;
    long long den_ = 1;

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    void normalize() {
        if (den_ == 0) throw error(errc::invalid_argument, "rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }
};

} // namespace cfl
