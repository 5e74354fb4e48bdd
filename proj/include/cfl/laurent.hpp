#pragma once

#include <cmath>
#include <map>
#include <string>

#include "cfl/rational.hpp"

namespace cfl {

/// Laurent polynomial sum_k c_k t^k with exact rational coefficients and
/// integer (possibly negative) powers. All velocity families of interest have
/// coefficients of this shape in time, so the material-derivative recursion
/// stays exact.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(Rational constant) {
        if (!constant.is_zero()) terms_[0] = constant;
    }

    static LaurentPoly monomial(Rational coeff, int power) {
        LaurentPoly p;
        if (!coeff.is_zero()) p.terms_[power] = coeff;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<int, Rational>& terms() const { return terms_; }

    Rational coeff(int power) const {
        auto it = terms_.find(power);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (const auto& [k, c] : b.terms_) {
            Rational s = r.coeff(k) + c;
            if (s.is_zero()) r.terms_.erase(k);
            else r.terms_[k] = s;
        }
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                Rational s = r.coeff(ka + kb) + ca * cb;
                if (s.is_zero()) r.terms_.erase(ka + kb);
                else r.terms_[ka + kb] = s;
            }
        return r;
    }

    friend LaurentPoly operator*(const Rational& s, const LaurentPoly& p) {
        LaurentPoly r;
        if (s.is_zero()) return r;
        for (const auto& [k, c] : p.terms_) r.terms_[k] = s * c;
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }

    /// d/dt.
    LaurentPoly derivative() const {
        LaurentPoly r;
        for (const auto& [k, c] : terms_)
            if (k != 0) r.terms_[k - 1] = Rational(k) * c;
        return r;
    }

    double eval(double t) const {
        double s = 0.0;
        for (const auto& [k, c] : terms_) s += c.to_double() * std::pow(t, k);
        return s;
    }

    std::string str(const std::string& var = "t") const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [k, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += c.str();
            if (k != 0) s += "*" + var + "^" + std::to_string(k);
        }
        return s;
    }

private:
    std::map<int, Rational> terms_;
};

} // namespace cfl
