#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cfl/error.hpp"
#include "cfl/rational.hpp"

namespace cfl {

/// Exponent tuple for up to 8 variables (t, x_1..x_d, rho, v_1..v_d with
/// d <= 3 needs at most 8).
struct Monomial {
    std::array<int8_t, 8> e{};

    friend bool operator<(const Monomial& a, const Monomial& b) { return a.e < b.e; }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }

    int degree() const {
        int s = 0;
        for (auto v : e) s += v;
        return s;
    }
};

/// Multivariate polynomial with exact rational coefficients. Zero-coefficient
/// terms are never stored. This is the coefficient ring for the symmetry
/// generators; operations are tiny, so a sorted map is plenty.
class MultivariatePolynomial {
public:
    MultivariatePolynomial() = default;
    explicit MultivariatePolynomial(int nvars) : nvars_(nvars) { check_nvars(nvars); }

    static MultivariatePolynomial constant(int nvars, Rational c) {
        MultivariatePolynomial p(nvars);
        if (!c.is_zero()) p.terms_[Monomial{}] = c;
        return p;
    }

    static MultivariatePolynomial variable(int nvars, int index, Rational coeff = Rational(1)) {
        MultivariatePolynomial p(nvars);
        if (index < 0 || index >= nvars) throw error(errc::invalid_argument, "variable index");
        if (!coeff.is_zero()) {
            Monomial m;
            m.e[index] = 1;
            p.terms_[m] = coeff;
        }
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    MultivariatePolynomial operator-() const {
        MultivariatePolynomial r(nvars_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    friend MultivariatePolynomial operator+(const MultivariatePolynomial& a,
                                            const MultivariatePolynomial& b) {
        MultivariatePolynomial r = a;
        r.match(b);
        for (const auto& [m, c] : b.terms_) {
            Rational s = r.coeff(m) + c;
            if (s.is_zero()) r.terms_.erase(m);
            else r.terms_[m] = s;
        }
        return r;
    }

    friend MultivariatePolynomial operator-(const MultivariatePolynomial& a,
                                            const MultivariatePolynomial& b) {
        return a + (-b);
    }

    friend MultivariatePolynomial operator*(const MultivariatePolynomial& a,
                                            const MultivariatePolynomial& b) {
        MultivariatePolynomial r(a.nvars_);
        r.match(b);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m;
                for (size_t i = 0; i < m.e.size(); ++i)
                    m.e[i] = static_cast<int8_t>(ma.e[i] + mb.e[i]);
                Rational s = r.coeff(m) + ca * cb;
                if (s.is_zero()) r.terms_.erase(m);
                else r.terms_[m] = s;
            }
        return r;
    }

    friend MultivariatePolynomial operator*(const Rational& s, const MultivariatePolynomial& p) {
        MultivariatePolynomial r(p.nvars_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : p.terms_) r.terms_[m] = s * c;
        return r;
    }

    friend bool operator==(const MultivariatePolynomial& a, const MultivariatePolynomial& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultivariatePolynomial& a, const MultivariatePolynomial& b) {
        return !(a == b);
    }

    MultivariatePolynomial derivative(int var) const {
        MultivariatePolynomial r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m.e[var] == 0) continue;
            Monomial dm = m;
            dm.e[var] = static_cast<int8_t>(dm.e[var] - 1);
            r.terms_[dm] = Rational(m.e[var]) * c;
        }
        return r;
    }

    /// Exact evaluation at a rational point (used by property tests).
    Rational eval(const std::vector<Rational>& point) const {
        Rational s(0);
        for (const auto& [m, c] : terms_) {
            Rational term = c;
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < m.e[i]; ++k) term *= point[static_cast<size_t>(i)];
            s += term;
        }
        return s;
    }

    /// Deterministic printing in graded-lex map order, e.g. "2*t*x1 - 1/2*rho".
    std::string str(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            std::string mono;
            for (int i = 0; i < nvars_; ++i) {
                for (int k = 0; k < m.e[i]; ++k) {
                    if (!mono.empty()) mono += "*";
                    mono += names[static_cast<size_t>(i)];
                }
            }
            std::string piece;
            if (mono.empty()) piece = c.str();
            else if (c == Rational(1)) piece = mono;
            else if (c == Rational(-1)) piece = "-" + mono;
            else piece = c.str() + "*" + mono;
            if (s.empty()) s = piece;
            else if (!piece.empty() && piece[0] == '-') s += " - " + piece.substr(1);
            else s += " + " + piece;
        }
        return s;
    }

private:
    int nvars_ = 0;
    std::map<Monomial, Rational> terms_;

    static void check_nvars(int n) {
        if (n < 0 || n > 8) throw error(errc::invalid_argument, "polynomial supports up to 8 variables");
    }

    void match(const MultivariatePolynomial& other) {
        if (nvars_ == 0) nvars_ = other.nvars_;
        else if (other.nvars_ != 0 && other.nvars_ != nvars_)
            throw error(errc::parameter_mismatch, "polynomials over different variable sets");
    }
};

using Poly = MultivariatePolynomial;

} // namespace cfl
