#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "cfl/core.hpp"

using cfl::EllParameter;
using cfl::ell_product;
using cfl::EquationOfState;
using cfl::Rational;

namespace {

// Independent oracle for the product (l-0)(l-1)...(l-2l): with n = 2l the
// value is prod_k (n - 2k) / 2^(n+1), accumulated in 128-bit integers.
Rational product_oracle(long long doubled) {
    __int128 num = 1;
    __int128 den = 1;
    for (long long k = 0; k <= doubled; ++k) {
        num *= (doubled - 2 * k);
        den *= 2;
    }
    return Rational::from_i128(num, den);
}

} // namespace

TEST_CASE("validate_ell: admissibility classification") {
    auto one = EllParameter::validate(Rational(1));
    CHECK(one.is_integer());
    CHECK(one.is_admissible());

    auto five_half = EllParameter::validate(Rational(5, 2));
    CHECK(five_half.is_half_integer());
    CHECK(five_half.is_admissible()); // (1+4k)/2 with k = 1

    auto three_half = EllParameter::validate(Rational(3, 2));
    CHECK(three_half.is_half_integer());
    CHECK_FALSE(three_half.is_admissible());
    // the product oracle confirms: l(l-1)(l-2)(l-3) = 9/16 > 0 breaks positivity
    CHECK(product_oracle(3) == Rational(9, 16));

    CHECK_THROWS_WITH_AS(EllParameter::validate(Rational(2, 3)),
                         doctest::Contains("NotHalfInteger"), cfl::error);
    CHECK_THROWS_WITH_AS(EllParameter::validate(Rational(-1, 2)),
                         doctest::Contains("NonPositive"), cfl::error);
    CHECK_THROWS_WITH_AS(EllParameter::validate(Rational(0)), doctest::Contains("NonPositive"),
                         cfl::error);
    CHECK_THROWS_WITH_AS(EllParameter::validate(Rational(21, 2)),
                         doctest::Contains("OutOfSupportedRange"), cfl::error);
}

TEST_CASE("integer and half-integer flags are exclusive and exhaustive") {
    for (long long doubled = 1; doubled <= 20; ++doubled) {
        auto ell = EllParameter::validate(Rational(doubled, 2));
        CHECK(ell.is_integer() != ell.is_half_integer());
    }
}

TEST_CASE("ell_product: frozen values against the independent oracle") {
    CHECK(ell_product(EllParameter::validate(Rational(1))) == Rational(0));
    CHECK(ell_product(EllParameter::validate(Rational(1, 2))) == Rational(-1, 4));
    CHECK(ell_product(EllParameter::validate(Rational(5, 2))) == Rational(-225, 64));
    for (long long doubled = 1; doubled <= 20; ++doubled) {
        auto ell = EllParameter::validate(Rational(doubled, 2));
        CHECK(ell_product(ell) == product_oracle(doubled));
    }
}

TEST_CASE("ell_product sign pattern over the admissibility sequences") {
    // Inside the supported cap: exact rational signs.
    for (long long doubled = 1; doubled <= 20; ++doubled) {
        auto ell = EllParameter::validate(Rational(doubled, 2));
        Rational p = ell_product(ell);
        if (ell.is_integer()) CHECK(p == Rational(0));
        else if (doubled % 4 == 1) CHECK(p.sign() < 0); // ell = (1+4k)/2
        else CHECK(p.sign() > 0);                       // ell = (3+4k)/2
    }
    // Beyond the cap (k up to 20 in both sequences): a floating-point product
    // oracle confirms the alternation continues.
    for (int k = 0; k <= 20; ++k) {
        for (int offset : {1, 3}) {
            long double ell = (offset + 4.0L * k) / 2.0L;
            long double prod = 1.0L;
            for (int j = 0; j <= offset + 4 * k; ++j) prod *= (ell - j) / 8.0L; // keep finite
            if (offset == 1) CHECK(prod < 0.0L);
            else CHECK(prod > 0.0L);
        }
    }
}

TEST_CASE("equation of state: exponents and monotonicity") {
    auto ell = EllParameter::validate(Rational(5, 2));
    auto eos = EquationOfState::galilei(ell, 2, 0.5);
    CHECK(eos.exponent == Rational(6, 5)); // 1 + 1/(l d) with l d = 5
    auto lif = EquationOfState::lifshitz(Rational(3, 5), 2, 0.5);
    CHECK(lif.exponent == Rational(6, 5)); // 1 + 2(2z-1)/d with z = 3/5, d = 2

    double prev = 0.0;
    for (int i = 1; i <= 200; ++i) {
        double rho = 0.01 * i;
        double p = eos.pressure(rho);
        CHECK(p > prev);
        prev = p;
    }
    CHECK_THROWS_AS(EquationOfState::galilei(ell, 2, 0.0), cfl::error);
    CHECK_THROWS_AS(EquationOfState::galilei(ell, 2, -1.0), cfl::error);
}

TEST_CASE("printed form reads back to the same parameter") {
    for (long long doubled = 1; doubled <= 20; ++doubled) {
        auto ell = EllParameter::validate(Rational(doubled, 2));
        auto back = EllParameter::validate(ell.str());
        CHECK(back == ell);
    }
}

TEST_CASE("spacetime domain: time positivity and exclusions") {
    auto dom = cfl::SpacetimeDomain::all_space(1, 0.0);
    dom.excluded.push_back({"x = 0",
                            [](double, const cfl::Vec& x) { return x[0] == 0.0; }});
    CHECK(dom.contains(1.0, {1.0, 0.0, 0.0}));
    CHECK_FALSE(dom.contains(-1.0, {1.0, 0.0, 0.0}));
    CHECK_FALSE(dom.contains(0.0, {1.0, 0.0, 0.0}));
    CHECK_FALSE(dom.contains(1.0, {0.0, 0.0, 0.0}));
}
