#pragma once

#include <string>
#include <vector>

#include "cfl/generators.hpp"

namespace cfl {

/// One verified bracket: the relation label, both sides printed, and whether
/// they agree exactly.
struct RelationCheck {
    std::string relation;
    std::string lhs;
    std::string rhs;
    bool match = false;
};

struct StructureReport {
    AlgebraFamily family = AlgebraFamily::GalileiConformal;
    Rational param;
    int d = 1;
    std::vector<RelationCheck> entries;
    std::vector<std::string> notes;

    bool all_match() const {
        for (const auto& e : entries)
            if (!e.match) return false;
        return true;
    }

    json to_json() const {
        json j;
        j["family"] = family == AlgebraFamily::GalileiConformal ? "gca" : "lifshitz";
        j[family == AlgebraFamily::GalileiConformal ? "ell" : "z"] = param.str();
        j["d"] = d;
        j["all_match"] = all_match();
        j["relations"] = json::array();
        for (const auto& e : entries)
            j["relations"].push_back(
                {{"relation", e.relation}, {"lhs", e.lhs}, {"rhs", e.rhs}, {"match", e.match}});
        j["notes"] = notes;
        return j;
    }
};

namespace detail {

inline void check_bracket(StructureReport& rep, const VectorFieldGenerator& A,
                          const VectorFieldGenerator& B, const VectorFieldGenerator& expected,
                          const std::string& expected_str) {
    auto lhs = commutator(A, B);
    RelationCheck rc;
    rc.relation = "[" + A.label + "," + B.label + "] = " + expected_str;
    rc.lhs = lhs.str();
    rc.rhs = expected.str();
    rc.match = (lhs == expected);
    rep.entries.push_back(std::move(rc));
}

} // namespace detail

/// Verifies every bracket of the ell-conformal Galilei algebra over the
/// field-extended generator set {H, D, K, C^(0..2l)_i}, exactly. Mismatches
/// are recorded with both sides printed; nothing throws.
inline StructureReport verify_gca_structure(const EllParameter& ell, int d) {
    StructureReport rep;
    rep.family = AlgebraFamily::GalileiConformal;
    rep.param = ell.value();
    rep.d = d;
    rep.notes.push_back("brackets verified on the field-extended space (t, x, rho, v)");
    rep.notes.push_back("accelerations act trivially on rho (density invariant under shifts)");

    const Rational l = ell.value();
    const long long two_l = ell.doubled();
    auto H = make_gca_generator(GcaGen::H, ell, d);
    auto D = make_gca_generator(GcaGen::D, ell, d);
    auto K = make_gca_generator(GcaGen::K, ell, d);
    std::vector<std::vector<VectorFieldGenerator>> C; // C[n][i]
    for (long long n = 0; n <= two_l; ++n) {
        std::vector<VectorFieldGenerator> row;
        for (int i = 0; i < d; ++i)
            row.push_back(make_gca_generator(GcaGen::C, ell, d, static_cast<int>(n), i));
        C.push_back(std::move(row));
    }
    auto fam = AlgebraFamily::GalileiConformal;
    auto zero = lin_comb({}, fam, l, d, "0");

    detail::check_bracket(rep, H, D, H, "H");
    detail::check_bracket(rep, H, K, lin_comb({{Rational(2), &D}}, fam, l, d, "2D"), "2D");
    detail::check_bracket(rep, D, K, K, "K");

    for (long long n = 0; n <= two_l; ++n) {
        for (int i = 0; i < d; ++i) {
            const auto& Cn = C[static_cast<size_t>(n)][static_cast<size_t>(i)];
            // [H, C^(n)] = n C^(n-1)
            if (n == 0) {
                detail::check_bracket(rep, H, Cn, zero, "0");
            } else {
                auto exp = lin_comb({{Rational(n), &C[static_cast<size_t>(n - 1)][static_cast<size_t>(i)]}},
                                    fam, l, d, "");
                detail::check_bracket(rep, H, Cn, exp,
                                      std::to_string(n) + " C^(" + std::to_string(n - 1) + ")_" +
                                          std::to_string(i + 1));
            }
            // [D, C^(n)] = (n - l) C^(n)
            {
                Rational c = Rational(n) - l;
                auto exp = lin_comb({{c, &Cn}}, fam, l, d, "");
                detail::check_bracket(rep, D, Cn, exp, "(" + c.str() + ") " + Cn.label);
            }
            // [K, C^(n)] = (n - 2l) C^(n+1); closes with coefficient 0 at n = 2l
            if (n == two_l) {
                detail::check_bracket(rep, K, Cn, zero, "0");
            } else {
                Rational c = Rational(n) - Rational(2) * l;
                auto exp = lin_comb({{c, &C[static_cast<size_t>(n + 1)][static_cast<size_t>(i)]}},
                                    fam, l, d, "");
                detail::check_bracket(rep, K, Cn, exp,
                                      "(" + c.str() + ") C^(" + std::to_string(n + 1) + ")_" +
                                          std::to_string(i + 1));
            }
        }
    }

    // Accelerations commute among themselves.
    for (long long n = 0; n <= two_l; ++n)
        for (int i = 0; i < d; ++i)
            for (long long m = n; m <= two_l; ++m)
                for (int j = (m == n ? i + 1 : 0); j < d; ++j)
                    detail::check_bracket(rep, C[static_cast<size_t>(n)][static_cast<size_t>(i)],
                                          C[static_cast<size_t>(m)][static_cast<size_t>(j)], zero,
                                          "0");
    return rep;
}

/// Verifies the Lifshitz algebra {H, D, C^(0)_i, C^(1)_i}:
/// [H,D] = zH, [H,C^(1)] = C^(0), [D,C^(0)] = -1/2 C^(0),
/// [D,C^(1)] = (z-1/2) C^(1), all other brackets zero.
inline StructureReport verify_lifshitz_structure(const Rational& z, int d) {
    StructureReport rep;
    rep.family = AlgebraFamily::Lifshitz;
    rep.param = z;
    rep.d = d;
    rep.notes.push_back("brackets verified on the field-extended space (t, x, rho, v)");

    auto H = make_lifshitz_generator(LifGen::H, z, d);
    auto D = make_lifshitz_generator(LifGen::D, z, d);
    std::vector<VectorFieldGenerator> C0, C1;
    for (int i = 0; i < d; ++i) {
        C0.push_back(make_lifshitz_generator(LifGen::C0, z, d, i));
        C1.push_back(make_lifshitz_generator(LifGen::C1, z, d, i));
    }
    auto fam = AlgebraFamily::Lifshitz;
    auto zero = lin_comb({}, fam, z, d, "0");

    detail::check_bracket(rep, H, D, lin_comb({{z, &H}}, fam, z, d, ""), "(" + z.str() + ") H");
    for (int i = 0; i < d; ++i) {
        detail::check_bracket(rep, H, C0[static_cast<size_t>(i)], zero, "0");
        detail::check_bracket(rep, H, C1[static_cast<size_t>(i)], C0[static_cast<size_t>(i)],
                              C0[static_cast<size_t>(i)].label);
        detail::check_bracket(rep, D, C0[static_cast<size_t>(i)],
                              lin_comb({{Rational(-1, 2), &C0[static_cast<size_t>(i)]}}, fam, z, d, ""),
                              "(-1/2) " + C0[static_cast<size_t>(i)].label);
        Rational c = z - Rational(1, 2);
        detail::check_bracket(rep, D, C1[static_cast<size_t>(i)],
                              lin_comb({{c, &C1[static_cast<size_t>(i)]}}, fam, z, d, ""),
                              "(" + c.str() + ") " + C1[static_cast<size_t>(i)].label);
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (j > i) {
                detail::check_bracket(rep, C0[static_cast<size_t>(i)], C0[static_cast<size_t>(j)],
                                      zero, "0");
                detail::check_bracket(rep, C1[static_cast<size_t>(i)], C1[static_cast<size_t>(j)],
                                      zero, "0");
            }
            detail::check_bracket(rep, C0[static_cast<size_t>(i)], C1[static_cast<size_t>(j)], zero,
                                  "0");
        }
    return rep;
}

inline StructureReport verify_structure_relations(AlgebraFamily family, const Rational& ell_or_z,
                                                  int d) {
    if (family == AlgebraFamily::GalileiConformal)
        return verify_gca_structure(EllParameter::validate(ell_or_z), d);
    return verify_lifshitz_structure(ell_or_z, d);
}

/// All generators of a family, in a fixed order (used for Jacobi sweeps).
inline std::vector<VectorFieldGenerator> all_generators(AlgebraFamily family,
                                                        const Rational& ell_or_z, int d) {
    std::vector<VectorFieldGenerator> gens;
    if (family == AlgebraFamily::GalileiConformal) {
        auto ell = EllParameter::validate(ell_or_z);
        gens.push_back(make_gca_generator(GcaGen::H, ell, d));
        gens.push_back(make_gca_generator(GcaGen::D, ell, d));
        gens.push_back(make_gca_generator(GcaGen::K, ell, d));
        for (long long n = 0; n <= ell.doubled(); ++n)
            for (int i = 0; i < d; ++i)
                gens.push_back(make_gca_generator(GcaGen::C, ell, d, static_cast<int>(n), i));
    } else {
        gens.push_back(make_lifshitz_generator(LifGen::H, ell_or_z, d));
        gens.push_back(make_lifshitz_generator(LifGen::D, ell_or_z, d));
        for (int i = 0; i < d; ++i) gens.push_back(make_lifshitz_generator(LifGen::C0, ell_or_z, d, i));
        for (int i = 0; i < d; ++i) gens.push_back(make_lifshitz_generator(LifGen::C1, ell_or_z, d, i));
    }
    return gens;
}

} // namespace cfl
