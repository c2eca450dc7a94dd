#include <doctest.h>

#include "oresub/delta.hpp"
#include "oresub/errors.hpp"
#include "support/brute_force.hpp"
#include "support/random_poly.hpp"

using namespace oresub;

namespace {

const VarSet kVars({"x", "y", "n", "e"});
constexpr std::size_t X = 0, Y = 1, N = 2, E = 3;
constexpr VarMask kParams = VarMask{1} << E;

RatFunc F(const char* s) { return parse_ratfunc(s, kVars); }

DeltaMap dx() { return DeltaMap::derivation("dx", {{X, Rational(1)}}); }
DeltaMap dy() { return DeltaMap::derivation("dy", {{Y, Rational(1)}}); }
DeltaMap diag_derivation() { return DeltaMap::derivation("d", {{X, Rational(1)}, {Y, Rational(1)}}); }
DeltaMap shift_x() { return DeltaMap::shift("s", {{X, Rational(1)}}); }
DeltaMap shift_n() { return DeltaMap::shift("sn", {{N, Rational(1)}}); }

}  // namespace

TEST_CASE("maps act as derivations and shifts") {
    CHECK(apply(diag_derivation(), F("x*y")) == F("x+y"));
    CHECK(apply(shift_n(), F("n/(n+1)")) == F("(n+1)/(n+2)"));
    CHECK(apply(shift_x(), RatFunc(1)) == RatFunc(1));
    CHECK(apply(dx(), RatFunc(1)).is_zero());
    CHECK(apply(DeltaMap::shift("t", {{X, Rational(1, 2)}, {Y, Rational(-1)}}), F("x*y")) == F("(x+1/2)*(y-1)"));
    CHECK(log_form(shift_n(), F("n")) == F("(n+1)/n"));

    CHECK_THROWS_AS(DeltaMap::derivation("z", {{X, Rational(0)}}), Error);
    CHECK_THROWS_AS(DeltaSet({DeltaMap::derivation("de", {{E, Rational(1)}})}, kParams), Error);
    CHECK_THROWS_AS(DeltaSet({dx(), DeltaMap::derivation("dx", {{Y, Rational(1)}})}), Error);
}

TEST_CASE("commutation, Leibniz and morphism laws on random inputs") {
    std::vector<DeltaMap> maps = {dx(), diag_derivation(), shift_x(), shift_n(),
                                  DeltaMap::shift("t", {{X, Rational(2)}, {Y, Rational(-1)}})};
    std::mt19937 rng(17);
    for (int i = 0; i < 15; ++i) {
        RatFunc f = testing::random_ratfunc(rng, 3, 2, 3);
        RatFunc g = testing::random_ratfunc(rng, 3, 2, 3);
        for (const auto& a : maps) {
            if (a.is_derivation())
                CHECK(apply(a, f * g) == apply(a, f) * g + f * apply(a, g));
            else
                CHECK(apply(a, f * g) == apply(a, f) * apply(a, g));
            for (const auto& b : maps) CHECK(apply(a, apply(b, f)) == apply(b, apply(a, f)));
        }
    }
}

TEST_CASE("constant fields through coordinate frames") {
    SUBCASE("single shift keeps the other variable") {
        auto c = constant_field(DeltaSet({shift_x()}, kParams), 4);
        CHECK(c.contains(F("y/(y+1)")));
        CHECK_FALSE(c.contains(F("x")));
    }
    SUBCASE("diagonal derivation has x - y as a constant") {
        auto c = constant_field(DeltaSet({diag_derivation()}, kParams), 4);
        CHECK(c.contains(F("x-y")));
        CHECK(c.contains(F("(x-y)^2/(x-y+e)")));
        CHECK_FALSE(c.contains(F("x")));
    }
    SUBCASE("shift and diagonal derivation leave only the parameter") {
        DeltaSet delta({shift_x(), diag_derivation()}, kParams);
        auto c = constant_field(delta, 4);
        CHECK(c.contains(F("e^2+1")));
        CHECK_FALSE(c.contains(F("x-y")));
        CHECK_FALSE(c.contains(F("y")));
        Frame fr(delta, 4);
        // Each map acts on its own axis in frame coordinates.
        RatFunc f = F("x^2*y/(x+e)");
        for (std::size_t i = 0; i < 2; ++i)
            CHECK(fr.to_frame(apply(delta[i], f)) == apply(fr.delta()[i], fr.to_frame(f)));
        CHECK(fr.to_user(fr.to_frame(f)) == f);
    }
    SUBCASE("dependent directions are rejected") {
        CHECK_THROWS_AS(Frame(DeltaSet({shift_x(), dx()}), 4), UnsupportedDeltaStructure);
    }
    SUBCASE("membership agrees with the defining identities") {
        std::vector<DeltaSet> sets = {DeltaSet({shift_x()}), DeltaSet({diag_derivation()}),
                                      DeltaSet({diag_derivation(), shift_n()})};
        std::mt19937 rng(4);
        for (const auto& s : sets) {
            auto c = constant_field(s, 4);
            for (int i = 0; i < 25; ++i) {
                RatFunc f = testing::random_ratfunc(rng, 3, 2, 2);
                // Univariate in x - y: constant for the diagonal derivation.
                if (i % 3 == 0) f = testing::random_ratfunc(rng, 1, 2, 2).compose({Poly::var(X) - Poly::var(Y)});
                bool by_maps = true;
                for (const auto& m : s.maps()) by_maps = by_maps && is_constant_of(m, f);
                CHECK(c.contains(f) == by_maps);
            }
        }
    }
}

TEST_CASE("coefficient decomposition") {
    auto recombine = [](const Decomposition& d, std::size_t k) {
        RatFunc s;
        for (std::size_t j = 0; j < d.basis.size(); ++j) s += d.coeffs[k][j] * d.basis[j];
        return s;
    };
    SUBCASE("basis over an active variable") {
        auto d = coeff_decompose({F("(2*x+y)/x")}, VarMask{1} << X);
        REQUIRE(d.basis.size() == 2);
        CHECK(d.basis[0] == RatFunc(1));
        CHECK(d.basis[1] == F("1/x"));
        CHECK(d.coeffs[0][0] == RatFunc(2));
        CHECK(d.coeffs[0][1] == F("y"));
    }
    SUBCASE("constants decompose trivially") {
        auto d = coeff_decompose({F("y/(y+e)")}, VarMask{1} << X);
        REQUIRE(d.basis.size() == 1);
        CHECK(d.basis[0] == RatFunc(1));
        CHECK(d.coeffs[0][0] == F("y/(y+e)"));
    }
    SUBCASE("random recombination and independent basis") {
        std::mt19937 rng(8);
        DeltaSet delta({diag_derivation()});
        auto c = constant_field(delta, 4);
        for (int i = 0; i < 10; ++i) {
            std::vector<RatFunc> vals = {testing::random_ratfunc(rng, 3, 2, 3), testing::random_ratfunc(rng, 3, 2, 3)};
            auto d = coeff_decompose(vals, c);
            for (std::size_t k = 0; k < vals.size(); ++k) {
                CHECK(recombine(d, k) == vals[k]);
                for (const auto& co : d.coeffs[k]) CHECK(c.contains(co));
            }
            if (d.basis.size() <= 4) CHECK(dependence_over_constants(d.basis, delta).independent);
        }
    }
}

TEST_CASE("theta monomials are graded lexicographic") {
    auto t = theta_monomials(2, 2);
    REQUIRE(t.size() == 6);
    CHECK(t[0].exponents == std::vector<unsigned>{0, 0});
    CHECK(t[1].exponents == std::vector<unsigned>{1, 0});
    CHECK(t[2].exponents == std::vector<unsigned>{0, 1});
    CHECK(t[3].exponents == std::vector<unsigned>{2, 0});
    CHECK(t[5].exponents == std::vector<unsigned>{0, 2});
    CHECK(theta_monomials(0, 3).size() == 1);
}

TEST_CASE("dependence over constants") {
    DeltaSet just_x({dx()});
    CHECK(dependence_over_constants({RatFunc(1), F("x")}, just_x).independent);

    auto dep = dependence_over_constants({F("x"), F("2*x")}, just_x);
    REQUIRE_FALSE(dep.independent);
    CHECK(dep.coefficients[0] / dep.coefficients[1] == RatFunc(-2));

    auto three = dependence_over_constants({F("y"), F("x+y"), F("x")}, DeltaSet({dx(), dy()}));
    REQUIRE_FALSE(three.independent);
    CHECK(three.coefficients[0] == three.coefficients[2]);
    CHECK(three.coefficients[1] == -three.coefficients[0]);

    // Constants of dx include y, so x*y and x are dependent over them.
    auto over_y = dependence_over_constants({F("x*y"), F("x")}, just_x);
    REQUIRE_FALSE(over_y.independent);
    CHECK(over_y.coefficients[0] / over_y.coefficients[1] == F("-1/y"));
}

TEST_CASE("dependence matches a brute-force rational relation search") {
    std::vector<DeltaSet> sets = {DeltaSet({dx(), dy()}), DeltaSet({dx(), DeltaMap::shift("sy", {{Y, Rational(1)}})}),
                                  DeltaSet({diag_derivation(), shift_x()})};
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> small(-3, 3);
    int instances = 0, dependent = 0;
    for (int i = 0; i < 60; ++i) {
        const auto& delta = sets[static_cast<std::size_t>(i) % sets.size()];
        std::size_t s = 1 + static_cast<std::size_t>(i % 3);
        std::vector<RatFunc> vals;
        for (std::size_t k = 0; k < s; ++k) vals.push_back(testing::random_ratfunc(rng, 2, 2, 3));
        if (s >= 2 && i % 2 == 0) {
            RatFunc combo;
            for (std::size_t k = 0; k + 1 < s; ++k) combo += RatFunc(small(rng)) * vals[k];
            vals.back() = combo;
        }
        bool expected = testing::has_rational_relation(vals);
        auto got = dependence_over_constants(vals, delta);
        CHECK(got.independent == !expected);
        if (!got.independent) {
            ++dependent;
            RatFunc sum;
            for (std::size_t k = 0; k < s; ++k) {
                CHECK(got.coefficients[k].is_constant());
                sum += got.coefficients[k] * vals[k];
            }
            CHECK(sum.is_zero());
        }
        ++instances;
    }
    CHECK(instances >= 50);
    CHECK(dependent > 10);
}
