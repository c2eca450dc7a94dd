#include <doctest.h>

#include "oresub/errors.hpp"
#include "support/examples.hpp"

using namespace oresub;
using namespace examples;

TEST_CASE("associated systems") {
    SUBCASE("structure form round trip") {
        auto sys = associated_system(triple_structure(), vars());
        auto expected = triple_system();
        REQUIRE(sys.b.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) CHECK(sys.b[i] == expected.b[i]);
    }
    SUBCASE("identity shift") {
        StructureMatrices s{DeltaSet({DeltaMap::shift("sn", {{N, Rational(1)}})}), {MatrixF::identity(2)}};
        CHECK(associated_system(s, vars()).b[0] == MatrixF::identity(2));
    }
    SUBCASE("singular shift matrix") {
        StructureMatrices s{DeltaSet({DeltaMap::shift("sn", {{N, Rational(1)}})}), {MatrixF(2, 2)}};
        CHECK_THROWS(associated_system(s, vars()));
    }
}

TEST_CASE("integrability") {
    CHECK_NOTHROW(check_integrability(mixed_system(), vars()));
    CHECK_NOTHROW(check_integrability(triple_system(), vars()));
    CHECK_NOTHROW(check_integrability(recurrence_system(), vars()));

    auto broken = mixed_system();
    broken.b[1](0, 0) += RatFunc(1);
    CHECK_THROWS_AS(check_integrability(broken, vars()), NotIntegrable);
    try {
        check_integrability(broken, vars());
    } catch (const NotIntegrable& e) {
        std::string what = e.what();
        CHECK(what.find('s') != std::string::npos);
        CHECK(what.find('d') != std::string::npos);
    }

    auto tri = triple_system();
    tri.b[2](1, 1) = F("1/y");
    CHECK_FALSE(integrability_residual(tri, 0, 2).is_zero());
    CHECK(integrability_residual(tri, 0, 1).is_zero());
}

TEST_CASE("verification of known groups") {
    for (const auto& g : recurrence_solutions().groups) CHECK(verify_group(recurrence_system(), g).passed());
    for (const auto& g : mixed_solutions().groups) CHECK(verify_group(mixed_system(), g).passed());
    for (const auto& g : triple_solutions().groups) CHECK(verify_group(triple_system(), g).passed());

    SUBCASE("a sign flip is caught") {
        auto g = triple_solutions().groups[0];
        g.certificate[2] = F("x/y^2");
        auto v = verify_group(triple_system(), g);
        REQUIRE_FALSE(v.passed());
        for (const auto& r : v.failures) CHECK(r.map == 2);
    }
    SUBCASE("a wrong column is reported by index") {
        auto g = mixed_solutions().groups[0];
        g.vectors = MatrixF::hstack(g.vectors, mixed_solutions().groups[1].vectors);
        auto v = verify_group(mixed_system(), g);
        REQUIRE_FALSE(v.passed());
        CHECK(v.failures.front().column == 1);
    }
    SUBCASE("stage groups solve their own equation") {
        auto first = triple_first_stage();
        auto sys = triple_system();
        IntegrableSystem dx{sys.delta.subset({0}), {sys.b[0]}};
        CHECK(verify_group(dx, first).passed());
        auto mixed = mixed_system();
        IntegrableSystem s{mixed.delta.subset({0}), {mixed.b[0]}};
        for (const auto& g : mixed_first_stage().groups) CHECK(verify_group(s, g).passed());
    }
}

TEST_CASE("certificate consistency") {
    auto delta = triple_delta();
    CHECK(certificate_consistent(delta, triple_solutions().groups[0].certificate));
    Certificate bad = triple_solutions().groups[0].certificate;
    bad[2] = F("x/y^2");
    CHECK_FALSE(certificate_consistent(delta, bad));
    CHECK(certificate_consistent(mixed_system().delta, mixed_solutions().groups[2].certificate));
}

TEST_CASE("isomorphism of one-dimensional submodules") {
    auto delta = recurrence_system().delta;
    Certificate f{{0, F("1/n")}}, g{{0, F("1/x")}};
    SUBCASE("equal eigenvalues") {
        auto r = iso_test(delta, f, f);
        REQUIRE(r);
        CHECK(is_constant_of(delta[0], *r));
        CHECK_FALSE(r->is_zero());
    }
    SUBCASE("inequivalent eigenvalues") { CHECK_FALSE(iso_test(delta, f, g)); }
    SUBCASE("gauge by a polynomial") {
        Certificate scaled{{0, F("(n+1)/n^2")}};
        auto r = iso_test(delta, scaled, f);
        REQUIRE(r);
        CHECK(is_constant_of(delta[0], *r / F("n")));
    }
    SUBCASE("mixed maps") {
        auto tri = triple_delta();
        auto base = eigenvalues_of(tri, triple_solutions().groups[0].certificate);
        Certificate moved;
        RatFunc p = F("x+k");
        for (const auto& [i, v] : base)
            moved[i] = tri[i].is_derivation() ? v + log_form(tri[i], p) : v * log_form(tri[i], p);
        auto r = iso_test(tri, moved, base);
        REQUIRE(r);
        for (std::size_t i = 0; i < 3; ++i) CHECK(is_constant_of(tri[i], *r / p));
    }
}

TEST_CASE("submodule certificates") {
    auto s = triple_structure();
    auto w = triple_solutions().groups[0].vectors;
    for (std::size_t c = 0; c < 3; ++c) {
        auto f = submodule_certificate(s, w.col_vector(c));
        REQUIRE(f);
        CHECK(*f == eigenvalues_of(s.delta, triple_solutions().groups[0].certificate));
    }
    CHECK_FALSE(submodule_certificate(s, {RatFunc(1), RatFunc(0), RatFunc(0)}));
    CHECK_THROWS(submodule_certificate(s, {RatFunc(0), RatFunc(0), RatFunc(0)}));
}

TEST_CASE("association witnesses") {
    auto delta = mixed_system().delta;
    Certificate a{{0, F("e")}, {1, F("2")}};
    Certificate b{{0, F("e*(x+1)/x")}, {1, F("2+1/x")}};
    auto w = associate_witness(delta, a, b);
    REQUIRE(w);
    CHECK(is_constant_of(delta[0], *w / F("x")));
    CHECK(is_constant_of(delta[1], *w / F("x")));
    CHECK_FALSE(associate_witness(delta, a, {{0, F("1")}, {1, F("2")}}));
    // A missing key counts as the trivial value.
    CHECK(associate_witness(delta, {{0, F("1")}}, {{0, F("1")}, {1, F("0")}}));
}

TEST_CASE("closed forms") {
    auto tri = triple_delta();
    CHECK(display_certificate(tri, triple_solutions().groups[0].certificate, vars()) == "exp(x/y)*Gamma(k)");
    auto rec = recurrence_system().delta;
    CHECK(display_certificate(rec, {{0, F("n")}}, vars()) == "Gamma(n)");
    CHECK(display_certificate(rec, {{0, F("x")}}, vars()) == "x^n");
    CHECK(display_certificate(rec, {{0, F("1")}}, vars()) == "1");
    auto dx = DeltaSet({DeltaMap::derivation("dx", {{X, Rational(1)}})});
    CHECK(display_certificate(dx, {{0, F("2/x")}}, vars()) == "x^2");
    // e^x with a symbolic base cannot be written when x is also differentiated.
    CHECK_FALSE(display_certificate(mixed_system().delta, {{0, F("e")}, {1, F("2")}}, vars()));
}

TEST_CASE("certificate reduction") {
    auto tri = triple_delta();
    auto g = triple_solutions().groups[0];
    SUBCASE("a rescaled group returns to the plain certificate") {
        HyperexpGroup moved = g;
        RatFunc w = F("(y+k)*x^3/(k+2)");
        for (auto& [i, v] : moved.certificate) v = tri[i].is_derivation() ? v + log_form(tri[i], w) : v * log_form(tri[i], w);
        moved.vectors = w.inverse() * moved.vectors;
        auto r = reduced_group(tri, moved);
        CHECK(r.certificate == g.certificate);
        CHECK(verify_group(triple_system(), r).passed());
    }
    SUBCASE("values reduce within their class") {
        auto dx = DeltaSet({DeltaMap::derivation("dx", {{X, Rational(1)}})});
        HyperexpGroup h{{{0, F("5/(2*x) + 1/x^2")}}, mat({{"1"}})};
        CHECK(reduced_group(dx, h).certificate.at(0) == F("1/(2*x) + 1/x^2"));
        auto sk = DeltaSet({DeltaMap::shift("sk", {{K, Rational(1)}})});
        HyperexpGroup s{{{0, F("(k+3)*(k+y)/(k+y+2)")}}, mat({{"1"}})};
        auto r = reduced_group(sk, s);
        CHECK(r.certificate.at(0) == F("k"));
        CHECK(log_form(sk[0], r.vectors(0, 0)) * r.certificate.at(0) == s.certificate.at(0));
    }
    SUBCASE("maps on several variables are left alone") {
        auto delta = mixed_system().delta;
        HyperexpGroup m{{{1, F("2 + 1/(x+y)")}}, mat({{"1"}})};
        CHECK(reduced_group(delta, m).certificate == m.certificate);
    }
}
