#include <doctest.h>

#include "oresub/errors.hpp"
#include "support/examples.hpp"

#include <algorithm>

using namespace oresub;
using namespace examples;

namespace {

void check_verified(const IntegrableSystem& sys, const Representation& rep) {
    for (const auto& g : rep.groups) {
        CHECK(verify_group(sys, g).passed());
        CHECK(certificate_consistent(sys.delta, g.certificate));
        CHECK(rank(g.vectors) == g.vectors.cols());
    }
}

std::size_t total_columns(const Representation& rep) {
    std::size_t s = 0;
    for (const auto& g : rep.groups) s += g.vectors.cols();
    return s;
}

}  // namespace

TEST_CASE("ordinary systems") {
    SUBCASE("recurrence") {
        auto sys = recurrence_system();
        auto rep = solve_ordinary(sys.b[0], sys.delta, 0);
        CHECK(rep.groups.size() == 2);
        check_verified(sys, rep);
        CHECK(equivalent(sys.delta, rep, recurrence_solutions()));
    }
    SUBCASE("constant solutions of a derivation") {
        DeltaSet delta({DeltaMap::derivation("dx", {{X, Rational(1)}})});
        auto rep = solve_ordinary(MatrixF(2, 2), delta, 0);
        REQUIRE(rep.groups.size() == 1);
        CHECK(rep.groups[0].certificate.at(0).is_zero());
        CHECK(rep.groups[0].vectors.cols() == 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) CHECK(is_constant_of(delta[0], rep.groups[0].vectors(i, j)));
    }
    SUBCASE("diagonal shift") {
        DeltaSet delta({DeltaMap::shift("sn", {{N, Rational(1)}})});
        MatrixF b = mat({{"2", "0"}, {"0", "3"}});
        auto rep = solve_ordinary(b, delta, 0);
        REQUIRE(rep.groups.size() == 2);
        std::vector<RatFunc> certs{rep.groups[0].certificate.at(0), rep.groups[1].certificate.at(0)};
        CHECK(std::count(certs.begin(), certs.end(), RatFunc(2)) == 1);
        CHECK(std::count(certs.begin(), certs.end(), RatFunc(3)) == 1);
    }
    SUBCASE("pivot coordinate that is not cyclic") {
        DeltaSet delta({DeltaMap::derivation("dx", {{X, Rational(1)}})});
        // 1 and 1 + 1/x are associated through x.
        MatrixF b = mat({{"1", "0", "0"}, {"0", "2", "0"}, {"0", "0", "1+1/x"}});
        for (std::size_t pivot = 0; pivot < 3; ++pivot) {
            SolveOptions opt;
            opt.pivot = pivot;
            auto rep = solve_ordinary(b, delta, 0, opt);
            CHECK(rep.groups.size() == 2);
            CHECK(total_columns(rep) == 3);
            check_verified({delta, {b}}, rep);
        }
    }
}

TEST_CASE("certificate extension") {
    auto tri = triple_delta();
    Certificate base{{0, F("1/y")}};
    CHECK(extend_certificate(tri, base, 1) == RatFunc(1));
    auto ey = extend_certificate(tri, base, 2);
    REQUIRE(ey);
    CHECK(*ey == F("-x/y^2"));
    CHECK(extend_certificate(tri, {{0, F("1/y")}, {1, F("k")}}, 2) == F("-x/y^2"));

    auto mixed = mixed_system().delta;
    // Any value free of x extends e^x; e^(x+y) and e^x are both valid.
    auto ex = extend_certificate(mixed, {{0, F("e")}}, 1);
    REQUIRE(ex);
    CHECK(is_constant_of(mixed[0], *ex));
    CHECK(extend_certificate(mixed, {{0, F("1")}}, 1) == RatFunc(0));
    CHECK(extend_certificate(mixed, {{1, F("2")}}, 0) == RatFunc(1));

    // exp(-1/(x+n)) is not hyperexponential in n.
    DeltaSet dn({DeltaMap::derivation("dx", {{X, Rational(1)}}), DeltaMap::shift("sn", {{N, Rational(1)}})});
    CHECK_FALSE(extend_certificate(dn, {{0, F("1/(x+n)^2")}}, 1));
    // x^n extends to d/dx with n/x.
    CHECK(extend_certificate(dn, {{1, F("x")}}, 0) == F("n/x"));
    CHECK_THROWS(extend_certificate(dn, {{1, F("x")}}, 1));
}

TEST_CASE("reduced systems") {
    SUBCASE("mixed system after the shift") {
        auto sys = mixed_system();
        auto stage = mixed_first_stage();
        auto first = substitute_and_extract(sys, stage.groups[0], 1, RatFunc(0), {0});
        CHECK(linear_reduction_from_pair(first.u, first.w, sys.delta[1]).dynamics ==
              mat({{"0", "1"}, {"-4/(2*y-1)", "4*y/(2*y-1)"}}));
        auto second = substitute_and_extract(sys, stage.groups[1], 1, RatFunc(1), {0});
        CHECK(linear_reduction_from_pair(second.u, second.w, sys.delta[1]).dynamics ==
              mat({{"-1", "1"}, {"-4/(2*y-1)", "(2*y+1)/(2*y-1)"}}));
    }
    SUBCASE("three maps after d/dx") {
        auto sys = triple_system();
        auto red = substitute_and_extract(sys, triple_first_stage(), 1, RatFunc(1), {0});
        CHECK(red.u.cols() == 3);
        CHECK(linear_reduction_from_pair(red.u, red.w, sys.delta[1]).dynamics ==
              mat({{"k", "0", "0"}, {"0", "k+1", "0"}, {"0", "0", "k*(y+k)/(y+k+1)"}}));
    }
}

TEST_CASE("full systems") {
    SUBCASE("single map") {
        auto sys = recurrence_system();
        auto rep = solve_system(sys);
        check_verified(sys, rep);
        CHECK(equivalent(sys.delta, rep, recurrence_solutions()));
    }
    SUBCASE("shift then derivation") {
        auto sys = mixed_system();
        SolveTrace trace;
        auto rep = solve_system(sys, {}, &trace);
        CHECK(rep.groups.size() == 4);
        check_verified(sys, rep);
        CHECK(equivalent(sys.delta, rep, mixed_solutions()));

        REQUIRE(trace.stages.size() == 2);
        CHECK(trace.processed[0] == std::vector<std::size_t>{0});
        Representation first{trace.stages[0]};
        CHECK(equivalent(sys.delta, first, mixed_first_stage()));
        CHECK(trace.reductions.size() == 2);
        for (const auto& r : trace.reductions) CHECK(r.dynamics.rows() == 2);
    }
    SUBCASE("derivation then shift") {
        auto sys = mixed_system();
        SolveOptions opt;
        opt.order = {1, 0};
        auto rep = solve_system(sys, opt);
        check_verified(sys, rep);
        CHECK(equivalent(sys.delta, rep, mixed_solutions()));
    }
    SUBCASE("three maps in every order") {
        auto sys = triple_system();
        std::vector<std::size_t> order{0, 1, 2};
        do {
            SolveOptions opt;
            opt.order = order;
            SolveTrace trace;
            auto rep = solve_system(sys, opt, &trace);
            CAPTURE(order[0]);
            CAPTURE(order[1]);
            REQUIRE(rep.groups.size() == 1);
            check_verified(sys, rep);
            CHECK(equivalent(sys.delta, rep, triple_solutions()));
            if (order == std::vector<std::size_t>{0, 1, 2}) {
                REQUIRE(trace.reductions.size() == 2);
                Representation first{trace.stages[0]};
                CHECK(equivalent(sys.delta, first, Representation{{triple_first_stage()}}));
                CHECK(trace.reductions[0].dynamics.rows() == 3);
            }
        } while (std::next_permutation(order.begin(), order.end()));
    }
    SUBCASE("pivot choice") {
        auto sys = mixed_system();
        for (std::size_t pivot = 0; pivot < 4; ++pivot) {
            SolveOptions opt;
            opt.pivot = pivot;
            CHECK(equivalent(sys.delta, solve_system(sys, opt), mixed_solutions()));
        }
    }
    SUBCASE("bad order") {
        SolveOptions opt;
        opt.order = {0, 0};
        CHECK_THROWS(solve_system(mixed_system(), opt));
    }
}

TEST_CASE("equivalence of representations") {
    auto delta = mixed_system().delta;
    auto a = mixed_solutions();
    auto b = a;
    // Rescale one group by x: certificate and vectors change together.
    b.groups[0].certificate[0] *= F("(x+1)/x");
    b.groups[0].certificate[1] += F("1/x");
    b.groups[0].vectors = F("1/x") * b.groups[0].vectors;
    std::reverse(b.groups.begin(), b.groups.end());
    CHECK(equivalent(delta, a, b));
    b.groups[0].vectors = F("x") * b.groups[0].vectors;
    CHECK_FALSE(equivalent(delta, a, b));
    CHECK_FALSE(equivalent(delta, a, Representation{{a.groups[0]}}));
}
