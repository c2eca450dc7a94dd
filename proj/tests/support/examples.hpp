#pragma once

// Reference systems shared by the system, solver, io and acceptance tests.

#include "oresub/solver.hpp"

#include <initializer_list>

namespace examples {

using namespace oresub;

inline const VarSet& vars() {
    static const VarSet v({"x", "y", "n", "m", "e", "k"});
    return v;
}
constexpr std::size_t X = 0, Y = 1, N = 2, M = 3, E = 4, K = 5;

inline RatFunc F(const char* s) { return parse_ratfunc(s, vars()); }

inline MatrixF mat(std::initializer_list<std::initializer_list<const char*>> rows) {
    MatrixF out(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (auto r : rows) {
        std::size_t j = 0;
        for (auto e : r) out(i, j++) = F(e);
        ++i;
    }
    return out;
}

inline HyperexpGroup group(std::initializer_list<std::pair<std::size_t, const char*>> cert,
                           std::initializer_list<std::initializer_list<const char*>> rows) {
    HyperexpGroup g;
    for (auto [k, v] : cert) g.certificate[k] = F(v);
    g.vectors = mat(rows);
    return g;
}

// One shift in n with parameters x and m.
inline IntegrableSystem recurrence_system() {
    DeltaSet delta({DeltaMap::shift("sn", {{N, Rational(1)}})});
    return {delta,
            {mat({{"n*(2*n*x+x-2*x^2-1)/(2*(n*x-1))", "x*(-n-3+2*x+2*n*x)/(2*(n*x-1))", "0"},
                  {"n*(n-1-x+n*x)/(2*(n*x-1))", "(-2*n-2+x+2*n*x+n^2*x)/(2*(n*x-1))", "0"},
                  {"(n^2*x+3*n*x+2*n*m^2-n^2-n+2*m^2)/(2*(n*x-1))",
                   "(x+2*m^2-n^2*x+2*x*m^2+2*x^2*n)/(2*(1-n*x))", "x"}})}};
}

inline Representation recurrence_solutions() {
    return {{group({{0, "n"}}, {{"(n+1)/x"}, {"(1+x)*n/x^2"}, {"(n*x+m^2)/x^2"}}),
             group({{0, "x"}}, {{"0"}, {"0"}, {"1"}})}};
}

// A shift in x and the derivation d/dx + d/dy, with parameter e.
inline IntegrableSystem mixed_system() {
    DeltaSet delta({DeltaMap::shift("s", {{X, Rational(1)}}),
                    DeltaMap::derivation("d", {{X, Rational(1)}, {Y, Rational(1)}})});
    return {delta,
            {mat({{"0", "1/y", "-x*e", "e+1"},
                  {"-y*e", "e+1", "0", "y*e"},
                  {"0", "0", "0", "1/(x+1)"},
                  {"0", "0", "-x*e", "e+1"}}),
             mat({{"-1/y", "-4/(2*y-1)", "x/y", "(2*y-1+4*y^2)/(y*(2*y-1))"},
                  {"0", "0", "0", "1"},
                  {"-4*y/(x*(2*y-1))", "0", "(4*y*x-2*y+1)/(x*(2*y-1))", "4*y/(x*(2*y-1))"},
                  {"0", "-4/(2*y-1)", "0", "4*y/(2*y-1)"}})}};
}

inline Representation mixed_solutions() {
    return {{group({{0, "1"}, {1, "0"}}, {{"2"}, {"y"}, {"1/x"}, {"1"}}),
             group({{0, "1"}, {1, "2"}}, {{"1/y+2"}, {"1"}, {"2/x"}, {"2"}}),
             group({{0, "e"}, {1, "2"}}, {{"1/y+2*e"}, {"e"}, {"2/x"}, {"2*e"}}),
             group({{0, "e"}, {1, "0"}}, {{"1+e"}, {"y*e"}, {"1/x"}, {"e"}})}};
}

// Groups of the shift equation alone.
inline Representation mixed_first_stage() {
    return {{group({{0, "1"}}, {{"1/y", "1"}, {"1", "0"}, {"0", "1/x"}, {"0", "1"}}),
             group({{0, "e"}}, {{"1/(y*e)", "1"}, {"1", "0"}, {"0", "1/(x*e)"}, {"0", "1"}})}};
}

// d/dx, the shift in k and d/dy.
inline DeltaSet triple_delta() {
    return DeltaSet({DeltaMap::derivation("dx", {{X, Rational(1)}}), DeltaMap::shift("sk", {{K, Rational(1)}}),
                     DeltaMap::derivation("dy", {{Y, Rational(1)}})});
}

inline IntegrableSystem triple_system() {
    return {triple_delta(),
            {mat({{"(x+y)/(x*y)", "-k*(2*x+k)/(x*(x+k))", "0"},
                  {"0", "(-y+x+k)/(y*(x+k))", "0"},
                  {"(3*x+2*y)/(x+y)", "-k*(3*x+2*y)/(x+y)", "x/(y*(x+y))"}}),
             mat({{"k*(y+k)/(y+k+1)", "k*(k^2+2*x*k+x*y+x+k)/((y+k+1)*(x+k+1))", "0"},
                  {"0", "k*(x+k)/(x+k+1)", "0"},
                  {"-x*(2*k+y+1)/(y+k+1)", "x*k*(2*k+y+1)/(y+k+1)", "k+1"}}),
             mat({{"-(y^2+x*y+x*k)/((y+k)*y^2)", "k*(2*y+k)/(y*(y+k))", "0"},
                  {"0", "-(x-y)/y^2", "0"},
                  {"-x*(2*x*y+y^2+x*k)/(y*(y+k)*(x+y))", "x*k*(2*x*y+y^2+x*k)/(y*(y+k)*(x+y))",
                   "-x^2/(y^2*(x+y))"}})}};
}

// The module whose associated system is triple_system().
inline StructureMatrices triple_structure() {
    auto sys = triple_system();
    StructureMatrices s{sys.delta, {}};
    s.a.push_back(RatFunc(-1) * sys.b[0].transpose());
    s.a.push_back(inverse(sys.b[1]).transpose());
    s.a.push_back(RatFunc(-1) * sys.b[2].transpose());
    return s;
}

inline Representation triple_solutions() {
    return {{group({{0, "1/y"}, {1, "k"}, {2, "-x/y^2"}},
                   {{"k*y/(x+k)", "0", "x/(y+k)"}, {"y/(x+k)", "0", "0"}, {"0", "k*y/(x+y)", "x^2/(y+k)"}})}};
}

// Solutions of the d/dx equation alone.
inline HyperexpGroup triple_first_stage() {
    return group({{0, "1/y"}}, {{"k/(x+k)", "0", "x"}, {"1/(x+k)", "0", "0"}, {"0", "1/(x+y)", "x^2"}});
}

}  // namespace examples
