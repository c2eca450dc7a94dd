#include <doctest.h>

#include "oresub/errors.hpp"
#include "oresub/io.hpp"
#include "support/examples.hpp"

#include <fstream>
#include <sstream>

using namespace oresub;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(ORESUB_FIXTURE_DIR) + "/" + name);
    REQUIRE(in);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Moves a matrix written over the shared example variables into the file's variables.
MatrixF in_file(const MatrixF& m, const io::SystemFile& file) {
    return m.map([&](const RatFunc& f) { return parse_ratfunc(to_string(f, examples::vars()), file.vars); });
}

ParseError parse_error(const std::string& text) {
    try {
        io::parse_system(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("no parse error");
    return ParseError("", 0, 0);
}

const char* kSmall = R"({
  "variables": ["x"],
  "maps": [{"name": "dx", "kind": "derivation", "action": {"x": "1"}}],
  "equations": [{"map": "dx", "matrix": [["1/x", "0"], ["0", "2"]]}]
})";

}  // namespace

TEST_CASE("fixtures transcribe the reference systems") {
    struct Case {
        const char* file;
        IntegrableSystem expected;
    };
    for (const auto& c : {Case{"example1.json", examples::recurrence_system()}, Case{"example2.json", examples::mixed_system()},
                          Case{"example3.json", examples::triple_system()},
                          Case{"example3_structure.json", examples::triple_system()}}) {
        CAPTURE(c.file);
        auto file = io::parse_system(fixture(c.file));
        auto sys = file.system();
        CHECK_NOTHROW(check_integrability(sys, file.vars));
        REQUIRE(sys.b.size() == c.expected.b.size());
        for (std::size_t i = 0; i < sys.b.size(); ++i) {
            CHECK(sys.delta[i].name == c.expected.delta[i].name);
            CHECK(sys.delta[i].kind == c.expected.delta[i].kind);
            CHECK(sys.b[i] == in_file(c.expected.b[i], file));
        }
    }
    auto e1 = io::parse_system(fixture("example1.json"));
    CHECK(e1.delta.parameters() == 0b110);
    CHECK(io::parse_system(fixture("example3_structure.json")).kind == io::InputKind::structure);
}

TEST_CASE("system round trip") {
    for (const char* name : {"example1.json", "example2.json", "example3.json", "example3_structure.json"}) {
        auto file = io::parse_system(fixture(name));
        auto again = io::parse_system(io::system_json(file).dump(2));
        CHECK(again.vars.names() == file.vars.names());
        CHECK(again.delta.parameters() == file.delta.parameters());
        CHECK(again.matrices == file.matrices);
        CHECK(again.kind == file.kind);
    }
}

TEST_CASE("parse errors carry document positions") {
    SUBCASE("malformed rational function") {
        std::string text = kSmall;
        text.replace(text.find("\"1/x\""), 5, "\"1/*x\"");
        auto e = parse_error(text);
        CHECK(e.line() == 4);
        std::size_t star = text.find('*');
        std::size_t line_start = text.rfind('\n', star) + 1;
        CHECK(e.column() == star - line_start + 1);
    }
    SUBCASE("malformed JSON") {
        std::string text = kSmall;
        text.erase(text.find(']'), 1);
        CHECK(parse_error(text).line() >= 3);
    }
    SUBCASE("schema violations") {
        auto with = [](std::string from, std::string to) {
            std::string text = kSmall;
            text.replace(text.find(from), from.size(), to);
            return text;
        };
        CHECK(parse_error(with("\"maps\"", "\"mapz\"")).message().find("maps") != std::string::npos);
        CHECK(parse_error(with("{\"x\": \"1\"}", "{\"z\": \"1\"}")).line() == 3);
        CHECK(parse_error(with("\"derivation\"", "\"integral\"")).line() == 3);
        CHECK(parse_error(with("\"map\": \"dx\"", "\"map\": \"dy\"")).line() == 4);
        CHECK(parse_error(with("[\"0\", \"2\"]", "[\"0\"]")).line() == 4);
        CHECK(parse_error(with("{\"x\": \"1\"}", "{\"x\": \"1/0\"}")).line() == 3);
        CHECK(parse_error(with("\"variables\": [\"x\"]", "\"variables\": [\"x\"], \"parameters\": [\"x\"]")).line() == 2);
    }
    SUBCASE("maps may not act on parameters") {
        std::string text = kSmall;
        text.replace(text.find("[\"x\"]"), 5, "[\"x\"], \"parameters\": [\"p\"]");
        text.replace(text.find("{\"x\": \"1\"}"), 10, "{\"p\": \"1\"}");
        CHECK(parse_error(text).message().find("parameter") != std::string::npos);
    }
}

TEST_CASE("representation round trip") {
    auto file = io::parse_system(fixture("example3.json"));
    const auto known = examples::triple_solutions();
    Representation rep;
    for (const auto& g : known.groups) rep.groups.push_back({{}, in_file(g.vectors, file)});
    for (const auto& [i, v] : known.groups[0].certificate)
        rep.groups[0].certificate[i] = parse_ratfunc(to_string(v, examples::vars()), file.vars);
    auto j = io::representation_json(rep, file);
    CHECK(j["groups"][0]["certificate"]["dx"] == "1/y");
    CHECK(j["groups"][0]["certificate"]["sk"] == "k");
    CHECK(j["groups"][0]["display"] == "exp(x/y)*Gamma(k)");
    auto back = io::parse_representation(j.dump(), file);
    REQUIRE(back.groups.size() == 1);
    CHECK(back.groups[0].certificate == rep.groups[0].certificate);
    CHECK(back.groups[0].vectors == rep.groups[0].vectors);

    std::string pretty = io::pretty_representation(rep, file);
    CHECK(pretty.find("exp(x/y)*Gamma(k)") != std::string::npos);
    CHECK(pretty.find("dy(h)/h = -x/y^2") != std::string::npos);

    CHECK_THROWS_AS(io::parse_representation(R"({"groups": [{"certificate": {"dz": "1"}, "vectors": [["1"]]}]})", file),
                    ParseError);
    CHECK_THROWS_AS(io::parse_representation(R"({"groups": [{"certificate": {}, "vectors": [["1"]]}]})", file),
                    ParseError);
}
