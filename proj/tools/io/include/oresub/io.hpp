#pragma once

#include "oresub/solver.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace oresub::io {

using Json = nlohmann::ordered_json;

enum class InputKind { associated, structure };

// A system file: maps and one matrix per map, either the matrices B of a
// first-order system or the structure matrices A of a module.
struct SystemFile {
    VarSet vars;  // variables first, then parameters
    DeltaSet delta;
    std::vector<MatrixF> matrices;
    InputKind kind = InputKind::associated;

    // The first-order system, built from structure matrices when needed.
    IntegrableSystem system() const;
};

// Throws ParseError with a position in the document for malformed JSON,
// schema violations and malformed rational functions.
SystemFile parse_system(std::string_view text);
Json system_json(const SystemFile& file);

// Certificates keyed by map name.
Certificate parse_certificate(const Json& j, const SystemFile& file);
Json certificate_json(const Certificate& c, const SystemFile& file);

Representation parse_representation(std::string_view text, const SystemFile& file);
Json representation_json(const Representation& rep, const SystemFile& file);

std::string pretty_representation(const Representation& rep, const SystemFile& file);

}  // namespace oresub::io
