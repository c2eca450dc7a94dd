#include "oresub/io.hpp"

#include "oresub/errors.hpp"

#include <map>
#include <sstream>

namespace oresub::io {
namespace {

struct Position {
    std::size_t line = 0, column = 0;
};

// Parsed JSON plus the position of the opening quote of every string value.
class Document {
public:
    explicit Document(std::string_view text) {
        try {
            root_ = Json::parse(text);
        } catch (const Json::parse_error& e) {
            Position p = offset_position(text, e.byte > 0 ? e.byte - 1 : 0);
            throw ParseError("malformed JSON", p.line, p.column);
        }
        std::vector<Position> strings = string_tokens(text);
        std::size_t next = 0;
        index(root_, strings, next);
    }

    const Json& root() const { return root_; }

    Position where(const Json& j) const {
        auto it = positions_.find(&j);
        return it == positions_.end() ? Position{} : it->second;
    }

    [[noreturn]] void fail(const Json& j, const std::string& msg) const {
        Position p = where(j);
        throw ParseError(msg, p.line, p.column);
    }

    const std::string& string(const Json& j, const std::string& what) const {
        if (!j.is_string()) fail(j, what + " must be a string");
        return j.get_ref<const std::string&>();
    }

    const Json& member(const Json& obj, const char* key, Json::value_t type) const {
        auto it = obj.find(key);
        if (it == obj.end()) fail(obj, std::string("missing \"") + key + "\"");
        if (it->type() != type) fail(*it, std::string("\"") + key + "\" has the wrong type");
        return *it;
    }

    RatFunc ratfunc(const Json& j, const VarSet& vars) const {
        const std::string& s = string(j, "rational function");
        try {
            return parse_ratfunc(s, vars);
        } catch (const ParseError& e) {
            // Offset into the document, assuming no escapes before the error.
            Position p = where(j);
            if (p.line == 0) throw;
            throw ParseError(e.message() + " in \"" + s + "\"", p.line + e.line() - 1,
                             e.line() == 1 ? p.column + e.column() : e.column());
        }
    }

private:
    static Position offset_position(std::string_view text, std::size_t offset) {
        Position p{1, 1};
        for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
            if (text[i] == '\n')
                ++p.line, p.column = 1;
            else
                ++p.column;
        }
        return p;
    }

    // Positions of all string tokens (keys and values) in document order.
    static std::vector<Position> string_tokens(std::string_view text) {
        std::vector<Position> out;
        Position p{1, 1};
        bool in_string = false, escaped = false;
        for (char c : text) {
            if (in_string) {
                if (escaped)
                    escaped = false;
                else if (c == '\\')
                    escaped = true;
                else if (c == '"')
                    in_string = false;
            } else if (c == '"') {
                in_string = true;
                out.push_back(p);
            }
            if (c == '\n')
                ++p.line, p.column = 1;
            else
                ++p.column;
        }
        return out;
    }

    void index(const Json& j, const std::vector<Position>& strings, std::size_t& next) {
        // Containers without a key point at their first string.
        if (!positions_.count(&j) && next < strings.size()) positions_[&j] = strings[next];
        if (j.is_object()) {
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (next < strings.size()) positions_[&it.value()] = strings[next];
                ++next;  // the key
                index(it.value(), strings, next);
            }
        } else if (j.is_array()) {
            for (const auto& e : j) index(e, strings, next);
        } else if (j.is_string()) {
            if (next < strings.size()) positions_[&j] = strings[next];
            ++next;
        }
    }

    Json root_;
    std::map<const Json*, Position> positions_;
};

Rational parse_rational(const Document& doc, const Json& j) {
    std::string s = j.is_number_integer() ? std::to_string(j.get<long>()) : doc.string(j, "rational constant");
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
        doc.fail(j, "malformed rational constant \"" + s + "\"");
    r.canonicalize();
    return r;
}

VarSet read_vars(const Document& doc, VarMask& parameters) {
    const Json& root = doc.root();
    std::vector<std::string> names;
    for (const auto& v : doc.member(root, "variables", Json::value_t::array)) names.push_back(doc.string(v, "variable"));
    std::size_t first_param = names.size();
    if (auto it = root.find("parameters"); it != root.end()) {
        if (!it->is_array()) doc.fail(*it, "\"parameters\" must be an array");
        for (const auto& v : *it) names.push_back(doc.string(v, "parameter"));
    }
    if (names.size() >= kAuxVar) doc.fail(root, "too many variables and parameters");
    parameters = 0;
    for (std::size_t i = first_param; i < names.size(); ++i) parameters |= VarMask{1} << i;
    try {
        return VarSet(names);
    } catch (const Error& e) {
        doc.fail(root["variables"], e.what());
    }
}

DeltaMap read_map(const Document& doc, const Json& j, const VarSet& vars, VarMask parameters) {
    if (!j.is_object()) doc.fail(j, "a map must be an object");
    std::string name = doc.string(doc.member(j, "name", Json::value_t::string), "map name");
    const Json& kind = doc.member(j, "kind", Json::value_t::string);
    const Json& action = doc.member(j, "action", Json::value_t::object);
    std::vector<std::pair<std::size_t, Rational>> terms;
    for (auto it = action.begin(); it != action.end(); ++it) {
        auto v = vars.index(it.key());
        if (!v) doc.fail(it.value(), "unknown variable \"" + it.key() + "\" in map " + name);
        if (parameters >> *v & 1u) doc.fail(it.value(), "map " + name + " acts on the parameter " + it.key());
        Rational c = parse_rational(doc, it.value());
        if (c != 0) terms.emplace_back(*v, c);
    }
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    try {
        if (kind == "derivation") return DeltaMap::derivation(name, terms);
        if (kind == "shift") return DeltaMap::shift(name, terms);
    } catch (const Error& e) {
        doc.fail(action, e.what());
    }
    doc.fail(kind, "map kind must be \"derivation\" or \"shift\"");
}

MatrixF read_matrix(const Document& doc, const Json& j, const VarSet& vars) {
    if (!j.is_array() || j.empty()) doc.fail(j, "a matrix must be a nonempty array of rows");
    std::size_t cols = 0;
    for (const auto& row : j) {
        if (!row.is_array() || row.empty()) doc.fail(row, "a matrix row must be a nonempty array");
        if (cols == 0) cols = row.size();
        if (row.size() != cols) doc.fail(row, "matrix rows have different lengths");
    }
    MatrixF m(j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = doc.ratfunc(j[r][c], vars);
    return m;
}

Certificate read_certificate(const Document& doc, const Json& j, const SystemFile& file) {
    if (!j.is_object()) doc.fail(j, "a certificate must be an object");
    Certificate out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto i = file.delta.index(it.key());
        if (!i) doc.fail(it.value(), "unknown map \"" + it.key() + "\"");
        out[*i] = doc.ratfunc(it.value(), file.vars);
    }
    return out;
}

Json matrix_json(const MatrixF& m, const VarSet& vars) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c), vars));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

IntegrableSystem SystemFile::system() const {
    if (kind == InputKind::structure) return associated_system({delta, matrices}, vars);
    return {delta, matrices};
}

SystemFile parse_system(std::string_view text) {
    Document doc(text);
    const Json& root = doc.root();
    if (!root.is_object()) doc.fail(root, "a system must be a JSON object");
    SystemFile out;
    VarMask parameters = 0;
    out.vars = read_vars(doc, parameters);

    std::vector<DeltaMap> maps;
    for (const auto& m : doc.member(root, "maps", Json::value_t::array)) maps.push_back(read_map(doc, m, out.vars, parameters));
    if (maps.empty()) doc.fail(root["maps"], "at least one map is required");
    try {
        out.delta = DeltaSet(maps, parameters);
    } catch (const Error& e) {
        doc.fail(root["maps"], e.what());
    }

    if (auto it = root.find("input_kind"); it != root.end()) {
        const std::string& kind = doc.string(*it, "input_kind");
        if (kind == "structure")
            out.kind = InputKind::structure;
        else if (kind != "associated")
            doc.fail(*it, "input_kind must be \"associated\" or \"structure\"");
    }

    const Json& equations = doc.member(root, "equations", Json::value_t::array);
    std::vector<std::optional<MatrixF>> found(maps.size());
    for (const auto& eq : equations) {
        if (!eq.is_object()) doc.fail(eq, "an equation must be an object");
        const Json& name = doc.member(eq, "map", Json::value_t::string);
        auto i = out.delta.index(name.get<std::string>());
        if (!i) doc.fail(name, "unknown map \"" + name.get<std::string>() + "\"");
        if (found[*i]) doc.fail(name, "second equation for map \"" + name.get<std::string>() + "\"");
        found[*i] = read_matrix(doc, doc.member(eq, "matrix", Json::value_t::array), out.vars);
    }
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (!found[i]) doc.fail(equations, "no equation for map \"" + maps[i].name + "\"");
        if (found[i]->rows() != found[i]->cols() || found[i]->rows() != found[0]->rows())
            doc.fail(equations, "matrices must be square and of equal size");
        out.matrices.push_back(std::move(*found[i]));
    }
    return out;
}

Json system_json(const SystemFile& file) {
    Json out;
    Json vars = Json::array(), params = Json::array();
    for (std::size_t i = 0; i < file.vars.size(); ++i)
        (file.delta.parameters() >> i & 1u ? params : vars).push_back(file.vars.name(i));
    out["variables"] = vars;
    out["parameters"] = params;
    Json maps = Json::array();
    for (const auto& m : file.delta.maps()) {
        Json action = Json::object();
        for (const auto& [v, c] : m.action) action[file.vars.name(v)] = c.get_str();
        maps.push_back({{"name", m.name}, {"kind", m.is_shift() ? "shift" : "derivation"}, {"action", action}});
    }
    out["maps"] = maps;
    Json eqs = Json::array();
    for (std::size_t i = 0; i < file.matrices.size(); ++i)
        eqs.push_back({{"map", file.delta[i].name}, {"matrix", matrix_json(file.matrices[i], file.vars)}});
    out["equations"] = eqs;
    out["input_kind"] = file.kind == InputKind::structure ? "structure" : "associated";
    return out;
}

Certificate parse_certificate(const Json& j, const SystemFile& file) {
    Document doc(j.dump());
    return read_certificate(doc, doc.root(), file);
}

Json certificate_json(const Certificate& c, const SystemFile& file) {
    Json out = Json::object();
    for (const auto& [i, v] : c) out[file.delta[i].name] = to_string(v, file.vars);
    return out;
}

Representation parse_representation(std::string_view text, const SystemFile& file) {
    Document doc(text);
    const Json& root = doc.root();
    if (!root.is_object()) doc.fail(root, "a representation must be a JSON object");
    Representation out;
    std::size_t n = file.matrices.empty() ? 0 : file.matrices.front().rows();
    for (const auto& g : doc.member(root, "groups", Json::value_t::array)) {
        if (!g.is_object()) doc.fail(g, "a group must be an object");
        HyperexpGroup group;
        group.certificate = read_certificate(doc, doc.member(g, "certificate", Json::value_t::object), file);
        const Json& vectors = doc.member(g, "vectors", Json::value_t::array);
        group.vectors = read_matrix(doc, vectors, file.vars);
        if (group.vectors.rows() != n) doc.fail(vectors, "vectors must have one row per unknown");
        out.groups.push_back(std::move(group));
    }
    return out;
}

Json representation_json(const Representation& rep, const SystemFile& file) {
    Json groups = Json::array();
    for (const auto& g : rep.groups) {
        Json j;
        j["certificate"] = certificate_json(g.certificate, file);
        j["vectors"] = matrix_json(g.vectors, file.vars);
        if (auto d = display_certificate(file.delta, g.certificate, file.vars)) j["display"] = *d;
        groups.push_back(std::move(j));
    }
    return Json{{"groups", groups}};
}

std::string pretty_representation(const Representation& rep, const SystemFile& file) {
    std::ostringstream out;
    out << rep.groups.size() << (rep.groups.size() == 1 ? " group" : " groups") << '\n';
    for (std::size_t k = 0; k < rep.groups.size(); ++k) {
        const auto& g = rep.groups[k];
        out << "\ngroup " << k + 1;
        if (auto d = display_certificate(file.delta, g.certificate, file.vars)) out << ": h = " << *d;
        out << '\n';
        for (const auto& [i, v] : g.certificate)
            out << "  " << file.delta[i].name << "(h)/h = " << to_string(v, file.vars) << '\n';
        out << "  columns:\n";
        for (std::size_t c = 0; c < g.vectors.cols(); ++c) {
            out << "    (";
            for (std::size_t r = 0; r < g.vectors.rows(); ++r)
                out << (r ? ", " : "") << to_string(g.vectors(r, c), file.vars);
            out << ")\n";
        }
    }
    return out.str();
}

}  // namespace oresub::io
