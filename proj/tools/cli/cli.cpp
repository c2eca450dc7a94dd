#include "cli.hpp"

#include "oresub/errors.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace oresub::cli {
namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SolverConfig solver_config(const JobConfig& cfg) {
    if (cfg.max_degree == 0 || cfg.max_dispersion == 0) throw Error("caps must be positive");
    SolverConfig out;
    out.max_degree = cfg.max_degree;
    out.max_dispersion = cfg.max_dispersion;
    return out;
}

// "name=value" pairs naming maps of the file.
Certificate read_pairs(const std::vector<std::string>& pairs, const io::SystemFile& file) {
    Certificate out;
    for (const auto& p : pairs) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw ParseError("expected map=value in \"" + p + "\"", 1, 1);
        auto i = file.delta.index(p.substr(0, eq));
        if (!i) throw ParseError("unknown map \"" + p.substr(0, eq) + "\"", 1, 1);
        try {
            out[*i] = parse_ratfunc(p.substr(eq + 1), file.vars);
        } catch (const ParseError& e) {
            throw ParseError(e.message() + " in \"" + p + "\"", 1, eq + 1 + e.column());
        }
    }
    return out;
}

void emit(std::ostream& out, const io::Json& j) { out << j.dump(2) << '\n'; }

int solve(const JobConfig& cfg, const io::SystemFile& file, const IntegrableSystem& sys, std::ostream& out) {
    SolveOptions opt;
    opt.config = solver_config(cfg);
    opt.pivot = cfg.pivot;
    for (const auto& name : cfg.order) {
        auto i = file.delta.index(name);
        if (!i) throw Error("--order names an unknown map \"" + name + "\"");
        opt.order.push_back(*i);
    }
    if (!opt.order.empty() && opt.order.size() != file.delta.size())
        throw Error("--order must list every map exactly once");
    auto rep = solve_system(sys, opt);
    if (cfg.format == Format::pretty)
        out << io::pretty_representation(rep, file);
    else
        emit(out, io::representation_json(rep, file));
    return exit_code::ok;
}

int verify(const JobConfig& cfg, const io::SystemFile& file, const IntegrableSystem& sys, std::ostream& out) {
    if (cfg.solutions.empty()) throw Error("verify needs --solutions");
    auto rep = io::parse_representation(read_file(cfg.solutions), file);
    io::Json groups = io::Json::array();
    bool all = true;
    for (const auto& g : rep.groups) {
        auto v = verify_group(sys, g);
        io::Json failures = io::Json::array();
        for (const auto& r : v.failures) {
            io::Json residual = io::Json::array();
            for (const auto& f : r.value) residual.push_back(to_string(f, file.vars));
            failures.push_back({{"map", file.delta[r.map].name}, {"column", r.column}, {"residual", residual}});
        }
        all = all && v.passed();
        groups.push_back({{"passed", v.passed()}, {"failures", failures}});
    }
    if (cfg.format == Format::pretty) {
        for (std::size_t k = 0; k < groups.size(); ++k) {
            out << "group " << k + 1 << ": " << (groups[k]["passed"].get<bool>() ? "pass" : "FAIL") << '\n';
            for (const auto& f : groups[k]["failures"])
                out << "  map " << f["map"].get<std::string>() << ", column " << f["column"].get<std::size_t>()
                    << ": residual " << f["residual"].dump() << '\n';
        }
    } else {
        emit(out, io::Json{{"passed", all}, {"groups", groups}});
    }
    return all ? exit_code::ok : exit_code::verification;
}

int iso(const JobConfig& cfg, const io::SystemFile& file, std::ostream& out) {
    Certificate f = read_pairs(cfg.left, file), g = read_pairs(cfg.right, file);
    if (f.size() != file.delta.size() || g.size() != file.delta.size())
        throw Error("iso needs one eigenvalue per map on both sides");
    auto r = iso_test(file.delta, f, g, solver_config(cfg));
    if (cfg.format == Format::pretty)
        out << (r ? "isomorphic, witness " + to_string(*r, file.vars) : std::string("non-isomorphic")) << '\n';
    else
        emit(out, r ? io::Json{{"isomorphic", true}, {"witness", to_string(*r, file.vars)}}
                    : io::Json{{"isomorphic", false}});
    return exit_code::ok;
}

}  // namespace

int run(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        io::SystemFile file = io::parse_system(read_file(cfg.input));
        if (cfg.command == Command::iso) return iso(cfg, file, out);
        if (cfg.command == Command::associated) {
            if (file.kind != io::InputKind::structure) throw Error("associated needs structure matrices");
            auto sys = file.system();
            io::SystemFile assoc{file.vars, sys.delta, sys.b, io::InputKind::associated};
            emit(out, io::system_json(assoc));
            return exit_code::ok;
        }
        IntegrableSystem sys = file.system();
        check_integrability(sys, file.vars);
        switch (cfg.command) {
        case Command::check:
            if (cfg.format == Format::pretty)
                out << "integrable\n";
            else
                emit(out, io::Json{{"integrable", true}});
            return exit_code::ok;
        case Command::solve:
            return solve(cfg, file, sys, out);
        case Command::verify:
            return verify(cfg, file, sys, out);
        default:
            return exit_code::failure;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_code::parse;
    } catch (const NotIntegrable& e) {
        if (cfg.command == Command::check) {
            if (cfg.format == Format::pretty)
                out << "not integrable: (" << e.first_map() << ", " << e.second_map() << ")\n" << e.residual() << '\n';
            else
                emit(out, io::Json{{"integrable", false},
                                   {"pair", {e.first_map(), e.second_map()}},
                                   {"residual", e.residual()}});
        }
        err << e.what() << "\nresidual: " << e.residual() << '\n';
        return exit_code::not_integrable;
    } catch (const SolverIncomplete& e) {
        err << "solver incomplete: " << e.what() << '\n';
        return exit_code::incomplete;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::failure;
    }
}

}  // namespace oresub::cli
