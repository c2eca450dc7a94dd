#include "cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace oresub::cli;
    JobConfig cfg;
    CLI::App app{"Hyperexponential solutions of integrable linear functional systems"};
    app.require_subcommand(1);

    std::string format = "json";
    auto common = [&](CLI::App* sub) {
        sub->add_option("input", cfg.input, "System file (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "pretty"}));
        sub->add_option("--max-degree", cfg.max_degree, "Cap on polynomial solution degrees")->check(CLI::PositiveNumber);
        sub->add_option("--max-dispersion", cfg.max_dispersion, "Cap on shift dispersions")->check(CLI::PositiveNumber);
    };

    auto* solve = app.add_subcommand("solve", "Compute a representation of hyperexponential solutions");
    common(solve);
    solve->add_option("--order", cfg.order, "Map processing order, by name")->delimiter(',');
    solve->add_option("--pivot", cfg.pivot, "Coordinate used for scalar equations");

    auto* verify = app.add_subcommand("verify", "Check a representation against the system");
    common(verify);
    verify->add_option("--solutions", cfg.solutions, "Representation file (JSON)")->required()->check(CLI::ExistingFile);

    auto* check = app.add_subcommand("check", "Check integrability");
    common(check);

    auto* iso = app.add_subcommand("iso", "Test whether two one-dimensional submodules are isomorphic");
    common(iso);
    iso->add_option("--left", cfg.left, "Eigenvalues map=value of the first submodule")->required()->delimiter(';');
    iso->add_option("--right", cfg.right, "Eigenvalues map=value of the second submodule")->required()->delimiter(';');

    auto* associated = app.add_subcommand("associated", "Associated system of structure matrices");
    common(associated);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : exit_code::parse;
    }

    if (solve->parsed()) cfg.command = Command::solve;
    if (verify->parsed()) cfg.command = Command::verify;
    if (check->parsed()) cfg.command = Command::check;
    if (iso->parsed()) cfg.command = Command::iso;
    if (associated->parsed()) cfg.command = Command::associated;
    cfg.format = format == "pretty" ? Format::pretty : Format::json;
    return run(cfg, std::cout, std::cerr);
}
