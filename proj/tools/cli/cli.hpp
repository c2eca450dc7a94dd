#pragma once

#include "oresub/io.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace oresub::cli {

enum class Command { solve, verify, check, iso, associated };
enum class Format { json, pretty };

namespace exit_code {
constexpr int ok = 0;
constexpr int failure = 1;
constexpr int parse = 2;
constexpr int not_integrable = 3;
constexpr int incomplete = 4;
constexpr int verification = 5;
}  // namespace exit_code

struct JobConfig {
    Command command = Command::solve;
    std::string input;                    // system file
    std::string solutions;                // representation file, for verify
    std::vector<std::string> order;       // map names, for solve
    std::vector<std::string> left, right; // "map=value" eigenvalues, for iso
    std::size_t max_degree = SolverConfig{}.max_degree;
    std::size_t max_dispersion = SolverConfig{}.max_dispersion;
    std::size_t pivot = 0;
    Format format = Format::json;
};

// Runs one job; reports go to out and diagnostics to err.
int run(const JobConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace oresub::cli
