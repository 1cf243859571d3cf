#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bpqm::cli {

inline constexpr const char* kToolName = "bpqm";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,  // runtime failure or a verify row failed
    exit_config = 2,
    exit_guard = 3,
    exit_no_transition = 4,
};

struct RunConfig {
    std::string command;
    int q = 0;  // 0: infer from --eigenlist
    std::vector<double> eigenlist;
    std::optional<double> lambda0;
    std::vector<double> eigenlist2;  // combine: second input
    std::optional<double> lambda0_2;
    std::vector<int> n{8};
    std::size_t bag_size = 10'000;
    int max_iterations = 100;
    double epsilon = 0.1;
    double delta = 1e-6;
    double tol = 0.01;
    int dv = 3;
    int dc = 6;
    std::uint64_t seed = 1;
    std::size_t pairs = 50;
    std::string grid;
    std::string output;
    std::string format;  // empty: command default
    int threads = 0;     // 0: BPQM_THREADS or 1
    std::string rank_out;
    std::string rank_figure_out;
    std::string curve_out;
    std::string figure_dir;
};

nlohmann::json to_json(const RunConfig& c);

// "a:b:step" (inclusive) or "x,y,z".
std::vector<double> parse_grid(const std::string& text);

// Parses and runs one command. Output goes to `out` unless --output is set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// The "result" member of a JSON output file.
nlohmann::json result_section(const std::string& file_text);

}  // namespace bpqm::cli
