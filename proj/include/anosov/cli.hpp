#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "anosov/bounds.hpp"
#include "anosov/io.hpp"

namespace anosov {

enum class Command { spectrum, counts, equidist, build_string, decompose, tree_classify, bounds_check, geom_verify };

std::string command_name(Command c);
Command parse_command(const std::string& s); // throws ConfigInvalid

struct EquidistOptions {
    std::vector<double> cutoffs{7, 10};
    int subdivision = 1; // 16 * 4^subdivision cells
    double sample_spacing = 0.02;
};

struct OrbitspaceOptions {
    std::vector<std::string> generators{"a1", "b1", "a2", "b2"};
    int count = 6;
};

struct GeomOptions {
    int curves = 1000;
    int equidistant = 100;
    int detours = 1000;
};

struct CountsOptions {
    Topology topology = Topology::mixed;
    double slope_window = 2;
};

struct RunConfig {
    Command command = Command::spectrum;
    double cutoff_t = 10;
    std::vector<double> grid; // empty: 6, 6.25, .. up to the cutoff
    GrowthBoundParams params;
    bool fit_A6 = true; // cleared when params set A6 explicitly
    std::vector<std::string> input_paths;
    std::string output_dir = "out";
    std::uint64_t node_budget = 200'000'000;
    std::uint64_t seed = 1;
    bool quiet = false;
    EquidistOptions equidist;
    OrbitspaceOptions orbitspace;
    GeomOptions geom;
    CountsOptions counts;
};

// Merges a JSON config into `base`. Unknown keys and out-of-range values throw ConfigInvalid.
RunConfig config_from_json(const json& j, RunConfig base = {});
// Fills the default grid and checks the invariants; throws ConfigInvalid.
void finalize_config(RunConfig& c);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int input_error = 1;
inline constexpr int violations = 2;
inline constexpr int budget_exceeded = 3;
} // namespace exit_code

// Runs the command, writing reports into output_dir. Errors are reported on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace anosov
