#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "anosov/cli.hpp"

using namespace anosov;

int main(int argc, char** argv) {
    CLI::App app{"anosovlab: closed geodesics, orbit spaces and growth bounds"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::optional<double> cutoff;
    std::optional<std::uint64_t> budget, seed;
    bool quiet = false;
    std::vector<std::string> inputs;

    auto common = [&](CLI::App* s) {
        s->add_option("--config", config_path, "JSON config file");
        s->add_option("--out", out_dir, "output directory");
        s->add_option("--cutoff", cutoff, "length cutoff t");
        s->add_option("--budget", budget, "DFS node budget");
        s->add_option("--seed", seed, "random seed");
        s->add_flag("--quiet", quiet, "no summary on stdout");
    };
    auto with_input = [&](CLI::App* s) { s->add_option("inputs", inputs, "input files"); };

    std::optional<Command> command;
    auto leaf = [&](CLI::App* parent, const char* name, const char* help, Command c, bool input) {
        auto* s = parent->add_subcommand(name, help);
        common(s);
        if (input)
            with_input(s);
        s->callback([&command, c] { command = c; });
        return s;
    };

    leaf(&app, "spectrum", "length spectrum of the genus-2 surface", Command::spectrum, false);
    leaf(&app, "counts", "N(t), CCl(t) and the sandwich check", Command::counts, false);
    leaf(&app, "equidist", "equidistribution of closed geodesics", Command::equidist, false);
    auto* orbit = app.add_subcommand("orbitspace", "orbit-space model");
    orbit->require_subcommand(1);
    leaf(orbit, "build-string", "strings of lozenges for given generators", Command::build_string, false);
    leaf(orbit, "decompose", "decompose a chain graph", Command::decompose, true);
    auto* tree = app.add_subcommand("tree", "actions on trees");
    tree->require_subcommand(1);
    leaf(tree, "classify", "classify a closed walk", Command::tree_classify, true);
    auto* bounds = app.add_subcommand("bounds", "growth bounds");
    bounds->require_subcommand(1);
    leaf(bounds, "check", "check string lengths against the bounds", Command::bounds_check, true);
    auto* geom = app.add_subcommand("geom", "hyperbolic geometry sweeps");
    geom->require_subcommand(1);
    leaf(geom, "verify", "random sweeps of the geometric lemmas", Command::geom_verify, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_code::input_error;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) {
            json j = read_json_file(config_path);
            cfg = config_from_json(j);
            if (j.contains("command") && cfg.command != *command)
                throw ConfigInvalid("config command '" + command_name(cfg.command) + "' does not match '" +
                                    command_name(*command) + "'");
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::input_error;
    }
    cfg.command = *command;
    if (!out_dir.empty())
        cfg.output_dir = out_dir;
    if (cutoff)
        cfg.cutoff_t = *cutoff;
    if (budget)
        cfg.node_budget = *budget;
    if (seed)
        cfg.seed = *seed;
    if (quiet)
        cfg.quiet = true;
    if (!inputs.empty())
        cfg.input_paths = inputs;
    return run(cfg, std::cout, std::cerr);
}
