#include "anosov/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "anosov/fuchsian.hpp"
#include "anosov/orbitspace.hpp"
#include "anosov/sweeps.hpp"
#include "anosov/treeact.hpp"

namespace anosov {

namespace fs = std::filesystem;

namespace {

const std::pair<Command, const char*> kCommands[] = {
    {Command::spectrum, "spectrum"},
    {Command::counts, "counts"},
    {Command::equidist, "equidist"},
    {Command::build_string, "orbitspace build-string"},
    {Command::decompose, "orbitspace decompose"},
    {Command::tree_classify, "tree classify"},
    {Command::bounds_check, "bounds check"},
    {Command::geom_verify, "geom verify"},
};

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

class Writer {
  public:
    explicit Writer(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }

    void text(const std::string& name, const std::string& body) {
        std::ofstream f(dir_ / name, std::ios::binary);
        if (!f)
            throw ConfigInvalid("cannot write " + (dir_ / name).string());
        f << body;
        written_.push_back(name);
    }
    void json_file(const std::string& name, const json& j) { text(name, j.dump(2) + "\n"); }
    const std::vector<std::string>& written() const { return written_; }

  private:
    fs::path dir_;
    std::vector<std::string> written_;
};

struct Outcome {
    int code = exit_code::ok;
    std::string summary;
};

const std::string& single_input(const RunConfig& c) {
    if (c.input_paths.size() != 1)
        throw ConfigInvalid(command_name(c.command) + " expects exactly one input file");
    return c.input_paths.front();
}

Spectrum compute_spectrum(const RunConfig& c, double t) {
    SpectrumOptions o;
    o.node_budget = c.node_budget;
    try {
        return length_spectrum(genus2_rep(), t, o);
    } catch (const BudgetExceeded& e) {
        Spectrum s = e.partial;
        s.authoritative = false;
        return s;
    }
}

int spectrum_code(const Spectrum& s, int otherwise = exit_code::ok) {
    return s.authoritative ? otherwise : exit_code::budget_exceeded;
}

Outcome run_spectrum(const RunConfig& c, Writer& w) {
    Spectrum s = compute_spectrum(c, c.cutoff_t);
    std::string csv = "canonical_word,length\n";
    json entries = json::array();
    for (const auto& e : s.entries) {
        std::string word = format_word(e.cls.canonical);
        csv += word + "," + fixed(e.length, 12) + "\n";
        entries.push_back({{"word", word},
                           {"length", e.length},
                           {"primitive", e.primitive},
                           {"inversion_symmetric", e.inversion_symmetric}});
    }
    json j = {{"cutoff", s.cutoff},
              {"authoritative", s.authoritative},
              {"count", s.entries.size()},
              {"systole", s.entries.empty() ? json(nullptr) : json(systole(s))},
              {"nodes", s.stats.nodes},
              {"entries", entries}};
    w.text("spectrum.csv", csv);
    w.json_file("spectrum.json", j);
    return {spectrum_code(s), std::to_string(s.entries.size()) + " classes below t = " + fixed(c.cutoff_t, 3) +
                                  (s.authoritative ? "" : " (budget exceeded, partial)")};
}

Outcome run_counts(const RunConfig& c, Writer& w) {
    Spectrum s = compute_spectrum(c, c.cutoff_t);
    CountReport r = count_report(s, c.grid);

    GrowthBoundParams p = c.params;
    std::vector<double> eligible;
    for (double t : r.grid)
        if (t >= p.t0)
            eligible.push_back(t);
    if (c.fit_A6 && !eligible.empty()) {
        // Fit on the lower half of the eligible grid, check on all of it.
        double split = eligible[(eligible.size() - 1) / 2];
        CountReport lower;
        for (std::size_t i = 0; i < r.grid.size(); ++i)
            if (r.grid[i] <= split) {
                lower.grid.push_back(r.grid[i]);
                lower.N.push_back(r.N[i]);
                lower.CCl.push_back(r.CCl[i]);
            }
        double a6 = fitted_A6(lower, p);
        if (a6 > 0 && std::isfinite(a6))
            p.A6 = a6;
    }
    SandwichReport sw = sandwich_check(r, c.counts.topology, p);

    std::string csv = "t,N,CCl,slope\n", dat = "# t N CCl\n";
    json rows = json::array();
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        double t = r.grid[i];
        double sl = log_slope(r.grid, r.N, t - c.counts.slope_window, t + 1e-12);
        csv += fixed(t, 6) + "," + std::to_string(r.N[i]) + "," + std::to_string(r.CCl[i]) + "," +
               (std::isfinite(sl) ? fixed(sl, 9) : "") + "\n";
        dat += fixed(t, 6) + " " + std::to_string(r.N[i]) + " " + std::to_string(r.CCl[i]) + "\n";
        rows.push_back({{"t", t}, {"N", r.N[i]}, {"CCl", r.CCl[i]}, {"slope", number_or_null(sl)}});
    }
    json points = json::array();
    for (const auto& q : sw.points)
        points.push_back({{"t", q.t}, {"lower", q.lower}, {"CCl", q.ccl}, {"upper", q.upper}, {"ok", q.ok}});
    double ratio = (!r.CCl.empty() && r.CCl.back() > 0)
                       ? static_cast<double>(r.N.back()) / static_cast<double>(r.CCl.back())
                       : std::nan("");
    json j = {{"cutoff", s.cutoff},
              {"authoritative", s.authoritative},
              {"grid", rows},
              {"slope_N", number_or_null(r.slope)},
              {"slope_CCl", number_or_null(r.slope_ccl)},
              {"ratio_at_cutoff", number_or_null(ratio)},
              {"inversion_symmetric", r.inversion_symmetric},
              {"topology", to_string(c.counts.topology)},
              {"A6", p.A6},
              {"A6_fitted", c.fit_A6},
              {"sandwich", {{"violations", sw.violations}, {"skipped", sw.skipped}, {"points", points}}}};
    w.text("counts.csv", csv);
    w.text("counts.dat", dat);
    w.json_file("counts.json", j);
    int code = sw.violations > 0 ? exit_code::violations : exit_code::ok;
    return {spectrum_code(s, code), "slope " + fixed(r.slope, 4) + ", sandwich violations " +
                                        std::to_string(sw.violations)};
}

Outcome run_equidist(const RunConfig& c, Writer& w) {
    const auto& rep = genus2_rep();
    CellPartition cells = octagon_cells(rep, c.equidist.subdivision);
    double top = *std::max_element(c.equidist.cutoffs.begin(), c.equidist.cutoffs.end());
    Spectrum s = compute_spectrum(c, top);
    json results = json::array();
    std::string dat = "# cutoff tv_distance\n";
    std::vector<double> tv, last_hist;
    for (double t : c.equidist.cutoffs) {
        EquidistributionResult e = equidistribution_test(rep, s, cells, t, c.equidist.sample_spacing);
        tv.push_back(e.tv_distance);
        last_hist = e.histogram;
        results.push_back(
            {{"cutoff", t}, {"tv_distance", e.tv_distance}, {"samples", e.samples}, {"geodesics", e.geodesics}});
        dat += fixed(t, 6) + " " + fixed(e.tv_distance, 9) + "\n";
    }
    std::vector<double> area = cells.normalized_areas();
    std::string cell_dat = "# cell area histogram\n";
    for (std::size_t i = 0; i < area.size(); ++i)
        cell_dat += std::to_string(i) + " " + fixed(area[i], 9) + " " + fixed(last_hist[i], 9) + "\n";
    double decrease = tv.front() > 0 ? (tv.front() - tv.back()) / tv.front() : std::nan("");
    json j = {{"cells", cells.cells.size()},
              {"sample_spacing", c.equidist.sample_spacing},
              {"authoritative", s.authoritative},
              {"results", results},
              {"relative_decrease", number_or_null(decrease)},
              {"area", area},
              {"histogram", last_hist}};
    w.json_file("equidist.json", j);
    w.text("equidist.dat", dat);
    w.text("equidist_cells.dat", cell_dat);
    return {spectrum_code(s), "tv " + fixed(tv.front(), 4) + " -> " + fixed(tv.back(), 4)};
}

json point_json(const OrbitPoint& p) { return json::array({p.s, p.u}); }

Outcome run_build_string(const RunConfig& c, Writer& w) {
    const auto& lr = genus2_lifted();
    json strings = json::array(), violations = json::array();
    for (const auto& text : c.orbitspace.generators) {
        Word word = parse_word(text);
        CentralExtElement g(word, 0);
        StringOfLozenges s = build_string(lr, g, c.orbitspace.count);
        StringCheck chk = check_string_of_lozenges(lr, s);
        int projected = s.periodicity ? project_count(lr, s, DeckAction::from_periodicity()) : -1;
        json corners = json::array(), lozenges = json::array();
        for (const auto& p : s.corners)
            corners.push_back(point_json(p));
        for (const auto& l : s.lozenges)
            lozenges.push_back({point_json(l.corner_low), point_json(l.corner_high)});
        json per = nullptr;
        if (s.periodicity)
            per = {{"h", format_word(s.periodicity->h.base)},
                   {"fiber", s.periodicity->h.fiber},
                   {"shift", s.periodicity->shift}};
        json check = {{"consecutive_lozenges", chk.consecutive_lozenges},
                      {"invariant", chk.invariant},
                      {"separation", chk.separation},
                      {"corner_multiplicity", chk.corner_multiplicity},
                      {"max_fixed_defect", chk.max_fixed_defect}};
        strings.push_back({{"generator", format_word(word)},
                           {"stabilizer", {{"word", format_word(s.stabilizer.base)}, {"fiber", s.stabilizer.fiber}}},
                           {"infinite", s.infinite},
                           {"corners", corners},
                           {"lozenges", lozenges},
                           {"periodicity", per},
                           {"check", check},
                           {"project_count", projected >= 0 ? json(projected) : json(nullptr)}});
        if (!chk.ok())
            violations.push_back({{"rule", "string_of_lozenges"}, {"detail", "check failed for " + format_word(word)}});
    }
    w.json_file("string.json", {{"count", c.orbitspace.count}, {"strings", strings}});
    if (!violations.empty()) {
        w.json_file("violations.json", {{"command", command_name(c.command)}, {"violations", violations}});
        return {exit_code::violations, std::to_string(violations.size()) + " strings failed their checks"};
    }
    return {exit_code::ok, std::to_string(strings.size()) + " strings built"};
}

Outcome run_decompose(const RunConfig& c, Writer& w) {
    ChainGraph g = chain_from_json(read_json_file(single_input(c)));
    auto violations = validate_chain(g);
    if (!violations.empty()) {
        json v = json::array();
        for (const auto& x : violations)
            v.push_back(violation_to_json(x));
        w.json_file("violations.json", {{"command", command_name(c.command)}, {"violations", v}});
        return {exit_code::violations, std::to_string(violations.size()) + " chain violations"};
    }
    Decomposition d = decompose_class(g);
    json strings = json::array();
    for (const auto& s : d.strings)
        strings.push_back({{"vertices", s.vertices}, {"closed", s.closed}});
    w.json_file("decomposition.json", {{"finite_part", std::vector<int>(d.finite_part.begin(), d.finite_part.end())},
                                       {"strings", strings}});
    return {exit_code::ok, std::to_string(d.strings.size()) + " strings, finite part of " +
                               std::to_string(d.finite_part.size()) + " corners"};
}

Outcome run_tree(const RunConfig& c, Writer& w) {
    auto [g, walk] = graph_walk_from_json(read_json_file(single_input(c)));
    WalkClassification r = classify_walk(g, walk);
    bool elliptic = r.kind == TreeActionKind::elliptic;
    w.json_file("classification.json", {{"kind", elliptic ? "elliptic" : "translation"},
                                        {"length", r.length},
                                        {"axis", elliptic ? json(nullptr) : walk_to_json(r.axis)}});
    return {exit_code::ok, std::string(elliptic ? "elliptic" : "translation") + ", length " +
                               std::to_string(r.length)};
}

Outcome run_bounds(const RunConfig& c, Writer& w) {
    StringLengths sl = string_lengths_from_json(read_json_file(single_input(c)));
    StringReport r = check_string(sl, c.params);
    json v = json::array();
    for (const auto& x : r.violations)
        v.push_back(violation_to_json(x));
    json j = {{"topology", to_string(sl.topology)},
              {"lower_bound", to_string(lower_bound_kind(sl.topology))},
              {"infinite", sl.infinite_flag},
              {"length_count", sl.lengths.size()},
              {"violation_count", r.violations.size()},
              {"fitted_growth", to_string(r.fitted_growth)},
              {"fit",
               {{"r2_exponential", r.fit.r2_exponential},
                {"r2_quadratic", r.fit.r2_quadratic},
                {"r2_linear", r.fit.r2_linear},
                {"margin", r.fit.margin}}},
              {"preflight", r.preflight.problems},
              {"params", params_to_json(c.params)}};
    w.json_file("bounds_report.json", j);
    w.json_file("violations.json", {{"command", command_name(c.command)}, {"violations", v}});
    return {r.violations.empty() ? exit_code::ok : exit_code::violations,
            std::to_string(r.violations.size()) + " bound violations, growth " + to_string(r.fitted_growth)};
}

json sweep_json(const SweepSummary& s) {
    return {{"trials", s.trials},
            {"passed", s.passed},
            {"worst_relative_margin", number_or_null(s.worst_relative_margin)},
            {"max_relative_margin", number_or_null(s.max_relative_margin)}};
}

Outcome run_geom(const RunConfig& c, Writer& w) {
    SweepSummary cosh = cosh_lemma_sweep(c.seed, c.geom.curves);
    SweepSummary eq = equidistant_sweep(c.seed + 1, c.geom.equidistant);
    DetourSummary det = detour_sweep(c.seed + 2, c.geom.detours);
    const double sharp = 0.02, exact = 1e-12;
    bool cosh_ok = cosh.all_passed();
    bool eq_ok = eq.all_passed() && !(eq.max_relative_margin >= sharp);
    bool det_ok = det.all_passed() && det.max_roundtrip_error <= exact;
    json j = {{"seed", c.seed},
              {"cosh_lemma", sweep_json(cosh)},
              {"equidistant", sweep_json(eq)},
              {"equidistant_sharpness_bound", sharp},
              {"detour",
               {{"trials", det.trials}, {"passed", det.passed}, {"max_roundtrip_error", det.max_roundtrip_error}}},
              {"roundtrip_bound", exact},
              {"ok", {{"cosh_lemma", cosh_ok}, {"equidistant", eq_ok}, {"detour", det_ok}}}};
    w.json_file("geom_report.json", j);
    bool ok = cosh_ok && eq_ok && det_ok;
    return {ok ? exit_code::ok : exit_code::violations,
            "cosh " + std::to_string(cosh.passed) + "/" + std::to_string(cosh.trials) + ", detour " +
                std::to_string(det.passed) + "/" + std::to_string(det.trials)};
}

double get_real(const json& j, const char* key) {
    if (!j.at(key).is_number())
        throw ConfigInvalid(std::string(key) + " must be a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const char* key, long long lo) {
    if (!j.at(key).is_number_integer() || j.at(key).get<long long>() < lo)
        throw ConfigInvalid(std::string(key) + " must be an integer >= " + std::to_string(lo));
    return j.at(key).get<int>();
}

} // namespace

std::string command_name(Command c) {
    for (auto [k, name] : kCommands)
        if (k == c)
            return name;
    return "";
}

Command parse_command(const std::string& s) {
    for (auto [k, name] : kCommands)
        if (s == name)
            return k;
    throw ConfigInvalid("unknown command: " + s);
}

RunConfig config_from_json(const json& j, RunConfig c) {
    require_keys(j,
                 {"command", "cutoff", "grid", "params", "inputs", "out", "budget", "seed", "quiet", "equidist",
                  "orbitspace", "geom", "counts"},
                 "config");
    try {
        if (j.contains("command"))
            c.command = parse_command(j.at("command").get<std::string>());
        if (j.contains("cutoff"))
            c.cutoff_t = get_real(j, "cutoff");
        if (j.contains("grid"))
            c.grid = j.at("grid").get<std::vector<double>>();
        if (j.contains("params")) {
            c.params = params_from_json(j.at("params"), c.params);
            if (j.at("params").contains("A6"))
                c.fit_A6 = false;
        }
        if (j.contains("inputs"))
            c.input_paths = j.at("inputs").get<std::vector<std::string>>();
        if (j.contains("out"))
            c.output_dir = j.at("out").get<std::string>();
        if (j.contains("budget"))
            c.node_budget = static_cast<std::uint64_t>(get_int(j, "budget", 1));
        if (j.contains("seed")) {
            if (!j.at("seed").is_number_unsigned())
                throw ConfigInvalid("seed must be a nonnegative integer");
            c.seed = j.at("seed").get<std::uint64_t>();
        }
        if (j.contains("quiet"))
            c.quiet = j.at("quiet").get<bool>();
        if (j.contains("equidist")) {
            const json& e = j.at("equidist");
            require_keys(e, {"cutoffs", "subdivision", "sample_spacing"}, "equidist");
            if (e.contains("cutoffs"))
                c.equidist.cutoffs = e.at("cutoffs").get<std::vector<double>>();
            if (e.contains("subdivision"))
                c.equidist.subdivision = get_int(e, "subdivision", 0);
            if (e.contains("sample_spacing"))
                c.equidist.sample_spacing = get_real(e, "sample_spacing");
        }
        if (j.contains("orbitspace")) {
            const json& o = j.at("orbitspace");
            require_keys(o, {"generators", "count"}, "orbitspace");
            if (o.contains("generators"))
                c.orbitspace.generators = o.at("generators").get<std::vector<std::string>>();
            if (o.contains("count"))
                c.orbitspace.count = get_int(o, "count", 2);
        }
        if (j.contains("geom")) {
            const json& g = j.at("geom");
            require_keys(g, {"curves", "equidistant", "detours"}, "geom");
            if (g.contains("curves"))
                c.geom.curves = get_int(g, "curves", 1);
            if (g.contains("equidistant"))
                c.geom.equidistant = get_int(g, "equidistant", 1);
            if (g.contains("detours"))
                c.geom.detours = get_int(g, "detours", 1);
        }
        if (j.contains("counts")) {
            const json& k = j.at("counts");
            require_keys(k, {"topology", "slope_window"}, "counts");
            if (k.contains("topology"))
                c.counts.topology = parse_topology(k.at("topology").get<std::string>());
            if (k.contains("slope_window"))
                c.counts.slope_window = get_real(k, "slope_window");
        }
    } catch (const json::exception& e) {
        throw ConfigInvalid(std::string("malformed config: ") + e.what());
    }
    return c;
}

void finalize_config(RunConfig& c) {
    if (!(c.cutoff_t > 0) || !std::isfinite(c.cutoff_t))
        throw ConfigInvalid("cutoff must be positive");
    if (c.node_budget == 0)
        throw ConfigInvalid("budget must be positive");
    if (c.grid.empty()) {
        for (int i = 0; 6 + 0.25 * i <= c.cutoff_t + 1e-12; ++i)
            c.grid.push_back(6 + 0.25 * i);
        if (c.grid.empty())
            c.grid.push_back(c.cutoff_t);
    }
    for (std::size_t i = 1; i < c.grid.size(); ++i)
        if (!(c.grid[i] > c.grid[i - 1]))
            throw ConfigInvalid("grid must be strictly increasing");
    if (c.grid.back() > c.cutoff_t)
        throw ConfigInvalid("cutoff must be at least the largest grid point");
    if (c.equidist.cutoffs.empty())
        throw ConfigInvalid("equidist.cutoffs must not be empty");
    for (double t : c.equidist.cutoffs)
        if (!(t > 0) || !std::isfinite(t))
            throw ConfigInvalid("equidist cutoffs must be positive");
    if (!(c.equidist.sample_spacing > 0))
        throw ConfigInvalid("equidist.sample_spacing must be positive");
    if (c.equidist.subdivision > 4)
        throw ConfigInvalid("equidist.subdivision must be at most 4");
    if (!(c.counts.slope_window > 0))
        throw ConfigInvalid("counts.slope_window must be positive");
    validate_params(c.params);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        RunConfig c = config;
        finalize_config(c);
        Writer w(c.output_dir);
        Outcome o;
        switch (c.command) {
        case Command::spectrum: o = run_spectrum(c, w); break;
        case Command::counts: o = run_counts(c, w); break;
        case Command::equidist: o = run_equidist(c, w); break;
        case Command::build_string: o = run_build_string(c, w); break;
        case Command::decompose: o = run_decompose(c, w); break;
        case Command::tree_classify: o = run_tree(c, w); break;
        case Command::bounds_check: o = run_bounds(c, w); break;
        case Command::geom_verify: o = run_geom(c, w); break;
        }
        if (!c.quiet) {
            out << command_name(c.command) << ": " << o.summary << "\n";
            for (const auto& f : w.written())
                out << "  wrote " << (fs::path(c.output_dir) / f).string() << "\n";
        }
        return o.code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::input_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::input_error;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::input_error;
    }
}

} // namespace anosov
