#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "megalink/catalog.hpp"
#include "megalink/report.hpp"
#include "megalink/scenario.hpp"
#include "megalink/walker.hpp"

using namespace megalink;

namespace {

struct Overrides {
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::string> policy;
    std::optional<double> min_elev;
    std::optional<double> freq;
    std::optional<std::string> constellations;
    bool strict_tle{false};
};

std::vector<std::string> split_list(std::string const& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

void add_overrides(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--policy", o.policy, "Serving policy")->check(CLI::IsMember({"random", "closest"}));
    cmd->add_option("--min-elev", o.min_elev, "Minimum user elevation [deg]");
    cmd->add_option("--freq", o.freq, "Carrier frequency [Hz]");
    cmd->add_option("--constellations", o.constellations, "Comma-separated bundled constellation names");
    cmd->add_flag("--strict-tle", o.strict_tle, "Reject TLE checksum errors");
}

void apply(Overrides const& o, ScenarioConfig& c)
{
    if (o.out) {
        c.output_directory = *o.out;
    }
    if (o.seed) {
        c.seed = *o.seed;
    }
    if (o.threads) {
        c.options.threads = *o.threads;
    }
    if (o.policy) {
        c.policy.kind = policy_kind_from_string(*o.policy);
    }
    if (o.min_elev) {
        c.min_elevation_deg = *o.min_elev;
    }
    if (o.freq) {
        c.carrier_frequency_hz = *o.freq;
    }
    if (o.constellations) {
        c.constellations.clear();
        for (auto const& name : split_list(*o.constellations)) {
            c.constellations.push_back(bundled_constellation(name));
        }
    }
    if (o.strict_tle) {
        c.options.strict_tle = true;
    }
}

void print_diagnostics(std::vector<Diagnostic> const& diags)
{
    for (auto const& d : diags) {
        std::cerr << to_string(d.severity) << ": " << d.message << "\n";
    }
}

int execute(ScenarioConfig const& config)
{
    auto const diags = validate(config);
    print_diagnostics(diags);
    if (has_errors(diags)) {
        return 1;
    }
    if (config.seed) {
        std::cerr << "seed: " << *config.seed << "\n";
    }
    auto const result = run_scenario(config);
    write_outputs(result, config.output_directory);
    std::cout << render_report(summary_document(result));
    std::cerr << fmt::format("wrote {} ({} users, {} steps, {:.1f} s)\n", config.output_directory,
                             result.users.size(), result.steps, result.elapsed_s);
    return 0;
}

void write_or_print(std::optional<std::string> const& path, std::string const& text)
{
    if (!path) {
        std::cout << text;
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out || !(out << text)) {
        throw std::runtime_error(fmt::format("cannot write '{}'", *path));
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Space-user link simulator for LEO/GEO mega-constellations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", MEGALINK_VERSION);

    std::optional<std::uint64_t> seed;
    app.add_option("--seed", seed, "Scenario seed (echoed on stderr)");

    Overrides ov;
    std::string config_path;

    auto* run = app.add_subcommand("run", "Run a scenario from a JSON config");
    run->add_option("--config,config", config_path, "Scenario config file")->required();
    add_overrides(run, ov);
    run->add_option("--seed", seed, "Scenario seed");

    std::string preset_name;
    double raan = 0.0;
    double anomaly = 0.0;
    std::optional<double> duration;
    std::optional<double> step;
    std::optional<std::string> reporting;
    auto* pre = app.add_subcommand("preset", "Run a use-case preset user against bundled fleets");
    pre->add_option("name", preset_name, "iss or sso_eo")->required()->check(CLI::IsMember({"iss", "sso_eo"}));
    pre->add_option("--raan", raan, "User RAAN [deg]");
    pre->add_option("--mean-anomaly", anomaly, "User mean anomaly [deg]");
    pre->add_option("--duration", duration, "Window [s]");
    pre->add_option("--step", step, "Step [s]");
    pre->add_option("--reporting", reporting, "FSPL/Doppler sample set")
        ->check(CLI::IsMember({"all_visible", "serving_only"}));
    add_overrides(pre, ov);
    pre->add_option("--seed", seed, "Scenario seed");

    ShellSpec shell;
    std::optional<double> phase;
    std::string walker_epoch = "2021-03-20T09:37:29Z";
    int first_id = 1;
    std::string walker_name = "WALKER";
    std::optional<std::string> walker_out;
    auto* walk = app.add_subcommand("walker", "Write TLEs for one Walker-delta shell");
    walk->add_option("--alt", shell.altitude_km, "Altitude [km]")->required();
    walk->add_option("--inc", shell.inclination_deg, "Inclination [deg]")->required();
    walk->add_option("--planes", shell.plane_count, "Plane count")->required();
    walk->add_option("--per-plane", shell.sats_per_plane, "Satellites per plane")->required();
    walk->add_option("--raan-span", shell.raan_span_deg, "RAAN span [deg]");
    walk->add_option("--phase", phase, "Inter-plane phase [deg]");
    walk->add_option("--epoch", walker_epoch, "Element epoch (ISO 8601 UTC)");
    walk->add_option("--first-id", first_id, "First catalog id");
    walk->add_option("--name", walker_name, "Name prefix");
    walk->add_option("--out", walker_out, "TLE file (stdout if omitted)");
    walk->add_option("--seed", seed, "Echoed only; shells are deterministic");

    std::string summary_path;
    std::optional<int> user_id;
    auto* rep = app.add_subcommand("report", "Render a summary JSON as a text table");
    rep->add_option("summary", summary_path, "summary.json")->required();
    rep->add_option("--user", user_id, "Per-user table for this user id");
    rep->add_option("--seed", seed, "Echoed only");

    std::string grid_group;
    std::string grid_metric = "coverage";
    GridSpec grid;
    std::optional<std::string> grid_out;
    auto* grd = app.add_subcommand("grid", "Bin per-user metrics by altitude and inclination");
    grd->add_option("summary", summary_path, "summary.json")->required();
    grd->add_option("--group", grid_group, "Result group (fleet name or combined)")->required();
    grd->add_option("--metric", grid_metric, "Metric name or 'all'");
    grd->add_option("--alt-bin", grid.altitude_bin_km, "Altitude bin [km]");
    grd->add_option("--inc-bin", grid.inclination_bin_deg, "Inclination bin [deg]");
    grd->add_option("--out", grid_out, "CSV file (stdout if omitted)");
    grd->add_option("--seed", seed, "Echoed only");

    auto* val = app.add_subcommand("validate", "Check a config and print diagnostics");
    val->add_option("--config,config", config_path, "Scenario config file")->required();
    add_overrides(val, ov);
    val->add_option("--seed", seed, "Scenario seed");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    ov.seed = seed;

    try {
        if (*run) {
            auto config = load_config(config_path);
            apply(ov, config);
            return execute(config);
        }
        if (*pre) {
            ScenarioConfig config;
            config.constellations = {bundled_constellation("oneweb"), bundled_constellation("starlink")};
            config.users = {PresetSource{preset_name, raan, anomaly}};
            config.output_directory = "out/" + preset_name;
            if (duration) {
                config.duration_s = *duration;
            }
            if (step) {
                config.step_s = *step;
            }
            if (reporting) {
                config.reporting_mode = reporting_mode_from_string(*reporting);
            }
            apply(ov, config);
            return execute(config);
        }
        if (*walk) {
            if (phase) {
                shell.inter_plane_phase_deg = *phase;
            }
            shell.validate();
            std::string text = fmt::format("# {} shell: {} km, {} deg, {} x {}, phase {} deg\n", walker_name,
                                           shell.altitude_km, shell.inclination_deg, shell.plane_count,
                                           shell.sats_per_plane, shell.resolved_phase_deg());
            int id = first_id;
            int slot = 0;
            for (auto const& e : build_walker(shell, UtcInstant::parse_iso(walker_epoch))) {
                text += format_tle(elements_to_tle(
                    e, id++,
                    fmt::format("{} P{:02d} N{:02d}", walker_name, slot / shell.sats_per_plane,
                                slot % shell.sats_per_plane)));
                ++slot;
            }
            write_or_print(walker_out, text);
            if (seed) {
                std::cerr << "seed: " << *seed << "\n";
            }
            std::cerr << fmt::format("{} records\n", shell.size());
            return 0;
        }
        if (*rep) {
            if (seed) {
                std::cerr << "seed: " << *seed << "\n";
            }
            std::cout << render_report(read_json_file(summary_path), user_id);
            return 0;
        }
        if (*grd) {
            if (seed) {
                std::cerr << "seed: " << *seed << "\n";
            }
            auto const summary = read_json_file(summary_path);
            std::string csv;
            auto const metrics =
                grid_metric == "all" ? all_grid_metrics() : std::vector{grid_metric_from_string(grid_metric)};
            for (auto m : metrics) {
                auto part = grid_csv(grid_from_summary(summary, grid_group, grid, m), m);
                csv += csv.empty() ? part : part.substr(part.find('\n') + 1);
            }
            write_or_print(grid_out, csv);
            return 0;
        }
        if (*val) {
            auto config = load_config(config_path);
            apply(ov, config);
            auto const diags = validate(config);
            print_diagnostics(diags);
            if (diags.empty()) {
                std::cout << "config OK\n";
            }
            return has_errors(diags) ? 1 : 0;
        }
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
