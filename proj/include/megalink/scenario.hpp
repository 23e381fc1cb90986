#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "megalink/catalog.hpp"
#include "megalink/metrics.hpp"
#include "megalink/policy.hpp"
#include "megalink/population.hpp"

namespace megalink {

/// Bad or inconsistent configuration; the message names the key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PopulationSource {
    PopulationSpec spec;
    std::optional<std::uint64_t> seed;  // falls back to the scenario seed
};

struct PresetSource {
    std::string name;
    double raan_deg{0.0};
    double mean_anomaly_deg{0.0};
};

struct ExplicitSource {
    KeplerianElements elements;  // epoch is replaced by the scenario epoch
};

using UserSource = std::variant<PopulationSource, PresetSource, ExplicitSource>;

struct ScenarioOptions {
    GridSpec grid;
    int threads{0};
    bool culling{true};
    /// Per-user pass/access lists; defaults to on for runs of at most 100 users.
    std::optional<bool> write_intervals;
    bool headline_includes_shell_bands{false};
    int block_steps{64};
    bool strict_tle{false};
};

struct ScenarioConfig {
    UtcInstant epoch{UtcInstant::from_calendar(2021, 3, 20, 9, 37, 29.0)};
    double duration_s{86400.0};
    double step_s{10.0};
    double min_elevation_deg{25.0};
    double carrier_frequency_hz{10.7e9};
    std::vector<ConstellationSpec> constellations;
    std::vector<UserSource> users;
    SelectionPolicy policy;
    /// Unset: all-visible for the random policy, serving-only for closest.
    std::optional<ReportingMode> reporting_mode;
    std::optional<std::uint64_t> seed;
    std::string output_directory{"out"};
    ScenarioOptions options;

    ReportingMode resolved_reporting_mode() const;
    /// Policy with the seed falling back to the scenario seed.
    SelectionPolicy resolved_policy() const;
};

/// Relative TLE paths resolve against base_dir.
ScenarioConfig config_from_json(nlohmann::ordered_json const& j, std::string const& base_dir = ".");
ScenarioConfig load_config(std::string const& path);
/// Every field with defaults resolved.
nlohmann::ordered_json config_to_json(ScenarioConfig const& config);

struct Diagnostic {
    enum class Severity { warning, error };
    Severity severity;
    std::string message;
};

std::string to_string(Diagnostic::Severity severity);
std::vector<Diagnostic> validate(ScenarioConfig const& config);
bool has_errors(std::vector<Diagnostic> const& diagnostics);

/// Users from every source in order, numbered from 0.
std::vector<UserSpec> build_users(ScenarioConfig const& config);

struct GroupResult {
    std::string name;
    std::vector<int> fleets;
    std::optional<double> headline_max_altitude_km;
    std::vector<CoverageSummary> summaries;  // one per user
    std::vector<std::vector<PassInterval>> passes;
    std::vector<std::vector<AccessInterval>> accesses;
};

/// Population-level statistics over the headline users of one group.
struct GroupAggregate {
    std::string group;
    std::int64_t users{0};
    double coverage_percent{0.0};
    double all_users_coverage_percent{0.0};
    double avg_visible{0.0};
    std::optional<double> fspl_min_db;
    std::optional<double> fspl_avg_db;
    std::optional<double> fspl_max_db;
    std::optional<double> max_doppler_khz;
    double avg_access_min{0.0};
    double max_access_min{0.0};
};

struct ScenarioResult {
    ScenarioConfig config;
    std::vector<UserSpec> users;
    std::vector<std::string> fleet_names;
    std::vector<std::size_t> fleet_sizes;
    std::vector<int> sat_catalog_ids;  // index = engine satellite index
    std::vector<GroupResult> groups;
    std::int64_t steps{0};
    double elapsed_s{0.0};
    std::vector<std::string> warnings;

    GroupResult const& group(std::string const& name) const;
    std::vector<std::size_t> headline_users(GroupResult const& g) const;
    GroupAggregate aggregate(GroupResult const& g) const;
};

/// Checks the output directory before the time loop when check_output is set.
ScenarioResult run_scenario(ScenarioConfig const& config, bool check_output = true);

nlohmann::ordered_json summary_document(ScenarioResult const& result);
nlohmann::ordered_json manifest_document(ScenarioResult const& result);
/// summary.json, manifest.json, population.csv, passes_<group>.csv and,
/// for population runs, grid_<group>.csv.
void write_outputs(ScenarioResult const& result, std::string const& directory);

/// Throws std::runtime_error when files cannot be created in the directory.
void ensure_writable_directory(std::string const& directory);

}  // namespace megalink
