#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace megalink {

struct VisibleSat {
    int sat_id;
    double range_km;
    double range_rate_km_s;
    double elevation_deg;
};

struct StepRecord {
    std::int64_t step_index{0};
    std::vector<VisibleSat> visible;
    std::optional<int> serving;
};

struct PassInterval {
    int sat_id;
    std::int64_t start_step;
    std::int64_t end_step;  // inclusive
    double duration_min;
};

struct AccessInterval {
    std::int64_t start_step;
    std::int64_t end_step;  // inclusive
    double duration_min;
};

/// Which pair samples feed the FSPL and Doppler statistics.
enum class ReportingMode { all_visible, serving_only };

std::string to_string(ReportingMode mode);
ReportingMode reporting_mode_from_string(std::string const& text);

struct CoverageSummary {
    std::int64_t steps{0};
    double step_s{0.0};
    double coverage_probability{0.0};

    std::int64_t access_count{0};
    double avg_access_min{0.0};
    double max_access_min{0.0};

    std::int64_t pass_count{0};
    double avg_pass_min{0.0};
    double max_pass_min{0.0};
    std::vector<std::int64_t> pass_histogram;  // 1-minute bins from 0

    int visible_min{0};
    double visible_avg{0.0};
    int visible_max{0};
    std::vector<std::int64_t> visible_histogram;  // index = satellites in view

    std::int64_t link_samples{0};
    std::optional<double> fspl_min_db;
    std::optional<double> fspl_avg_db;
    std::optional<double> fspl_max_db;
    std::vector<std::int64_t> fspl_histogram;  // 1-dB bins starting at fspl_histogram_low_db
    int fspl_histogram_low_db{0};
    std::optional<double> max_doppler_khz;
    std::vector<std::int64_t> doppler_histogram;  // 10-kHz bins of |offset| from 0

    /// Share of covered steps served by each fleet, when labels are given.
    std::map<std::string, double> usage_fraction;

    /// Passes with duration strictly below the limit, as a fraction of all passes.
    std::optional<double> pass_fraction_below(double minutes) const;

    std::map<std::int64_t, std::int64_t> pass_duration_counts;  // steps -> passes
};

struct AccumulatorOptions {
    double step_s{10.0};
    double frequency_hz{10.7e9};
    ReportingMode mode{ReportingMode::all_visible};
    bool keep_intervals{true};
    /// Optional fleet label per satellite id (index = sat id) for usage shares.
    std::vector<int> sat_label;
    std::vector<std::string> label_names;
};

/// Streams one user's step records in order without keeping the timeline.
class CoverageAccumulator {
public:
    explicit CoverageAccumulator(AccumulatorOptions const* options);

    /// visible need not be sorted; steps must arrive consecutively.
    void add(std::int64_t step_index, std::span<VisibleSat const> visible,
             std::optional<int> serving);
    /// Closes open intervals. Further add() calls are an error.
    void finish();

    CoverageSummary summary() const;
    std::vector<PassInterval> const& passes() const { return passes_; }
    std::vector<AccessInterval> const& accesses() const { return accesses_; }

private:
    void close_pass(int sat_id, std::int64_t start, std::int64_t end);
    void close_access(std::int64_t end);
    void add_link_sample(VisibleSat const& v);

    AccumulatorOptions const* options_;
    bool finished_{false};
    std::int64_t next_step_{-1};
    std::int64_t steps_{0};
    std::int64_t covered_{0};

    std::vector<std::pair<int, std::int64_t>> open_passes_;  // (sat, start), sorted by sat
    std::vector<std::pair<int, std::int64_t>> scratch_;
    std::vector<VisibleSat> sorted_;
    std::optional<std::int64_t> open_access_;

    std::int64_t access_count_{0};
    std::int64_t access_steps_{0};
    std::int64_t max_access_steps_{0};
    std::int64_t pass_count_{0};
    std::int64_t pass_steps_{0};
    std::int64_t max_pass_steps_{0};
    std::map<std::int64_t, std::int64_t> pass_duration_counts_;

    int visible_min_{0};
    int visible_max_{0};
    std::int64_t visible_sum_{0};
    std::vector<std::int64_t> visible_histogram_;

    std::int64_t link_samples_{0};
    double fspl_min_{0.0};
    double fspl_max_{0.0};
    double fspl_sum_{0.0};
    double doppler_max_hz_{0.0};
    std::map<int, std::int64_t> fspl_bins_;
    std::map<int, std::int64_t> doppler_bins_;

    std::vector<std::int64_t> served_by_label_;

    std::vector<PassInterval> passes_;
    std::vector<AccessInterval> accesses_;
};

/// Maximal runs of consecutive records containing sat_id.
std::vector<PassInterval> extract_passes(std::span<StepRecord const> records, int sat_id,
                                         double step_s);
/// Maximal runs of records with at least one visible satellite.
std::vector<AccessInterval> extract_accesses(std::span<StepRecord const> records, double step_s);
double coverage_probability(std::span<StepRecord const> records);
CoverageSummary summarize(std::span<StepRecord const> records, AccumulatorOptions const& options);

/// Selectable per-user quantity for grids.
enum class GridMetric {
    coverage,
    avg_access_min,
    max_access_min,
    avg_visible,
    fspl_min_db,
    fspl_avg_db,
    fspl_max_db,
    max_doppler_khz,
};

std::string to_string(GridMetric metric);
GridMetric grid_metric_from_string(std::string const& text);
std::vector<GridMetric> all_grid_metrics();
/// nullopt when the metric is undefined for this user (e.g. never in view).
std::optional<double> metric_value(CoverageSummary const& summary, GridMetric metric);

struct UserOrbit {
    double altitude_km;
    double inclination_deg;
};

struct GridCell {
    double alt_bin_low_km;
    double inc_bin_low_deg;
    std::optional<double> value;  // nullopt marks an empty cell
    std::int64_t count;
};

struct GridSpec {
    double altitude_bin_km{25.0};
    double inclination_bin_deg{5.0};
    /// Altitude span; defaults to the users' range floored/ceiled to bins.
    std::optional<double> altitude_low_km;
    std::optional<double> altitude_high_km;
};

/// Cells ordered by altitude then inclination; inclinations span [0, 180].
std::vector<GridCell> bin_grid(std::span<UserOrbit const> users,
                               std::span<CoverageSummary const> summaries, GridSpec const& spec,
                               GridMetric metric);

}  // namespace megalink
