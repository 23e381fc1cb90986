#include "megalink/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "megalink/link.hpp"

namespace megalink {

std::string to_string(ReportingMode mode)
{
    return mode == ReportingMode::all_visible ? "all_visible" : "serving_only";
}

ReportingMode reporting_mode_from_string(std::string const& text)
{
    if (text == "all_visible") {
        return ReportingMode::all_visible;
    }
    if (text == "serving_only") {
        return ReportingMode::serving_only;
    }
    throw std::invalid_argument(fmt::format("unknown reporting mode '{}'", text));
}

std::optional<double> CoverageSummary::pass_fraction_below(double minutes) const
{
    std::int64_t total = 0;
    std::int64_t below = 0;
    for (auto const& [steps, count] : pass_duration_counts) {
        total += count;
        if (static_cast<double>(steps) * step_s / 60.0 < minutes) {
            below += count;
        }
    }
    if (total == 0) {
        return std::nullopt;
    }
    return static_cast<double>(below) / static_cast<double>(total);
}

CoverageAccumulator::CoverageAccumulator(AccumulatorOptions const* options) : options_(options)
{
    if (options_ == nullptr || !(options_->step_s > 0.0)) {
        throw std::invalid_argument("coverage accumulator needs options with a positive step");
    }
    served_by_label_.assign(options_->label_names.size(), 0);
}

void CoverageAccumulator::close_pass(int sat_id, std::int64_t start, std::int64_t end)
{
    std::int64_t const length = end - start + 1;
    ++pass_count_;
    pass_steps_ += length;
    max_pass_steps_ = std::max(max_pass_steps_, length);
    ++pass_duration_counts_[length];
    if (options_->keep_intervals) {
        passes_.push_back({sat_id, start, end, static_cast<double>(length) * options_->step_s / 60.0});
    }
}

void CoverageAccumulator::close_access(std::int64_t end)
{
    std::int64_t const start = *open_access_;
    std::int64_t const length = end - start + 1;
    ++access_count_;
    access_steps_ += length;
    max_access_steps_ = std::max(max_access_steps_, length);
    if (options_->keep_intervals) {
        accesses_.push_back({start, end, static_cast<double>(length) * options_->step_s / 60.0});
    }
    open_access_.reset();
}

void CoverageAccumulator::add_link_sample(VisibleSat const& v)
{
    double const loss = fspl_db(v.range_km, options_->frequency_hz);
    double const doppler = std::fabs(doppler_offset_hz(v.range_rate_km_s, options_->frequency_hz));
    if (link_samples_ == 0) {
        fspl_min_ = fspl_max_ = loss;
    } else {
        fspl_min_ = std::min(fspl_min_, loss);
        fspl_max_ = std::max(fspl_max_, loss);
    }
    ++link_samples_;
    fspl_sum_ += loss;
    doppler_max_hz_ = std::max(doppler_max_hz_, doppler);
    ++fspl_bins_[static_cast<int>(std::floor(loss))];
    ++doppler_bins_[static_cast<int>(std::floor(doppler / 1e4))];
}

void CoverageAccumulator::add(std::int64_t step_index, std::span<VisibleSat const> visible,
                              std::optional<int> serving)
{
    if (finished_) {
        throw std::logic_error("coverage accumulator already finished");
    }
    if (next_step_ >= 0 && step_index != next_step_) {
        throw std::invalid_argument(fmt::format("step {} follows step {}; records must be consecutive",
                                                step_index, next_step_ - 1));
    }
    sorted_.assign(visible.begin(), visible.end());
    auto const by_id = [](VisibleSat const& a, VisibleSat const& b) { return a.sat_id < b.sat_id; };
    if (!std::is_sorted(sorted_.begin(), sorted_.end(), by_id)) {
        std::sort(sorted_.begin(), sorted_.end(), by_id);
    }
    auto served = sorted_.end();
    if (serving) {
        served = std::lower_bound(sorted_.begin(), sorted_.end(), VisibleSat{*serving, 0, 0, 0}, by_id);
        if (served == sorted_.end() || served->sat_id != *serving) {
            throw std::invalid_argument(
                fmt::format("serving satellite {} is not in the visible set", *serving));
        }
    }
    next_step_ = step_index + 1;

    int const n = static_cast<int>(sorted_.size());
    if (steps_ == 0) {
        visible_min_ = visible_max_ = n;
    } else {
        visible_min_ = std::min(visible_min_, n);
        visible_max_ = std::max(visible_max_, n);
    }
    visible_sum_ += n;
    if (static_cast<std::size_t>(n) >= visible_histogram_.size()) {
        visible_histogram_.resize(static_cast<std::size_t>(n) + 1, 0);
    }
    ++visible_histogram_[static_cast<std::size_t>(n)];
    ++steps_;

    if (n > 0) {
        ++covered_;
        if (!open_access_) {
            open_access_ = step_index;
        }
    } else if (open_access_) {
        close_access(step_index - 1);
    }

    // Merge the open passes with this step's visible set, both sorted by id.
    scratch_.clear();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < open_passes_.size() || j < sorted_.size()) {
        if (j == sorted_.size()
            || (i < open_passes_.size() && open_passes_[i].first < sorted_[j].sat_id)) {
            close_pass(open_passes_[i].first, open_passes_[i].second, step_index - 1);
            ++i;
        } else if (i == open_passes_.size() || sorted_[j].sat_id < open_passes_[i].first) {
            scratch_.emplace_back(sorted_[j].sat_id, step_index);
            ++j;
        } else {
            scratch_.push_back(open_passes_[i]);
            ++i;
            ++j;
        }
    }
    open_passes_.swap(scratch_);

    if (options_->mode == ReportingMode::all_visible) {
        for (auto const& v : sorted_) {
            add_link_sample(v);
        }
    }
    if (serving) {
        if (options_->mode == ReportingMode::serving_only) {
            add_link_sample(*served);
        }
        if (!options_->sat_label.empty()) {
            auto const label = options_->sat_label.at(static_cast<std::size_t>(*serving));
            ++served_by_label_.at(static_cast<std::size_t>(label));
        }
    }
}

void CoverageAccumulator::finish()
{
    if (finished_) {
        return;
    }
    finished_ = true;
    std::int64_t const last = next_step_ - 1;
    for (auto const& [sat, start] : open_passes_) {
        close_pass(sat, start, last);
    }
    open_passes_.clear();
    if (open_access_) {
        close_access(last);
    }
    std::sort(passes_.begin(), passes_.end(), [](PassInterval const& a, PassInterval const& b) {
        return a.start_step < b.start_step || (a.start_step == b.start_step && a.sat_id < b.sat_id);
    });
}

CoverageSummary CoverageAccumulator::summary() const
{
    double const step_min = options_->step_s / 60.0;
    CoverageSummary s;
    s.steps = steps_;
    s.step_s = options_->step_s;
    s.coverage_probability = steps_ > 0 ? static_cast<double>(covered_) / static_cast<double>(steps_) : 0.0;

    s.access_count = access_count_;
    s.avg_access_min = access_count_ > 0 ? static_cast<double>(access_steps_) * step_min
                                               / static_cast<double>(access_count_)
                                         : 0.0;
    s.max_access_min = static_cast<double>(max_access_steps_) * step_min;

    s.pass_count = pass_count_;
    s.avg_pass_min = pass_count_ > 0 ? static_cast<double>(pass_steps_) * step_min
                                           / static_cast<double>(pass_count_)
                                     : 0.0;
    s.max_pass_min = static_cast<double>(max_pass_steps_) * step_min;
    s.pass_duration_counts = pass_duration_counts_;
    for (auto const& [steps, count] : pass_duration_counts_) {
        auto const bin = static_cast<std::size_t>(std::floor(static_cast<double>(steps) * step_min));
        if (bin >= s.pass_histogram.size()) {
            s.pass_histogram.resize(bin + 1, 0);
        }
        s.pass_histogram[bin] += count;
    }

    s.visible_min = visible_min_;
    s.visible_max = visible_max_;
    s.visible_avg = steps_ > 0 ? static_cast<double>(visible_sum_) / static_cast<double>(steps_) : 0.0;
    s.visible_histogram = visible_histogram_;

    s.link_samples = link_samples_;
    if (link_samples_ > 0) {
        s.fspl_min_db = fspl_min_;
        s.fspl_max_db = fspl_max_;
        s.fspl_avg_db = fspl_sum_ / static_cast<double>(link_samples_);
        s.max_doppler_khz = doppler_max_hz_ / 1e3;
        s.fspl_histogram_low_db = fspl_bins_.begin()->first;
        s.fspl_histogram.assign(
            static_cast<std::size_t>(fspl_bins_.rbegin()->first - s.fspl_histogram_low_db + 1), 0);
        for (auto const& [bin, count] : fspl_bins_) {
            s.fspl_histogram[static_cast<std::size_t>(bin - s.fspl_histogram_low_db)] = count;
        }
        s.doppler_histogram.assign(static_cast<std::size_t>(doppler_bins_.rbegin()->first + 1), 0);
        for (auto const& [bin, count] : doppler_bins_) {
            s.doppler_histogram[static_cast<std::size_t>(bin)] = count;
        }
    }

    for (std::size_t k = 0; k < options_->label_names.size(); ++k) {
        s.usage_fraction[options_->label_names[k]]
            = covered_ > 0 ? static_cast<double>(served_by_label_[k]) / static_cast<double>(covered_)
                           : 0.0;
    }
    return s;
}

std::vector<PassInterval> extract_passes(std::span<StepRecord const> records, int sat_id,
                                         double step_s)
{
    std::vector<PassInterval> out;
    std::int64_t start = 0;
    bool open = false;
    std::int64_t previous = 0;
    auto const close = [&](std::int64_t end) {
        out.push_back({sat_id, start, end,
                       static_cast<double>(end - start + 1) * step_s / 60.0});
        open = false;
    };
    for (auto const& record : records) {
        bool const seen = std::any_of(record.visible.begin(), record.visible.end(),
                                      [&](VisibleSat const& v) { return v.sat_id == sat_id; });
        if (seen && !open) {
            start = record.step_index;
            open = true;
        } else if (!seen && open) {
            close(previous);
        }
        previous = record.step_index;
    }
    if (open) {
        close(previous);
    }
    return out;
}

std::vector<AccessInterval> extract_accesses(std::span<StepRecord const> records, double step_s)
{
    std::vector<AccessInterval> out;
    std::optional<std::int64_t> start;
    std::int64_t previous = 0;
    for (auto const& record : records) {
        bool const covered = !record.visible.empty();
        if (covered && !start) {
            start = record.step_index;
        } else if (!covered && start) {
            out.push_back({*start, previous,
                           static_cast<double>(previous - *start + 1) * step_s / 60.0});
            start.reset();
        }
        previous = record.step_index;
    }
    if (start) {
        out.push_back({*start, previous, static_cast<double>(previous - *start + 1) * step_s / 60.0});
    }
    return out;
}

double coverage_probability(std::span<StepRecord const> records)
{
    if (records.empty()) {
        return 0.0;
    }
    auto const covered = std::count_if(records.begin(), records.end(),
                                       [](StepRecord const& r) { return !r.visible.empty(); });
    return static_cast<double>(covered) / static_cast<double>(records.size());
}

CoverageSummary summarize(std::span<StepRecord const> records, AccumulatorOptions const& options)
{
    CoverageAccumulator acc(&options);
    for (auto const& record : records) {
        acc.add(record.step_index, record.visible, record.serving);
    }
    acc.finish();
    return acc.summary();
}

std::string to_string(GridMetric metric)
{
    switch (metric) {
    case GridMetric::coverage:
        return "coverage";
    case GridMetric::avg_access_min:
        return "avg_access_min";
    case GridMetric::max_access_min:
        return "max_access_min";
    case GridMetric::avg_visible:
        return "avg_visible";
    case GridMetric::fspl_min_db:
        return "fspl_min_db";
    case GridMetric::fspl_avg_db:
        return "fspl_avg_db";
    case GridMetric::fspl_max_db:
        return "fspl_max_db";
    case GridMetric::max_doppler_khz:
        return "max_doppler_khz";
    }
    return "unknown";
}

std::vector<GridMetric> all_grid_metrics()
{
    return {GridMetric::coverage,    GridMetric::avg_access_min, GridMetric::max_access_min,
            GridMetric::avg_visible, GridMetric::fspl_min_db,    GridMetric::fspl_avg_db,
            GridMetric::fspl_max_db, GridMetric::max_doppler_khz};
}

GridMetric grid_metric_from_string(std::string const& text)
{
    for (auto const metric : all_grid_metrics()) {
        if (to_string(metric) == text) {
            return metric;
        }
    }
    throw std::invalid_argument(fmt::format("unknown grid metric '{}'", text));
}

std::optional<double> metric_value(CoverageSummary const& summary, GridMetric metric)
{
    switch (metric) {
    case GridMetric::coverage:
        return summary.coverage_probability;
    case GridMetric::avg_access_min:
        return summary.avg_access_min;
    case GridMetric::max_access_min:
        return summary.max_access_min;
    case GridMetric::avg_visible:
        return summary.visible_avg;
    case GridMetric::fspl_min_db:
        return summary.fspl_min_db;
    case GridMetric::fspl_avg_db:
        return summary.fspl_avg_db;
    case GridMetric::fspl_max_db:
        return summary.fspl_max_db;
    case GridMetric::max_doppler_khz:
        return summary.max_doppler_khz;
    }
    return std::nullopt;
}

std::vector<GridCell> bin_grid(std::span<UserOrbit const> users,
                               std::span<CoverageSummary const> summaries, GridSpec const& spec,
                               GridMetric metric)
{
    if (!(spec.altitude_bin_km > 0.0) || !(spec.inclination_bin_deg > 0.0)) {
        throw std::invalid_argument("grid bin widths must be positive");
    }
    if (users.size() != summaries.size()) {
        throw std::invalid_argument(fmt::format("grid needs one summary per user ({} users, {} summaries)",
                                                users.size(), summaries.size()));
    }
    if (users.empty()) {
        return {};
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (auto const& u : users) {
        lo = std::min(lo, u.altitude_km);
        hi = std::max(hi, u.altitude_km);
    }
    double const abin = spec.altitude_bin_km;
    double const ibin = spec.inclination_bin_deg;
    double const low = spec.altitude_low_km.value_or(std::floor(lo / abin) * abin);
    double const high = spec.altitude_high_km.value_or(std::max(std::ceil(hi / abin) * abin, low + abin));
    auto const alt_bins = std::max<std::int64_t>(1, std::llround(std::ceil((high - low) / abin)));
    auto const inc_bins = std::max<std::int64_t>(1, std::llround(std::ceil(180.0 / ibin)));

    std::vector<double> sums(static_cast<std::size_t>(alt_bins * inc_bins), 0.0);
    std::vector<std::int64_t> counts(sums.size(), 0);
    for (std::size_t k = 0; k < users.size(); ++k) {
        auto const value = metric_value(summaries[k], metric);
        if (!value) {
            continue;
        }
        auto a = static_cast<std::int64_t>(std::floor((users[k].altitude_km - low) / abin));
        auto i = static_cast<std::int64_t>(std::floor(users[k].inclination_deg / ibin));
        if (a < 0 || a > alt_bins || users[k].altitude_km > high) {
            continue;  // outside an explicit span
        }
        a = std::min(a, alt_bins - 1);
        i = std::clamp<std::int64_t>(i, 0, inc_bins - 1);
        auto const cell = static_cast<std::size_t>(a * inc_bins + i);
        sums[cell] += *value;
        ++counts[cell];
    }

    std::vector<GridCell> cells;
    cells.reserve(sums.size());
    for (std::int64_t a = 0; a < alt_bins; ++a) {
        for (std::int64_t i = 0; i < inc_bins; ++i) {
            auto const cell = static_cast<std::size_t>(a * inc_bins + i);
            GridCell g{low + static_cast<double>(a) * abin, static_cast<double>(i) * ibin, std::nullopt,
                       counts[cell]};
            if (counts[cell] > 0) {
                g.value = sums[cell] / static_cast<double>(counts[cell]);
            }
            cells.push_back(g);
        }
    }
    return cells;
}

}  // namespace megalink
