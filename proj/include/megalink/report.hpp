#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "megalink/metrics.hpp"

namespace megalink {

/// Parses a JSON file; throws std::runtime_error naming the path on failure.
nlohmann::ordered_json read_json_file(std::string const& path);

/// One column per result group, rows labelled like the per-user tables of a
/// use-case study. Without user_id the summary must hold a single user.
std::string render_user_table(nlohmann::ordered_json const& summary,
                              std::optional<int> user_id = std::nullopt);

/// Population statistics, one column per group.
std::string render_aggregate_table(nlohmann::ordered_json const& summary);

/// Aggregate table for multi-user summaries, per-user table otherwise.
std::string render_report(nlohmann::ordered_json const& summary,
                          std::optional<int> user_id = std::nullopt);

std::vector<GridCell> grid_from_summary(nlohmann::ordered_json const& summary,
                                        std::string const& group, GridSpec const& spec,
                                        GridMetric metric);
/// CSV with header alt_bin_low_km,inc_bin_low_deg,metric,value,count.
std::string grid_csv(std::vector<GridCell> const& cells, GridMetric metric);

}  // namespace megalink
