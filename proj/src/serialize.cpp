#include "megalink/serialize.hpp"

namespace megalink {
namespace {

using nlohmann::ordered_json;

template <class T>
ordered_json opt(std::optional<T> const& v)
{
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

template <class T>
std::optional<T> read_opt(ordered_json const& j, char const* key)
{
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return std::nullopt;
    }
    return it->get<T>();
}

}  // namespace

ordered_json summary_to_json(CoverageSummary const& s)
{
    ordered_json j;
    j["steps"] = s.steps;
    j["step_s"] = s.step_s;
    j["coverage_probability"] = s.coverage_probability;
    j["access_count"] = s.access_count;
    j["avg_access_min"] = s.avg_access_min;
    j["max_access_min"] = s.max_access_min;
    j["pass_count"] = s.pass_count;
    j["avg_pass_min"] = s.avg_pass_min;
    j["max_pass_min"] = s.max_pass_min;
    j["pass_histogram_1min"] = s.pass_histogram;
    ordered_json counts = ordered_json::array();
    for (auto const& [steps, n] : s.pass_duration_counts) {
        counts.push_back({steps, n});
    }
    j["pass_duration_counts"] = counts;
    j["visible_min"] = s.visible_min;
    j["visible_avg"] = s.visible_avg;
    j["visible_max"] = s.visible_max;
    j["visible_histogram"] = s.visible_histogram;
    j["link_samples"] = s.link_samples;
    j["fspl_min_db"] = opt(s.fspl_min_db);
    j["fspl_avg_db"] = opt(s.fspl_avg_db);
    j["fspl_max_db"] = opt(s.fspl_max_db);
    j["fspl_histogram_low_db"] = s.fspl_histogram_low_db;
    j["fspl_histogram_1db"] = s.fspl_histogram;
    j["max_doppler_khz"] = opt(s.max_doppler_khz);
    j["doppler_histogram_10khz"] = s.doppler_histogram;
    if (!s.usage_fraction.empty()) {
        j["usage_fraction"] = s.usage_fraction;
    }
    return j;
}

CoverageSummary summary_from_json(ordered_json const& j)
{
    CoverageSummary s;
    s.steps = j.at("steps").get<std::int64_t>();
    s.step_s = j.at("step_s").get<double>();
    s.coverage_probability = j.at("coverage_probability").get<double>();
    s.access_count = j.at("access_count").get<std::int64_t>();
    s.avg_access_min = j.at("avg_access_min").get<double>();
    s.max_access_min = j.at("max_access_min").get<double>();
    s.pass_count = j.at("pass_count").get<std::int64_t>();
    s.avg_pass_min = j.at("avg_pass_min").get<double>();
    s.max_pass_min = j.at("max_pass_min").get<double>();
    s.pass_histogram = j.value("pass_histogram_1min", std::vector<std::int64_t>{});
    if (auto it = j.find("pass_duration_counts"); it != j.end()) {
        for (auto const& pair : *it) {
            s.pass_duration_counts[pair.at(0).get<std::int64_t>()] = pair.at(1).get<std::int64_t>();
        }
    }
    s.visible_min = j.at("visible_min").get<int>();
    s.visible_avg = j.at("visible_avg").get<double>();
    s.visible_max = j.at("visible_max").get<int>();
    s.visible_histogram = j.value("visible_histogram", std::vector<std::int64_t>{});
    s.link_samples = j.value("link_samples", std::int64_t{0});
    s.fspl_min_db = read_opt<double>(j, "fspl_min_db");
    s.fspl_avg_db = read_opt<double>(j, "fspl_avg_db");
    s.fspl_max_db = read_opt<double>(j, "fspl_max_db");
    s.fspl_histogram_low_db = j.value("fspl_histogram_low_db", 0);
    s.fspl_histogram = j.value("fspl_histogram_1db", std::vector<std::int64_t>{});
    s.max_doppler_khz = read_opt<double>(j, "max_doppler_khz");
    s.doppler_histogram = j.value("doppler_histogram_10khz", std::vector<std::int64_t>{});
    if (auto it = j.find("usage_fraction"); it != j.end()) {
        s.usage_fraction = it->get<std::map<std::string, double>>();
    }
    return s;
}

ordered_json shell_to_json(ShellSpec const& s)
{
    return {{"altitude_km", s.altitude_km},
            {"inclination_deg", s.inclination_deg},
            {"plane_count", s.plane_count},
            {"sats_per_plane", s.sats_per_plane},
            {"raan_span_deg", s.raan_span_deg},
            {"inter_plane_phase_deg", s.resolved_phase_deg()}};
}

ordered_json beam_to_json(BeamModel const& b)
{
    ordered_json j{{"kind", to_string(b.kind)}};
    if (b.kind == BeamKind::fixed_half_cone) {
        j["half_cone_deg"] = b.half_cone_deg;
    }
    return j;
}

}  // namespace megalink
