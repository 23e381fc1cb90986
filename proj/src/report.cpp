#include "megalink/report.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

#include "megalink/serialize.hpp"

namespace megalink {
namespace {

using nlohmann::ordered_json;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string render() const
    {
        std::vector<std::size_t> width(header.size(), 0);
        auto widen = [&](std::vector<std::string> const& r) {
            for (std::size_t c = 0; c < r.size(); ++c) {
                width[c] = std::max(width[c], r[c].size());
            }
        };
        widen(header);
        for (auto const& r : rows) {
            widen(r);
        }
        auto line = [&](std::vector<std::string> const& r) {
            std::string s = fmt::format("{:<{}}", r[0], width[0]);
            for (std::size_t c = 1; c < r.size(); ++c) {
                s += fmt::format("  {:>{}}", r[c], width[c]);
            }
            return s + "\n";
        };
        std::string out = line(header);
        std::size_t total = width[0];
        for (std::size_t c = 1; c < width.size(); ++c) {
            total += 2 + width[c];
        }
        out += std::string(total, '-') + "\n";
        for (auto const& r : rows) {
            out += line(r);
        }
        return out;
    }
};

std::string num(std::optional<double> v)
{
    return v ? fmt::format("{:.2f}", *v) : std::string("-");
}

std::string range(std::optional<double> lo, std::optional<double> hi)
{
    return lo && hi ? fmt::format("[{:.2f}, {:.2f}]", *lo, *hi) : std::string("-");
}

std::vector<std::string> group_names(ordered_json const& summary)
{
    std::vector<std::string> out;
    for (auto const& g : summary.at("groups")) {
        out.push_back(g.at("name").get<std::string>());
    }
    return out;
}

std::string title_case(std::string const& name)
{
    if (name == "oneweb") {
        return "OneWeb";
    }
    if (name == "starlink") {
        return "Starlink";
    }
    if (name == "eutelsat_geo") {
        return "Eutelsat";
    }
    if (name == "combined") {
        return "Combined";
    }
    return name;
}

std::optional<double> opt_number(ordered_json const& j, char const* key)
{
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return std::nullopt;
    }
    return it->get<double>();
}

}  // namespace

ordered_json read_json_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open '{}': file not found or unreadable", path));
    }
    try {
        return ordered_json::parse(in);
    } catch (nlohmann::json::exception const& e) {
        throw std::runtime_error(fmt::format("'{}' is not valid JSON: {}", path, e.what()));
    }
}

std::string render_user_table(ordered_json const& summary, std::optional<int> user_id)
{
    auto const& users = summary.at("users");
    ordered_json const* user = nullptr;
    if (user_id) {
        for (auto const& u : users) {
            if (u.at("user_id").get<int>() == *user_id) {
                user = &u;
            }
        }
        if (user == nullptr) {
            throw std::runtime_error(fmt::format("summary has no user {}", *user_id));
        }
    } else {
        if (users.size() != 1) {
            throw std::runtime_error(
                fmt::format("summary holds {} users; pick one with --user", users.size()));
        }
        user = &users[0];
    }

    auto const names = group_names(summary);
    Table t;
    t.header.push_back(fmt::format("User {} ({}, {:.1f} km, {:.2f} deg)", user->at("user_id").get<int>(),
                                   user->at("tag").get<std::string>(),
                                   user->at("altitude_km").get<double>(),
                                   user->at("inclination_deg").get<double>()));
    std::vector<CoverageSummary> s;
    for (auto const& n : names) {
        t.header.push_back(title_case(n));
        s.push_back(summary_from_json(user->at("groups").at(n)));
    }
    auto row = [&](std::string label, auto cell) {
        std::vector<std::string> r{std::move(label)};
        for (auto const& x : s) {
            r.push_back(cell(x));
        }
        t.rows.push_back(std::move(r));
    };
    row("Coverage Probability [%]",
        [](CoverageSummary const& x) { return fmt::format("{:.2f}", 100.0 * x.coverage_probability); });
    row("Avg. Access [min]", [](CoverageSummary const& x) { return fmt::format("{:.2f}", x.avg_access_min); });
    row("# Visible Satellites",
        [](CoverageSummary const& x) { return fmt::format("[{}, {}]", x.visible_min, x.visible_max); });
    row("Avg. # Visible Satellites",
        [](CoverageSummary const& x) { return fmt::format("{:.2f}", x.visible_avg); });
    row("FSPL [dB]", [](CoverageSummary const& x) { return range(x.fspl_min_db, x.fspl_max_db); });
    row("Avg. FSPL [dB]", [](CoverageSummary const& x) { return num(x.fspl_avg_db); });
    row("Max. Doppler [kHz]", [](CoverageSummary const& x) { return num(x.max_doppler_khz); });

    std::vector<std::string> labels;
    for (auto const& x : s) {
        for (auto const& [k, v] : x.usage_fraction) {
            if (std::find(labels.begin(), labels.end(), k) == labels.end()) {
                labels.push_back(k);
            }
        }
    }
    for (auto const& k : labels) {
        row(fmt::format("{} Usage [%]", title_case(k)), [&](CoverageSummary const& x) {
            auto it = x.usage_fraction.find(k);
            return it == x.usage_fraction.end() ? std::string("-") : fmt::format("{:.2f}", 100.0 * it->second);
        });
    }
    return t.render();
}

std::string render_aggregate_table(ordered_json const& summary)
{
    auto const names = group_names(summary);
    auto const& agg = summary.at("aggregates");
    Table t;
    t.header.push_back("Metric");
    for (auto const& n : names) {
        t.header.push_back(title_case(n));
    }
    auto row = [&](std::string label, auto cell) {
        std::vector<std::string> r{std::move(label)};
        for (auto const& n : names) {
            r.push_back(cell(agg.at(n)));
        }
        t.rows.push_back(std::move(r));
    };
    row("Min. FSPL [dB]", [](ordered_json const& a) { return num(opt_number(a, "fspl_min_db")); });
    row("Avg. FSPL [dB]", [](ordered_json const& a) { return num(opt_number(a, "fspl_avg_db")); });
    row("Max. FSPL [dB]", [](ordered_json const& a) { return num(opt_number(a, "fspl_max_db")); });
    row("Max. Doppler Offset [kHz]", [](ordered_json const& a) { return num(opt_number(a, "max_doppler_khz")); });
    row("Avg. Access Duration [min]", [](ordered_json const& a) { return num(opt_number(a, "avg_access_min")); });
    row("Max. Access Duration [min]", [](ordered_json const& a) { return num(opt_number(a, "max_access_min")); });
    row("Overall Coverage [%]", [](ordered_json const& a) { return num(opt_number(a, "coverage_percent")); });
    row("Avg. # Visible Satellites", [](ordered_json const& a) { return num(opt_number(a, "avg_visible")); });
    row("Users", [](ordered_json const& a) { return fmt::format("{}", a.at("headline_users").get<long long>()); });
    return t.render();
}

std::string render_report(ordered_json const& summary, std::optional<int> user_id)
{
    if (user_id || summary.at("users").size() == 1) {
        return render_user_table(summary, user_id);
    }
    return render_aggregate_table(summary);
}

std::vector<GridCell> grid_from_summary(ordered_json const& summary, std::string const& group,
                                        GridSpec const& spec, GridMetric metric)
{
    std::vector<UserOrbit> orbits;
    std::vector<CoverageSummary> sums;
    for (auto const& u : summary.at("users")) {
        auto const& groups = u.at("groups");
        if (!groups.contains(group)) {
            throw std::runtime_error(fmt::format("summary has no group '{}'", group));
        }
        orbits.push_back({u.at("altitude_km").get<double>(), u.at("inclination_deg").get<double>()});
        sums.push_back(summary_from_json(groups.at(group)));
    }
    return bin_grid(orbits, sums, spec, metric);
}

std::string grid_csv(std::vector<GridCell> const& cells, GridMetric metric)
{
    std::string csv = "alt_bin_low_km,inc_bin_low_deg,metric,value,count\n";
    for (auto const& c : cells) {
        csv += fmt::format("{},{},{},{},{}\n", c.alt_bin_low_km, c.inc_bin_low_deg, to_string(metric),
                           c.value ? fmt::format("{}", *c.value) : std::string(), c.count);
    }
    return csv;
}

}  // namespace megalink
