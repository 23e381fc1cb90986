#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "megalink/scenario.hpp"

using namespace megalink;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::string slurp(fs::path const& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ordered_json small_config(std::string const& out)
{
    return ordered_json::parse(R"({
      "duration": 1800, "step": 30, "seed": 5,
      "constellations": [
        {"name": "low", "source": {"walker": [{"altitude_km": 600, "inclination_deg": 60,
                                                "plane_count": 6, "sats_per_plane": 8}]}},
        {"name": "high", "source": {"walker": [{"altitude_km": 1200, "inclination_deg": 88,
                                                 "plane_count": 4, "sats_per_plane": 10}]}}
      ],
      "users": [{"population": {"count": 6, "band_count": 2}}, {"preset": "iss"}],
      "policy": {"kind": "random"},
      "output_directory": ")" + out + R"("
    })");
}

bool mentions(std::vector<Diagnostic> const& d, std::string const& text, Diagnostic::Severity sev)
{
    for (auto const& x : d) {
        if (x.severity == sev && x.message.find(text) != std::string::npos) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("config defaults and echo")
{
    auto const c = config_from_json(ordered_json::parse(R"({"constellations": ["oneweb"], "users": {"preset": "iss"}})"));
    CHECK(c.epoch.to_iso() == "2021-03-20T09:37:29.000Z");
    CHECK(c.duration_s == 86400.0);
    CHECK(c.step_s == 10.0);
    CHECK(c.min_elevation_deg == 25.0);
    CHECK(c.carrier_frequency_hz == 10.7e9);
    CHECK(c.resolved_reporting_mode() == ReportingMode::serving_only);
    auto const echo = config_to_json(c);
    CHECK(echo["constellations"][0]["source"]["walker"].size() == 2);
    CHECK(echo["reporting_mode"] == "serving_only");
    auto const again = config_from_json(echo);
    CHECK(config_to_json(again) == echo);
}

TEST_CASE("config errors name the key")
{
    auto bad = [](char const* text) {
        try {
            config_from_json(ordered_json::parse(text));
        } catch (ConfigError const& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(bad(R"({"constellations": ["oneweb"], "users": {"preset": "iss"}, "stepp": 5})").find("stepp") != std::string::npos);
    CHECK(bad(R"({"constellations": ["iridium"], "users": {"preset": "iss"}})").find("iridium") != std::string::npos);
    CHECK(bad(R"({"constellations": ["oneweb"], "users": {"preset": "gto"}})").find("gto") != std::string::npos);
    CHECK(bad(R"({"constellations": ["oneweb"], "users": {"preset": "iss"}, "step": "ten"})").find("step") != std::string::npos);
    CHECK(!bad(R"({"users": {"preset": "iss"}})").empty());
}

TEST_CASE("validation diagnostics")
{
    auto c = config_from_json(ordered_json::parse(R"({
      "constellations": ["starlink"],
      "users": {"explicit": {"altitude_km": 1300, "inclination_deg": 40}},
      "step": 7, "policy": "random"})"));
    auto const d = validate(c);
    CHECK(mentions(d, "no coverage geometrically possible", Diagnostic::Severity::warning));
    CHECK(mentions(d, "does not divide", Diagnostic::Severity::warning));
    CHECK(mentions(d, "random policy needs a seed", Diagnostic::Severity::error));
    CHECK(has_errors(d));
    c.carrier_frequency_hz = 60e9;
    c.seed = 1;
    auto const d2 = validate(c);
    CHECK(mentions(d2, "outside 1-50 GHz", Diagnostic::Severity::warning));
    CHECK_FALSE(has_errors(d2));

    auto p = config_from_json(ordered_json::parse(R"({"constellations": ["oneweb"], "users": {"population": {}}})"));
    CHECK(has_errors(validate(p)));
}

TEST_CASE("bundled fleets propagate 5124 satellites")
{
    auto c = config_from_json(ordered_json::parse(R"({"constellations": ["oneweb", "starlink"],
        "users": {"preset": "iss"}, "duration": 10, "step": 10})"));
    auto const r = run_scenario(c, false);
    CHECK(r.fleet_sizes == std::vector<std::size_t>{716, 4408});
    CHECK(r.sat_catalog_ids.size() == 5124);
    CHECK(r.steps == 2);
    CHECK(r.groups.size() == 3);
    CHECK(r.groups[0].summaries[0].steps == 2);
}

TEST_CASE("outputs are byte identical across thread counts")
{
    auto const base = fs::temp_directory_path() / "megalink_scenario_test";
    std::vector<std::string> files{"summary.json", "population.csv", "passes_low.csv", "passes_high.csv",
                                   "passes_combined.csv", "grid_low.csv", "grid_combined.csv"};
    std::map<std::string, std::string> first;
    for (int threads : {1, 2, 8}) {
        fs::remove_all(base);
        auto const dir = base / "out";
        auto c = config_from_json(small_config(dir.string()));
        c.options.threads = threads;
        auto const r = run_scenario(c);
        write_outputs(r, c.output_directory);
        for (auto const& f : files) {
            auto const text = slurp(dir / f);
            CHECK(!text.empty());
            if (threads == 1) {
                first[f] = text;
            } else {
                CHECK_MESSAGE(text == first[f], f);
            }
        }
        CHECK(fs::exists(dir / "manifest.json"));
    }
    CHECK(first["population.csv"].rfind("user_id,alt_km,inc_deg,raan_deg,ma_deg,tag\n", 0) == 0);
    CHECK(first["passes_low.csv"].rfind("user_id,kind,sat_id,start_iso,end_iso,duration_min\n", 0) == 0);
    CHECK(first["grid_low.csv"].rfind("alt_bin_low_km,inc_bin_low_deg,metric,value,count\n", 0) == 0);

    auto const summary = ordered_json::parse(first["summary.json"]);
    CHECK(summary["users"].size() == 11);
    CHECK(summary["config"]["policy"]["seed"] == 5);
    fs::remove_all(base);
}

TEST_CASE("coverage equals summed access time on a run")
{
    auto c = config_from_json(small_config((fs::temp_directory_path() / "megalink_cov").string()));
    auto const r = run_scenario(c, false);
    for (auto const& g : r.groups) {
        for (std::size_t u = 0; u < r.users.size(); ++u) {
            std::int64_t steps = 0;
            for (auto const& a : g.accesses[u]) {
                steps += a.end_step - a.start_step + 1;
            }
            CHECK(g.summaries[u].coverage_probability ==
                  static_cast<double>(steps) / static_cast<double>(r.steps));
        }
    }
}

TEST_CASE("unwritable output directory aborts before the loop")
{
    auto const blocker = fs::temp_directory_path() / "megalink_blocker";
    fs::remove_all(blocker);
    std::ofstream(blocker) << "file, not a directory";
    auto c = config_from_json(small_config((blocker / "out").string()));
    CHECK_THROWS_AS(run_scenario(c), std::runtime_error);
    fs::remove(blocker);
}
