#include "megalink/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include <fmt/format.h>

#include "megalink/constants.hpp"
#include "megalink/engine.hpp"
#include "megalink/serialize.hpp"

namespace megalink {
namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

// Object view that remembers which keys were read so leftovers can be
// reported as typos.
class Fields {
public:
    Fields(ordered_json const& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object()) {
            throw ConfigError(fmt::format("{} must be an object", where()));
        }
    }

    bool has(char const* key)
    {
        seen_.insert(key);
        return j_.contains(key) && !j_.at(key).is_null();
    }

    ordered_json const& at(char const* key)
    {
        seen_.insert(key);
        if (!j_.contains(key)) {
            throw ConfigError(fmt::format("{} is missing '{}'", where(), key));
        }
        return j_.at(key);
    }

    template <class T>
    T get(char const* key)
    {
        return convert<T>(at(key), key);
    }

    template <class T>
    T get_or(char const* key, T fallback)
    {
        return has(key) ? convert<T>(j_.at(key), key) : fallback;
    }

    std::string child(char const* key) const { return path_ + "." + key; }

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) {
                throw ConfigError(fmt::format("{} has unknown key '{}'", where(), it.key()));
            }
        }
    }

private:
    std::string where() const { return path_.empty() ? "config" : path_; }

    template <class T>
    T convert(ordered_json const& v, char const* key) const
    {
        try {
            if constexpr (std::is_same_v<T, double>) {
                if (!v.is_number()) {
                    throw ConfigError("");
                }
            }
            return v.get<T>();
        } catch (std::exception const&) {
            throw ConfigError(fmt::format("{}.{} has the wrong type", where(), key));
        }
    }

    ordered_json const& j_;
    std::string path_;
    std::set<std::string> seen_;
};

ShellSpec shell_from_json(ordered_json const& j, std::string const& path)
{
    Fields f(j, path);
    ShellSpec s;
    s.altitude_km = f.get<double>("altitude_km");
    s.inclination_deg = f.get<double>("inclination_deg");
    s.plane_count = f.get<int>("plane_count");
    s.sats_per_plane = f.get<int>("sats_per_plane");
    s.raan_span_deg = f.get_or<double>("raan_span_deg", 360.0);
    if (f.has("inter_plane_phase_deg")) {
        s.inter_plane_phase_deg = f.get<double>("inter_plane_phase_deg");
    }
    f.finish();
    return s;
}

BeamModel beam_from_json(ordered_json const& j, std::string const& path)
{
    Fields f(j, path);
    BeamModel b;
    try {
        b.kind = beam_kind_from_string(f.get<std::string>("kind"));
    } catch (std::invalid_argument const& e) {
        throw ConfigError(fmt::format("{}: {}", path, e.what()));
    }
    if (b.kind == BeamKind::fixed_half_cone) {
        b.half_cone_deg = f.get<double>("half_cone_deg");
    }
    f.finish();
    return b;
}

ConstellationSpec constellation_from_json(ordered_json const& j, std::string const& path,
                                          std::string const& base_dir)
{
    if (j.is_string()) {
        try {
            return bundled_constellation(j.get<std::string>());
        } catch (std::invalid_argument const& e) {
            throw ConfigError(fmt::format("{}: {}", path, e.what()));
        }
    }
    Fields f(j, path);
    ConstellationSpec c;
    c.name = f.get<std::string>("name");
    if (f.has("source")) {
        Fields src(f.at("source"), f.child("source"));
        bool const walker = src.has("walker");
        bool const tle = src.has("tle_file");
        if (walker == tle) {
            throw ConfigError(fmt::format("{}.source needs exactly one of 'walker' or 'tle_file'", path));
        }
        if (walker) {
            auto const& shells = src.at("walker");
            if (!shells.is_array() || shells.empty()) {
                throw ConfigError(fmt::format("{}.source.walker must be a non-empty list", path));
            }
            for (std::size_t i = 0; i < shells.size(); ++i) {
                c.shells.push_back(shell_from_json(shells[i], fmt::format("{}.source.walker[{}]", path, i)));
            }
        } else {
            fs::path p = src.get<std::string>("tle_file");
            if (p.is_relative()) {
                p = fs::path(base_dir) / p;
            }
            c.tle_file = p.lexically_normal().string();
        }
        src.finish();
        c.beam = c.tle_file ? BeamModel::fixed(10.5) : BeamModel::earth_limb();
    } else if (is_bundled_constellation(c.name)) {
        c = bundled_constellation(c.name);
    } else {
        throw ConfigError(fmt::format("{} '{}' is not bundled and has no 'source'", path, c.name));
    }
    if (f.has("beam")) {
        c.beam = beam_from_json(f.at("beam"), f.child("beam"));
    }
    if (f.has("headline_max_altitude_km")) {
        c.headline_max_altitude_km = f.get<double>("headline_max_altitude_km");
    }
    f.finish();
    return c;
}

AltitudeBand band_from_json(ordered_json const& j, std::string const& path)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ConfigError(fmt::format("{} must be [low_km, high_km]", path));
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

UserSource user_from_json(ordered_json const& j, std::string const& path)
{
    Fields f(j, path);
    int const kinds = int(f.has("population")) + int(f.has("preset")) + int(f.has("explicit"));
    if (kinds != 1) {
        throw ConfigError(fmt::format("{} needs exactly one of 'population', 'preset' or 'explicit'", path));
    }
    UserSource out;
    if (f.has("population")) {
        Fields p(f.at("population"), f.child("population"));
        PopulationSource src;
        src.spec.count = p.get_or<int>("count", src.spec.count);
        if (p.has("altitude_km")) {
            src.spec.altitude = band_from_json(p.at("altitude_km"), p.child("altitude_km"));
        }
        src.spec.band_count = p.get_or<int>("band_count", src.spec.band_count);
        if (p.has("bands")) {
            auto const& bands = p.at("bands");
            if (!bands.is_array()) {
                throw ConfigError(fmt::format("{} must be a list", p.child("bands")));
            }
            src.spec.bands.clear();
            for (std::size_t i = 0; i < bands.size(); ++i) {
                src.spec.bands.push_back(band_from_json(bands[i], fmt::format("{}[{}]", p.child("bands"), i)));
            }
        }
        if (p.has("seed")) {
            src.seed = p.get<std::uint64_t>("seed");
        }
        p.finish();
        out = src;
    } else if (f.has("preset")) {
        PresetSource src;
        auto const& v = f.at("preset");
        if (v.is_string()) {
            src.name = v.get<std::string>();
        } else {
            Fields p(v, f.child("preset"));
            src.name = p.get<std::string>("name");
            src.raan_deg = p.get_or<double>("raan_deg", 0.0);
            src.mean_anomaly_deg = p.get_or<double>("mean_anomaly_deg", 0.0);
            p.finish();
        }
        if (src.name != "iss" && src.name != "sso_eo") {
            throw ConfigError(fmt::format("{}.preset: unknown preset '{}' (known: iss, sso_eo)", path, src.name));
        }
        out = src;
    } else {
        Fields e(f.at("explicit"), f.child("explicit"));
        ExplicitSource src;
        bool const alt = e.has("altitude_km");
        bool const sma = e.has("semi_major_axis_km");
        if (alt == sma) {
            throw ConfigError(fmt::format("{}.explicit needs exactly one of 'altitude_km' or 'semi_major_axis_km'", path));
        }
        src.elements.semi_major_axis_km =
            alt ? kEarthRadiusKm + e.get<double>("altitude_km") : e.get<double>("semi_major_axis_km");
        src.elements.eccentricity = e.get_or<double>("eccentricity", 0.0);
        src.elements.inclination_deg = e.get<double>("inclination_deg");
        src.elements.raan_deg = e.get_or<double>("raan_deg", 0.0);
        src.elements.arg_perigee_deg = e.get_or<double>("arg_perigee_deg", 0.0);
        src.elements.mean_anomaly_deg = e.get_or<double>("mean_anomaly_deg", 0.0);
        e.finish();
        out = src;
    }
    f.finish();
    return out;
}

ordered_json user_source_to_json(UserSource const& u, std::optional<std::uint64_t> scenario_seed)
{
    if (auto const* p = std::get_if<PopulationSource>(&u)) {
        ordered_json bands = ordered_json::array();
        for (auto const& b : p->spec.bands) {
            bands.push_back({b.low_km, b.high_km});
        }
        auto const seed = p->seed ? p->seed : scenario_seed;
        return {{"population",
                 {{"count", p->spec.count},
                  {"altitude_km", {p->spec.altitude.low_km, p->spec.altitude.high_km}},
                  {"band_count", p->spec.band_count},
                  {"bands", bands},
                  {"seed", seed ? ordered_json(*seed) : ordered_json(nullptr)}}}};
    }
    if (auto const* p = std::get_if<PresetSource>(&u)) {
        return {{"preset",
                 {{"name", p->name}, {"raan_deg", p->raan_deg}, {"mean_anomaly_deg", p->mean_anomaly_deg}}}};
    }
    auto const& e = std::get<ExplicitSource>(u).elements;
    return {{"explicit",
             {{"semi_major_axis_km", e.semi_major_axis_km},
              {"eccentricity", e.eccentricity},
              {"inclination_deg", e.inclination_deg},
              {"raan_deg", e.raan_deg},
              {"arg_perigee_deg", e.arg_perigee_deg},
              {"mean_anomaly_deg", e.mean_anomaly_deg}}}};
}

std::optional<double> combine_caps(std::vector<ConstellationSpec> const& fleets)
{
    double cap = 0.0;
    for (auto const& c : fleets) {
        if (!c.headline_max_altitude_km) {
            return std::nullopt;
        }
        cap = std::max(cap, *c.headline_max_altitude_km);
    }
    return cap;
}

bool is_population_tag(UserTag t)
{
    return t == UserTag::montecarlo || t == UserTag::shell_band;
}

std::string csv_number(double v)
{
    return fmt::format("{}", v);
}

void write_text(fs::path const& path, std::string const& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
    }
    out << text;
    if (!out) {
        throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
    }
}

}  // namespace

ReportingMode ScenarioConfig::resolved_reporting_mode() const
{
    if (reporting_mode) {
        return *reporting_mode;
    }
    return policy.kind == PolicyKind::random ? ReportingMode::all_visible : ReportingMode::serving_only;
}

SelectionPolicy ScenarioConfig::resolved_policy() const
{
    SelectionPolicy p = policy;
    if (!p.seed) {
        p.seed = seed;
    }
    return p;
}

ScenarioConfig config_from_json(ordered_json const& j, std::string const& base_dir)
{
    Fields f(j, "");
    ScenarioConfig c;
    if (f.has("epoch")) {
        try {
            c.epoch = UtcInstant::parse_iso(f.get<std::string>("epoch"));
        } catch (std::invalid_argument const& e) {
            throw ConfigError(fmt::format("config.epoch: {}", e.what()));
        }
    }
    c.duration_s = f.get_or<double>("duration", c.duration_s);
    c.step_s = f.get_or<double>("step", c.step_s);
    c.min_elevation_deg = f.get_or<double>("min_elevation", c.min_elevation_deg);
    c.carrier_frequency_hz = f.get_or<double>("carrier_frequency", c.carrier_frequency_hz);

    auto const& fleets = f.at("constellations");
    if (!fleets.is_array()) {
        throw ConfigError("config.constellations must be a list");
    }
    for (std::size_t i = 0; i < fleets.size(); ++i) {
        c.constellations.push_back(
            constellation_from_json(fleets[i], fmt::format("config.constellations[{}]", i), base_dir));
    }

    auto const& users = f.at("users");
    if (users.is_array()) {
        for (std::size_t i = 0; i < users.size(); ++i) {
            c.users.push_back(user_from_json(users[i], fmt::format("config.users[{}]", i)));
        }
    } else {
        c.users.push_back(user_from_json(users, "config.users"));
    }

    if (f.has("policy")) {
        auto const& p = f.at("policy");
        try {
            if (p.is_string()) {
                c.policy.kind = policy_kind_from_string(p.get<std::string>());
            } else {
                Fields pf(p, "config.policy");
                c.policy.kind = policy_kind_from_string(pf.get<std::string>("kind"));
                if (pf.has("seed")) {
                    c.policy.seed = pf.get<std::uint64_t>("seed");
                }
                pf.finish();
            }
        } catch (std::invalid_argument const& e) {
            throw ConfigError(fmt::format("config.policy: {}", e.what()));
        }
    }
    if (f.has("reporting_mode")) {
        try {
            c.reporting_mode = reporting_mode_from_string(f.get<std::string>("reporting_mode"));
        } catch (std::invalid_argument const& e) {
            throw ConfigError(fmt::format("config.reporting_mode: {}", e.what()));
        }
    }
    if (f.has("seed")) {
        c.seed = f.get<std::uint64_t>("seed");
    }
    c.output_directory = f.get_or<std::string>("output_directory", c.output_directory);

    if (f.has("options")) {
        Fields o(f.at("options"), "config.options");
        auto& opt = c.options;
        opt.grid.altitude_bin_km = o.get_or<double>("altitude_bin_km", opt.grid.altitude_bin_km);
        opt.grid.inclination_bin_deg = o.get_or<double>("inclination_bin_deg", opt.grid.inclination_bin_deg);
        if (o.has("altitude_low_km")) {
            opt.grid.altitude_low_km = o.get<double>("altitude_low_km");
        }
        if (o.has("altitude_high_km")) {
            opt.grid.altitude_high_km = o.get<double>("altitude_high_km");
        }
        opt.threads = o.get_or<int>("threads", opt.threads);
        opt.culling = o.get_or<bool>("culling", opt.culling);
        if (o.has("write_intervals")) {
            opt.write_intervals = o.get<bool>("write_intervals");
        }
        opt.headline_includes_shell_bands =
            o.get_or<bool>("headline_includes_shell_bands", opt.headline_includes_shell_bands);
        opt.block_steps = o.get_or<int>("block_steps", opt.block_steps);
        opt.strict_tle = o.get_or<bool>("strict_tle", opt.strict_tle);
        o.finish();
    }
    f.finish();
    return c;
}

ScenarioConfig load_config(std::string const& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot open config file '{}'", path));
    }
    ordered_json j;
    try {
        j = ordered_json::parse(in, nullptr, true, true);
    } catch (nlohmann::json::parse_error const& e) {
        throw ConfigError(fmt::format("{}: {}", path, e.what()));
    }
    return config_from_json(j, fs::path(path).parent_path().string().empty()
                                   ? std::string(".")
                                   : fs::path(path).parent_path().string());
}

ordered_json config_to_json(ScenarioConfig const& c)
{
    ordered_json j;
    j["epoch"] = c.epoch.to_iso();
    j["duration"] = c.duration_s;
    j["step"] = c.step_s;
    j["min_elevation"] = c.min_elevation_deg;
    j["carrier_frequency"] = c.carrier_frequency_hz;
    ordered_json fleets = ordered_json::array();
    for (auto const& fl : c.constellations) {
        ordered_json e{{"name", fl.name}};
        if (fl.tle_file) {
            e["source"] = {{"tle_file", *fl.tle_file}};
        } else {
            ordered_json shells = ordered_json::array();
            for (auto const& s : fl.shells) {
                shells.push_back(shell_to_json(s));
            }
            e["source"] = {{"walker", shells}};
        }
        e["beam"] = beam_to_json(fl.beam);
        e["headline_max_altitude_km"] = fl.headline_max_altitude_km
                                            ? ordered_json(*fl.headline_max_altitude_km)
                                            : ordered_json(nullptr);
        fleets.push_back(e);
    }
    j["constellations"] = fleets;
    ordered_json users = ordered_json::array();
    for (auto const& u : c.users) {
        users.push_back(user_source_to_json(u, c.seed));
    }
    j["users"] = users;
    auto const policy = c.resolved_policy();
    j["policy"] = {{"kind", to_string(policy.kind)},
                   {"seed", policy.seed ? ordered_json(*policy.seed) : ordered_json(nullptr)}};
    j["reporting_mode"] = to_string(c.resolved_reporting_mode());
    j["seed"] = c.seed ? ordered_json(*c.seed) : ordered_json(nullptr);
    j["output_directory"] = c.output_directory;
    auto const& o = c.options;
    j["options"] = {
        {"altitude_bin_km", o.grid.altitude_bin_km},
        {"inclination_bin_deg", o.grid.inclination_bin_deg},
        {"altitude_low_km", o.grid.altitude_low_km ? ordered_json(*o.grid.altitude_low_km) : ordered_json(nullptr)},
        {"altitude_high_km", o.grid.altitude_high_km ? ordered_json(*o.grid.altitude_high_km) : ordered_json(nullptr)},
        {"culling", o.culling},
        {"write_intervals", o.write_intervals ? ordered_json(*o.write_intervals) : ordered_json(nullptr)},
        {"headline_includes_shell_bands", o.headline_includes_shell_bands},
        {"block_steps", o.block_steps},
        {"strict_tle", o.strict_tle},
    };
    return j;
}

std::string to_string(Diagnostic::Severity severity)
{
    return severity == Diagnostic::Severity::error ? "error" : "warning";
}

bool has_errors(std::vector<Diagnostic> const& diagnostics)
{
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](Diagnostic const& d) { return d.severity == Diagnostic::Severity::error; });
}

std::vector<UserSpec> build_users(ScenarioConfig const& config)
{
    std::vector<UserSpec> out;
    for (auto const& src : config.users) {
        if (auto const* p = std::get_if<PopulationSource>(&src)) {
            auto const seed = p->seed ? p->seed : config.seed;
            if (!seed) {
                throw ConfigError("a population needs a seed (population.seed or the scenario seed)");
            }
            for (auto& u : generate_population(p->spec, *seed, config.epoch)) {
                out.push_back(u);
            }
        } else if (auto const* p = std::get_if<PresetSource>(&src)) {
            out.push_back(preset(p->name, config.epoch, p->raan_deg, p->mean_anomaly_deg));
        } else {
            UserSpec u;
            u.elements = std::get<ExplicitSource>(src).elements;
            u.elements.epoch = config.epoch;
            u.elements.validate();
            u.tag = UserTag::explicit_user;
            out.push_back(u);
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].user_id = static_cast<int>(i);
    }
    return out;
}

std::vector<Diagnostic> validate(ScenarioConfig const& c)
{
    std::vector<Diagnostic> d;
    auto error = [&](std::string m) { d.push_back({Diagnostic::Severity::error, std::move(m)}); };
    auto warn = [&](std::string m) { d.push_back({Diagnostic::Severity::warning, std::move(m)}); };

    if (!(c.step_s > 0.0)) {
        error(fmt::format("step must be positive (got {} s)", c.step_s));
    } else if (!(c.duration_s >= c.step_s)) {
        error(fmt::format("duration {} s is shorter than one step of {} s", c.duration_s, c.step_s));
    } else {
        double const ratio = c.duration_s / c.step_s;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
            warn(fmt::format("step {} s does not divide duration {} s; the last {} s are not sampled",
                             c.step_s, c.duration_s,
                             c.duration_s - std::floor(ratio + 1e-9) * c.step_s));
        }
    }
    if (!(c.min_elevation_deg >= -90.0 && c.min_elevation_deg <= 90.0)) {
        error(fmt::format("min_elevation {} deg outside [-90, 90]", c.min_elevation_deg));
    } else if (c.min_elevation_deg < 0.0 && c.options.culling) {
        warn("negative min_elevation disables culling; every pair is evaluated");
    }
    if (!(c.carrier_frequency_hz > 0.0)) {
        error(fmt::format("carrier_frequency must be positive (got {} Hz)", c.carrier_frequency_hz));
    } else if (c.carrier_frequency_hz < 1e9 || c.carrier_frequency_hz > 50e9) {
        warn(fmt::format("carrier_frequency {} GHz is outside 1-50 GHz", c.carrier_frequency_hz / 1e9));
    }
    if (c.policy.kind == PolicyKind::random && !c.resolved_policy().seed) {
        error("random policy needs a seed (policy.seed or the scenario seed)");
    }
    if (c.options.threads < 0) {
        error("options.threads must be >= 0");
    }
    if (c.options.block_steps < 1) {
        error("options.block_steps must be >= 1");
    }
    if (!(c.options.grid.altitude_bin_km > 0.0) || !(c.options.grid.inclination_bin_deg > 0.0)) {
        error("grid bin widths must be positive");
    }

    if (c.constellations.empty()) {
        error("at least one constellation is required");
    }
    std::set<std::string> names;
    double top_km = -1.0;
    std::string top_name;
    TleParseOptions tle_opt{c.options.strict_tle ? TleStrictness::strict : TleStrictness::lenient};
    for (auto const& fl : c.constellations) {
        if (!names.insert(fl.name).second) {
            error(fmt::format("constellation name '{}' is used twice", fl.name));
        }
        if (fl.name == "combined") {
            error("'combined' is reserved for the union of all constellations");
        }
        try {
            fl.validate();
            double top = 0.0;
            if (fl.tle_file) {
                std::vector<std::string> warnings;
                auto const sets = read_tle_file(*fl.tle_file, tle_opt, &warnings);
                for (auto const& w : warnings) {
                    warn(fmt::format("{}: {}", fl.name, w));
                }
                if (sets.empty()) {
                    error(fmt::format("{}: TLE file '{}' holds no records", fl.name, *fl.tle_file));
                }
                top = highest_altitude_km(sets);
            } else {
                for (auto const& s : fl.shells) {
                    top = std::max(top, s.altitude_km);
                }
            }
            if (top > top_km) {
                top_km = top;
                top_name = fl.name;
            }
        } catch (std::exception const& e) {
            error(fmt::format("{}: {}", fl.name, e.what()));
        }
    }

    if (c.users.empty()) {
        error("at least one user is required");
    }
    std::vector<UserSpec> users;
    try {
        for (auto const& src : c.users) {
            if (auto const* p = std::get_if<PopulationSource>(&src)) {
                p->spec.validate();
            }
        }
        users = build_users(c);
    } catch (std::exception const& e) {
        error(e.what());
    }
    if (top_km >= 0.0 && !users.empty()) {
        std::vector<UserSpec const*> above;
        for (auto const& u : users) {
            double const perigee_alt =
                u.elements.semi_major_axis_km * (1.0 - u.elements.eccentricity) - kEarthRadiusKm;
            if (perigee_alt > top_km) {
                above.push_back(&u);
            }
        }
        if (above.size() <= 5) {
            for (auto const* u : above) {
                warn(fmt::format("user {} at {:.1f} km is above every constellation shell (highest {:.1f} km, "
                                 "{}): no coverage geometrically possible",
                                 u->user_id, u->elements.altitude_km(), top_km, top_name));
            }
        } else {
            warn(fmt::format("{} of {} users are above every constellation shell (highest {:.1f} km, {}): "
                             "no coverage geometrically possible for them",
                             above.size(), users.size(), top_km, top_name));
        }
    }
    return d;
}

GroupResult const& ScenarioResult::group(std::string const& name) const
{
    for (auto const& g : groups) {
        if (g.name == name) {
            return g;
        }
    }
    throw std::out_of_range(fmt::format("no result group '{}'", name));
}

std::vector<std::size_t> ScenarioResult::headline_users(GroupResult const& g) const
{
    bool population = false;
    for (auto const& u : users) {
        population = population || is_population_tag(u.tag);
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < users.size(); ++i) {
        auto const& u = users[i];
        if (population) {
            bool const tagged = u.tag == UserTag::montecarlo ||
                                (u.tag == UserTag::shell_band && config.options.headline_includes_shell_bands);
            if (!tagged) {
                continue;
            }
            if (g.headline_max_altitude_km && u.elements.altitude_km() > *g.headline_max_altitude_km) {
                continue;
            }
        }
        out.push_back(i);
    }
    return out;
}

GroupAggregate ScenarioResult::aggregate(GroupResult const& g) const
{
    GroupAggregate a;
    a.group = g.name;
    auto const idx = headline_users(g);
    a.users = static_cast<std::int64_t>(idx.size());
    double cov = 0.0;
    double vis = 0.0;
    double fspl_sum = 0.0;
    std::int64_t fspl_n = 0;
    double access_sum = 0.0;
    std::int64_t access_n = 0;
    for (auto i : idx) {
        auto const& s = g.summaries[i];
        cov += s.coverage_probability;
        vis += s.visible_avg;
        if (s.fspl_min_db) {
            a.fspl_min_db = a.fspl_min_db ? std::min(*a.fspl_min_db, *s.fspl_min_db) : *s.fspl_min_db;
            a.fspl_max_db = a.fspl_max_db ? std::max(*a.fspl_max_db, *s.fspl_max_db) : *s.fspl_max_db;
            fspl_sum += *s.fspl_avg_db * static_cast<double>(s.link_samples);
            fspl_n += s.link_samples;
        }
        if (s.max_doppler_khz) {
            a.max_doppler_khz =
                a.max_doppler_khz ? std::max(*a.max_doppler_khz, *s.max_doppler_khz) : *s.max_doppler_khz;
        }
        access_sum += s.avg_access_min * static_cast<double>(s.access_count);
        access_n += s.access_count;
        a.max_access_min = std::max(a.max_access_min, s.max_access_min);
    }
    if (!idx.empty()) {
        a.coverage_percent = 100.0 * cov / static_cast<double>(idx.size());
        a.avg_visible = vis / static_cast<double>(idx.size());
    }
    if (fspl_n > 0) {
        a.fspl_avg_db = fspl_sum / static_cast<double>(fspl_n);
    }
    if (access_n > 0) {
        a.avg_access_min = access_sum / static_cast<double>(access_n);
    }
    double all = 0.0;
    for (auto const& s : g.summaries) {
        all += s.coverage_probability;
    }
    if (!g.summaries.empty()) {
        a.all_users_coverage_percent = 100.0 * all / static_cast<double>(g.summaries.size());
    }
    return a;
}

void ensure_writable_directory(std::string const& directory)
{
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec) {
        throw std::runtime_error(
            fmt::format("cannot create output directory '{}': {}", directory, ec.message()));
    }
    fs::path const probe = fs::path(directory) / ".megalink-write-test";
    {
        std::ofstream out(probe);
        if (!out || !(out << "ok")) {
            throw std::runtime_error(fmt::format("output directory '{}' is not writable", directory));
        }
    }
    fs::remove(probe, ec);
}

ScenarioResult run_scenario(ScenarioConfig const& config, bool check_output)
{
    auto const diagnostics = validate(config);
    for (auto const& d : diagnostics) {
        if (d.severity == Diagnostic::Severity::error) {
            throw ConfigError(d.message);
        }
    }
    if (check_output) {
        ensure_writable_directory(config.output_directory);
    }
    auto const t0 = std::chrono::steady_clock::now();

    ScenarioResult result;
    result.config = config;
    for (auto const& d : diagnostics) {
        result.warnings.push_back(d.message);
    }
    result.users = build_users(config);
    result.steps = step_count(config.duration_s, config.step_s);

    TleParseOptions tle_opt{config.options.strict_tle ? TleStrictness::strict : TleStrictness::lenient};
    std::vector<EngineSatellite> sats;
    int next_id = 1;
    for (std::size_t f = 0; f < config.constellations.size(); ++f) {
        auto const& fl = config.constellations[f];
        auto const sets = constellation_elements(fl, config.epoch, next_id, tle_opt, nullptr);
        if (!fl.tle_file) {
            next_id += static_cast<int>(sets.size());
        }
        for (auto const& tle : sets) {
            EngineSatellite s{Sgp4Propagator(tle), static_cast<int>(f), fl.beam};
            if (s.propagator.init_status() != Sgp4Status::ok) {
                throw PropagationError(tle.catalog_id, tle.name, s.propagator.init_status(), 0.0);
            }
            result.sat_catalog_ids.push_back(tle.catalog_id);
            sats.push_back(std::move(s));
        }
        result.fleet_names.push_back(fl.name);
        result.fleet_sizes.push_back(sets.size());
    }

    std::vector<Sgp4Propagator> user_props;
    user_props.reserve(result.users.size());
    for (auto const& u : result.users) {
        auto tle = elements_to_tle(u.elements, u.user_id, fmt::format("USER {}", u.user_id));
        user_props.emplace_back(tle);
        if (user_props.back().init_status() != Sgp4Status::ok) {
            throw PropagationError(u.user_id, tle.name, user_props.back().init_status(), 0.0);
        }
    }

    // Groups: one per fleet, plus their union when there are several.
    std::size_t const n_fleet = config.constellations.size();
    for (std::size_t f = 0; f < n_fleet; ++f) {
        GroupResult g;
        g.name = config.constellations[f].name;
        g.fleets = {static_cast<int>(f)};
        g.headline_max_altitude_km = config.constellations[f].headline_max_altitude_km;
        result.groups.push_back(std::move(g));
    }
    if (n_fleet > 1) {
        GroupResult g;
        g.name = "combined";
        for (std::size_t f = 0; f < n_fleet; ++f) {
            g.fleets.push_back(static_cast<int>(f));
        }
        g.headline_max_altitude_km = combine_caps(config.constellations);
        result.groups.push_back(std::move(g));
    }
    std::size_t const n_group = result.groups.size();
    bool const keep = config.options.write_intervals.value_or(result.users.size() <= 100);

    std::vector<AccumulatorOptions> acc_opt(n_group);
    for (std::size_t gi = 0; gi < n_group; ++gi) {
        auto& o = acc_opt[gi];
        o.step_s = config.step_s;
        o.frequency_hz = config.carrier_frequency_hz;
        o.mode = config.resolved_reporting_mode();
        o.keep_intervals = keep;
        if (result.groups[gi].fleets.size() > 1) {
            for (auto const& s : sats) {
                o.sat_label.push_back(s.fleet);
            }
            o.label_names = result.fleet_names;
        }
    }

    struct UserState {
        std::vector<CoverageAccumulator> acc;
        std::vector<VisibleSat> subset;
        std::vector<Candidate> candidates;
    };
    std::vector<UserState> states(result.users.size());
    for (auto& st : states) {
        for (std::size_t gi = 0; gi < n_group; ++gi) {
            st.acc.emplace_back(&acc_opt[gi]);
        }
    }

    SelectionPolicy const policy = config.resolved_policy();
    std::vector<int> sat_fleet;
    for (auto const& s : sats) {
        sat_fleet.push_back(s.fleet);
    }

    EngineConfig ec;
    ec.epoch = config.epoch;
    ec.duration_s = config.duration_s;
    ec.step_s = config.step_s;
    ec.min_elevation_deg = config.min_elevation_deg;
    ec.culling = config.options.culling;
    ec.threads = config.options.threads;
    ec.block_steps = config.options.block_steps;

    auto const visit = [&](std::size_t u, std::int64_t step, std::span<VisibleSat const> visible) {
        auto& st = states[u];
        for (std::size_t gi = 0; gi < n_group; ++gi) {
            auto const& g = result.groups[gi];
            std::span<VisibleSat const> view = visible;
            if (g.fleets.size() == 1) {
                st.subset.clear();
                for (auto const& v : visible) {
                    if (sat_fleet[static_cast<std::size_t>(v.sat_id)] == g.fleets[0]) {
                        st.subset.push_back(v);
                    }
                }
                view = st.subset;
            }
            st.candidates.clear();
            for (auto const& v : view) {
                st.candidates.push_back({v.sat_id, v.range_km});
            }
            auto const serving =
                select_serving(st.candidates, policy, step, result.users[u].user_id);
            st.acc[gi].add(step, view, serving);
        }
    };
    run_engine(ec, sats, user_props, visit);

    for (std::size_t gi = 0; gi < n_group; ++gi) {
        auto& g = result.groups[gi];
        for (auto& st : states) {
            st.acc[gi].finish();
            g.summaries.push_back(st.acc[gi].summary());
            if (keep) {
                g.passes.push_back(st.acc[gi].passes());
                g.accesses.push_back(st.acc[gi].accesses());
            }
        }
    }
    result.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

ordered_json summary_document(ScenarioResult const& r)
{
    ordered_json j;
    j["config"] = config_to_json(r.config);
    j["steps"] = r.steps;
    ordered_json groups = ordered_json::array();
    for (auto const& g : r.groups) {
        ordered_json fl = ordered_json::array();
        for (int f : g.fleets) {
            fl.push_back(r.fleet_names[static_cast<std::size_t>(f)]);
        }
        groups.push_back({{"name", g.name},
                          {"constellations", fl},
                          {"headline_max_altitude_km", g.headline_max_altitude_km
                                                           ? ordered_json(*g.headline_max_altitude_km)
                                                           : ordered_json(nullptr)}});
    }
    j["groups"] = groups;

    ordered_json users = ordered_json::array();
    for (std::size_t i = 0; i < r.users.size(); ++i) {
        auto const& u = r.users[i];
        ordered_json e{{"user_id", u.user_id},
                       {"tag", to_string(u.tag)},
                       {"altitude_km", u.elements.altitude_km()},
                       {"inclination_deg", u.elements.inclination_deg},
                       {"raan_deg", u.elements.raan_deg},
                       {"mean_anomaly_deg", u.elements.mean_anomaly_deg}};
        ordered_json per;
        for (auto const& g : r.groups) {
            per[g.name] = summary_to_json(g.summaries[i]);
        }
        e["groups"] = per;
        users.push_back(e);
    }
    j["users"] = users;

    ordered_json agg;
    for (auto const& g : r.groups) {
        auto const a = r.aggregate(g);
        auto opt = [](std::optional<double> v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
        agg[g.name] = {{"headline_users", a.users},
                       {"coverage_percent", a.coverage_percent},
                       {"all_users_coverage_percent", a.all_users_coverage_percent},
                       {"avg_visible", a.avg_visible},
                       {"fspl_min_db", opt(a.fspl_min_db)},
                       {"fspl_avg_db", opt(a.fspl_avg_db)},
                       {"fspl_max_db", opt(a.fspl_max_db)},
                       {"max_doppler_khz", opt(a.max_doppler_khz)},
                       {"avg_access_min", a.avg_access_min},
                       {"max_access_min", a.max_access_min}};
    }
    j["aggregates"] = agg;
    return j;
}

ordered_json manifest_document(ScenarioResult const& r)
{
    ordered_json j;
    j["software"] = "megalink";
    j["version"] = MEGALINK_VERSION;
    j["config"] = config_to_json(r.config);
    auto const policy = r.config.resolved_policy();
    j["seed"] = r.config.seed ? ordered_json(*r.config.seed) : ordered_json(nullptr);
    j["policy_seed"] = policy.seed ? ordered_json(*policy.seed) : ordered_json(nullptr);
    j["carrier_frequency_hz"] = r.config.carrier_frequency_hz;
    ordered_json counts;
    std::size_t total = 0;
    for (std::size_t f = 0; f < r.fleet_names.size(); ++f) {
        counts[r.fleet_names[f]] = r.fleet_sizes[f];
        total += r.fleet_sizes[f];
    }
    j["satellite_counts"] = counts;
    j["satellites_total"] = total;
    j["users"] = r.users.size();
    j["steps"] = r.steps;
    j["pair_evaluations"] = static_cast<double>(total) * static_cast<double>(r.users.size()) *
                            static_cast<double>(r.steps);
    j["wall_clock_s"] = r.elapsed_s;
    j["warnings"] = r.warnings;
    return j;
}

void write_outputs(ScenarioResult const& r, std::string const& directory)
{
    ensure_writable_directory(directory);
    fs::path const dir(directory);
    write_text(dir / "summary.json", summary_document(r).dump(2) + "\n");
    write_text(dir / "manifest.json", manifest_document(r).dump(2) + "\n");

    std::string pop = "user_id,alt_km,inc_deg,raan_deg,ma_deg,tag\n";
    bool population = false;
    for (auto const& u : r.users) {
        pop += fmt::format("{},{},{},{},{},{}\n", u.user_id, csv_number(u.elements.altitude_km()),
                           csv_number(u.elements.inclination_deg), csv_number(u.elements.raan_deg),
                           csv_number(u.elements.mean_anomaly_deg), to_string(u.tag));
        population = population || is_population_tag(u.tag);
    }
    write_text(dir / "population.csv", pop);

    auto const iso = [&](std::int64_t step) {
        return r.config.epoch.plus_seconds(static_cast<double>(step) * r.config.step_s).to_iso();
    };
    for (auto const& g : r.groups) {
        if (!g.passes.empty()) {
            std::string csv = "user_id,kind,sat_id,start_iso,end_iso,duration_min\n";
            for (std::size_t i = 0; i < r.users.size(); ++i) {
                int const uid = r.users[i].user_id;
                for (auto const& p : g.passes[i]) {
                    csv += fmt::format("{},pass,{},{},{},{}\n", uid,
                                       r.sat_catalog_ids[static_cast<std::size_t>(p.sat_id)],
                                       iso(p.start_step), iso(p.end_step), csv_number(p.duration_min));
                }
                for (auto const& a : g.accesses[i]) {
                    csv += fmt::format("{},access,,{},{},{}\n", uid, iso(a.start_step), iso(a.end_step),
                                       csv_number(a.duration_min));
                }
            }
            write_text(dir / fmt::format("passes_{}.csv", g.name), csv);
        }
        if (population) {
            std::vector<UserOrbit> orbits;
            for (auto const& u : r.users) {
                orbits.push_back({u.elements.altitude_km(), u.elements.inclination_deg});
            }
            std::string csv = "alt_bin_low_km,inc_bin_low_deg,metric,value,count\n";
            for (auto m : all_grid_metrics()) {
                for (auto const& cell : bin_grid(orbits, g.summaries, r.config.options.grid, m)) {
                    csv += fmt::format("{},{},{},{},{}\n", csv_number(cell.alt_bin_low_km),
                                       csv_number(cell.inc_bin_low_deg), to_string(m),
                                       cell.value ? csv_number(*cell.value) : std::string(), cell.count);
                }
            }
            write_text(dir / fmt::format("grid_{}.csv", g.name), csv);
        }
    }
}

}  // namespace megalink
