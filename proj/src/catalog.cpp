#include "megalink/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <stdexcept>

#include <fmt/format.h>

#include "megalink/constants.hpp"

#ifndef MEGALINK_DATA_DIR
#define MEGALINK_DATA_DIR "data"
#endif

namespace megalink {
namespace {

ShellSpec shell(double alt, double inc, int planes, int per_plane)
{
    ShellSpec s;
    s.altitude_km = alt;
    s.inclination_deg = inc;
    s.plane_count = planes;
    s.sats_per_plane = per_plane;
    return s;
}

}  // namespace

void ConstellationSpec::validate() const
{
    if (name.empty()) {
        throw std::invalid_argument("constellation needs a name");
    }
    if (shells.empty() == !tle_file.has_value()) {
        throw std::invalid_argument(
            fmt::format("constellation '{}' needs exactly one of walker shells or a TLE file", name));
    }
    for (auto const& s : shells) {
        s.validate();
    }
    beam.validate();
}

std::vector<std::string> bundled_constellation_names()
{
    return {"oneweb", "starlink", "eutelsat_geo"};
}

bool is_bundled_constellation(std::string const& name)
{
    auto const names = bundled_constellation_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::string data_directory()
{
    if (char const* env = std::getenv("MEGALINK_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return MEGALINK_DATA_DIR;
}

ConstellationSpec bundled_constellation(std::string const& name)
{
    ConstellationSpec c;
    c.name = name;
    if (name == "oneweb") {
        c.shells = {shell(1200.0, 87.9, 12, 49), shell(1200.0, 55.0, 8, 16)};
        c.beam = BeamModel::earth_limb();
        c.headline_max_altitude_km = 1200.0;
    } else if (name == "starlink") {
        c.shells = {shell(540.0, 53.2, 72, 22), shell(550.0, 53.0, 72, 22),
                    shell(560.0, 97.6, 6, 58), shell(560.0, 97.6, 4, 43),
                    shell(570.0, 70.0, 36, 20)};
        c.beam = BeamModel::earth_limb();
        c.headline_max_altitude_km = 550.0;
    } else if (name == "eutelsat_geo") {
        c.tle_file = (std::filesystem::path(data_directory()) / "eutelsat_geo.tle").string();
        c.beam = BeamModel::fixed(10.5);
    } else {
        throw std::invalid_argument(fmt::format(
            "unknown bundled constellation '{}' (known: oneweb, starlink, eutelsat_geo)", name));
    }
    return c;
}

std::vector<TwoLineElementSet> constellation_elements(ConstellationSpec const& spec,
                                                      UtcInstant const& epoch,
                                                      int first_catalog_id,
                                                      TleParseOptions options,
                                                      std::vector<std::string>* warnings)
{
    spec.validate();
    std::vector<TwoLineElementSet> out;
    if (spec.tle_file) {
        out = read_tle_file(*spec.tle_file, options, warnings);
        if (out.empty()) {
            throw std::runtime_error(fmt::format("TLE file '{}' holds no records", *spec.tle_file));
        }
        return out;
    }
    int id = first_catalog_id;
    for (std::size_t k = 0; k < spec.shells.size(); ++k) {
        auto const& s = spec.shells[k];
        int slot = 0;
        for (auto const& elements : build_walker(s, epoch)) {
            out.push_back(elements_to_tle(
                elements, id++,
                fmt::format("{} S{} P{:02d} N{:02d}", spec.name, k + 1, slot / s.sats_per_plane,
                            slot % s.sats_per_plane)));
            ++slot;
        }
    }
    return out;
}

double highest_altitude_km(std::vector<TwoLineElementSet> const& elements)
{
    double top = 0.0;
    for (auto const& e : elements) {
        double const a = semi_major_axis_km(e.mean_motion_rev_per_day);
        top = std::max(top, a * (1.0 + e.eccentricity) - kEarthRadiusKm);
    }
    return top;
}

}  // namespace megalink
