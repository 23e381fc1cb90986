#include "megalink/population.hpp"

#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "megalink/constants.hpp"

namespace megalink {

std::string to_string(UserTag tag)
{
    switch (tag) {
    case UserTag::montecarlo:
        return "montecarlo";
    case UserTag::shell_band:
        return "shell_band";
    case UserTag::iss_preset:
        return "iss_preset";
    case UserTag::sso_preset:
        return "sso_preset";
    case UserTag::explicit_user:
        return "explicit";
    }
    return "unknown";
}

UserTag user_tag_from_string(std::string const& text)
{
    for (auto tag : {UserTag::montecarlo, UserTag::shell_band, UserTag::iss_preset,
                     UserTag::sso_preset, UserTag::explicit_user}) {
        if (to_string(tag) == text) {
            return tag;
        }
    }
    throw std::invalid_argument(fmt::format("unknown user tag '{}'", text));
}

void PopulationSpec::validate() const
{
    if (count < 0 || band_count < 0) {
        throw std::invalid_argument("population counts must be non-negative");
    }
    auto check = [](AltitudeBand const& b) {
        if (!(b.low_km > 0.0 && b.high_km >= b.low_km)) {
            throw std::invalid_argument(
                fmt::format("altitude band [{}, {}] km is invalid", b.low_km, b.high_km));
        }
    };
    check(altitude);
    for (auto const& b : bands) {
        check(b);
    }
}

std::vector<UserSpec> generate_population(PopulationSpec const& spec, std::uint64_t seed,
                                          UtcInstant const& epoch)
{
    spec.validate();
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> inclination(0.0, 180.0);
    std::uniform_real_distribution<double> angle(0.0, 360.0);

    std::vector<UserSpec> users;
    auto draw = [&](AltitudeBand const& band, int n, UserTag tag) {
        std::uniform_real_distribution<double> altitude(band.low_km, band.high_km);
        for (int k = 0; k < n; ++k) {
            UserSpec u;
            u.user_id = static_cast<int>(users.size());
            u.tag = tag;
            u.elements.semi_major_axis_km = kEarthRadiusKm + altitude(rng);
            u.elements.eccentricity = 0.0;
            u.elements.inclination_deg = inclination(rng);
            u.elements.raan_deg = angle(rng);
            u.elements.arg_perigee_deg = 0.0;
            u.elements.mean_anomaly_deg = angle(rng);
            u.elements.epoch = epoch;
            users.push_back(u);
        }
    };
    draw(spec.altitude, spec.count, UserTag::montecarlo);
    for (auto const& band : spec.bands) {
        draw(band, spec.band_count, UserTag::shell_band);
    }
    return users;
}

UserSpec preset(std::string const& name, UtcInstant const& epoch, double raan_deg,
                double mean_anomaly_deg)
{
    UserSpec u;
    u.user_id = 0;
    u.elements.eccentricity = 0.0;
    u.elements.raan_deg = raan_deg;
    u.elements.mean_anomaly_deg = mean_anomaly_deg;
    u.elements.epoch = epoch;
    if (name == "iss") {
        u.tag = UserTag::iss_preset;
        u.elements.semi_major_axis_km = kEarthRadiusKm + 420.0;
        u.elements.inclination_deg = 51.6;
    } else if (name == "sso_eo") {
        u.tag = UserTag::sso_preset;
        u.elements.semi_major_axis_km = kEarthRadiusKm + 500.0;
        u.elements.inclination_deg = sun_synchronous_inclination_deg(500.0);
    } else {
        throw std::invalid_argument(fmt::format("unknown preset '{}' (expected iss or sso_eo)", name));
    }
    return u;
}

}  // namespace megalink
