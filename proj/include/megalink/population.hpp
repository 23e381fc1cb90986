#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "megalink/orbit.hpp"

namespace megalink {

enum class UserTag { montecarlo, shell_band, iss_preset, sso_preset, explicit_user };

std::string to_string(UserTag tag);
UserTag user_tag_from_string(std::string const& text);

struct UserSpec {
    int user_id{0};
    KeplerianElements elements;
    UserTag tag{UserTag::explicit_user};
};

struct AltitudeBand {
    double low_km;
    double high_km;
};

struct PopulationSpec {
    int count{1000};
    AltitudeBand altitude{350.0, 1200.0};
    int band_count{100};  // users per shell band
    std::vector<AltitudeBand> bands{{470.0, 570.0}, {1100.0, 1200.0}};

    void validate() const;
};

/// Circular users: the main stratum first, then each band in order. Angles
/// are uniform over inclination [0, 180], RAAN and mean anomaly [0, 360).
std::vector<UserSpec> generate_population(PopulationSpec const& spec, std::uint64_t seed,
                                          UtcInstant const& epoch);

/// "iss" or "sso_eo"; throws std::invalid_argument otherwise.
UserSpec preset(std::string const& name, UtcInstant const& epoch, double raan_deg = 0.0,
                double mean_anomaly_deg = 0.0);

}  // namespace megalink
