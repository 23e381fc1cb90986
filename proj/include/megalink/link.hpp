#pragma once

#include <span>
#include <vector>

namespace megalink {

struct LinkConfig {
    double carrier_frequency_hz{10.7e9};
    double min_elevation_deg{25.0};

    void validate() const;
};

/// Free-space path loss [dB] for a range in km.
double fspl_db(double range_km, double frequency_hz);

/// Carrier shift [Hz]; an approaching object (negative range rate) gives a
/// positive shift.
double doppler_offset_hz(double range_rate_km_s, double frequency_hz);

/// Central differences inside, one-sided at both ends.
std::vector<double> doppler_rate_hz_s(std::span<double const> offsets_hz, double step_s);

enum class RelativeMotion {
    prograde,    // both objects orbit in the same sense
    retrograde,  // the user orbits against the satellite
};

struct ZenithDopplerSample {
    double elevation_deg;
    double central_angle_deg;
    double range_km;
    double offset_hz;  // approaching half of the pass
    double rate_hz_s;
};

/// Coplanar circular-orbit pass over the user. Angular rates are signed, so
/// the separation angle advances at |w_sat - w_user|. Rows run from
/// min_elevation_deg up to 90 deg inclusive.
std::vector<ZenithDopplerSample> zenith_doppler_profile(
    double user_altitude_km, double sat_altitude_km, double frequency_hz,
    double min_elevation_deg = 25.0, double elevation_step_deg = 0.5,
    RelativeMotion motion = RelativeMotion::prograde);

}  // namespace megalink
