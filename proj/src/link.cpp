#include "megalink/link.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "megalink/constants.hpp"

namespace megalink {

void LinkConfig::validate() const
{
    if (!(carrier_frequency_hz > 0.0)) {
        throw std::invalid_argument(
            fmt::format("carrier frequency {} Hz must be positive", carrier_frequency_hz));
    }
    if (!(min_elevation_deg >= -90.0 && min_elevation_deg <= 90.0)) {
        throw std::invalid_argument(
            fmt::format("minimum elevation {} deg outside [-90, 90]", min_elevation_deg));
    }
}

double fspl_db(double range_km, double frequency_hz)
{
    if (!(range_km > 0.0)) {
        throw std::invalid_argument(fmt::format("FSPL needs a positive range, got {} km", range_km));
    }
    return 20.0 * std::log10(4.0 * kPi * range_km * 1000.0 * frequency_hz / kSpeedOfLight);
}

double doppler_offset_hz(double range_rate_km_s, double frequency_hz)
{
    return -frequency_hz * (range_rate_km_s * 1000.0) / kSpeedOfLight;
}

std::vector<double> doppler_rate_hz_s(std::span<double const> offsets_hz, double step_s)
{
    auto const n = offsets_hz.size();
    if (n < 2) {
        throw std::invalid_argument("Doppler rate needs at least two samples");
    }
    if (!(step_s > 0.0)) {
        throw std::invalid_argument("Doppler rate needs a positive step");
    }
    std::vector<double> rate(n);
    rate[0] = (offsets_hz[1] - offsets_hz[0]) / step_s;
    rate[n - 1] = (offsets_hz[n - 1] - offsets_hz[n - 2]) / step_s;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        rate[i] = (offsets_hz[i + 1] - offsets_hz[i - 1]) / (2.0 * step_s);
    }
    return rate;
}

std::vector<ZenithDopplerSample> zenith_doppler_profile(double user_altitude_km,
                                                        double sat_altitude_km,
                                                        double frequency_hz,
                                                        double min_elevation_deg,
                                                        double elevation_step_deg,
                                                        RelativeMotion motion)
{
    if (user_altitude_km == sat_altitude_km) {
        throw std::invalid_argument("zenith Doppler profile undefined for equal altitudes");
    }
    if (sat_altitude_km < user_altitude_km) {
        throw std::invalid_argument("zenith Doppler profile needs the satellite above the user");
    }
    if (!(elevation_step_deg > 0.0)) {
        throw std::invalid_argument("elevation step must be positive");
    }
    double const au = kEarthRadiusKm + user_altitude_km;
    double const as = kEarthRadiusKm + sat_altitude_km;
    double const wu = std::sqrt(wgs72::kMu / (au * au * au))
                      * (motion == RelativeMotion::retrograde ? -1.0 : 1.0);
    double const ws = std::sqrt(wgs72::kMu / (as * as * as));
    double const dw = std::fabs(ws - wu);  // rad/s

    std::vector<ZenithDopplerSample> rows;
    int const count = static_cast<int>(std::floor((90.0 - min_elevation_deg) / elevation_step_deg));
    for (int k = 0; k <= count + 1; ++k) {
        double const elevation = std::min(90.0, min_elevation_deg + k * elevation_step_deg);
        double const el = elevation * kDegToRad;
        // Central angle subtended by a line of sight leaving the user at
        // this elevation and reaching the satellite radius.
        double const theta = kPi / 2.0 - el - std::asin(au * std::cos(el) / as);
        double const r = std::sqrt(au * au + as * as - 2.0 * au * as * std::cos(theta));
        double const dr = au * as * std::sin(theta) / r;                 // dr/dtheta
        double const d2r = (au * as * std::cos(theta) - dr * dr) / r;   // d2r/dtheta2
        double const range_rate = -dw * dr;                              // approaching
        double const range_accel = dw * dw * d2r;
        rows.push_back({elevation, theta * kRadToDeg, r, doppler_offset_hz(range_rate, frequency_hz),
                        -frequency_hz * range_accel * 1000.0 / kSpeedOfLight});
        if (elevation >= 90.0) {
            break;
        }
    }
    return rows;
}

}  // namespace megalink
