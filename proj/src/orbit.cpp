#include "megalink/orbit.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "megalink/constants.hpp"

namespace megalink {

void KeplerianElements::validate() const
{
    if (!(semi_major_axis_km > kEarthRadiusKm)) {
        throw std::invalid_argument(fmt::format(
            "semi-major axis {} km is not above the Earth radius", semi_major_axis_km));
    }
    if (!(eccentricity >= 0.0 && eccentricity < 1.0)) {
        throw std::invalid_argument(fmt::format("eccentricity {} outside [0, 1)", eccentricity));
    }
    if (!(inclination_deg >= 0.0 && inclination_deg <= 180.0)) {
        throw std::invalid_argument(
            fmt::format("inclination {} deg outside [0, 180]", inclination_deg));
    }
}

double KeplerianElements::altitude_km() const
{
    return semi_major_axis_km - kEarthRadiusKm;
}

double mean_motion_rev_per_day(double semi_major_axis_km)
{
    double const a = semi_major_axis_km;
    return kSecondsPerDay / (kTwoPi * std::sqrt(a * a * a / wgs72::kMu));
}

double semi_major_axis_km(double mean_motion_rev_per_day)
{
    double const n = mean_motion_rev_per_day * kTwoPi / kSecondsPerDay;  // rad/s
    return std::cbrt(wgs72::kMu / (n * n));
}

double sun_synchronous_inclination_deg(double altitude_km, double eccentricity)
{
    // Nodal regression -3/2 n J2 (Re/p)^2 cos i set equal to one turn per
    // tropical year.
    constexpr double j2 = 1.08263e-3;
    constexpr double mu = 398600.4418;
    constexpr double tropical_year_s = 365.2421897 * 86400.0;
    double const a = kEarthRadiusKm + altitude_km;
    double const p = a * (1.0 - eccentricity * eccentricity);
    double const n = std::sqrt(mu / (a * a * a));
    double const target = kTwoPi / tropical_year_s;
    double const cos_i = -target / (1.5 * n * j2 * (kEarthRadiusKm / p) * (kEarthRadiusKm / p));
    if (cos_i < -1.0) {
        throw std::invalid_argument(
            fmt::format("no sun-synchronous orbit exists at {} km", altitude_km));
    }
    return std::acos(cos_i) * kRadToDeg;
}

}  // namespace megalink
