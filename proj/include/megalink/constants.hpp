#pragma once

namespace megalink {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kDegToRad = kPi / 180.0;
inline constexpr double kRadToDeg = 180.0 / kPi;

/// Spherical Earth used for elevation, occlusion and limb geometry [km].
inline constexpr double kEarthRadiusKm = 6378.137;

/// WGS-72 constants embedded in SGP4. Orbit synthesis uses the same values so
/// that a synthesized element set propagates to the requested radius.
namespace wgs72 {
inline constexpr double kMu = 398600.8;            // km^3/s^2
inline constexpr double kRadiusKm = 6378.135;      // km
inline constexpr double kJ2 = 0.001082616;
inline constexpr double kJ3 = -0.00000253881;
inline constexpr double kJ4 = -0.00000165597;
}  // namespace wgs72

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kSecondsPerDay = 86400.0;

}  // namespace megalink
