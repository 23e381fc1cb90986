#pragma once

#include "megalink/time.hpp"
#include "megalink/vec3.hpp"

namespace megalink {

/// Classical mean elements of one object. Angles in degrees.
struct KeplerianElements {
    double semi_major_axis_km{0.0};
    double eccentricity{0.0};
    double inclination_deg{0.0};
    double raan_deg{0.0};
    double arg_perigee_deg{0.0};
    double mean_anomaly_deg{0.0};
    UtcInstant epoch;

    /// Throws std::invalid_argument when a <= Earth radius or e outside [0, 1).
    void validate() const;
    double altitude_km() const;
};

/// Inertial (TEME) position and velocity.
struct StateVector {
    UtcInstant epoch;
    Vec3 position_km;
    Vec3 velocity_km_s;
};

/// Two-body mean motion [rev/day] for a semi-major axis, WGS-72 mu.
double mean_motion_rev_per_day(double semi_major_axis_km);
/// Inverse of mean_motion_rev_per_day.
double semi_major_axis_km(double mean_motion_rev_per_day);

/// Circular-orbit inclination [deg] whose J2 nodal precession matches the
/// mean solar motion (360 deg per tropical year).
double sun_synchronous_inclination_deg(double altitude_km, double eccentricity = 0.0);

}  // namespace megalink
