#pragma once

#include <string>

#include "megalink/orbit.hpp"

namespace megalink {

/// Geometry of one (user, satellite) pair at one instant.
struct RelativeGeometry {
    double range_km{0.0};
    double range_rate_km_s{0.0};  // positive when receding
    double user_elevation_deg{0.0};
    double sat_off_nadir_deg{0.0};
    bool los_clear{false};
};

enum class BeamKind { earth_limb, fixed_half_cone };

struct BeamModel {
    BeamKind kind{BeamKind::earth_limb};
    double half_cone_deg{0.0};  // fixed_half_cone only

    static BeamModel earth_limb() { return {}; }
    static BeamModel fixed(double half_cone_deg);
    void validate() const;
};

std::string to_string(BeamKind kind);
BeamKind beam_kind_from_string(std::string const& text);

/// Throws std::invalid_argument for coincident positions.
RelativeGeometry relative_geometry(Vec3 const& user_r, Vec3 const& user_v, Vec3 const& sat_r,
                                   Vec3 const& sat_v);
RelativeGeometry relative_geometry(StateVector const& user, StateVector const& sat);

/// True when the closed segment [a, b] stays strictly outside the Earth sphere.
bool segment_clears_earth(Vec3 const& a, Vec3 const& b);

/// Nadir half-cone just enclosing the visible Earth disc [deg].
double earth_limb_half_cone_deg(double altitude_km);

double beam_half_cone_deg(BeamModel const& beam, double sat_altitude_km);

/// Two-sided predicate; both thresholds are inclusive.
bool is_visible(RelativeGeometry const& geom, double min_elevation_deg, BeamModel const& beam,
                double sat_altitude_km);

}  // namespace megalink
