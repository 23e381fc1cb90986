#include "megalink/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "megalink/constants.hpp"

namespace megalink {

BeamModel BeamModel::fixed(double half_cone_deg)
{
    BeamModel beam{BeamKind::fixed_half_cone, half_cone_deg};
    beam.validate();
    return beam;
}

void BeamModel::validate() const
{
    if (kind == BeamKind::fixed_half_cone && !(half_cone_deg > 0.0 && half_cone_deg <= 90.0)) {
        throw std::invalid_argument(
            fmt::format("fixed beam half-cone {} deg outside (0, 90]", half_cone_deg));
    }
}

std::string to_string(BeamKind kind)
{
    return kind == BeamKind::earth_limb ? "earth_limb" : "fixed_half_cone";
}

BeamKind beam_kind_from_string(std::string const& text)
{
    if (text == "earth_limb") {
        return BeamKind::earth_limb;
    }
    if (text == "fixed_half_cone") {
        return BeamKind::fixed_half_cone;
    }
    throw std::invalid_argument(fmt::format("unknown beam kind '{}'", text));
}

bool segment_clears_earth(Vec3 const& a, Vec3 const& b)
{
    Vec3 const d = b - a;
    double const dd = dot(d, d);
    double s = dd > 0.0 ? -dot(a, d) / dd : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    Vec3 const closest = a + s * d;
    return dot(closest, closest) > kEarthRadiusKm * kEarthRadiusKm;
}

RelativeGeometry relative_geometry(Vec3 const& user_r, Vec3 const& user_v, Vec3 const& sat_r,
                                   Vec3 const& sat_v)
{
    Vec3 const rel = sat_r - user_r;
    double const range = norm(rel);
    if (!(range > 0.0)) {
        throw std::invalid_argument("relative geometry undefined for coincident positions");
    }
    RelativeGeometry g;
    g.range_km = range;
    g.range_rate_km_s = dot(rel, sat_v - user_v) / range;
    // Elevation is 90 deg minus the angle between the user zenith and the
    // line of sight; off-nadir is measured at the satellite.
    g.user_elevation_deg = 90.0 - angle_between(user_r, rel) * kRadToDeg;
    g.sat_off_nadir_deg = angle_between(-sat_r, -rel) * kRadToDeg;
    g.los_clear = segment_clears_earth(user_r, sat_r);
    return g;
}

RelativeGeometry relative_geometry(StateVector const& user, StateVector const& sat)
{
    return relative_geometry(user.position_km, user.velocity_km_s, sat.position_km,
                             sat.velocity_km_s);
}

double earth_limb_half_cone_deg(double altitude_km)
{
    return std::asin(kEarthRadiusKm / (kEarthRadiusKm + altitude_km)) * kRadToDeg;
}

double beam_half_cone_deg(BeamModel const& beam, double sat_altitude_km)
{
    return beam.kind == BeamKind::earth_limb ? earth_limb_half_cone_deg(sat_altitude_km)
                                             : beam.half_cone_deg;
}

bool is_visible(RelativeGeometry const& geom, double min_elevation_deg, BeamModel const& beam,
                double sat_altitude_km)
{
    return geom.los_clear && geom.user_elevation_deg >= min_elevation_deg
           && geom.sat_off_nadir_deg <= beam_half_cone_deg(beam, sat_altitude_km);
}

}  // namespace megalink
