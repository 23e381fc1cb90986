#include "megalink/walker.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "megalink/constants.hpp"

namespace megalink {
namespace {

double wrap_360(double deg)
{
    double v = std::fmod(deg, 360.0);
    return v < 0.0 ? v + 360.0 : v;
}

}  // namespace

void ShellSpec::validate() const
{
    if (plane_count < 1 || sats_per_plane < 1) {
        throw std::invalid_argument(
            fmt::format("shell needs at least one plane and one satellite per plane (got {}x{})",
                        plane_count, sats_per_plane));
    }
    if (!(raan_span_deg > 0.0 && raan_span_deg <= 360.0)) {
        throw std::invalid_argument(fmt::format("raan span {} outside (0, 360]", raan_span_deg));
    }
    if (!(altitude_km > 0.0)) {
        throw std::invalid_argument(fmt::format("shell altitude {} km must be positive", altitude_km));
    }
    if (!(inclination_deg >= 0.0 && inclination_deg <= 180.0)) {
        throw std::invalid_argument(
            fmt::format("shell inclination {} outside [0, 180]", inclination_deg));
    }
}

double ShellSpec::resolved_phase_deg() const
{
    return inter_plane_phase_deg.value_or(360.0 / (plane_count * sats_per_plane));
}

std::vector<KeplerianElements> build_walker(ShellSpec const& shell, UtcInstant const& epoch)
{
    shell.validate();
    double const phase = shell.resolved_phase_deg();
    std::vector<KeplerianElements> out;
    out.reserve(static_cast<std::size_t>(shell.size()));
    for (int p = 0; p < shell.plane_count; ++p) {
        for (int s = 0; s < shell.sats_per_plane; ++s) {
            KeplerianElements e;
            e.semi_major_axis_km = kEarthRadiusKm + shell.altitude_km;
            e.eccentricity = 0.0;
            e.inclination_deg = shell.inclination_deg;
            e.raan_deg = wrap_360(p * shell.raan_span_deg / shell.plane_count);
            e.arg_perigee_deg = 0.0;
            e.mean_anomaly_deg = wrap_360(s * 360.0 / shell.sats_per_plane + p * phase);
            e.epoch = epoch;
            out.push_back(e);
        }
    }
    return out;
}

}  // namespace megalink
