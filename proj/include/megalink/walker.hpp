#pragma once

#include <optional>
#include <vector>

#include "megalink/orbit.hpp"

namespace megalink {

/// One Walker-delta shell of circular orbits.
struct ShellSpec {
    double altitude_km{0.0};
    double inclination_deg{0.0};
    int plane_count{1};
    int sats_per_plane{1};
    double raan_span_deg{360.0};
    /// Defaults to 360 / (planes * sats per plane) when unset.
    std::optional<double> inter_plane_phase_deg;

    void validate() const;
    int size() const { return plane_count * sats_per_plane; }
    double resolved_phase_deg() const;
};

/// Elements ordered plane by plane, slot by slot.
std::vector<KeplerianElements> build_walker(ShellSpec const& shell, UtcInstant const& epoch);

}  // namespace megalink
