#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "megalink/geometry.hpp"
#include "megalink/metrics.hpp"
#include "megalink/sgp4.hpp"

namespace megalink {

struct EngineSatellite {
    Sgp4Propagator propagator;
    int fleet{0};  // index into the caller's constellation list
    BeamModel beam;
};

struct EngineConfig {
    UtcInstant epoch;
    double duration_s{86400.0};
    double step_s{10.0};
    double min_elevation_deg{25.0};
    /// Conservative central-angle prefilter; needs min_elevation_deg >= 0.
    bool culling{true};
    int threads{0};  // 0 = OpenMP default
    int block_steps{64};
};

/// floor(duration / step) + 1; the window end is included.
std::int64_t step_count(double duration_s, double step_s);

/// Called once per (user, step) with the visible satellites in ascending
/// satellite index; sat_id holds that index. Calls for one user arrive in
/// step order on a single thread, different users may run concurrently.
using StepVisitor =
    std::function<void(std::size_t user, std::int64_t step, std::span<VisibleSat const> visible)>;

/// Drives the time loop over every (user, satellite) pair. A propagation
/// failure aborts the run with a PropagationError naming the object.
void run_engine(EngineConfig const& config, std::span<EngineSatellite const> satellites,
                std::span<Sgp4Propagator const> users, StepVisitor const& visit);

}  // namespace megalink
