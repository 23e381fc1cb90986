#include "megalink/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>

#include <omp.h>

#include "megalink/constants.hpp"

namespace megalink {
namespace {

struct SatSample {
    Vec3 r;
    Vec3 v;
    Vec3 unit;
    double radius;
};

// Keeps the failure with the lowest (step, object) key so the reported
// error does not depend on scheduling.
class FirstError {
public:
    void record(std::int64_t key, std::exception_ptr e)
    {
        std::lock_guard lock(mutex_);
        if (!error_ || key < key_) {
            key_ = key;
            error_ = e;
        }
    }
    void rethrow() const
    {
        if (error_) {
            std::rethrow_exception(error_);
        }
    }
    bool failed() const { return error_ != nullptr; }

private:
    std::mutex mutex_;
    std::int64_t key_{0};
    std::exception_ptr error_;
};

}  // namespace

std::int64_t step_count(double duration_s, double step_s)
{
    if (!(step_s > 0.0)) {
        throw std::invalid_argument("step must be positive");
    }
    if (!(duration_s >= step_s)) {
        throw std::invalid_argument("duration must be at least one step");
    }
    // Tolerate representation error in ratios such as 86400 / 10.
    return static_cast<std::int64_t>(std::floor(duration_s / step_s + 1e-9)) + 1;
}

void run_engine(EngineConfig const& config, std::span<EngineSatellite const> satellites,
                std::span<Sgp4Propagator const> users, StepVisitor const& visit)
{
    std::int64_t const steps = step_count(config.duration_s, config.step_s);
    if (config.block_steps < 1) {
        throw std::invalid_argument("block_steps must be positive");
    }
    bool const cull = config.culling && config.min_elevation_deg >= 0.0;
    int const threads = config.threads > 0 ? config.threads : omp_get_max_threads();

    std::size_t const n_sat = satellites.size();
    std::size_t const n_user = users.size();
    int n_fleet = 0;
    for (auto const& s : satellites) {
        n_fleet = std::max(n_fleet, s.fleet + 1);
    }

    std::vector<double> sat_offset_min(n_sat);
    for (std::size_t i = 0; i < n_sat; ++i) {
        sat_offset_min[i] = config.epoch.minutes_since(satellites[i].propagator.epoch());
    }
    std::vector<double> user_offset_min(n_user);
    for (std::size_t u = 0; u < n_user; ++u) {
        user_offset_min[u] = config.epoch.minutes_since(users[u].epoch());
    }

    double const cos_eps = std::cos(config.min_elevation_deg * kDegToRad);
    double const step_min = config.step_s / 60.0;
    std::size_t const block = static_cast<std::size_t>(config.block_steps);

    std::vector<SatSample> samples(block * n_sat);
    std::vector<double> fleet_rmax(block * static_cast<std::size_t>(n_fleet));
    FirstError error;

    for (std::int64_t k0 = 0; k0 < steps; k0 += static_cast<std::int64_t>(block)) {
        std::int64_t const k1 = std::min<std::int64_t>(steps, k0 + static_cast<std::int64_t>(block));
        std::size_t const nb = static_cast<std::size_t>(k1 - k0);

#pragma omp parallel for schedule(static) num_threads(threads)
        for (std::size_t i = 0; i < n_sat; ++i) {
            auto const& prop = satellites[i].propagator;
            for (std::size_t j = 0; j < nb; ++j) {
                std::int64_t const k = k0 + static_cast<std::int64_t>(j);
                double const t = sat_offset_min[i] + static_cast<double>(k) * step_min;
                SatSample& s = samples[j * n_sat + i];
                Sgp4Status const st = prop.evaluate(t, s.r, s.v);
                if (st != Sgp4Status::ok) {
                    error.record(k * static_cast<std::int64_t>(n_sat + n_user) +
                                     static_cast<std::int64_t>(i),
                                 std::make_exception_ptr(PropagationError(
                                     prop.catalog_id(), prop.name(), st, t)));
                    s.radius = 0.0;
                    continue;
                }
                s.radius = norm(s.r);
                s.unit = (1.0 / s.radius) * s.r;
            }
        }
        error.rethrow();

        std::fill(fleet_rmax.begin(), fleet_rmax.end(), 0.0);
        for (std::size_t j = 0; j < nb; ++j) {
            for (std::size_t i = 0; i < n_sat; ++i) {
                double& m = fleet_rmax[j * static_cast<std::size_t>(n_fleet) +
                                       static_cast<std::size_t>(satellites[i].fleet)];
                m = std::max(m, samples[j * n_sat + i].radius);
            }
        }

#pragma omp parallel num_threads(threads)
        {
            std::vector<VisibleSat> visible;
            std::vector<double> cos_limit(static_cast<std::size_t>(n_fleet));
            std::vector<char> fleet_open(static_cast<std::size_t>(n_fleet));

#pragma omp for schedule(dynamic, 1)
            for (std::size_t u = 0; u < n_user; ++u) {
                if (error.failed()) {
                    continue;
                }
                try {
                    for (std::size_t j = 0; j < nb; ++j) {
                        std::int64_t const k = k0 + static_cast<std::int64_t>(j);
                        double const t = user_offset_min[u] + static_cast<double>(k) * step_min;
                        Vec3 ur;
                        Vec3 uv;
                        Sgp4Status const st = users[u].evaluate(t, ur, uv);
                        if (st != Sgp4Status::ok) {
                            throw PropagationError(users[u].catalog_id(), users[u].name(), st, t);
                        }
                        double const ru = norm(ur);
                        Vec3 const uu = (1.0 / ru) * ur;

                        if (cull) {
                            // Largest central angle at which a satellite no
                            // farther out than the fleet maximum can still sit
                            // at or above the elevation mask.
                            for (int f = 0; f < n_fleet; ++f) {
                                double const rmax =
                                    fleet_rmax[j * static_cast<std::size_t>(n_fleet) +
                                               static_cast<std::size_t>(f)];
                                double const x = rmax > 0.0 ? ru * cos_eps / rmax : 2.0;
                                fleet_open[static_cast<std::size_t>(f)] = x <= 1.0 + 1e-12;
                                double const lam = 0.5 * kPi - config.min_elevation_deg * kDegToRad -
                                                   std::asin(std::min(1.0, x));
                                cos_limit[static_cast<std::size_t>(f)] = std::cos(lam) - 1e-7;
                            }
                        }

                        visible.clear();
                        SatSample const* row = &samples[j * n_sat];
                        for (std::size_t i = 0; i < n_sat; ++i) {
                            SatSample const& s = row[i];
                            if (cull) {
                                auto const f = static_cast<std::size_t>(satellites[i].fleet);
                                if (!fleet_open[f] || s.radius < ru * (1.0 - 1e-12) ||
                                    dot(uu, s.unit) < cos_limit[f]) {
                                    continue;
                                }
                            }
                            Vec3 const d = s.r - ur;
                            if (d == Vec3{}) {
                                continue;
                            }
                            RelativeGeometry const g = relative_geometry(ur, uv, s.r, s.v);
                            if (is_visible(g, config.min_elevation_deg, satellites[i].beam,
                                           s.radius - kEarthRadiusKm)) {
                                visible.push_back({static_cast<int>(i), g.range_km,
                                                   g.range_rate_km_s, g.user_elevation_deg});
                            }
                        }
                        visit(u, k, visible);
                    }
                } catch (...) {
                    error.record(k0 * static_cast<std::int64_t>(n_sat + n_user) +
                                     static_cast<std::int64_t>(n_sat + u),
                                 std::current_exception());
                }
            }
        }
        error.rethrow();
    }
}

}  // namespace megalink
