#include <doctest.h>

#include <mutex>
#include <random>

#include "megalink/constants.hpp"
#include "megalink/engine.hpp"

using namespace megalink;

namespace {

using Sets = std::vector<std::vector<std::vector<int>>>;  // [user][step] -> sat ids

struct RandomScene {
    std::vector<EngineSatellite> sats;
    std::vector<Sgp4Propagator> users;
};

RandomScene random_scene(std::uint64_t seed, int n_sat, int n_user, UtcInstant epoch)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    RandomScene s;
    for (int i = 0; i < n_sat; ++i) {
        KeplerianElements e;
        e.semi_major_axis_km = kEarthRadiusKm + 400.0 + 1600.0 * u01(rng);
        e.eccentricity = 0.02 * u01(rng);
        e.inclination_deg = 180.0 * u01(rng);
        e.raan_deg = 360.0 * u01(rng);
        e.arg_perigee_deg = 360.0 * u01(rng);
        e.mean_anomaly_deg = 360.0 * u01(rng);
        e.epoch = epoch.plus_seconds(-3600.0 * u01(rng));
        BeamModel beam = i % 3 == 0 ? BeamModel::fixed(20.0 + 60.0 * u01(rng)) : BeamModel::earth_limb();
        s.sats.push_back({Sgp4Propagator(elements_to_tle(e, i + 1)), i % 2, beam});
    }
    for (int i = 0; i < n_user; ++i) {
        KeplerianElements e;
        e.semi_major_axis_km = kEarthRadiusKm + 300.0 + 1200.0 * u01(rng);
        e.inclination_deg = 180.0 * u01(rng);
        e.raan_deg = 360.0 * u01(rng);
        e.mean_anomaly_deg = 360.0 * u01(rng);
        e.epoch = epoch;
        s.users.emplace_back(elements_to_tle(e, 90000 + i));
    }
    return s;
}

Sets collect(EngineConfig const& cfg, RandomScene const& s)
{
    Sets out(s.users.size(), std::vector<std::vector<int>>(static_cast<std::size_t>(step_count(cfg.duration_s, cfg.step_s))));
    std::mutex m;
    run_engine(cfg, s.sats, s.users, [&](std::size_t u, std::int64_t k, std::span<VisibleSat const> vis) {
        std::vector<int> ids;
        for (auto const& v : vis) {
            ids.push_back(v.sat_id);
        }
        std::lock_guard lock(m);
        out[u][static_cast<std::size_t>(k)] = ids;
    });
    return out;
}

}  // namespace

TEST_CASE("step count is endpoint inclusive")
{
    CHECK(step_count(86400.0, 10.0) == 8641);
    CHECK(step_count(10.0, 10.0) == 2);
    CHECK(step_count(86400.0, 7.0) == 12343);
    CHECK_THROWS(step_count(5.0, 10.0));
    CHECK_THROWS(step_count(10.0, 0.0));
}

TEST_CASE("culling yields the brute-force visibility sets")
{
    auto const epoch = UtcInstant::from_calendar(2021, 3, 20, 9, 37, 29.0);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        auto const scene = random_scene(seed, 50, 5, epoch);
        for (double mask : {0.0, 10.0, 25.0}) {
            EngineConfig cfg;
            cfg.epoch = epoch;
            cfg.duration_s = 99 * 60.0;
            cfg.step_s = 60.0;
            cfg.min_elevation_deg = mask;
            cfg.block_steps = 16;
            cfg.culling = false;
            auto const brute = collect(cfg, scene);
            cfg.culling = true;
            auto const culled = collect(cfg, scene);
            CHECK(brute == culled);
            std::size_t hits = 0;
            for (auto const& u : brute) {
                for (auto const& k : u) {
                    hits += k.size();
                }
            }
            CHECK(hits > 0);
        }
    }
}

TEST_CASE("thread count does not change the callbacks")
{
    auto const epoch = UtcInstant::from_calendar(2021, 3, 20, 9, 37, 29.0);
    auto const scene = random_scene(9, 40, 12, epoch);
    EngineConfig cfg;
    cfg.epoch = epoch;
    cfg.duration_s = 3600.0;
    cfg.step_s = 30.0;
    cfg.min_elevation_deg = 10.0;
    cfg.threads = 1;
    auto const one = collect(cfg, scene);
    cfg.threads = 4;
    cfg.block_steps = 7;
    CHECK(collect(cfg, scene) == one);
}

TEST_CASE("propagation failure names the object")
{
    auto const epoch = UtcInstant::from_calendar(2021, 3, 20, 9, 37, 29.0);
    auto scene = random_scene(4, 3, 1, epoch);
    KeplerianElements low;
    low.semi_major_axis_km = kEarthRadiusKm + 120.0;
    low.epoch = epoch;
    auto tle = elements_to_tle(low, 4242, "DOOMED");
    tle.bstar = 1.0;
    scene.sats.push_back({Sgp4Propagator(tle), 0, BeamModel::earth_limb()});
    EngineConfig cfg;
    cfg.epoch = epoch;
    cfg.duration_s = 20.0 * 86400.0;
    cfg.step_s = 3600.0;
    try {
        collect(cfg, scene);
        FAIL("expected a propagation error");
    } catch (PropagationError const& e) {
        CHECK(e.catalog_id() == 4242);
    }
}
