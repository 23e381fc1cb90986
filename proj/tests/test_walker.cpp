#include <doctest.h>

#include "megalink/catalog.hpp"
#include "megalink/constants.hpp"
#include "megalink/walker.hpp"

using namespace megalink;

TEST_CASE("walker shell layout")
{
    ShellSpec s;
    s.altitude_km = 1200.0;
    s.inclination_deg = 87.9;
    s.plane_count = 12;
    s.sats_per_plane = 49;
    auto const els = build_walker(s, {});
    CHECK(els.size() == 588);
    double const phase = 360.0 / 588.0;
    CHECK(s.resolved_phase_deg() == doctest::Approx(phase));
    auto const& e = els[3 * 49 + 5];  // plane 3, slot 5
    CHECK(e.raan_deg == doctest::Approx(3 * 30.0));
    CHECK(e.mean_anomaly_deg == doctest::Approx(5 * 360.0 / 49 + 3 * phase));
    CHECK(e.semi_major_axis_km == doctest::Approx(kEarthRadiusKm + 1200.0));
    CHECK(e.eccentricity == 0.0);
    for (auto const& x : els) {
        CHECK(x.mean_anomaly_deg >= 0.0);
        CHECK(x.mean_anomaly_deg < 360.0);
    }
}

TEST_CASE("degenerate and explicit-phase shells")
{
    ShellSpec one;
    one.altitude_km = 700.0;
    auto const e = build_walker(one, {});
    REQUIRE(e.size() == 1);
    CHECK(e[0].raan_deg == 0.0);
    CHECK(e[0].mean_anomaly_deg == 0.0);

    ShellSpec s;
    s.altitude_km = 500.0;
    s.plane_count = 4;
    s.sats_per_plane = 2;
    s.raan_span_deg = 180.0;
    s.inter_plane_phase_deg = 200.0;
    auto const els = build_walker(s, {});
    CHECK(els[2 * 2].raan_deg == doctest::Approx(90.0));
    CHECK(els[3 * 2 + 1].mean_anomaly_deg == doctest::Approx(180.0 + 600.0 - 720.0));

    s.plane_count = 0;
    CHECK_THROWS(s.validate());
    s.plane_count = 1;
    s.raan_span_deg = 0.0;
    CHECK_THROWS(s.validate());
}

TEST_CASE("bundled fleets match the published shell tables")
{
    auto const ow = bundled_constellation("oneweb");
    auto const sl = bundled_constellation("starlink");
    int n_ow = 0;
    for (auto const& s : ow.shells) {
        n_ow += s.size();
    }
    std::vector<int> sl_sizes;
    int n_sl = 0;
    for (auto const& s : sl.shells) {
        sl_sizes.push_back(s.size());
        n_sl += s.size();
    }
    CHECK(ow.shells[0].size() == 588);
    CHECK(n_ow == 716);
    CHECK(sl_sizes == std::vector<int>{1584, 1584, 348, 172, 720});
    CHECK(n_sl == 4408);
    CHECK(n_ow + n_sl == 5124);
    auto const geo = bundled_constellation("eutelsat_geo");
    CHECK(geo.beam.kind == BeamKind::fixed_half_cone);
    CHECK(geo.beam.half_cone_deg == 10.5);
    CHECK_THROWS(bundled_constellation("iridium"));

    auto const sets = constellation_elements(ow, {}, 100);
    CHECK(sets.size() == 716);
    CHECK(sets.front().catalog_id == 100);
    CHECK(sets.back().catalog_id == 815);
}
