#include <doctest.h>

#include <cmath>

#include "megalink/catalog.hpp"
#include "megalink/constants.hpp"
#include "megalink/tle.hpp"
#include "megalink/walker.hpp"

using namespace megalink;

namespace {

char const* kVer5 =
    "1 00005U 58002B   00179.78495062  .00000023  00000-0  28098-4 0  4753\n"
    "2 00005  34.2682 348.7242 1859667 331.7664  19.3264 10.82419157413667";

}  // namespace

TEST_CASE("verification record fields")
{
    auto const t = parse_tle(kVer5, {TleStrictness::strict});
    CHECK(t.catalog_id == 5);
    CHECK(t.classification == 'U');
    CHECK(t.international_designator == "58002B");
    CHECK(t.inclination_deg == doctest::Approx(34.2682));
    CHECK(t.raan_deg == doctest::Approx(348.7242));
    CHECK(t.eccentricity == doctest::Approx(0.1859667));
    CHECK(t.arg_perigee_deg == doctest::Approx(331.7664));
    CHECK(t.mean_anomaly_deg == doctest::Approx(19.3264));
    CHECK(t.mean_motion_rev_per_day == doctest::Approx(10.82419157));
    CHECK(t.bstar == doctest::Approx(0.28098e-4));
    CHECK(t.mean_motion_dot == doctest::Approx(0.00000023));
    CHECK(t.revolution_number == 41366);
    CHECK(t.name == "5");
}

TEST_CASE("name line and checksum handling")
{
    std::string rec = std::string("EUTELSAT 7 WEST A\n") + kVer5;
    CHECK(parse_tle(rec).name == "EUTELSAT 7 WEST A");

    std::string bad = kVer5;
    bad[68] = '0';  // line 1 checksum is 3
    std::vector<std::string> warnings;
    CHECK_NOTHROW(parse_tle(bad, {}, &warnings));
    CHECK(warnings.size() == 1);
    CHECK_THROWS_AS(parse_tle(bad, {TleStrictness::strict}), TleParseError);
}

TEST_CASE("malformed records name the field")
{
    try {
        parse_tle("1 00005U 58002B   00179.78495062\n2 00005  34.2682");
        FAIL("expected a parse error");
    } catch (TleParseError const& e) {
        CHECK(!e.field().empty());
    }
    std::string bad_ecc = kVer5;
    bad_ecc[70 + 26] = 'x';
    CHECK_THROWS_AS(parse_tle(bad_ecc), TleParseError);
}

TEST_CASE("elements_to_tle round trip")
{
    KeplerianElements e;
    e.semi_major_axis_km = kEarthRadiusKm + 550.0;
    e.inclination_deg = 53.0;
    e.raan_deg = 123.4567;
    e.mean_anomaly_deg = 300.25;
    e.arg_perigee_deg = 10.5;
    e.eccentricity = 0.0;
    e.epoch = UtcInstant::from_calendar(2021, 3, 20, 9, 37, 29.0);
    auto const t = elements_to_tle(e, 42, "TEST");
    // n = 86400 / (2 pi sqrt(a^3 / mu)), mu = 398600.4418
    double const a = e.semi_major_axis_km;
    double const n_ref = 86400.0 / (2.0 * kPi * std::sqrt(a * a * a / 398600.4418));
    CHECK(t.mean_motion_rev_per_day == doctest::Approx(n_ref).epsilon(1e-6));
    CHECK(t.mean_motion_rev_per_day == doctest::Approx(15.05).epsilon(2e-3));
    CHECK(t.bstar == 0.0);

    auto const l2 = format_tle_line2(t);
    CHECK(l2.size() == 69);
    CHECK(l2.substr(26, 7) == "0000000");
    auto const back = parse_tle(format_tle(t), {TleStrictness::strict});
    CHECK(back.inclination_deg == doctest::Approx(t.inclination_deg).epsilon(1e-6));
    CHECK(back.raan_deg == doctest::Approx(t.raan_deg).epsilon(1e-6));
    CHECK(back.eccentricity == doctest::Approx(t.eccentricity));
    CHECK(back.arg_perigee_deg == doctest::Approx(t.arg_perigee_deg).epsilon(1e-6));
    CHECK(back.mean_anomaly_deg == doctest::Approx(t.mean_anomaly_deg).epsilon(1e-6));
    CHECK(back.mean_motion_rev_per_day == doctest::Approx(t.mean_motion_rev_per_day).epsilon(1e-8));
    CHECK(back.catalog_id == 42);
    CHECK(back.epoch.seconds_since(t.epoch) == doctest::Approx(0.0).epsilon(1e-3));

    e.semi_major_axis_km = 6000.0;
    CHECK_THROWS(elements_to_tle(e, 1));
}

TEST_CASE("iss-like elements print 51.6000")
{
    ShellSpec s;
    s.altitude_km = 420.0;
    s.inclination_deg = 51.6;
    auto const els = build_walker(s, {});
    REQUIRE(els.size() == 1);
    CHECK(format_tle_line2(elements_to_tle(els[0], 1)).substr(8, 8) == " 51.6000");
}

TEST_CASE("alpha-5 catalog numbers")
{
    KeplerianElements e;
    e.semi_major_axis_km = 7000.0;
    auto const t = elements_to_tle(e, 123456);
    auto const l1 = format_tle_line1(t);
    CHECK(l1.substr(2, 5) == "C3456");
    CHECK(parse_tle(format_tle(t)).catalog_id == 123456);
}

TEST_CASE("bundled eutelsat catalog parses")
{
    std::vector<std::string> warnings;
    auto const sets = read_tle_file(data_directory() + "/eutelsat_geo.tle", {TleStrictness::strict}, &warnings);
    CHECK(sets.size() == 23);
    CHECK(warnings.empty());
    bool found = false;
    for (auto const& s : sets) {
        found = found || s.name == "EUTELSAT 7 WEST A";
        CHECK(s.mean_motion_rev_per_day == doctest::Approx(1.0027).epsilon(1e-3));
    }
    CHECK(found);
}
