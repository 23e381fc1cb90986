#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "megalink/orbit.hpp"
#include "megalink/population.hpp"

using namespace megalink;

TEST_CASE("population strata and determinism")
{
    PopulationSpec spec;
    auto const a = generate_population(spec, 11, {});
    CHECK(a.size() == 1200);
    auto count = [&](UserTag t) {
        return std::count_if(a.begin(), a.end(), [&](UserSpec const& u) { return u.tag == t; });
    };
    CHECK(count(UserTag::montecarlo) == 1000);
    CHECK(count(UserTag::shell_band) == 200);
    for (auto const& u : a) {
        CHECK(u.elements.eccentricity == 0.0);
        CHECK(u.elements.altitude_km() >= 350.0 - 1e-9);
        CHECK(u.elements.altitude_km() <= 1200.0 + 1e-9);
        CHECK(u.elements.inclination_deg >= 0.0);
        CHECK(u.elements.inclination_deg <= 180.0);
    }
    for (std::size_t i = 1000; i < 1100; ++i) {
        CHECK(a[i].elements.altitude_km() >= 470.0 - 1e-9);
        CHECK(a[i].elements.altitude_km() <= 570.0 + 1e-9);
    }
    auto const b = generate_population(spec, 11, {});
    bool same = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        same = same && a[i].elements.semi_major_axis_km == b[i].elements.semi_major_axis_km &&
               a[i].elements.raan_deg == b[i].elements.raan_deg;
    }
    CHECK(same);
    CHECK(generate_population(spec, 12, {})[0].elements.raan_deg != a[0].elements.raan_deg);
}

TEST_CASE("altitude stratum is uniform (Kolmogorov-Smirnov)")
{
    PopulationSpec spec;
    std::vector<double> alt;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        for (auto const& u : generate_population(spec, seed, {})) {
            if (u.tag == UserTag::montecarlo) {
                alt.push_back(u.elements.altitude_km());
            }
        }
    }
    std::sort(alt.begin(), alt.end());
    double const n = static_cast<double>(alt.size());
    double d = 0.0;
    for (std::size_t i = 0; i < alt.size(); ++i) {
        double const cdf = (alt[i] - 350.0) / 850.0;
        d = std::max({d, cdf - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - cdf});
    }
    // 1 % critical value 1.628 / sqrt(n)
    CHECK(d < 1.628 / std::sqrt(n));
}

TEST_CASE("presets")
{
    auto const iss = preset("iss", {});
    CHECK(iss.elements.inclination_deg == 51.6);
    CHECK(iss.elements.altitude_km() == doctest::Approx(420.0));
    CHECK(iss.tag == UserTag::iss_preset);
    auto const sso = preset("sso_eo", {}, 30.0, 45.0);
    CHECK(sso.elements.altitude_km() == doctest::Approx(500.0));
    CHECK(sso.elements.raan_deg == 30.0);
    CHECK(sso.elements.mean_anomaly_deg == 45.0);
    CHECK_THROWS(preset("gto", {}));

    // cos i = -rate * 2 a^(7/2) / (3 J2 sqrt(mu) Re^2), rate = 2 pi / tropical year
    double const re = 6378.137;
    double const a = re + 500.0;
    double const rate = 2.0 * 3.14159265358979323846 / (365.2421897 * 86400.0);
    double const cos_i = -rate * 2.0 * std::pow(a, 3.5) / (3.0 * 1.08263e-3 * std::sqrt(398600.4418) * re * re);
    double const inc = std::acos(cos_i) * 180.0 / 3.14159265358979323846;
    CHECK(sso.elements.inclination_deg == doctest::Approx(inc).epsilon(1e-9));
    CHECK(sso.elements.inclination_deg == doctest::Approx(97.40).epsilon(1e-3));
}
