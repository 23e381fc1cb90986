#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace megalink {

/// UTC instant stored as a split Julian date.
///
/// The whole part always ends in .5 (midnight) and the fraction stays in
/// [0, 1), which keeps sub-millisecond resolution for epochs decades away
/// from J2000.
class UtcInstant {
public:
    UtcInstant() = default;

    static UtcInstant from_calendar(int year, int month, int day, int hour,
                                    int minute, double second);
    /// Two-digit-year TLE epoch: years < 57 map to 20xx.
    static UtcInstant from_tle_epoch(int two_digit_year, double day_of_year);
    /// Accepts "YYYY-MM-DDTHH:MM:SS[.fff][Z]".
    static UtcInstant parse_iso(std::string_view text);

    double jd_day() const { return jd_day_; }
    double jd_fraction() const { return jd_fraction_; }
    double jd() const { return jd_day_ + jd_fraction_; }
    /// Days since 1949-12-31 00:00 UTC, the SGP4 internal epoch.
    double days_since_1950() const { return (jd_day_ - 2433281.5) + jd_fraction_; }

    UtcInstant plus_seconds(double seconds) const;
    double seconds_since(UtcInstant const& other) const;
    double minutes_since(UtcInstant const& other) const
    {
        return seconds_since(other) / 60.0;
    }

    /// "YYYY-MM-DDTHH:MM:SS.mmmZ", rounded to the millisecond.
    std::string to_iso() const;

    /// Year and fractional day-of-year (1.0 = Jan 1 00:00).
    void tle_epoch(int& year, double& day_of_year) const;

    friend auto operator<=>(UtcInstant const&, UtcInstant const&) = default;

private:
    UtcInstant(double day, double fraction);

    double jd_day_{2451544.5};
    double jd_fraction_{0.0};
};

}  // namespace megalink
