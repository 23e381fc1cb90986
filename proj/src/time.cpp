#include "megalink/time.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <fmt/format.h>

namespace megalink {
namespace {

double julian_day_number(int year, int month, int day)
{
    return 367.0 * year - std::floor((7 * (year + std::floor((month + 9) / 12.0))) * 0.25)
           + std::floor(275 * month / 9.0) + day + 1721013.5;
}

struct CalendarDate {
    int year;
    int month;
    int day;
};

// Fliegel & Van Flandern, valid for the Gregorian calendar.
CalendarDate calendar_from_jd_day(double jd_day)
{
    auto const jdn = static_cast<std::int64_t>(std::llround(jd_day + 0.5));
    std::int64_t l = jdn + 68569;
    std::int64_t const n = 4 * l / 146097;
    l = l - (146097 * n + 3) / 4;
    std::int64_t const i = 4000 * (l + 1) / 1461001;
    l = l - 1461 * i / 4 + 31;
    std::int64_t const j = 80 * l / 2447;
    auto const day = static_cast<int>(l - 2447 * j / 80);
    l = j / 11;
    auto const month = static_cast<int>(j + 2 - 12 * l);
    auto const year = static_cast<int>(100 * (n - 49) + i + l);
    return {year, month, day};
}

int parse_int(std::string_view text, std::string_view what)
{
    int value = 0;
    auto const* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw std::invalid_argument(fmt::format("invalid {} '{}' in timestamp", what, text));
    }
    return value;
}

}  // namespace

UtcInstant::UtcInstant(double day, double fraction)
{
    double const whole = std::floor(fraction);
    jd_day_ = day + whole;
    jd_fraction_ = fraction - whole;
}

UtcInstant UtcInstant::from_calendar(int year, int month, int day, int hour, int minute,
                                     double second)
{
    double const fraction = (second + minute * 60.0 + hour * 3600.0) / 86400.0;
    return UtcInstant(julian_day_number(year, month, day), fraction);
}

UtcInstant UtcInstant::from_tle_epoch(int two_digit_year, double day_of_year)
{
    int const year = two_digit_year < 57 ? two_digit_year + 2000 : two_digit_year + 1900;
    double const whole_day = std::floor(day_of_year);
    return UtcInstant(julian_day_number(year, 1, 1) + whole_day - 1.0, day_of_year - whole_day);
}

UtcInstant UtcInstant::parse_iso(std::string_view text)
{
    if (!text.empty() && (text.back() == 'Z' || text.back() == 'z')) {
        text.remove_suffix(1);
    }
    if (text.size() < 19 || text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ')
        || text[13] != ':' || text[16] != ':') {
        throw std::invalid_argument(
            fmt::format("timestamp '{}' is not YYYY-MM-DDTHH:MM:SS[.fff]Z", text));
    }
    int const year = parse_int(text.substr(0, 4), "year");
    int const month = parse_int(text.substr(5, 2), "month");
    int const day = parse_int(text.substr(8, 2), "day");
    int const hour = parse_int(text.substr(11, 2), "hour");
    int const minute = parse_int(text.substr(14, 2), "minute");
    int const whole_second = parse_int(text.substr(17, 2), "second");
    double second = whole_second;
    if (text.size() > 19) {
        if (text[19] != '.') {
            throw std::invalid_argument(fmt::format("unexpected suffix in timestamp '{}'", text));
        }
        auto const digits = text.substr(20);
        double scale = 0.1;
        for (char c : digits) {
            if (c < '0' || c > '9') {
                throw std::invalid_argument(
                    fmt::format("invalid fractional seconds in timestamp '{}'", text));
            }
            second += (c - '0') * scale;
            scale *= 0.1;
        }
    }
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59
        || second >= 61.0) {
        throw std::invalid_argument(fmt::format("timestamp '{}' out of range", text));
    }
    return from_calendar(year, month, day, hour, minute, second);
}

UtcInstant UtcInstant::plus_seconds(double seconds) const
{
    double const days = seconds / 86400.0;
    double const whole = std::trunc(days);
    return UtcInstant(jd_day_ + whole, jd_fraction_ + (days - whole));
}

double UtcInstant::seconds_since(UtcInstant const& other) const
{
    return ((jd_day_ - other.jd_day_) + (jd_fraction_ - other.jd_fraction_)) * 86400.0;
}

std::string UtcInstant::to_iso() const
{
    auto millis = static_cast<std::int64_t>(std::llround(jd_fraction_ * 86400000.0));
    double day = jd_day_;
    if (millis >= 86400000) {
        millis -= 86400000;
        day += 1.0;
    }
    auto const date = calendar_from_jd_day(day);
    auto const ms = static_cast<int>(millis % 1000);
    auto const total_seconds = millis / 1000;
    auto const sec = static_cast<int>(total_seconds % 60);
    auto const minute = static_cast<int>((total_seconds / 60) % 60);
    auto const hour = static_cast<int>(total_seconds / 3600);
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}.{:03d}Z", date.year, date.month,
                       date.day, hour, minute, sec, ms);
}

void UtcInstant::tle_epoch(int& year, double& day_of_year) const
{
    year = calendar_from_jd_day(jd_day_).year;
    day_of_year = (jd_day_ - julian_day_number(year, 1, 1)) + 1.0 + jd_fraction_;
}

}  // namespace megalink
