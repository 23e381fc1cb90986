#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "megalink/orbit.hpp"
#include "megalink/time.hpp"

namespace megalink {

/// One two-line element set as printed: degrees, rev/day, 1/earth-radii.
struct TwoLineElementSet {
    std::string name;
    int catalog_id{0};
    char classification{'U'};
    std::string international_designator;
    UtcInstant epoch;
    double mean_motion_dot{0.0};   // rev/day^2, first derivative / 2
    double mean_motion_ddot{0.0};  // rev/day^3, second derivative / 6
    double bstar{0.0};
    int ephemeris_type{0};
    int element_set_number{0};
    double inclination_deg{0.0};
    double raan_deg{0.0};
    double eccentricity{0.0};
    double arg_perigee_deg{0.0};
    double mean_anomaly_deg{0.0};
    double mean_motion_rev_per_day{0.0};
    int revolution_number{0};
};

enum class TleStrictness {
    lenient,  // checksum mismatches and blank optional fields become warnings
    strict,
};

struct TleParseOptions {
    TleStrictness strictness{TleStrictness::lenient};
};

/// Raised for malformed records; field() names the offending column group.
class TleParseError : public std::runtime_error {
public:
    TleParseError(std::string field, std::string const& message);
    std::string const& field() const { return field_; }

private:
    std::string field_;
};

/// Parse a 2- or 3-line record. Lines may carry trailing text past column 69.
TwoLineElementSet parse_tle(std::string_view text, TleParseOptions options = {},
                            std::vector<std::string>* warnings = nullptr);

/// Parse a file body holding any number of records. Blank lines and lines
/// starting with '#' are skipped.
std::vector<TwoLineElementSet> parse_tle_catalog(std::string_view text,
                                                 TleParseOptions options = {},
                                                 std::vector<std::string>* warnings = nullptr);
std::vector<TwoLineElementSet> read_tle_file(std::string const& path, TleParseOptions options = {},
                                             std::vector<std::string>* warnings = nullptr);

/// Drag-free element set for the given mean elements (bstar = 0).
TwoLineElementSet elements_to_tle(KeplerianElements const& elements, int catalog_id,
                                  std::string name = {});

/// The two 69-column data lines, checksums included.
std::string format_tle_line1(TwoLineElementSet const& tle);
std::string format_tle_line2(TwoLineElementSet const& tle);
/// Name line (when non-empty) followed by both data lines, newline-terminated.
std::string format_tle(TwoLineElementSet const& tle);

/// Modulo-10 checksum over the first 68 columns.
int tle_checksum(std::string_view line);

}  // namespace megalink
