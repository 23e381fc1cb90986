#include "megalink/tle.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "megalink/constants.hpp"

namespace megalink {
namespace {

constexpr std::size_t kLineLength = 69;

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::string_view strip_cr(std::string_view s)
{
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) {
        s.remove_suffix(1);
    }
    return s;
}

/// Columns are 1-based and inclusive, as in the published format.
std::string_view columns(std::string_view line, std::size_t first, std::size_t last)
{
    if (line.size() < first) {
        return {};
    }
    return line.substr(first - 1, std::min(last, line.size()) - first + 1);
}

double to_double(std::string_view text, std::string const& field)
{
    auto const t = trim(text);
    if (t.empty()) {
        throw TleParseError(field, "field is blank");
    }
    std::string buffer(t);
    // from_chars rejects a leading '+' and a bare leading '.', so normalise.
    if (buffer.front() == '+') {
        buffer.erase(0, 1);
    }
    bool negative = false;
    if (!buffer.empty() && buffer.front() == '-') {
        negative = true;
        buffer.erase(0, 1);
    }
    if (!buffer.empty() && buffer.front() == '.') {
        buffer.insert(0, "0");
    }
    double value = 0.0;
    auto const* end = buffer.data() + buffer.size();
    auto [ptr, ec] = std::from_chars(buffer.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw TleParseError(field, fmt::format("'{}' is not a number", t));
    }
    return negative ? -value : value;
}

int to_int(std::string_view text, std::string const& field)
{
    auto const t = trim(text);
    if (t.empty()) {
        throw TleParseError(field, "field is blank");
    }
    int value = 0;
    auto const* end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(t.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw TleParseError(field, fmt::format("'{}' is not an integer", t));
    }
    return value;
}

int optional_int(std::string_view text, std::string const& field)
{
    return trim(text).empty() ? 0 : to_int(text, field);
}

/// Alpha-5 extends five-column catalog numbers past 99999 with a leading
/// letter (I and O are skipped).
int parse_catalog_id(std::string_view text)
{
    auto const t = trim(text);
    if (!t.empty() && std::isalpha(static_cast<unsigned char>(t.front()))) {
        char const c = static_cast<char>(std::toupper(static_cast<unsigned char>(t.front())));
        if (c == 'I' || c == 'O') {
            throw TleParseError("catalog_id", fmt::format("invalid alpha-5 prefix '{}'", c));
        }
        int code = c - 'A' + 10;
        if (c > 'I') {
            --code;
        }
        if (c > 'O') {
            --code;
        }
        return code * 10000 + to_int(t.substr(1), "catalog_id");
    }
    return to_int(t, "catalog_id");
}

std::string format_catalog_id(int id)
{
    if (id < 0 || id > 339999) {
        throw std::invalid_argument(fmt::format("catalog id {} not representable", id));
    }
    if (id <= 99999) {
        return fmt::format("{:05d}", id);
    }
    int code = id / 10000;
    char letter = static_cast<char>('A' + code - 10);
    if (letter >= 'I') {
        ++letter;
    }
    if (letter >= 'O') {
        ++letter;
    }
    return fmt::format("{}{:04d}", letter, id % 10000);
}

/// "SNNNNN-E" with an implied leading decimal point: " 28098-4" = 0.28098e-4.
double implied_exponent(std::string_view text, std::string const& field)
{
    auto const t = trim(text);
    if (t.empty()) {
        return 0.0;
    }
    if (t.size() < 3) {
        throw TleParseError(field, fmt::format("'{}' is too short", t));
    }
    auto const exponent_part = t.substr(t.size() - 2);
    auto mantissa_part = t.substr(0, t.size() - 2);
    double sign = 1.0;
    if (mantissa_part.front() == '-' || mantissa_part.front() == '+') {
        sign = mantissa_part.front() == '-' ? -1.0 : 1.0;
        mantissa_part.remove_prefix(1);
    }
    mantissa_part = trim(mantissa_part);
    double mantissa = 0.0;
    double scale = 0.1;
    for (char c : mantissa_part) {
        if (c == ' ') {
            c = '0';
        }
        if (c < '0' || c > '9') {
            throw TleParseError(field, fmt::format("'{}' has a non-digit mantissa", t));
        }
        mantissa += (c - '0') * scale;
        scale *= 0.1;
    }
    if ((exponent_part[0] != '-' && exponent_part[0] != '+' && exponent_part[0] != ' ')
        || !std::isdigit(static_cast<unsigned char>(exponent_part[1]))) {
        throw TleParseError(field, fmt::format("'{}' has a malformed exponent", t));
    }
    int exponent = exponent_part[1] - '0';
    if (exponent_part[0] == '-') {
        exponent = -exponent;
    }
    return sign * mantissa * std::pow(10.0, exponent);
}

std::string format_implied_exponent(double value)
{
    if (value == 0.0) {
        return " 00000+0";
    }
    int exponent = static_cast<int>(std::floor(std::log10(std::fabs(value)))) + 1;
    auto digits = static_cast<long>(std::lround(std::fabs(value) / std::pow(10.0, exponent) * 1e5));
    if (digits >= 100000) {
        digits /= 10;
        ++exponent;
    }
    if (exponent < -9 || exponent > 9) {
        throw std::invalid_argument(fmt::format("{} not representable in TLE exponent form", value));
    }
    return fmt::format("{}{:05d}{}{}", value < 0 ? '-' : ' ', digits, exponent < 0 ? '-' : '+',
                       std::abs(exponent));
}

std::string format_first_derivative(double value)
{
    auto text = fmt::format("{:.8f}", std::fabs(value));
    // "0.00000023" -> ".00000023"
    if (text.starts_with("0.")) {
        text.erase(0, 1);
    }
    return fmt::format("{}{:>9}", value < 0 ? '-' : ' ', text);
}

double normalize_degrees(double deg)
{
    double v = std::fmod(deg, 360.0);
    if (v < 0.0) {
        v += 360.0;
    }
    return v;
}

void check_line(std::string_view line, char number, std::size_t min_length,
                TleParseOptions const& options, std::vector<std::string>* warnings)
{
    std::string const field = fmt::format("line{}", number);
    if (line.empty() || line[0] != number) {
        throw TleParseError(field, fmt::format("line does not start with '{}'", number));
    }
    bool const strict = options.strictness == TleStrictness::strict;
    std::size_t const required = strict ? kLineLength : min_length;
    if (line.size() < required) {
        throw TleParseError(field, fmt::format("line has {} columns, expected at least {}",
                                               line.size(), required));
    }
    if (line.size() < kLineLength
        || !std::isdigit(static_cast<unsigned char>(line[kLineLength - 1]))) {
        if (strict) {
            throw TleParseError(field, "checksum column missing");
        }
        if (warnings) {
            warnings->push_back(fmt::format("{}: checksum column missing", field));
        }
        return;
    }
    int const expected = tle_checksum(line);
    int const printed = line[kLineLength - 1] - '0';
    if (expected != printed) {
        auto const message
            = fmt::format("{}: checksum {} does not match computed {}", field, printed, expected);
        if (strict) {
            throw TleParseError(field + ".checksum", message);
        }
        if (warnings) {
            warnings->push_back(message);
        }
    }
}

}  // namespace

TleParseError::TleParseError(std::string field, std::string const& message)
    : std::runtime_error(fmt::format("TLE field '{}': {}", field, message)),
      field_(std::move(field))
{
}

int tle_checksum(std::string_view line)
{
    int sum = 0;
    for (std::size_t i = 0; i < std::min<std::size_t>(68, line.size()); ++i) {
        char const c = line[i];
        if (c >= '0' && c <= '9') {
            sum += c - '0';
        } else if (c == '-') {
            sum += 1;
        }
    }
    return sum % 10;
}

TwoLineElementSet parse_tle(std::string_view text, TleParseOptions options,
                            std::vector<std::string>* warnings)
{
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto const end = text.find('\n', start);
        auto const line = strip_cr(text.substr(start, end == std::string_view::npos ? text.npos
                                                                                    : end - start));
        if (!trim(line).empty()) {
            lines.push_back(line);
        }
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
    }
    if (lines.size() != 2 && lines.size() != 3) {
        throw TleParseError("record",
                            fmt::format("expected 2 or 3 non-blank lines, got {}", lines.size()));
    }

    TwoLineElementSet tle;
    if (lines.size() == 3) {
        auto name = trim(lines[0]);
        if (name.starts_with("0 ")) {
            name = trim(name.substr(2));
        }
        tle.name = std::string(name);
    }
    auto const line1 = lines[lines.size() - 2];
    auto const line2 = lines[lines.size() - 1];

    check_line(line1, '1', 61, options, warnings);
    check_line(line2, '2', 63, options, warnings);

    tle.catalog_id = parse_catalog_id(columns(line1, 3, 7));
    auto const cls = columns(line1, 8, 8);
    tle.classification = (cls.empty() || cls[0] == ' ') ? 'U' : cls[0];
    tle.international_designator = std::string(trim(columns(line1, 10, 17)));
    int const year = to_int(columns(line1, 19, 20), "epoch_year");
    double const day = to_double(columns(line1, 21, 32), "epoch_day");
    if (day < 1.0 || day >= 367.0) {
        throw TleParseError("epoch_day", fmt::format("day-of-year {} out of range", day));
    }
    tle.epoch = UtcInstant::from_tle_epoch(year, day);
    tle.mean_motion_dot = to_double(columns(line1, 34, 43), "mean_motion_dot");
    tle.mean_motion_ddot = implied_exponent(columns(line1, 45, 52), "mean_motion_ddot");
    tle.bstar = implied_exponent(columns(line1, 54, 61), "bstar");
    tle.ephemeris_type = optional_int(columns(line1, 63, 63), "ephemeris_type");
    tle.element_set_number = optional_int(columns(line1, 65, 68), "element_set_number");

    if (parse_catalog_id(columns(line2, 3, 7)) != tle.catalog_id) {
        throw TleParseError("catalog_id", "catalog numbers differ between lines 1 and 2");
    }
    tle.inclination_deg = to_double(columns(line2, 9, 16), "inclination");
    tle.raan_deg = to_double(columns(line2, 18, 25), "raan");
    auto const ecc = trim(columns(line2, 27, 33));
    if (ecc.empty()) {
        throw TleParseError("eccentricity", "field is blank");
    }
    std::string ecc_digits(ecc);
    for (char const c : ecc_digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw TleParseError("eccentricity", fmt::format("'{}' is not 7 digits", ecc));
        }
    }
    ecc_digits.resize(7, '0');
    tle.eccentricity = to_double("0." + ecc_digits, "eccentricity");
    tle.arg_perigee_deg = to_double(columns(line2, 35, 42), "arg_perigee");
    tle.mean_anomaly_deg = to_double(columns(line2, 44, 51), "mean_anomaly");
    tle.mean_motion_rev_per_day = to_double(columns(line2, 53, 63), "mean_motion");
    tle.revolution_number = optional_int(columns(line2, 64, 68), "revolution_number");

    if (tle.inclination_deg < 0.0 || tle.inclination_deg > 180.0) {
        throw TleParseError("inclination",
                            fmt::format("{} deg outside [0, 180]", tle.inclination_deg));
    }
    if (tle.mean_motion_rev_per_day <= 0.0) {
        throw TleParseError("mean_motion", "mean motion must be positive");
    }
    if (tle.name.empty()) {
        tle.name = fmt::format("{}", tle.catalog_id);
    }
    return tle;
}

std::vector<TwoLineElementSet> parse_tle_catalog(std::string_view text, TleParseOptions options,
                                                 std::vector<std::string>* warnings)
{
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto const line = strip_cr(text.substr(start, end - start));
        auto const content = trim(line);
        if (!content.empty() && content.front() != '#') {
            lines.push_back(line);
        }
        start = end + 1;
    }

    std::vector<TwoLineElementSet> records;
    std::size_t i = 0;
    while (i < lines.size()) {
        bool const bare = lines[i].starts_with("1 ") && i + 1 < lines.size()
                          && lines[i + 1].starts_with("2 ");
        std::size_t const count = bare ? 2 : 3;
        if (i + count > lines.size()) {
            throw TleParseError("record", fmt::format("truncated record starting at '{}'",
                                                      trim(lines[i])));
        }
        std::string record;
        for (std::size_t k = 0; k < count; ++k) {
            record.append(lines[i + k]);
            record.push_back('\n');
        }
        records.push_back(parse_tle(record, options, warnings));
        i += count;
    }
    return records;
}

std::vector<TwoLineElementSet> read_tle_file(std::string const& path, TleParseOptions options,
                                             std::vector<std::string>* warnings)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open TLE file '{}'", path));
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_tle_catalog(buffer.str(), options, warnings);
}

TwoLineElementSet elements_to_tle(KeplerianElements const& elements, int catalog_id,
                                  std::string name)
{
    elements.validate();
    TwoLineElementSet tle;
    tle.name = name.empty() ? fmt::format("{}", catalog_id) : std::move(name);
    tle.catalog_id = catalog_id;
    tle.epoch = elements.epoch;
    tle.inclination_deg = elements.inclination_deg;
    tle.raan_deg = normalize_degrees(elements.raan_deg);
    tle.eccentricity = elements.eccentricity;
    tle.arg_perigee_deg = normalize_degrees(elements.arg_perigee_deg);
    tle.mean_anomaly_deg = normalize_degrees(elements.mean_anomaly_deg);
    tle.mean_motion_rev_per_day = mean_motion_rev_per_day(elements.semi_major_axis_km);
    return tle;
}

std::string format_tle_line1(TwoLineElementSet const& tle)
{
    int year = 0;
    double day = 0.0;
    tle.epoch.tle_epoch(year, day);
    auto line = fmt::format("1 {}{} {:<8} {:02d}{:012.8f} {} {} {} {:1d} {:>4d}",
                            format_catalog_id(tle.catalog_id), tle.classification,
                            tle.international_designator.substr(0, 8), year % 100, day,
                            format_first_derivative(tle.mean_motion_dot),
                            format_implied_exponent(tle.mean_motion_ddot),
                            format_implied_exponent(tle.bstar), tle.ephemeris_type,
                            tle.element_set_number % 10000);
    line.push_back(static_cast<char>('0' + tle_checksum(line)));
    return line;
}

std::string format_tle_line2(TwoLineElementSet const& tle)
{
    auto const ecc = static_cast<long>(std::lround(tle.eccentricity * 1e7));
    if (ecc < 0 || ecc > 9999999) {
        throw std::invalid_argument(fmt::format("eccentricity {} not printable", tle.eccentricity));
    }
    auto line = fmt::format("2 {} {:8.4f} {:8.4f} {:07d} {:8.4f} {:8.4f} {:11.8f}{:>5d}",
                            format_catalog_id(tle.catalog_id), tle.inclination_deg,
                            normalize_degrees(tle.raan_deg), ecc,
                            normalize_degrees(tle.arg_perigee_deg),
                            normalize_degrees(tle.mean_anomaly_deg), tle.mean_motion_rev_per_day,
                            tle.revolution_number % 100000);
    line.push_back(static_cast<char>('0' + tle_checksum(line)));
    return line;
}

std::string format_tle(TwoLineElementSet const& tle)
{
    std::string out;
    if (!tle.name.empty()) {
        out += tle.name;
        out += '\n';
    }
    out += format_tle_line1(tle);
    out += '\n';
    out += format_tle_line2(tle);
    out += '\n';
    return out;
}

}  // namespace megalink
