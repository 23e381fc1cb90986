#pragma once

#include <optional>
#include <string>
#include <vector>

#include "megalink/geometry.hpp"
#include "megalink/tle.hpp"
#include "megalink/walker.hpp"

namespace megalink {

/// A named fleet defined either by Walker shells or by a TLE file.
struct ConstellationSpec {
    std::string name;
    std::vector<ShellSpec> shells;
    std::optional<std::string> tle_file;
    BeamModel beam;
    /// Users above this altitude are left out of the fleet's headline coverage.
    std::optional<double> headline_max_altitude_km;

    void validate() const;
};

/// "oneweb", "starlink" and "eutelsat_geo".
std::vector<std::string> bundled_constellation_names();
ConstellationSpec bundled_constellation(std::string const& name);
bool is_bundled_constellation(std::string const& name);

/// Directory holding bundled data files; MEGALINK_DATA_DIR overrides it.
std::string data_directory();

/// Element sets for every satellite of the fleet. Walker satellites are
/// numbered from first_catalog_id and stamped with the given epoch.
std::vector<TwoLineElementSet> constellation_elements(ConstellationSpec const& spec,
                                                      UtcInstant const& epoch,
                                                      int first_catalog_id = 1,
                                                      TleParseOptions options = {},
                                                      std::vector<std::string>* warnings = nullptr);

/// Highest mean altitude [km] among the given element sets.
double highest_altitude_km(std::vector<TwoLineElementSet> const& elements);

}  // namespace megalink
