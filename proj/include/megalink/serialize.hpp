#pragma once

#include <json.hpp>

#include "megalink/metrics.hpp"
#include "megalink/walker.hpp"
#include "megalink/geometry.hpp"

namespace megalink {

nlohmann::ordered_json summary_to_json(CoverageSummary const& s);
/// Accepts the documents written by summary_to_json; missing optionals stay empty.
CoverageSummary summary_from_json(nlohmann::ordered_json const& j);

nlohmann::ordered_json shell_to_json(ShellSpec const& s);
nlohmann::ordered_json beam_to_json(BeamModel const& b);

}  // namespace megalink
