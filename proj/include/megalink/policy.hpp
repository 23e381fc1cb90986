#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace megalink {

enum class PolicyKind { random, closest };

struct SelectionPolicy {
    PolicyKind kind{PolicyKind::closest};
    std::optional<std::uint64_t> seed;  // required for random
};

std::string to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(std::string const& text);

struct Candidate {
    int sat_id;
    double range_km;
};

/// Serving satellite among the visible candidates, or nullopt when none.
///
/// closest: minimum range, ties to the lowest id. random: uniform over the
/// candidates ranked by id, drawn from a stream keyed by (seed, user, step)
/// so the choice does not depend on evaluation order.
std::optional<int> select_serving(std::span<Candidate const> visible,
                                  SelectionPolicy const& policy, std::int64_t step_index,
                                  std::int64_t user_index);

}  // namespace megalink
