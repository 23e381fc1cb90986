#include "megalink/policy.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace megalink {

std::string to_string(PolicyKind kind)
{
    return kind == PolicyKind::random ? "random" : "closest";
}

PolicyKind policy_kind_from_string(std::string const& text)
{
    if (text == "random") {
        return PolicyKind::random;
    }
    if (text == "closest") {
        return PolicyKind::closest;
    }
    throw std::invalid_argument(fmt::format("unknown selection policy '{}'", text));
}

std::optional<int> select_serving(std::span<Candidate const> visible,
                                  SelectionPolicy const& policy, std::int64_t step_index,
                                  std::int64_t user_index)
{
    if (visible.empty()) {
        return std::nullopt;
    }
    if (policy.kind == PolicyKind::closest) {
        auto const best = std::min_element(
            visible.begin(), visible.end(), [](Candidate const& a, Candidate const& b) {
                return a.range_km < b.range_km || (a.range_km == b.range_km && a.sat_id < b.sat_id);
            });
        return best->sat_id;
    }

    if (!policy.seed) {
        throw std::invalid_argument("random selection policy requires a seed");
    }
    if (visible.size() == 1) {
        return visible.front().sat_id;
    }
    auto const seed = *policy.seed;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(user_index),
                      static_cast<std::uint32_t>(static_cast<std::uint64_t>(user_index) >> 32),
                      static_cast<std::uint32_t>(step_index),
                      static_cast<std::uint32_t>(static_cast<std::uint64_t>(step_index) >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::size_t> pick(0, visible.size() - 1);
    auto const rank = pick(rng);

    bool const sorted = std::is_sorted(visible.begin(), visible.end(),
                                       [](auto const& a, auto const& b) { return a.sat_id < b.sat_id; });
    if (sorted) {
        return visible[rank].sat_id;
    }
    std::vector<int> ids;
    ids.reserve(visible.size());
    for (auto const& c : visible) {
        ids.push_back(c.sat_id);
    }
    std::nth_element(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(rank), ids.end());
    return ids[rank];
}

}  // namespace megalink
