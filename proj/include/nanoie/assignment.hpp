#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace nanoie {

/// Maximum-weight assignment on a rectangular integer weight matrix
/// (Kuhn-Munkres with potentials, O(n^3) for n = max(rows, cols)).
///
/// Returns, for each row, the column it is assigned to or nullopt when the
/// row was paired with a padding column. Weights must be non-negative.
std::vector<std::optional<std::size_t>> max_weight_assignment(const std::vector<std::vector<std::int64_t>>& weights);

}  // namespace nanoie
