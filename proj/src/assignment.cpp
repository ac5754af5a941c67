#include "nanoie/assignment.hpp"

#include <algorithm>
#include <limits>

#include "nanoie/error.hpp"

namespace nanoie {

std::vector<std::optional<std::size_t>> max_weight_assignment(const std::vector<std::vector<std::int64_t>>& weights) {
  const std::size_t rows = weights.size();
  const std::size_t cols = rows == 0 ? 0 : weights.front().size();
  std::vector<std::optional<std::size_t>> result(rows);
  if (rows == 0 || cols == 0) return result;

  std::int64_t max_w = 0;
  for (const auto& r : weights) {
    if (r.size() != cols) throw InvalidArgument("weight matrix rows differ in length");
    for (auto w : r) {
      if (w < 0) throw InvalidArgument("weights must be non-negative");
      max_w = std::max(max_w, w);
    }
  }

  // Square cost matrix, 1-based as in the classic potentials formulation.
  // Padding cells cost max_w, i.e. weight zero.
  const std::size_t n = std::max(rows, cols);
  auto cost = [&](std::size_t i, std::size_t j) -> std::int64_t {
    if (i <= rows && j <= cols) return max_w - weights[i - 1][j - 1];
    return max_w;
  };

  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      std::int64_t delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = p[j];
    if (i >= 1 && i <= rows && j <= cols) result[i - 1] = j - 1;
  }
  return result;
}

}  // namespace nanoie
