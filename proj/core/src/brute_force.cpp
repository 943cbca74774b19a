#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "ngon/error.hpp"
#include "ngon/parallel.hpp"
#include "ngon/polygon.hpp"

namespace ngon {
namespace {

struct GridPoint {
  std::vector<int> index;  // strictly increasing in [1, grid - 1]
  double value = 0.0;
};

double grid_residual(const ChordMetric& metric, const std::vector<int>& k,
                     int grid) {
  Eigen::VectorXd t(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    t(i) = static_cast<double>(k[i]) / grid;
  }
  return residual(metric, ParameterVector(std::move(t))).norm();
}

// Visits every strictly increasing index vector whose first entry is `first`.
template <typename Visit>
void for_each_with_first(int first, int dims, int grid, Visit&& visit) {
  std::vector<int> k(dims);
  k[0] = first;
  // Enumerate k[1..] as combinations of (first, grid-1].
  const int rest = dims - 1;
  if (rest == 0) {
    visit(k);
    return;
  }
  if (grid - 1 - first < rest) return;
  for (int i = 1; i <= rest; ++i) k[i] = first + i;
  for (;;) {
    visit(k);
    int i = dims - 1;
    while (i >= 1 && k[i] == grid - 1 - (dims - 1 - i)) --i;
    if (i < 1) break;
    ++k[i];
    for (int j = i + 1; j < dims; ++j) k[j] = k[j - 1] + 1;
  }
}

void check_grid_args(int n, int grid) {
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "polygon needs n >= 3");
  if (grid < n) {
    throw Error(ErrorCode::kInvalidArgument,
                "grid must have at least n points per dimension");
  }
}

}  // namespace

double grid_minimum_residual(const ChordMetric& metric, int n, int grid) {
  check_grid_args(n, grid);
  const int dims = n - 1;
  std::vector<double> best(grid, std::numeric_limits<double>::infinity());
  parallel_for(static_cast<std::size_t>(grid - 1), [&](std::size_t f) {
    const int first = static_cast<int>(f) + 1;
    for_each_with_first(first, dims, grid, [&](const std::vector<int>& k) {
      best[first] = std::min(best[first], grid_residual(metric, k, grid));
    });
  });
  return *std::min_element(best.begin(), best.end());
}

std::vector<PolygonSolution> brute_force_oracle(
    const ChordMetric& metric, int n, int grid,
    const BruteForceOptions& options) {
  check_grid_args(n, grid);
  if (n > options.max_grid_n) {
    auto sols = multistart_newton(metric, n, options.multistart_starts,
                                  options.seed, options.solver);
    for (auto& s : sols) s.method = SolveMethod::kBruteForce;
    return sols;
  }

  const int dims = n - 1;
  const double threshold = std::max(
      options.candidate_threshold, std::sqrt(static_cast<double>(dims)) / grid);

  // Grid points under the threshold, bucketed by first index so the merge
  // order does not depend on scheduling.
  std::vector<std::vector<GridPoint>> buckets(grid);
  parallel_for(static_cast<std::size_t>(grid - 1), [&](std::size_t f) {
    const int first = static_cast<int>(f) + 1;
    for_each_with_first(first, dims, grid, [&](const std::vector<int>& k) {
      const double v = grid_residual(metric, k, grid);
      if (v < threshold) buckets[first].push_back({k, v});
    });
  });

  std::vector<GridPoint> minima;
  for (const auto& bucket : buckets) {
    for (const GridPoint& p : bucket) {
      bool is_min = true;
      std::vector<int> nb = p.index;
      for (int i = 0; i < dims && is_min; ++i) {
        for (int delta : {-1, 1}) {
          nb[i] = p.index[i] + delta;
          const int lo = i == 0 ? 1 : nb[i - 1] + 1;
          const int hi = i == dims - 1 ? grid - 1 : nb[i + 1] - 1;
          if (nb[i] >= lo && nb[i] <= hi &&
              grid_residual(metric, nb, grid) < p.value) {
            is_min = false;
            break;
          }
        }
        nb[i] = p.index[i];
      }
      if (is_min) minima.push_back(p);
    }
  }

  std::vector<std::optional<PolygonSolution>> refined(minima.size());
  parallel_for(minima.size(), [&](std::size_t m) {
    Eigen::VectorXd t(dims);
    for (int i = 0; i < dims; ++i) {
      t(i) = static_cast<double>(minima[m].index[i]) / grid;
    }
    SolveResult r = newton_solve(metric, n, ParameterVector(std::move(t)),
                                 options.solver);
    if (r.ok()) {
      r.solution.method = SolveMethod::kBruteForce;
      refined[m] = std::move(r.solution);
    }
  });
  std::vector<PolygonSolution> out;
  for (auto& r : refined) {
    if (r) out.push_back(std::move(*r));
  }
  return deduplicate(std::move(out));
}

}  // namespace ngon
