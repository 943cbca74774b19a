#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "ngon/chord.hpp"
#include "ngon/types.hpp"

namespace ngon {

inline constexpr double kTolPolygon = 1e-9;
inline constexpr double kRadialThreshold = 1e-13;
inline constexpr double kDegenerateThreshold = 1e-6;
inline constexpr double kDedupDistance = 1e-6;

// Edge lengths y_i = d(t_{i-1}, t_i) with t_0 = 0 and t_n = 1.
EdgeVector phi(const ChordMetric& metric, const ParameterVector& t);

// Orthogonal projection onto the hyperplane sum(z) = 0: z_i = y_i - mean(y).
Eigen::VectorXd psi1(const EdgeVector& y);

// Radial projection z / |z| onto the unit sphere of the hyperplane. Throws
// AtDiagonal when |z| <= kRadialThreshold, which means every edge is equal.
Eigen::VectorXd psi2(const Eigen::VectorXd& z);

// psi1(phi(t)). Vanishes exactly at inscribed regular polygons.
Eigen::VectorXd residual(const ChordMetric& metric, const ParameterVector& t);

// n x (n-1) lower-bidiagonal matrix of ∂y_i/∂t_j. Throws
// Error(kSingularChord) if any edge has zero length.
Eigen::MatrixXd jacobian_phi(const ChordMetric& metric,
                             const ParameterVector& t);

struct DetMCheck {
  double det_direct = 0.0;
  double det_formula = 0.0;
  double delta = 0.0;  // d(0, a_{n-1})
};

// The n x n matrix [phi(a) | e | last n-2 columns of jacobian_phi(a)] built
// at the chain anchor a = (a_1, ..., a_{n-1}).
Eigen::MatrixXd assemble_det_m_matrix(const ChordMetric& metric,
                                      const EpsilonChain& chain);

// Determinant of assemble_det_m_matrix by LU against the closed form
// (-1)^{n+1} (δ - ε) c_22 ... c_{n-1,n-1}. The chain must start at 0 and
// satisfy δ > ε; p, if positive, must exceed a_{n-1}.
DetMCheck det_m_identity_check(const ChordMetric& metric,
                               const EpsilonChain& chain, double p = -1.0);

struct SolverConfig {
  double tol_polygon = kTolPolygon;
  int max_iterations = 200;
  double max_condition = 1e12;
  double min_gap = 1e-10;
  double degenerate_threshold = kDegenerateThreshold;
};

enum class SolveStatus {
  kConverged,
  kIllConditioned,
  kNoConvergence,
  kDegenerate,
};

std::string_view to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::kNoConvergence;
  // The converged polygon, or the last iterate on failure.
  PolygonSolution solution;
  int iterations = 0;

  bool ok() const { return status == SolveStatus::kConverged; }
};

// All vertices collapsing toward the base point, or some edge vanishing.
bool is_degenerate(const ParameterVector& t, double edge_length,
                   double threshold = kDegenerateThreshold);

// Evaluates vertices, edge length (mean of y) and residual at t.
PolygonSolution make_solution(const ChordMetric& metric, ParameterVector t,
                              SolveMethod method,
                              double degenerate_threshold = kDegenerateThreshold);

// Damped Newton on the first n-1 components of psi1(phi(t)) with iterates
// projected into the ordered wedge 0 < t_1 < ... < t_{n-1} < 1. Degenerate
// seeds are rejected without iterating.
SolveResult newton_solve(const ChordMetric& metric, int n,
                         const ParameterVector& seed,
                         const SolverConfig& config = {});

// The anchor (a_1, ..., a_{n-1}) of a chain a_0 < ... < a_{n-1}, shifted so
// that a_0 is 0. Throws Error(kArity) if the chain does not have n points.
ParameterVector seed_from_chain(const EpsilonChain& chain, int n);
ParameterVector seed_from_chain(const EpsilonChain& chain);

// Removes solutions closer than `distance` in parameters, keeping the
// smaller residual, and orders the rest by residual then lexicographically.
std::vector<PolygonSolution> deduplicate(std::vector<PolygonSolution> solutions,
                                         double distance = kDedupDistance);

// Newton from the uniform polygon and from `starts` random ordered seeds.
// Returns the deduplicated non-degenerate solutions.
std::vector<PolygonSolution> multistart_newton(const ChordMetric& metric, int n,
                                               int starts, std::uint64_t seed,
                                               const SolverConfig& config = {});

struct BruteForceOptions {
  // Grid local minima below this residual are refined by Newton. The
  // effective threshold is max(candidate_threshold, sqrt(n-1)/grid), the
  // largest residual the nearest grid point to a solution can have.
  double candidate_threshold = 1e-3;
  // Above this n a random multistart replaces the full grid.
  int max_grid_n = 5;
  int multistart_starts = 2000;
  std::uint64_t seed = 0x5eed;
  SolverConfig solver;
};

// Exhaustive search of the ordered grid {k/grid} for local minima of
// |residual|, each refined by Newton. Empty result means nothing found.
std::vector<PolygonSolution> brute_force_oracle(
    const ChordMetric& metric, int n, int grid_per_dim,
    const BruteForceOptions& options = {});

// Smallest |residual| over the ordered grid {k/grid}, without refinement.
double grid_minimum_residual(const ChordMetric& metric, int n, int grid_per_dim);

struct VerifyReport {
  double max_edge_deviation = 0.0;
  bool on_curve = false;
  bool degenerate = false;
  double tol = kTolPolygon;

  bool passed() const {
    return max_edge_deviation < tol && on_curve && !degenerate;
  }
};

// Recomputes every edge, closing edge included, against edge_length and
// re-evaluates the vertices from their parameters.
VerifyReport verify_polygon(const ClosedCurve& curve, const PolygonSolution& sol,
                            double tol = kTolPolygon);

}  // namespace ngon
