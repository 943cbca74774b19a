#include "ngon/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "ngon/error.hpp"
#include "ngon/parallel.hpp"

namespace ngon {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kIllConditioned: return "ill_conditioned";
    case SolveStatus::kNoConvergence: return "no_convergence";
    case SolveStatus::kDegenerate: return "degenerate";
  }
  return "unknown";
}

EdgeVector phi(const ChordMetric& metric, const ParameterVector& t) {
  const int n = t.n();
  EdgeVector y{Eigen::VectorXd(n)};
  for (int i = 1; i <= n; ++i) y.y(i - 1) = metric.distance(t[i - 1], t[i]);
  return y;
}

Eigen::VectorXd psi1(const EdgeVector& y) {
  return (y.y.array() - y.y.mean()).matrix();
}

Eigen::VectorXd psi2(const Eigen::VectorXd& z) {
  const double norm = z.norm();
  if (!(norm > kRadialThreshold)) {
    throw AtDiagonal("edge vector lies on the diagonal",
                     std::vector<double>(z.data(), z.data() + z.size()));
  }
  return z / norm;
}

Eigen::VectorXd residual(const ChordMetric& metric, const ParameterVector& t) {
  return psi1(phi(metric, t));
}

Eigen::MatrixXd jacobian_phi(const ChordMetric& metric,
                             const ParameterVector& t) {
  const int n = t.n();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n - 1);
  for (int i = 1; i <= n; ++i) {
    const ChordPartials c = metric.partials(t[i - 1], t[i]);
    // Row i-1 holds y_i; column j-1 holds t_j. t_0 and t_n are fixed.
    if (i - 1 >= 1) jac(i - 1, i - 2) = c.d_dt1;
    if (i <= n - 1) jac(i - 1, i - 1) = c.d_dt2;
  }
  return jac;
}

Eigen::MatrixXd assemble_det_m_matrix(const ChordMetric& metric,
                                      const EpsilonChain& chain) {
  const ParameterVector anchor = seed_from_chain(chain);
  const int n = anchor.n();
  const Eigen::VectorXd y = phi(metric, anchor).y;
  const Eigen::MatrixXd jac = jacobian_phi(metric, anchor);
  Eigen::MatrixXd m(n, n);
  m.col(0) = y;
  m.col(1).setOnes();
  m.rightCols(n - 2) = jac.rightCols(n - 2);
  return m;
}

DetMCheck det_m_identity_check(const ChordMetric& metric,
                               const EpsilonChain& chain, double p) {
  const ParameterVector anchor = seed_from_chain(chain);
  const int n = anchor.n();
  if (std::abs(chain.params.front()) > 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "chain must start at parameter 0");
  }
  if (p > 0.0 && !(p > anchor[n - 1] && p < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "p must lie in (a_{n-1}, 1)");
  }
  const double eps = chain.epsilon;
  const double delta = metric.distance(0.0, anchor[n - 1]);
  if (!(delta > eps)) {
    std::ostringstream os;
    os << "delta = " << delta << " does not exceed epsilon = " << eps
       << "; the chain is not in the monotone regime";
    throw Error(ErrorCode::kPreconditionViolated, os.str());
  }
  const Eigen::MatrixXd m = assemble_det_m_matrix(metric, chain);
  const Eigen::MatrixXd jac = jacobian_phi(metric, anchor);

  double product = (n + 1) % 2 == 0 ? 1.0 : -1.0;
  product *= delta - eps;
  // c_22 ... c_{n-1,n-1}: jac(i-1, i-1) in zero-based storage.
  for (int i = 2; i <= n - 1; ++i) product *= jac(i - 1, i - 1);

  return {m.partialPivLu().determinant(), product, delta};
}

bool is_degenerate(const ParameterVector& t, double edge_length,
                   double threshold) {
  const int n = t.n();
  const auto& in = t.interior();
  if (in.maxCoeff() < threshold) return true;
  if (in.minCoeff() > 1.0 - threshold) return true;
  for (int i = 1; i <= n; ++i) {
    if (t[i] - t[i - 1] < threshold) return true;
  }
  return edge_length < threshold;
}

PolygonSolution make_solution(const ChordMetric& metric, ParameterVector t,
                              SolveMethod method,
                              double degenerate_threshold) {
  const EdgeVector y = phi(metric, t);
  const Eigen::VectorXd z = psi1(y);
  std::vector<Point> vertices;
  vertices.reserve(t.n());
  for (int i = 0; i < t.n(); ++i) vertices.push_back(metric.curve().eval(t[i]));
  const double edge = y.y.mean();
  const bool degenerate = is_degenerate(t, edge, degenerate_threshold);
  return {std::move(t), std::move(vertices), edge, z.norm(), method, degenerate};
}

namespace {

// Clamp into 0 < t_1 < ... < t_{n-1} < 1 with gaps of at least min_gap.
Eigen::VectorXd project_to_wedge(Eigen::VectorXd t, double min_gap) {
  const Eigen::Index k = t.size();
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!std::isfinite(t(i))) t(i) = 0.5;
  }
  double lower = min_gap;
  for (Eigen::Index i = 0; i < k; ++i) {
    t(i) = std::max(t(i), lower);
    lower = t(i) + min_gap;
  }
  double upper = 1.0 - min_gap;
  for (Eigen::Index i = k; i-- > 0;) {
    t(i) = std::min(t(i), upper);
    upper = t(i) - min_gap;
  }
  return t;
}

}  // namespace

SolveResult newton_solve(const ChordMetric& metric, int n,
                         const ParameterVector& seed,
                         const SolverConfig& config) {
  if (seed.n() != n) {
    throw Error(ErrorCode::kArity, "seed has the wrong number of parameters");
  }
  {
    const double seed_edge = phi(metric, seed).y.mean();
    if (is_degenerate(seed, seed_edge, config.degenerate_threshold)) {
      PolygonSolution sol = make_solution(metric, seed, SolveMethod::kNewton,
                                          config.degenerate_threshold);
      sol.degenerate = true;
      return {SolveStatus::kDegenerate, std::move(sol), 0};
    }
  }

  Eigen::VectorXd t = project_to_wedge(seed.interior(), config.min_gap);
  auto eval_residual = [&](const Eigen::VectorXd& x) {
    return residual(metric, ParameterVector(x));
  };
  Eigen::VectorXd z = eval_residual(t);
  double norm = z.norm();
  // Keep iterating past tol_polygon while quadratic convergence still pays:
  // stop once the residual is at rounding level or stops shrinking.
  const double polish_target = config.tol_polygon * 1e-4;

  int iter = 0;
  SolveStatus status = SolveStatus::kNoConvergence;
  for (; iter < config.max_iterations; ++iter) {
    if (norm < polish_target) {
      status = SolveStatus::kConverged;
      break;
    }
    const ParameterVector current(t);
    Eigen::MatrixXd jac;
    try {
      jac = jacobian_phi(metric, current);
    } catch (const Error&) {
      status = SolveStatus::kIllConditioned;
      break;
    }
    // Mean-subtracted Jacobian; the last row is redundant since sum(z) = 0.
    const Eigen::RowVectorXd col_mean = jac.colwise().mean();
    const Eigen::MatrixXd reduced =
        (jac.rowwise() - col_mean).topRows(n - 1);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(reduced, Eigen::ComputeFullU |
                                                       Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cond = sv(sv.size() - 1) > 0.0
                            ? sv(0) / sv(sv.size() - 1)
                            : std::numeric_limits<double>::infinity();
    if (!(cond <= config.max_condition)) {
      status = SolveStatus::kIllConditioned;
      break;
    }
    const Eigen::VectorXd step = svd.solve(-z.head(n - 1));

    double lambda = 1.0;
    bool accepted = false;
    Eigen::VectorXd candidate;
    Eigen::VectorXd candidate_z;
    double candidate_norm = norm;
    for (int halvings = 0; halvings < 30; ++halvings) {
      candidate = project_to_wedge(t + lambda * step, config.min_gap);
      candidate_z = eval_residual(candidate);
      candidate_norm = candidate_z.norm();
      if (candidate_norm < (1.0 - 1e-4 * lambda) * norm) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      // Rounding floor reached after convergence, otherwise a stall.
      if (norm < config.tol_polygon) status = SolveStatus::kConverged;
      break;
    }
    const bool slow = candidate_norm > 0.5 * norm;
    t = candidate;
    z = candidate_z;
    norm = candidate_norm;
    if (slow && norm < config.tol_polygon) {
      status = SolveStatus::kConverged;
      ++iter;
      break;
    }
  }
  if (status == SolveStatus::kNoConvergence && norm < config.tol_polygon) {
    status = SolveStatus::kConverged;
  }

  PolygonSolution sol = make_solution(metric, ParameterVector(t),
                                      SolveMethod::kNewton,
                                      config.degenerate_threshold);
  if (status == SolveStatus::kConverged && sol.degenerate) {
    status = SolveStatus::kDegenerate;
  }
  return {status, std::move(sol), iter};
}

ParameterVector seed_from_chain(const EpsilonChain& chain, int n) {
  if (static_cast<int>(chain.params.size()) != n) {
    std::ostringstream os;
    os << "chain has " << chain.params.size() << " points, expected " << n;
    throw Error(ErrorCode::kArity, os.str());
  }
  return seed_from_chain(chain);
}

ParameterVector seed_from_chain(const EpsilonChain& chain) {
  const int n = static_cast<int>(chain.params.size());
  if (n < 3) {
    throw Error(ErrorCode::kArity, "chain needs at least 3 points for a seed");
  }
  const double base = chain.params.front();
  Eigen::VectorXd t(n - 1);
  for (int i = 1; i < n; ++i) t(i - 1) = chain.params[i] - base;
  return ParameterVector(std::move(t));
}

std::vector<PolygonSolution> deduplicate(std::vector<PolygonSolution> solutions,
                                         double distance) {
  std::stable_sort(solutions.begin(), solutions.end(),
                   [](const PolygonSolution& a, const PolygonSolution& b) {
                     return a.residual_norm < b.residual_norm;
                   });
  std::vector<PolygonSolution> kept;
  for (auto& s : solutions) {
    const bool duplicate = std::any_of(
        kept.begin(), kept.end(), [&](const PolygonSolution& k) {
          return k.n() == s.n() &&
                 (k.params.interior() - s.params.interior()).norm() < distance;
        });
    if (!duplicate) kept.push_back(std::move(s));
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const PolygonSolution& a, const PolygonSolution& b) {
                     if (a.residual_norm != b.residual_norm) {
                       return a.residual_norm < b.residual_norm;
                     }
                     const auto& x = a.params.interior();
                     const auto& y = b.params.interior();
                     return std::lexicographical_compare(
                         x.data(), x.data() + x.size(), y.data(),
                         y.data() + y.size());
                   });
  return kept;
}

std::vector<PolygonSolution> multistart_newton(const ChordMetric& metric, int n,
                                               int starts, std::uint64_t seed,
                                               const SolverConfig& config) {
  std::vector<ParameterVector> seeds;
  seeds.reserve(starts + 1);
  seeds.push_back(ParameterVector::uniform(n));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd t(n - 1);
    for (int i = 0; i < n - 1; ++i) t(i) = unif(rng);
    std::sort(t.data(), t.data() + t.size());
    seeds.emplace_back(project_to_wedge(t, 1e-6));
  }

  std::vector<std::optional<PolygonSolution>> found(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    SolveResult r = newton_solve(metric, n, seeds[i], config);
    if (r.ok()) found[i] = std::move(r.solution);
  });
  std::vector<PolygonSolution> out;
  for (auto& f : found) {
    if (f) out.push_back(std::move(*f));
  }
  return deduplicate(std::move(out));
}

VerifyReport verify_polygon(const ClosedCurve& curve, const PolygonSolution& sol,
                            double tol) {
  VerifyReport report;
  report.tol = tol;
  const int n = sol.n();
  report.on_curve = static_cast<int>(sol.vertices.size()) == n;
  for (int i = 0; i < n && report.on_curve; ++i) {
    const Point x = curve.eval(sol.params[i]);
    report.on_curve = x.size() == sol.vertices[i].size() &&
                      (x - sol.vertices[i]).norm() <= tol;
  }
  double deviation = 0.0;
  for (int i = 1; i <= n; ++i) {
    const Point a = curve.eval(sol.params[i - 1]);
    const Point b = curve.eval(sol.params[i]);
    deviation = std::max(deviation, std::abs((b - a).norm() - sol.edge_length));
  }
  report.max_edge_deviation = deviation;
  report.degenerate = is_degenerate(sol.params, sol.edge_length);
  return report;
}

}  // namespace ngon
