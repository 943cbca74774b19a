#include "ngon/chain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "ngon/chord.hpp"
#include "ngon/error.hpp"
#include "ngon/parallel.hpp"
#include "ngon/polygon.hpp"
#include "roots.hpp"

namespace ngon {

double next_chain_point(const ClosedCurve& curve, double from, double epsilon,
                        double tol) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidArgument, "chain step must be positive");
  }
  const ChordMetric metric(curve);
  const double limit = from + 0.5;
  // Unit speed makes d(from, ·) 1-Lipschitz, so stepping by epsilon - d never
  // jumps over a crossing. The floor only bounds the work near tangential
  // approaches.
  const double min_step = 1e-3 * epsilon;

  double prev = from;
  double s = std::min(from + epsilon, limit);
  for (;;) {
    const double ds = metric.distance(from, s);
    if (ds >= epsilon) {
      auto f = [&](double x) { return metric.distance(from, x) - epsilon; };
      auto df = [&](double x) { return metric.partials(from, x).d_dt2; };
      return detail::safeguarded_root(f, df, prev, s, tol * 1e-3);
    }
    if (s >= limit) break;
    prev = s;
    s = std::min(s + std::max(epsilon - ds, min_step), limit);
  }
  std::ostringstream os;
  os << "no point at chord distance " << epsilon << " within half a period of "
     << from;
  throw StepTooLarge(os.str(), -1, epsilon, from);
}

EpsilonChain build_chain(const ClosedCurve& curve, double base, double epsilon,
                         int count, double tol) {
  if (count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "chain needs at least one point");
  }
  EpsilonChain chain;
  chain.epsilon = epsilon;
  chain.params.reserve(count);
  chain.vertices.reserve(count);
  chain.params.push_back(base);
  chain.vertices.push_back(curve.eval(base));
  for (int i = 1; i < count; ++i) {
    double next = 0.0;
    try {
      next = next_chain_point(curve, chain.params.back(), epsilon, tol);
    } catch (const StepTooLarge& e) {
      std::ostringstream os;
      os << "chain step " << i << ": " << e.what();
      throw StepTooLarge(os.str(), i, epsilon, e.from());
    }
    chain.params.push_back(next);
    chain.vertices.push_back(curve.eval(next));
  }
  return chain;
}

ClosureGap closure_gap(const ClosedCurve& curve, double epsilon, int count,
                       double tol) {
  double a = 0.0;
  for (int i = 1; i <= count; ++i) {
    try {
      a = next_chain_point(curve, a, epsilon, tol);
    } catch (const StepTooLarge& e) {
      std::ostringstream os;
      os << "closure step " << i << " of " << count << ": " << e.what();
      throw StepTooLarge(os.str(), i, epsilon, e.from());
    }
  }
  return {epsilon, a - 1.0, (curve.eval(a) - curve.eval(0.0)).norm()};
}

namespace {

std::optional<PolygonSolution> close_bracket(const ClosedCurve& curve,
                                             int count, double lo, double hi,
                                             const ChainBisectionOptions& options) {
  auto gap = [&](double eps) {
    return closure_gap(curve, eps, count, options.tol_chain).gap;
  };
  double root = 0.0;
  try {
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        gap, lo, hi, boost::math::tools::eps_tolerance<double>(52), max_iter);
    const double fa = std::abs(gap(a));
    const double fb = std::abs(gap(b));
    root = fa <= fb ? a : b;
  } catch (const Error&) {
    return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }

  const EpsilonChain chain =
      build_chain(curve, 0.0, root, count, options.tol_chain);
  Eigen::VectorXd interior(count - 1);
  for (int i = 1; i < count; ++i) interior(i - 1) = chain.params[i];
  if (interior(count - 2) >= 1.0) return std::nullopt;

  const ChordMetric metric(curve);
  PolygonSolution sol =
      make_solution(metric, ParameterVector(interior), SolveMethod::kChain);
  sol.edge_length = root;
  const VerifyReport report = verify_polygon(curve, sol, options.tol_polygon);
  if (!report.passed()) return std::nullopt;
  return sol;
}

}  // namespace

PolygonSolution solve_by_chain_bisection(const ClosedCurve& curve, int count,
                                         const ChainBisectionOptions& options) {
  if (count < 3) {
    throw Error(ErrorCode::kInvalidArgument, "polygon needs n >= 3");
  }
  const int samples = options.scan_samples;
  const double top = 2.0 / count;
  constexpr int kChunk = 32;

  struct Sample {
    double epsilon = 0.0;
    std::optional<double> gap;
  };
  std::optional<Sample> previous;
  for (int start = 1; start <= samples; start += kChunk) {
    const int stop = std::min(samples, start + kChunk - 1);
    std::vector<Sample> chunk(stop - start + 1);
    parallel_for(chunk.size(), [&](std::size_t j) {
      const double eps = top * (start + static_cast<int>(j)) / samples;
      chunk[j].epsilon = eps;
      try {
        chunk[j].gap = closure_gap(curve, eps, count, options.tol_chain).gap;
      } catch (const StepTooLarge&) {
        // infeasible epsilon; no bracket across it
      }
    });
    for (const Sample& s : chunk) {
      if (previous && previous->gap && s.gap) {
        const double g0 = *previous->gap;
        const double g1 = *s.gap;
        if (g1 == 0.0 || (g0 < 0.0) != (g1 < 0.0)) {
          if (auto sol = close_bracket(curve, count, previous->epsilon,
                                       s.epsilon, options)) {
            return *sol;
          }
        }
      }
      previous = s;
    }
  }
  std::ostringstream os;
  os << "no closing epsilon bracket for n = " << count << " in (0, " << top
     << "]";
  throw Error(ErrorCode::kBracketNotFound, os.str());
}

}  // namespace ngon
