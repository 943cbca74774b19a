#include "ngon/chord.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "ngon/error.hpp"
#include "roots.hpp"

namespace ngon {

double ChordMetric::distance(double t1, double t2) const {
  return (curve_.eval(t2) - curve_.eval(t1)).norm();
}

ChordPartials ChordMetric::partials(double t1, double t2) const {
  const Point diff = curve_.eval(t2) - curve_.eval(t1);
  const double d = diff.norm();
  if (d < kSingularChord || circular_distance(t1, t2) == 0.0) {
    std::ostringstream os;
    os << "chord between parameters " << t1 << " and " << t2
       << " has zero length";
    throw Error(ErrorCode::kSingularChord, os.str());
  }
  return {-diff.dot(curve_.deriv(t1)) / d, diff.dot(curve_.deriv(t2)) / d};
}

namespace {

struct ArcScan {
  std::vector<double> dist;  // d(base, base + k/N)
  // Refined local minima of d(base, ·) away from the base: grid index and
  // minimal value.
  std::vector<std::pair<int, double>> minima;
};

ArcScan scan_distances(const ChordMetric& metric, double base, int points) {
  ArcScan scan;
  scan.dist.resize(points);
  const double h = 1.0 / points;
  for (int k = 0; k < points; ++k) {
    scan.dist[k] = metric.distance(base, base + k * h);
  }
  for (int k = 1; k < points; ++k) {
    const double here = scan.dist[k];
    const double prev = scan.dist[k - 1];
    const double next = scan.dist[(k + 1) % points];
    if (here <= prev && here <= next) {
      auto f = [&](double tau) { return metric.distance(base, base + tau); };
      const auto [tau, value] = boost::math::tools::brent_find_minima(
          f, (k - 1) * h, (k + 1) * h, 40);
      scan.minima.emplace_back(k, std::min(value, here));
    }
  }
  return scan;
}

}  // namespace

MonotoneBall monotone_radius(const ClosedCurve& curve, double base,
                             const MonotoneBallOptions& options) {
  const ChordMetric metric(curve);
  const int n = options.scan_points;
  const double h = 1.0 / n;
  const ArcScan scan = scan_distances(metric, base, n);

  ErrorCode last_failure = ErrorCode::kNoMonotoneBall;
  std::string last_reason = "no radius tried";

  for (double r = options.initial_radius; r >= options.min_radius; r *= 0.5) {
    // Grid run containing the base: indices (k_left, k_right) exclusive,
    // wrapping through 0.
    int k_right = 1;
    while (k_right < n && scan.dist[k_right] < r) ++k_right;
    if (k_right == n) {
      last_failure = ErrorCode::kBallNotSingleArc;
      last_reason = "the whole curve lies inside the ball";
      continue;
    }
    int k_left = n - 1;
    while (scan.dist[k_left] < r) --k_left;

    bool second_arc = false;
    for (int k = k_right; k <= k_left && !second_arc; ++k) {
      second_arc = scan.dist[k] < r;
    }
    for (const auto& [k, value] : scan.minima) {
      if (k >= k_right && k <= k_left && value < r) second_arc = true;
    }
    if (second_arc) {
      last_failure = ErrorCode::kBallNotSingleArc;
      last_reason = "ball meets the curve in more than one arc";
      continue;
    }

    auto f = [&](double tau) { return metric.distance(base, base + tau) - r; };
    auto df = [&](double tau) {
      return metric.partials(base, base + tau).d_dt2;
    };
    const double tau_right =
        detail::safeguarded_root(f, df, (k_right - 1) * h, k_right * h, 1e-15);
    const double tau_left = detail::safeguarded_root(
        f, df, (k_left + 1) * h - 1.0, k_left * h - 1.0, 1e-15);

    const int g = options.tangent_grid;
    std::vector<Point> tangents;
    tangents.reserve(g);
    for (int i = 0; i < g; ++i) {
      const double s = tau_left + (tau_right - tau_left) * i / (g - 1);
      tangents.push_back(curve.deriv(base + s));
    }
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g; ++i) {
      for (int j = i; j < g; ++j) {
        margin = std::min(margin, tangents[i].dot(tangents[j]));
      }
    }
    if (margin >= options.tangent_margin) {
      return {base, r, base + tau_left, base + tau_right, margin};
    }
    last_failure = ErrorCode::kNoMonotoneBall;
    std::ostringstream os;
    os << "tangent inner product " << margin << " below margin "
       << options.tangent_margin;
    last_reason = os.str();
  }
  std::ostringstream os;
  os << "no monotone ball with radius >= " << options.min_radius
     << " at base " << base << ": " << last_reason;
  throw Error(last_failure, os.str());
}

}  // namespace ngon
