#include <algorithm>
#include <cmath>
#include <sstream>

#include "ngon/chain.hpp"
#include "ngon/degree.hpp"
#include "ngon/error.hpp"
#include "roots.hpp"

namespace ngon {

Eigen::VectorXd SimplexDomain::vertex(int k) const {
  if (k < 0 || k >= n) throw Error(ErrorCode::kInvalidArgument, "vertex index out of range");
  Eigen::VectorXd v(n - 1);
  for (int j = 0; j < n - 1; ++j) v(j) = j < k ? anchor[1] : p;
  return v;
}

Eigen::MatrixXd SimplexDomain::face_vertices(int face) const {
  if (face < 1 || face > n) throw Error(ErrorCode::kInvalidArgument, "face index out of range");
  Eigen::MatrixXd w(n - 1, n - 1);
  int col = 0;
  for (int k = 0; k < n; ++k) {
    if (k == face - 1) continue;
    w.col(col++) = vertex(k);
  }
  return w;
}

Eigen::VectorXd SimplexDomain::outward_normal(int face) const {
  if (face < 1 || face > n) throw Error(ErrorCode::kInvalidArgument, "face index out of range");
  Eigen::VectorXd nu = Eigen::VectorXd::Zero(n - 1);
  if (face == 1) {
    nu(0) = -1.0;  // t_1 >= a_1
  } else if (face == n) {
    nu(n - 2) = 1.0;  // t_{n-1} <= p
  } else {
    // t_{face-1} <= t_face, coordinates face-2 and face-1 zero-based.
    nu(face - 2) = 1.0;
    nu(face - 1) = -1.0;
    nu /= std::sqrt(2.0);
  }
  return nu;
}

bool SimplexDomain::contains(const Eigen::VectorXd& t, double tol) const {
  if (t.size() != n - 1) return false;
  if (t(0) < anchor[1] - tol || t(n - 2) > p + tol) return false;
  for (int j = 1; j < n - 1; ++j) {
    if (t(j) < t(j - 1) - tol) return false;
  }
  return true;
}

bool SimplexDomain::on_face(const Eigen::VectorXd& t, int face,
                            double tol) const {
  if (!contains(t, tol)) return false;
  if (face == 1) return std::abs(t(0) - anchor[1]) <= tol;
  if (face == n) return std::abs(t(n - 2) - p) <= tol;
  if (face < 1 || face > n) return false;
  return std::abs(t(face - 1) - t(face - 2)) <= tol;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kDomainConstruction, what);
}

// The point p in (1 + t_left, 1) on the arc coming back into the base point
// with d(p, 0) = target. d(., 0) decreases monotonically to 0 along J.
double locate_p(const ClosedCurve& curve, const MonotoneBall& ball,
                double target) {
  const ChordMetric metric(curve);
  const double lower = 1.0 + ball.t_left;
  const double h = target / 8.0;
  double hi = 1.0;
  double lo = hi - h;
  while (metric.distance(lo, 0.0) < target) {
    hi = lo;
    lo -= h;
    require(lo > lower, "no point at distance epsilon/2 on the incoming arc");
  }
  auto f = [&](double s) { return target - metric.distance(s, 0.0); };
  auto df = [&](double s) {
    // d/ds of -d(s, 0) = -(∂d/∂t1)(s, 0).
    const double d = metric.distance(s, 0.0);
    if (d < kSingularChord) return 0.0;
    return -metric.partials(s, 0.0).d_dt1;
  };
  return detail::safeguarded_root(f, df, lo, hi, 1e-15);
}

}  // namespace

SimplexDomain build_domain(const ClosedCurve& curve, int n) {
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "n must be at least 3");
  const MonotoneBall ball = monotone_radius(curve, 0.0);
  const double eps = ball.radius / (2.0 * n);
  const EpsilonChain chain = build_chain(curve, 0.0, eps, n);
  ParameterVector anchor = seed_from_chain(chain, n);
  const double p = locate_p(curve, ball, 0.5 * eps);

  SimplexDomain domain{n, std::move(anchor), eps, p, ball};
  const ChordMetric metric(curve);
  const ParameterVector& a = domain.anchor;

  for (int i = 1; i < n; ++i) {
    require(a[i] > a[i - 1], "chain is not strictly increasing");
    require(ball.contains(a[i]), "chain leaves the monotone arc");
  }
  require(a[n - 1] < p, "p does not follow the chain anchor");
  require(ball.contains(p - 1.0), "p is outside the monotone arc");
  const double delta = metric.distance(0.0, a[n - 1]);
  require(delta > eps, "d(0, a_{n-1}) does not exceed epsilon");
  const double dp = metric.distance(0.0, p);
  require(dp < eps, "d(0, p) is not below epsilon");

  // Going from a_1 to p, every point is farther from the base than p is.
  constexpr int kScan = 10000;
  for (int k = 1; k < kScan; ++k) {
    const double t = a[1] + (p - a[1]) * k / kScan;
    if (metric.distance(0.0, t) <= dp) {
      std::ostringstream os;
      os << "curve point at t = " << t << " is as close to the base as p";
      require(false, os.str());
    }
  }
  return domain;
}

Eigen::VectorXd f_eval(const ChordMetric& metric, const Eigen::VectorXd& t) {
  return psi2(residual(metric, ParameterVector(t)));
}

Eigen::VectorXd g_eval(const ChordMetric& metric, const SimplexDomain& domain,
                       const Eigen::VectorXd& boundary_point) {
  bool on_boundary = false;
  for (int face = 1; face <= domain.n && !on_boundary; ++face) {
    on_boundary = domain.on_face(boundary_point, face, 1e-10);
  }
  if (!on_boundary) {
    throw Error(ErrorCode::kInvalidArgument, "point is not on the boundary of B");
  }
  return f_eval(metric, boundary_point);
}

}  // namespace ngon
