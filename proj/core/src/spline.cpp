#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ngon/catalog.hpp"
#include "ngon/error.hpp"

namespace ngon {
namespace {

// Solves the cyclic tridiagonal system
//   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]   (indices mod n)
// by Sherman-Morrison on top of the Thomas algorithm. n >= 3.
std::vector<double> solve_cyclic_tridiagonal(const std::vector<double>& lower,
                                             const std::vector<double>& diag,
                                             const std::vector<double>& upper,
                                             const std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  const double alpha = upper[n - 1];  // corner (n-1, 0)
  const double beta = lower[0];       // corner (0, n-1)
  const double gamma = -diag[0];

  auto thomas = [&](std::vector<double> b, std::vector<double> d) {
    std::vector<double> c(upper.begin(), upper.end());
    std::vector<double> x(n);
    c[0] /= b[0];
    d[0] /= b[0];
    for (std::size_t i = 1; i < n; ++i) {
      const double m = b[i] - lower[i] * c[i - 1];
      c[i] /= m;
      d[i] = (d[i] - lower[i] * d[i - 1]) / m;
    }
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
  };

  std::vector<double> b(diag);
  b[0] -= gamma;
  b[n - 1] -= alpha * beta / gamma;
  std::vector<double> x = thomas(b, rhs);
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;
  std::vector<double> z = thomas(b, u);
  const double fact =
      (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
  for (std::size_t i = 0; i < n; ++i) x[i] -= fact * z[i];
  return x;
}

class PeriodicSpline final : public RawCurve {
 public:
  explicit PeriodicSpline(std::vector<std::vector<double>> points) {
    if (!points.empty() && points.size() > 1) {
      const auto& first = points.front();
      const auto& last = points.back();
      double gap = 0.0;
      if (first.size() == last.size()) {
        for (std::size_t j = 0; j < first.size(); ++j) {
          gap += (first[j] - last[j]) * (first[j] - last[j]);
        }
        if (std::sqrt(gap) < 1e-14) points.pop_back();
      }
    }
    if (points.size() < 8) {
      throw Error(ErrorCode::kInvalidCurve,
                  "spline_from_points needs at least 8 points, got " +
                      std::to_string(points.size()));
    }
    dim_ = static_cast<int>(points.front().size());
    if (dim_ < 2 || dim_ > kMaxAmbientDim) {
      throw Error(ErrorCode::kInvalidCurve, "spline point dimension out of range");
    }
    for (const auto& p : points) {
      if (static_cast<int>(p.size()) != dim_) {
        throw Error(ErrorCode::kInvalidCurve,
                    "spline points have inconsistent dimension");
      }
      for (double c : p) {
        if (!std::isfinite(c)) {
          throw Error(ErrorCode::kInvalidCurve, "non-finite spline point");
        }
      }
    }

    const std::size_t n = points.size();
    values_.resize(n, Point(dim_));
    for (std::size_t i = 0; i < n; ++i) {
      for (int j = 0; j < dim_; ++j) values_[i](j) = points[i][j];
    }
    // Chord-length knots, normalized to period 1.
    std::vector<double> h(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      h[i] = (values_[(i + 1) % n] - values_[i]).norm();
      if (h[i] < 1e-14) {
        throw Error(ErrorCode::kInvalidCurve,
                    "consecutive spline points coincide");
      }
      total += h[i];
    }
    knots_.resize(n + 1);
    knots_[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      h[i] /= total;
      knots_[i + 1] = knots_[i] + h[i];
    }
    knots_[n] = 1.0;
    h_ = h;

    // Second derivatives M_i per coordinate from the periodic continuity
    // conditions.
    std::vector<double> lower(n), diag(n), upper(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double hp = h[(i + n - 1) % n];
      const double hi = h[i];
      lower[i] = hp;
      diag[i] = 2.0 * (hp + hi);
      upper[i] = hi;
    }
    second_.assign(n, Point::Zero(dim_));
    for (int j = 0; j < dim_; ++j) {
      std::vector<double> rhs(n);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ip = (i + n - 1) % n;
        const std::size_t in = (i + 1) % n;
        rhs[i] = 6.0 * ((values_[in](j) - values_[i](j)) / h[i] -
                        (values_[i](j) - values_[ip](j)) / h[ip]);
      }
      const std::vector<double> m = solve_cyclic_tridiagonal(lower, diag, upper, rhs);
      for (std::size_t i = 0; i < n; ++i) second_[i](j) = m[i];
    }
  }

  int ambient_dim() const override { return dim_; }

  Point position(double u) const override {
    const auto [i, a, b] = locate(u);
    const std::size_t n = values_.size();
    const std::size_t in = (i + 1) % n;
    const double hi = h_[i];
    return (a * values_[i] + b * values_[in]) +
           ((a * a * a - a) * second_[i] + (b * b * b - b) * second_[in]) *
               (hi * hi / 6.0);
  }

  Point velocity(double u) const override {
    const auto [i, a, b] = locate(u);
    const std::size_t n = values_.size();
    const std::size_t in = (i + 1) % n;
    const double hi = h_[i];
    return (values_[in] - values_[i]) / hi +
           ((1.0 - 3.0 * a * a) * second_[i] + (3.0 * b * b - 1.0) * second_[in]) *
               (hi / 6.0);
  }

  CurveKind kind() const override { return CurveKind::kSplineFromPoints; }
  std::string label() const override { return "spline_from_points"; }
  std::vector<double> breakpoints() const override {
    return {knots_.begin(), knots_.end() - 1};
  }

 private:
  struct Location {
    std::size_t segment;
    double a;  // weight of the left knot
    double b;  // weight of the right knot
  };

  Location locate(double u) const {
    u = wrap_unit(u);
    auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
    std::size_t i = it == knots_.begin() ? 0 : (it - knots_.begin()) - 1;
    i = std::min(i, values_.size() - 1);
    const double b = (u - knots_[i]) / h_[i];
    return {i, 1.0 - b, b};
  }

  int dim_ = 0;
  std::vector<Point> values_;
  std::vector<Point> second_;
  std::vector<double> knots_;
  std::vector<double> h_;
};

}  // namespace

std::shared_ptr<const RawCurve> make_periodic_spline(
    const std::vector<std::vector<double>>& points) {
  return std::make_shared<const PeriodicSpline>(points);
}

}  // namespace ngon
