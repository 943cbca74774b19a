#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ngon/curve.hpp"

namespace ngon {

// Free vertex parameters (t_1, ..., t_{n-1}) of an n-gon whose first vertex
// is pinned at parameter 0. The conventions t_0 = 0 and t_n = 1 are implicit.
class ParameterVector {
 public:
  // Throws Error(kInvalidArgument) unless n >= 3, all entries are finite and
  // 0 <= t_1 <= ... <= t_{n-1} <= 1.
  explicit ParameterVector(Eigen::VectorXd interior);
  ParameterVector(std::initializer_list<double> interior);

  // Edge count n.
  int n() const { return static_cast<int>(interior_.size()) + 1; }

  // t_i for i in [0, n], with t_0 = 0 and t_n = 1.
  double operator[](int i) const {
    if (i == 0) return 0.0;
    if (i == n()) return 1.0;
    return interior_(i - 1);
  }

  const Eigen::VectorXd& interior() const { return interior_; }

  // Uniform polygon t_i = i/n.
  static ParameterVector uniform(int n);

 private:
  Eigen::VectorXd interior_;
};

// y_i = d(t_{i-1}, t_i), i = 1..n.
struct EdgeVector {
  Eigen::VectorXd y;
};

enum class SolveMethod { kChain, kNewton, kBruteForce };

std::string_view to_string(SolveMethod method);

struct PolygonSolution {
  ParameterVector params;
  std::vector<Point> vertices;  // x_0 .. x_{n-1}
  double edge_length = 0.0;
  double residual_norm = 0.0;
  SolveMethod method = SolveMethod::kNewton;
  bool degenerate = false;

  int n() const { return params.n(); }
};

// Points marching forward along the curve with every consecutive chord equal
// to epsilon. params are lifted (strictly increasing, may exceed 1).
struct EpsilonChain {
  double epsilon = 0.0;
  std::vector<double> params;
  std::vector<Point> vertices;
};

struct ClosureGap {
  double epsilon = 0.0;
  // a_n - 1 for the n-th forward chain point a_n from 0.
  double gap = 0.0;
  // |x_n - x_0|.
  double chord_gap = 0.0;
};

}  // namespace ngon
