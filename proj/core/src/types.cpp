#include "ngon/types.hpp"

#include <cmath>
#include <sstream>

#include "ngon/error.hpp"

namespace ngon {

ParameterVector::ParameterVector(Eigen::VectorXd interior)
    : interior_(std::move(interior)) {
  if (interior_.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "a polygon needs n >= 3, i.e. at least two free parameters");
  }
  double prev = 0.0;
  for (Eigen::Index i = 0; i < interior_.size(); ++i) {
    const double t = interior_(i);
    if (!std::isfinite(t) || t < prev || t > 1.0) {
      std::ostringstream os;
      os << "parameter t_" << i + 1 << " = " << t
         << " breaks 0 <= t_1 <= ... <= t_{n-1} <= 1";
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
    prev = t;
  }
}

ParameterVector::ParameterVector(std::initializer_list<double> interior)
    : ParameterVector(Eigen::Map<const Eigen::VectorXd>(
          interior.begin(), static_cast<Eigen::Index>(interior.size()))) {}

ParameterVector ParameterVector::uniform(int n) {
  Eigen::VectorXd t(n - 1);
  for (int i = 1; i < n; ++i) t(i - 1) = static_cast<double>(i) / n;
  return ParameterVector(std::move(t));
}

std::string_view to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::kChain: return "chain";
    case SolveMethod::kNewton: return "newton";
    case SolveMethod::kBruteForce: return "brute_force";
  }
  return "unknown";
}

}  // namespace ngon
