#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ngon {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidCurve,
  kSingularChord,
  kNoMonotoneBall,
  kBallNotSingleArc,
  kStepTooLarge,
  kBracketNotFound,
  kDomainConstruction,
  kAtDiagonal,
  kArity,
  kPreconditionViolated,
  kIo,
  kParse,
};

std::string_view to_string(ErrorCode code);

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// A chain step could not find a forward point at the requested chord length.
class StepTooLarge : public Error {
 public:
  StepTooLarge(const std::string& what, int step_index, double epsilon,
               double from);

  int step_index() const noexcept { return step_index_; }
  double epsilon() const noexcept { return epsilon_; }
  double from() const noexcept { return from_; }

 private:
  int step_index_;
  double epsilon_;
  double from_;
};

// The edge vector reached the diagonal: every chord has the same length.
// Thrown where the radial projection is undefined. For the degree machinery
// this is an early success, the point is an inscribed polygon.
class AtDiagonal : public Error {
 public:
  AtDiagonal(const std::string& what, std::vector<double> point);

  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

// A hypothesis of the existence theorem fails at the base point.
// condition() is 1 for the local C^1/nonzero-derivative requirement and 2 for
// the requirement that no other curve point coincides with the base point.
class PreconditionViolated : public Error {
 public:
  PreconditionViolated(const std::string& what, int condition);

  int condition() const noexcept { return condition_; }

 private:
  int condition_;
};

}  // namespace ngon
