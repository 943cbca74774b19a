#include "ngon/error.hpp"

#include <utility>

namespace ngon {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kInvalidCurve: return "invalid_curve";
    case ErrorCode::kSingularChord: return "singular_chord";
    case ErrorCode::kNoMonotoneBall: return "no_monotone_ball";
    case ErrorCode::kBallNotSingleArc: return "ball_not_single_arc";
    case ErrorCode::kStepTooLarge: return "step_too_large";
    case ErrorCode::kBracketNotFound: return "bracket_not_found";
    case ErrorCode::kDomainConstruction: return "domain_construction";
    case ErrorCode::kAtDiagonal: return "at_diagonal";
    case ErrorCode::kArity: return "arity";
    case ErrorCode::kPreconditionViolated: return "precondition_violated";
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kParse: return "parse_error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(what), code_(code) {}

StepTooLarge::StepTooLarge(const std::string& what, int step_index,
                           double epsilon, double from)
    : Error(ErrorCode::kStepTooLarge, what),
      step_index_(step_index),
      epsilon_(epsilon),
      from_(from) {}

AtDiagonal::AtDiagonal(const std::string& what, std::vector<double> point)
    : Error(ErrorCode::kAtDiagonal, what), point_(std::move(point)) {}

PreconditionViolated::PreconditionViolated(const std::string& what,
                                           int condition)
    : Error(ErrorCode::kPreconditionViolated, what), condition_(condition) {}

}  // namespace ngon
