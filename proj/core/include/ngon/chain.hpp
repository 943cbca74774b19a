#pragma once

#include "ngon/curve.hpp"
#include "ngon/types.hpp"

namespace ngon {

inline constexpr double kTolChain = 1e-12;

// Smallest t > from with d(from, t) = epsilon, searched over half a period.
// Throws StepTooLarge when no such t exists within from + 1/2.
double next_chain_point(const ClosedCurve& curve, double from, double epsilon,
                        double tol = kTolChain);

// Chain a_0 = base < a_1 < ... < a_{count-1}. StepTooLarge is rethrown with
// the failing step index.
EpsilonChain build_chain(const ClosedCurve& curve, double base, double epsilon,
                         int count, double tol = kTolChain);

// Runs count forward steps from parameter 0 and measures how far the last
// point lands from closing the loop.
ClosureGap closure_gap(const ClosedCurve& curve, double epsilon, int count,
                       double tol = kTolChain);

struct ChainBisectionOptions {
  int scan_samples = 1000;
  double tol_polygon = 1e-9;
  double tol_chain = kTolChain;
};

// Scans epsilon over (0, 2/count] for a sign change of the closure gap and
// bisects it down to a closed chain, i.e. an inscribed regular count-gon with
// a vertex at parameter 0. Sign changes are tried in order of increasing
// epsilon; one whose limit does not close (a jump rather than a root) is
// skipped. Throws Error(kBracketNotFound) when no bracket closes.
PolygonSolution solve_by_chain_bisection(
    const ClosedCurve& curve, int count,
    const ChainBisectionOptions& options = {});

}  // namespace ngon
