#pragma once

#include "ngon/curve.hpp"

namespace ngon {

struct ChordPartials {
  double d_dt1 = 0.0;
  double d_dt2 = 0.0;
};

// Chord metric d(t1, t2) = |k(t1) - k(t2)| on a unit-length curve.
class ChordMetric {
 public:
  explicit ChordMetric(ClosedCurve curve) : curve_(std::move(curve)) {}

  const ClosedCurve& curve() const noexcept { return curve_; }

  double distance(double t1, double t2) const;

  // Exact partial derivatives of d. Throws Error(kSingularChord) when the two
  // parameters name the same point (d = 0 has no derivative).
  ChordPartials partials(double t1, double t2) const;

 private:
  ClosedCurve curve_;
};

// Chords shorter than this are treated as zero by partials().
inline constexpr double kSingularChord = 1e-13;

// Ball D(r) about the base point meeting the curve in a single arc on which
// tangents pairwise have positive inner product.
struct MonotoneBall {
  double base = 0.0;
  double radius = 0.0;
  // Lift of the arc D(r) ∩ K: the open interval (t_left, t_right) with
  // t_left < base < t_right, endpoints on the sphere of radius r.
  double t_left = 0.0;
  double t_right = 0.0;
  // Smallest k'(s)·k'(t) seen on the certification grid over J.
  double min_tangent_dot = 0.0;

  bool contains(double t) const { return t > t_left && t < t_right; }
};

struct MonotoneBallOptions {
  double initial_radius = 0.1;
  double min_radius = 1e-6;
  double tangent_margin = 1e-3;
  int tangent_grid = 64;
  int scan_points = 10000;
};

// Searches for the monotone ball by halving r from initial_radius.
// Throws Error(kNoMonotoneBall) when tangents near the base point never pass
// the margin (missing or discontinuous derivative), and
// Error(kBallNotSingleArc) when the ball keeps meeting a second arc of the
// curve (another curve point at or near the base point).
MonotoneBall monotone_radius(const ClosedCurve& curve, double base = 0.0,
                             const MonotoneBallOptions& options = {});

}  // namespace ngon
