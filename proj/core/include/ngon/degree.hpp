#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "ngon/chord.hpp"
#include "ngon/polygon.hpp"
#include "ngon/types.hpp"

namespace ngon {

// The simplex B = {a_1 <= t_1 <= ... <= t_{n-1} <= p} in R^{n-1}.
//
// Vertex V_k (k = 0..n-1) has its first k coordinates equal to a_1 and the
// rest equal to p. Boundary faces are numbered 1..n:
//   E_1      t_1 = a_1              (opposite V_0)
//   E_i      t_{i-1} = t_i, 1<i<n   (opposite V_{i-1})
//   E_n      t_{n-1} = p            (opposite V_{n-1})
struct SimplexDomain {
  int n = 0;
  ParameterVector anchor;  // a = (a_1, ..., a_{n-1})
  double epsilon = 0.0;
  double p = 0.0;
  MonotoneBall ball;

  Eigen::VectorXd vertex(int k) const;
  // Columns are the face's n-1 vertices in increasing k.
  Eigen::MatrixXd face_vertices(int face) const;
  // Unit normal of the face pointing out of B.
  Eigen::VectorXd outward_normal(int face) const;
  // Whether t satisfies face's defining equation within tol and lies in B.
  bool on_face(const Eigen::VectorXd& t, int face, double tol = 1e-12) const;
  bool contains(const Eigen::VectorXd& t, double tol = 1e-12) const;
};

// Monotone ball at parameter 0, epsilon = r/(2n), chain anchor, and p on the
// arc returning to the base with d(p, 0) = epsilon/2. Every domain invariant
// is checked; failures throw Error(kDomainConstruction). Monotone-ball
// failures propagate unchanged.
SimplexDomain build_domain(const ClosedCurve& curve, int n);

// psi2(psi1(phi(t))) for t in B.
Eigen::VectorXd f_eval(const ChordMetric& metric, const Eigen::VectorXd& t);

// f restricted to the boundary. Throws Error(kInvalidArgument) when t is not
// on a face, AtDiagonal when t is itself an inscribed polygon.
Eigen::VectorXd g_eval(const ChordMetric& metric, const SimplexDomain& domain,
                       const Eigen::VectorXd& boundary_point);

struct Preimage {
  int face = 0;
  Eigen::VectorXd coords;  // barycentric weights of face vertices 1..n-2
  Eigen::VectorXd params;  // the point t in B
  int sign = 0;
  double jacobian_det = 0.0;  // of the face-local differential of g
};

struct DegreeReport {
  int n = 0;
  int degree = 0;
  Eigen::VectorXd regular_value;
  std::vector<Preimage> preimages;
  int mesh_level = 0;
  bool certified = false;
  std::string method;
};

nlohmann::json to_json(const DegreeReport& report);

struct LoopWinding {
  int winding = 0;
  double total_angle = 0.0;
  bool aliased = false;  // some increment stayed >= π/2 at the depth cap
};

// Winding number about the origin of a closed loop s ∈ [0,1] → R² \ {0}.
// Each of `samples` segments is bisected until the angle increment is below
// π/2, at most max_depth times.
LoopWinding loop_winding_number(
    const std::function<Eigen::Vector2d(double)>& loop, int samples,
    int max_depth = 30);

// Orthonormal basis (q1, q2) of the sum-zero plane in R^3 with
// det[e, q1, q2] > 0; angles on S^1 are measured in this frame.
Eigen::Matrix<double, 3, 2> plane_frame_n3();

struct DegreeOptions {
  // +1 orients ∂B by the outward normal, -1 reverses it.
  int orientation = 1;
  double ridge_tol = 1e-9;
  double match_tol = 1e-8;
  int max_perturbations = 3;
  // Face lattices are graded toward both ends of each coordinate: a lattice
  // coordinate x in [0, 1] maps to h(x) = expm1(2κx) / (2 expm1(κ)) on
  // [0, 1/2], mirrored above. Negative selects κ = ln((p - a_1) / ε), which
  // makes the finest cells comparable to the chain spacing. Zero is uniform.
  double grading = -1.0;
};

// Degree of g for n = 3 by accumulating the angle of g around the triangle
// ∂B (counter-clockwise in (t_1, t_2)), at `samples` and 2·samples segments
// per face. Certified when both agree without aliasing.
DegreeReport winding_number_n3(const ChordMetric& metric,
                               const SimplexDomain& domain, int samples = 64,
                               const DegreeOptions& options = {});

// Degree of g by counting signed preimages of w = g(a) on a triangulation of
// every face with 2^level subdivisions per edge, at `level` and `level + 1`.
// Certified when both levels find the same preimages within match_tol and,
// unless w had to be perturbed off a ridge, the set contains a itself.
DegreeReport simplicial_degree(const ChordMetric& metric,
                               const SimplexDomain& domain, int level,
                               const DegreeOptions& options = {});

// Kuhn triangulation of {N >= x_1 >= ... >= x_d >= 0}: lattice points and
// simplices as (d+1)-tuples of point indices. Exposed for testing.
// Grading map used by the face lattices.
double grade_coordinate(double x, double kappa);

struct FaceLattice {
  int d = 0;
  int subdivisions = 0;
  std::vector<std::vector<int>> points;
  std::vector<std::vector<int>> simplices;
};
FaceLattice kuhn_lattice(int d, int subdivisions);

enum class Conclusion { kExistsCertified, kFoundDirectly, kInconclusive };

std::string_view to_string(Conclusion conclusion);

struct Certificate {
  Conclusion conclusion = Conclusion::kInconclusive;
  std::optional<SimplexDomain> domain;
  std::optional<DegreeReport> degree;
  // n = 3 only: the independent angle-accumulation result.
  std::optional<DegreeReport> winding;
  // Set when an inscribed polygon was hit directly.
  std::optional<PolygonSolution> solution;
  std::string note;
};

struct CertifyOptions {
  int start_level = 1;
  int max_level = 4;
  // Above this n the face meshes are too large; the certificate falls back
  // to Newton and verification.
  int max_degree_n = 8;
  int winding_samples = 64;
  DegreeOptions degree;
};

// Checks the base-point hypotheses, builds B and computes deg(g). A nonzero
// certified degree means phi(B) meets the diagonal, so an inscribed regular
// n-gon with a vertex at parameter 0 exists. Hypothesis failures throw
// PreconditionViolated (condition 1: derivative, condition 2: double point).
Certificate certify_existence(const ClosedCurve& curve, int n,
                              const CertifyOptions& options = {});

nlohmann::json to_json(const Certificate& certificate);

}  // namespace ngon
