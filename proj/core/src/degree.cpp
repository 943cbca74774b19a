#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "ngon/degree.hpp"
#include "ngon/error.hpp"
#include "ngon/parallel.hpp"

namespace ngon {

namespace {

constexpr double kPi = std::numbers::pi;

// psi1(phi(t)), throwing AtDiagonal with t itself (not z) as the payload.
Eigen::VectorXd checked_residual(const ChordMetric& metric,
                                 const Eigen::VectorXd& t) {
  Eigen::VectorXd z = residual(metric, ParameterVector(t));
  if (!(z.norm() > kRadialThreshold)) {
    throw AtDiagonal("boundary point is an inscribed polygon",
                     std::vector<double>(t.data(), t.data() + t.size()));
  }
  return z;
}

// ∂y/∂t with rows of vanishing chords set to zero. On the face t_{i-1} = t_i
// the chord y_i is identically zero, so its row does not contribute.
Eigen::MatrixXd face_jacobian_phi(const ChordMetric& metric,
                                  const Eigen::VectorXd& interior) {
  const ParameterVector t(interior);
  const int n = t.n();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n - 1);
  for (int i = 1; i <= n; ++i) {
    if (metric.distance(t[i - 1], t[i]) < kSingularChord) continue;
    const ChordPartials c = metric.partials(t[i - 1], t[i]);
    if (i - 1 >= 1) jac(i - 1, i - 2) = c.d_dt1;
    if (i <= n - 1) jac(i - 1, i - 1) = c.d_dt2;
  }
  return jac;
}

// Orthonormal basis of {e, w}^⊥ with det[e/√n, w, Q] > 0.
Eigen::MatrixXd tangent_frame(const Eigen::VectorXd& w) {
  const Eigen::Index n = w.size();
  Eigen::MatrixXd m(n, n + 2);
  m.col(0) = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  m.col(1) = w;
  m.rightCols(n) = Eigen::MatrixXd::Identity(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd full = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd frame(n, n);
  frame.col(0) = m.col(0);
  frame.col(1) = w;
  frame.rightCols(n - 2) = full.rightCols(n - 2);
  if (frame.determinant() < 0.0) {
    full.col(n - 1) *= -1.0;
  }
  return full.rightCols(n - 2);
}

// ParameterVector accepts t; Newton iterates may leave the wedge.
bool admissible(const Eigen::VectorXd& t) {
  if (!t.allFinite() || t(0) < 0.0 || t(t.size() - 1) > 1.0) return false;
  for (Eigen::Index j = 1; j < t.size(); ++j) {
    if (t(j) < t(j - 1)) return false;
  }
  return true;
}

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Weights of the face vertices 1..d for a point t on the face.
Eigen::VectorXd face_coords(const Eigen::MatrixXd& w, const Eigen::VectorXd& t) {
  const Eigen::Index d = w.cols() - 1;
  Eigen::MatrixXd e(w.rows(), d);
  for (Eigen::Index k = 0; k < d; ++k) e.col(k) = w.col(k + 1) - w.col(0);
  return e.colPivHouseholderQr().solve(t - w.col(0));
}

bool same_preimage(const Preimage& a, const Preimage& b, double tol) {
  return (a.params - b.params).norm() < tol;
}

void sort_preimages(std::vector<Preimage>& list) {
  std::sort(list.begin(), list.end(), [](const Preimage& a, const Preimage& b) {
    if (a.face != b.face) return a.face < b.face;
    return std::lexicographical_compare(a.params.begin(), a.params.end(),
                                        b.params.begin(), b.params.end());
  });
}

bool preimage_sets_match(const std::vector<Preimage>& a,
                         const std::vector<Preimage>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const Preimage& p : a) {
    const bool found = std::any_of(b.begin(), b.end(), [&](const Preimage& q) {
      return p.sign == q.sign && same_preimage(p, q, tol);
    });
    if (!found) return false;
  }
  return true;
}

}  // namespace

nlohmann::json to_json(const DegreeReport& report) {
  nlohmann::json pre = nlohmann::json::array();
  for (const Preimage& p : report.preimages) {
    pre.push_back({{"face", p.face},
                   {"coords", std::vector<double>(p.coords.begin(), p.coords.end())},
                   {"params", std::vector<double>(p.params.begin(), p.params.end())},
                   {"sign", p.sign}});
  }
  return {{"n", report.n},
          {"degree", report.degree},
          {"certified", report.certified},
          {"mesh_level", report.mesh_level},
          {"method", report.method},
          {"regular_value", std::vector<double>(report.regular_value.begin(),
                                                report.regular_value.end())},
          {"preimages", std::move(pre)}};
}

// ---------------------------------------------------------------------------
// Angle accumulation

namespace {

double angle_step(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
}

struct AngleTrace {
  std::vector<double> s;
  std::vector<double> angle;  // unwrapped
  bool aliased = false;
};

void refine_segment(const std::function<Eigen::Vector2d(double)>& loop,
                    double s0, const Eigen::Vector2d& v0, double s1,
                    const Eigen::Vector2d& v1, int depth, int max_depth,
                    AngleTrace& trace) {
  const double step = angle_step(v0, v1);
  if (std::abs(step) < kPi / 2.0 || depth >= max_depth) {
    if (std::abs(step) >= kPi / 2.0) trace.aliased = true;
    trace.s.push_back(s1);
    trace.angle.push_back(trace.angle.back() + step);
    return;
  }
  const double sm = 0.5 * (s0 + s1);
  const Eigen::Vector2d vm = loop(sm);
  refine_segment(loop, s0, v0, sm, vm, depth + 1, max_depth, trace);
  refine_segment(loop, sm, vm, s1, v1, depth + 1, max_depth, trace);
}

AngleTrace trace_loop(const std::function<Eigen::Vector2d(double)>& loop,
                      int samples, int max_depth) {
  if (samples < 3) throw Error(ErrorCode::kInvalidArgument, "need at least 3 samples");
  AngleTrace trace;
  Eigen::Vector2d prev = loop(0.0);
  trace.s.push_back(0.0);
  trace.angle.push_back(std::atan2(prev.y(), prev.x()));
  for (int k = 1; k <= samples; ++k) {
    const double s = double(k) / samples;
    // The loop is closed; reuse the start value so rounding cannot leak in.
    const Eigen::Vector2d next = k == samples ? loop(0.0) : loop(s);
    refine_segment(loop, trace.s.back(), prev, s, next, 0, max_depth, trace);
    prev = next;
  }
  return trace;
}

}  // namespace

LoopWinding loop_winding_number(
    const std::function<Eigen::Vector2d(double)>& loop, int samples,
    int max_depth) {
  const AngleTrace trace = trace_loop(loop, samples, max_depth);
  const double total = trace.angle.back() - trace.angle.front();
  return {static_cast<int>(std::lround(total / (2.0 * kPi))), total,
          trace.aliased};
}

Eigen::Matrix<double, 3, 2> plane_frame_n3() {
  Eigen::Matrix<double, 3, 2> q;
  q.col(0) << 1.0, -1.0, 0.0;
  q.col(1) << 1.0, 1.0, -2.0;
  q.col(0) /= std::sqrt(2.0);
  q.col(1) /= std::sqrt(6.0);
  return q;
}

DegreeReport winding_number_n3(const ChordMetric& metric,
                               const SimplexDomain& domain, int samples,
                               const DegreeOptions& options) {
  if (domain.n != 3) {
    throw Error(ErrorCode::kInvalidArgument, "winding_number_n3 needs n = 3");
  }
  const Eigen::Matrix<double, 3, 2> frame = plane_frame_n3();
  // Counter-clockwise in (t_1, t_2): V2 -> V0 along E2, V0 -> V1 along E3,
  // V1 -> V2 along E1.
  const std::array<int, 4> corner{2, 0, 1, 2};
  const std::array<int, 3> face_of{2, 3, 1};
  auto boundary = [&](double s) -> std::pair<int, Eigen::VectorXd> {
    if (options.orientation < 0) s = 1.0 - s;
    s = std::clamp(s, 0.0, 1.0);
    const int seg = std::min(2, static_cast<int>(std::floor(3.0 * s)));
    const double f = 3.0 * s - seg;
    const Eigen::VectorXd a = domain.vertex(corner[seg]);
    const Eigen::VectorXd b = domain.vertex(corner[seg + 1]);
    // Convex combination so the corners are hit exactly.
    Eigen::VectorXd t = (1.0 - f) * a + f * b;
    t(1) = std::max(t(1), t(0));
    return {face_of[seg], t};
  };
  auto loop = [&](double s) -> Eigen::Vector2d {
    const Eigen::VectorXd z = checked_residual(metric, boundary(s).second);
    return frame.transpose() * (z / z.norm());
  };

  const Eigen::VectorXd w = psi2(residual(metric, domain.anchor));
  const Eigen::Vector2d w2 = frame.transpose() * w;
  const double target = std::atan2(w2.y(), w2.x());

  const AngleTrace coarse = trace_loop(loop, samples, 30);
  const AngleTrace fine = trace_loop(loop, 2 * samples, 30);
  const auto winding = [](const AngleTrace& tr) {
    return static_cast<int>(
        std::lround((tr.angle.back() - tr.angle.front()) / (2.0 * kPi)));
  };

  DegreeReport report;
  report.n = 3;
  report.degree = winding(fine);
  report.regular_value = w;
  report.mesh_level = 2 * samples;
  report.method = "winding";
  report.certified = winding(coarse) == winding(fine) && !coarse.aliased &&
                     !fine.aliased;

  // Signed crossings of the ray through w.
  for (std::size_t k = 1; k < fine.s.size(); ++k) {
    const double lo = fine.angle[k - 1] - target;
    const double hi = fine.angle[k] - target;
    const double m_lo = std::floor(lo / (2.0 * kPi));
    const double m_hi = std::floor(hi / (2.0 * kPi));
    if (m_lo == m_hi) continue;
    const int sign = hi > lo ? 1 : -1;
    // The crossing angle in the unwrapped trace.
    const double level = target + 2.0 * kPi * std::max(m_lo, m_hi);
    double s0 = fine.s[k - 1];
    double s1 = fine.s[k];
    double a0 = fine.angle[k - 1];
    for (int it = 0; it < 80 && s1 - s0 > 1e-16; ++it) {
      const double sm = 0.5 * (s0 + s1);
      const double am = a0 + angle_step(loop(s0), loop(sm));
      if ((am - level) * (a0 - level) > 0.0) {
        s0 = sm;
        a0 = am;
      } else {
        s1 = sm;
      }
    }
    auto [face, t] = boundary(0.5 * (s0 + s1));
    Preimage p;
    p.face = face;
    p.params = t;
    p.coords = face_coords(domain.face_vertices(face), t);
    p.sign = sign;
    report.preimages.push_back(std::move(p));
  }
  sort_preimages(report.preimages);
  return report;
}

// ---------------------------------------------------------------------------
// Simplicial counting

double grade_coordinate(double x, double kappa) {
  if (kappa <= 1e-9) return x;
  if (x > 0.5) return 1.0 - grade_coordinate(1.0 - x, kappa);
  return 0.5 * std::expm1(2.0 * kappa * x) / std::expm1(kappa);
}

FaceLattice kuhn_lattice(int d, int subdivisions) {
  if (d < 1 || subdivisions < 1) {
    throw Error(ErrorCode::kInvalidArgument, "lattice needs d >= 1 and N >= 1");
  }
  const int big_n = subdivisions;
  FaceLattice lattice;
  lattice.d = d;
  lattice.subdivisions = big_n;
  std::map<std::vector<int>, int> index;

  // Nonincreasing vectors with entries in [0, top].
  auto for_each_nonincreasing = [d](int top, const auto& visit) {
    std::vector<int> x(d, 0);
    while (true) {
      visit(x);
      int i = d - 1;
      // Increment the last position that can grow without exceeding its left
      // neighbour (or top for the first entry); reset everything after it.
      while (i >= 0) {
        const int cap = i == 0 ? top : x[i - 1];
        if (x[i] < cap) break;
        --i;
      }
      if (i < 0) return;
      ++x[i];
      for (int j = i + 1; j < d; ++j) x[j] = 0;
    }
  };

  for_each_nonincreasing(big_n, [&](const std::vector<int>& x) {
    index.emplace(x, static_cast<int>(lattice.points.size()));
    lattice.points.push_back(x);
  });

  std::vector<int> perm(d);
  for_each_nonincreasing(big_n - 1, [&](const std::vector<int>& base) {
    for (int i = 0; i < d; ++i) perm[i] = i;
    do {
      // Ties in the base must be broken in coordinate order.
      std::vector<int> pos(d);
      for (int j = 0; j < d; ++j) pos[perm[j]] = j;
      bool ok = true;
      for (int i = 0; i + 1 < d && ok; ++i) {
        if (base[i] == base[i + 1] && pos[i] > pos[i + 1]) ok = false;
      }
      if (!ok) continue;
      std::vector<int> simplex;
      simplex.reserve(d + 1);
      std::vector<int> v = base;
      simplex.push_back(index.at(v));
      for (int j = 0; j < d; ++j) {
        ++v[perm[j]];
        simplex.push_back(index.at(v));
      }
      lattice.simplices.push_back(std::move(simplex));
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  return lattice;
}

namespace {

struct RidgeHit {};

double grading_for(const SimplexDomain& domain, const DegreeOptions& options) {
  if (options.grading >= 0.0) return options.grading;
  return std::max(0.0, std::log((domain.p - domain.anchor[1]) / domain.epsilon));
}

struct FaceContext {
  const ChordMetric& metric;
  const SimplexDomain& domain;
  const Eigen::VectorXd& w;
  const Eigen::MatrixXd& q;
  const DegreeOptions& options;
  double kappa;
};

// Barycentric weights of face vertices 0..d from a lattice point.
Eigen::VectorXd lattice_weights(const std::vector<int>& x, int big_n,
                                double kappa) {
  const int d = static_cast<int>(x.size());
  std::vector<double> s(d);
  for (int k = 0; k < d; ++k) s[k] = grade_coordinate(double(x[k]) / big_n, kappa);
  Eigen::VectorXd lambda(d + 1);
  lambda(0) = 1.0 - s[0];
  for (int k = 1; k < d; ++k) lambda(k) = s[k - 1] - s[k];
  lambda(d) = s[d - 1];
  return lambda;
}

std::vector<Preimage> face_preimages(const FaceContext& ctx,
                                     const FaceLattice& lattice, int face) {
  const int n = ctx.domain.n;
  const int d = n - 2;
  const Eigen::MatrixXd w_face = ctx.domain.face_vertices(face);
  Eigen::MatrixXd e(n - 1, d);
  for (int k = 0; k < d; ++k) e.col(k) = w_face.col(k + 1) - w_face.col(0);

  Eigen::MatrixXd normal_frame(n - 1, n - 1);
  normal_frame.col(0) = ctx.domain.outward_normal(face);
  normal_frame.rightCols(d) = e;
  const double face_sign = sign_of(normal_frame.determinant());
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);

  const std::size_t count = lattice.points.size();
  std::vector<Eigen::VectorXd> f_val(count);
  std::vector<double> zw(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Eigen::VectorXd t =
        w_face * lattice_weights(lattice.points[i], lattice.subdivisions, ctx.kappa);
    const Eigen::VectorXd z = checked_residual(ctx.metric, t);
    f_val[i] = ctx.q.transpose() * z;
    zw[i] = z.dot(ctx.w);
  }

  std::vector<Preimage> found;
  Eigen::MatrixXd a(d + 1, d + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 1);
  rhs(d) = 1.0;
  for (const std::vector<int>& simplex : lattice.simplices) {
    for (int k = 0; k <= d; ++k) {
      a.col(k).head(d) = f_val[simplex[k]];
      a(d, k) = 1.0;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd mu = lu.solve(rhs);
    if (mu.minCoeff() < -0.5) continue;
    double interp_zw = 0.0;
    for (int k = 0; k <= d; ++k) interp_zw += mu(k) * zw[simplex[k]];
    if (!(interp_zw > 0.0)) continue;

    // Newton in face-local coordinates from the simplex barycenter.
    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(d + 1);
    for (int k = 0; k <= d; ++k) {
      lambda += lattice_weights(lattice.points[simplex[k]], lattice.subdivisions,
                                ctx.kappa);
    }
    lambda /= d + 1;
    Eigen::VectorXd u = lambda.tail(d);
    bool converged = false;
    Eigen::MatrixXd jac;
    for (int iter = 0; iter < 60; ++iter) {
      const Eigen::VectorXd t = w_face.col(0) + e * u;
      if (!admissible(t)) break;
      // Iterates may leave B; only points of B count as diagonal hits.
      const Eigen::VectorXd z = residual(ctx.metric, ParameterVector(t));
      if (!(z.norm() > kRadialThreshold)) break;
      const Eigen::VectorXd f = ctx.q.transpose() * z;
      jac = ctx.q.transpose() * centering *
            face_jacobian_phi(ctx.metric, t) * e;
      if (f.norm() < 1e-15) {
        converged = true;
        break;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> jlu(jac);
      if (!jlu.isInvertible()) break;
      const Eigen::VectorXd step = jlu.solve(-f);
      u += step;
      if (1.0 - u.sum() < -0.5 || u.minCoeff() < -0.5) break;
      if (step.norm() < 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) continue;
    const Eigen::VectorXd t = w_face.col(0) + e * u;
    const double lambda0 = 1.0 - u.sum();
    const double min_weight = std::min(lambda0, u.minCoeff());
    if (min_weight < -ctx.options.ridge_tol) continue;
    const Eigen::VectorXd z = checked_residual(ctx.metric, t);
    if ((ctx.q.transpose() * z).norm() > 1e-10 || !(z.dot(ctx.w) > 0.0)) continue;
    if (min_weight < ctx.options.ridge_tol) throw RidgeHit{};

    Preimage p;
    p.face = face;
    p.params = t;
    p.coords = u;
    p.jacobian_det = jac.determinant();
    p.sign = static_cast<int>(face_sign * sign_of(p.jacobian_det)) *
             (ctx.options.orientation < 0 ? -1 : 1);
    const bool duplicate =
        std::any_of(found.begin(), found.end(), [&](const Preimage& q) {
          return same_preimage(p, q, ctx.options.match_tol);
        });
    if (!duplicate) found.push_back(std::move(p));
  }
  return found;
}

std::vector<Preimage> preimages_at_level(const ChordMetric& metric,
                                         const SimplexDomain& domain,
                                         const Eigen::VectorXd& w, int level,
                                         const DegreeOptions& options) {
  const int n = domain.n;
  const FaceLattice lattice = kuhn_lattice(n - 2, 1 << level);
  const Eigen::MatrixXd q = tangent_frame(w);
  const FaceContext ctx{metric, domain, w, q, options,
                       grading_for(domain, options)};

  std::vector<std::vector<Preimage>> per_face(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    per_face[i] = face_preimages(ctx, lattice, static_cast<int>(i) + 1);
  });
  std::vector<Preimage> all;
  for (auto& list : per_face) {
    for (auto& p : list) {
      const bool duplicate = std::any_of(all.begin(), all.end(), [&](const Preimage& q2) {
        return same_preimage(p, q2, options.match_tol);
      });
      if (!duplicate) all.push_back(std::move(p));
    }
  }
  sort_preimages(all);
  return all;
}

}  // namespace

DegreeReport simplicial_degree(const ChordMetric& metric,
                               const SimplexDomain& domain, int level,
                               const DegreeOptions& options) {
  if (level < 0 || level > 12) {
    throw Error(ErrorCode::kInvalidArgument, "mesh level must be in [0, 12]");
  }
  const int n = domain.n;
  Eigen::VectorXd w = psi2(residual(metric, domain.anchor));
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal;

  for (int attempt = 0;; ++attempt) {
    try {
      const std::vector<Preimage> coarse =
          preimages_at_level(metric, domain, w, level, options);
      const std::vector<Preimage> fine =
          preimages_at_level(metric, domain, w, level + 1, options);
      DegreeReport report;
      report.n = n;
      report.regular_value = w;
      report.mesh_level = level;
      report.method = "simplicial";
      report.preimages = fine;
      for (const Preimage& p : fine) report.degree += p.sign;
      report.certified = preimage_sets_match(coarse, fine, options.match_tol);
      if (attempt == 0) {
        const Eigen::VectorXd& a = domain.anchor.interior();
        report.certified =
            report.certified &&
            std::any_of(fine.begin(), fine.end(), [&](const Preimage& p) {
              return (p.params - a).norm() < options.match_tol;
            });
      }
      return report;
    } catch (const RidgeHit&) {
      if (attempt >= options.max_perturbations) {
        throw Error(ErrorCode::kDomainConstruction,
                    "regular value keeps hitting a ridge of the face mesh");
      }
      // Move w within the sphere of the sum-zero hyperplane.
      const Eigen::MatrixXd q = tangent_frame(w);
      Eigen::VectorXd c(n - 2);
      for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = normal(rng);
      w = (w + 1e-3 * (attempt + 1) * q * c.normalized()).normalized();
    }
  }
}

}  // namespace ngon
