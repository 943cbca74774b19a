// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Details for each criterion are printed indented below its line.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ngon/catalog.hpp"
#include "ngon/chain.hpp"
#include "ngon/degree.hpp"
#include "ngon/error.hpp"
#include "ngon/polygon.hpp"
#include "oracles.hpp"

using namespace ngon;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details.push_back("failed: " + what);
    }
  }
  void note(const std::string& what) { details.push_back(what); }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome circle_ground_truth(std::string_view name) {
  Outcome out;
  const auto start = Clock::now();
  const ClosedCurve c = catalog_curve(name);
  const ChordMetric m(c);
  double worst = 0.0;
  for (int n = 3; n <= 12; ++n) {
    const SolveResult newton = newton_solve(m, n, ParameterVector::uniform(n));
    out.require(newton.ok(), fmt("newton converges for n=%d", n));
    const PolygonSolution chain = solve_by_chain_bisection(c, n);
    for (const PolygonSolution* s : {&newton.solution, &chain}) {
      for (int i = 1; i < n; ++i) worst = std::max(worst, std::abs(s->params[i] - double(i) / n));
      worst = std::max(worst, std::abs(s->edge_length - oracle::circle_edge(n)));
    }
  }
  const double elapsed = seconds_since(start);
  out.require(worst <= 1e-10, fmt("max deviation %.2e <= 1e-10", worst));
  out.require(elapsed < 5.0, fmt("runtime %.2f s < 5 s", elapsed));
  out.note(fmt("%s: max deviation %.2e, %.2f s", std::string(name).c_str(), worst, elapsed));
  return out;
}

Outcome degree_is_one(const std::vector<std::string_view>& curves) {
  Outcome out;
  for (std::string_view name : curves) {
    for (int n = 3; n <= 5; ++n) {
      const auto start = Clock::now();
      const ClosedCurve c = catalog_curve(name);
      std::string tag = fmt("%s n=%d", std::string(name).c_str(), n);
      try {
        const Certificate cert = certify_existence(c, n);
        const double elapsed = seconds_since(start);
        out.require(cert.conclusion == Conclusion::kExistsCertified, tag + " certified");
        if (!cert.degree) {
          out.require(false, tag + " has a degree report");
          continue;
        }
        const DegreeReport& d = *cert.degree;
        const Eigen::VectorXd a = cert.domain->anchor.interior();
        const bool unique_at_a = d.preimages.size() == 1 &&
                                 (d.preimages[0].params - a).norm() < 1e-8;
        out.require(std::abs(d.degree) == 1, tag + " |degree| = 1");
        out.require(unique_at_a, tag + " unique preimage at a");
        out.require(d.mesh_level + 1 <= 4, tag + " mesh level <= 4");
        out.require(elapsed < 60.0, tag + " runtime < 60 s");
        std::string line = fmt("%s: degree %+d, levels %d/%d, %zu preimage(s), %.2f s",
                               tag.c_str(), d.degree, d.mesh_level, d.mesh_level + 1,
                               d.preimages.size(), elapsed);
        if (n == 3) {
          out.require(cert.winding && cert.winding->certified &&
                          cert.winding->degree == d.degree,
                      tag + " winding number agrees");
          if (cert.winding) line += fmt(", winding %+d", cert.winding->degree);
        }
        out.note(line);
      } catch (const std::exception& e) {
        out.require(false, tag + " threw: " + e.what());
      }
    }
  }
  return out;
}

Outcome det_m_identity(const std::vector<std::string_view>& curves) {
  Outcome out;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  int domains = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::string_view name = curves[trial % curves.size()];
    const int n = 3 + trial % 6;
    const double base = unit(rng);
    const ClosedCurve c = catalog_curve(name, base);
    const ChordMetric m(c);
    try {
      const MonotoneBall ball = monotone_radius(c);
      const double eps = ball.radius / (2.0 * n) * (0.25 + 0.75 * unit(rng));
      const EpsilonChain chain = build_chain(c, 0.0, eps, n);
      const DetMCheck check = det_m_identity_check(m, chain);
      const double rel = std::abs(check.det_direct - check.det_formula) / std::abs(check.det_formula);
      worst = std::max(worst, rel);
      ++domains;
    } catch (const std::exception& e) {
      out.require(false, fmt("%s base %.3f n=%d: %s", std::string(name).c_str(), base, n, e.what()));
    }
  }
  out.require(domains == 50, fmt("%d of 50 domains built", domains));
  out.require(worst <= 1e-8, fmt("max relative error %.2e <= 1e-8", worst));
  out.note(fmt("%d domains, max relative error %.2e", domains, worst));
  return out;
}

Outcome jacobian_check(const std::vector<std::string_view>& curves) {
  Outcome out;
  std::mt19937_64 rng(77);
  for (std::string_view name : curves) {
    const ChordMetric m(catalog_curve(name));
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 3 + trial % 8;
      const Eigen::VectorXd t = oracle::random_ordered(rng, n, 0.01);
      const Eigen::MatrixXd a = jacobian_phi(m, ParameterVector(t));
      const Eigen::MatrixXd fd = oracle::fd_jacobian(m, t, 1e-6);
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
          const double scale = std::max(1.0, std::abs(fd(i, j)));
          worst = std::max(worst, std::abs(a(i, j) - fd(i, j)) / scale);
        }
      }
    }
    out.require(worst <= 1e-6, fmt("%s: max relative error %.2e", std::string(name).c_str(), worst));
    out.note(fmt("%s: 100 configurations, max relative error %.2e", std::string(name).c_str(), worst));
  }
  return out;
}

Outcome chain_exactness(std::string_view name) {
  Outcome out;
  const ClosedCurve c = catalog_curve(name);
  const ChordMetric m(c);
  const MonotoneBall ball = monotone_radius(c);
  const double eps = ball.radius / (2.0 * 20);
  const EpsilonChain chain = build_chain(c, 0.0, eps, 20);
  double worst = 0.0;
  bool monotone = chain.params.size() == 20;
  for (std::size_t i = 1; i < chain.params.size(); ++i) {
    monotone = monotone && chain.params[i] > chain.params[i - 1];
    worst = std::max(worst, std::abs(m.distance(chain.params[i - 1], chain.params[i]) - eps));
  }
  out.require(worst < 1e-12, fmt("max step error %.2e < 1e-12", worst));
  out.require(monotone, "strictly increasing");
  out.note(fmt("%s: r = %.4g, eps = %.4g, max step error %.2e", std::string(name).c_str(),
               ball.radius, eps, worst));
  return out;
}

bool same_sets(const std::vector<PolygonSolution>& a, const std::vector<PolygonSolution>& b,
               double tol) {
  auto covered = [tol](const std::vector<PolygonSolution>& x, const std::vector<PolygonSolution>& y) {
    return std::all_of(x.begin(), x.end(), [&](const PolygonSolution& s) {
      return std::any_of(y.begin(), y.end(), [&](const PolygonSolution& q) {
        return (s.params.interior() - q.params.interior()).lpNorm<Eigen::Infinity>() < tol;
      });
    });
  };
  return a.size() == b.size() && covered(a, b) && covered(b, a);
}

Outcome oracle_equivalence(const std::vector<std::string_view>& curves) {
  Outcome out;
  for (std::string_view name : curves) {
    const ClosedCurve c = catalog_curve(name);
    const ChordMetric m(c);
    for (int n : {3, 4}) {
      const auto start = Clock::now();
      const int grid = n == 3 ? 200 : 60;
      auto keep_verified = [&](std::vector<PolygonSolution> v) {
        std::erase_if(v, [&](const PolygonSolution& s) { return !verify_polygon(c, s).passed(); });
        return v;
      };
      const auto newton = keep_verified(multistart_newton(m, n, 4000, 0xace));
      const auto brute = keep_verified(brute_force_oracle(m, n, grid));
      const bool ok = same_sets(newton, brute, 1e-6);
      out.require(ok, fmt("%s n=%d: newton %zu vs brute %zu", std::string(name).c_str(), n,
                          newton.size(), brute.size()));
      out.note(fmt("%s n=%d: newton %zu, brute (grid %d) %zu, %s, %.2f s",
                   std::string(name).c_str(), n, newton.size(), grid, brute.size(),
                   ok ? "equal" : "DIFFER", seconds_since(start)));
    }
  }
  return out;
}

int precondition_condition(const ClosedCurve& c, int n) {
  try {
    certify_existence(c, n);
  } catch (const PreconditionViolated& e) {
    return e.condition();
  }
  return 0;
}

Outcome counterexamples() {
  Outcome out;
  {
    const ClosedCurve c = catalog_curve("corner_triangle");
    const ChordMetric m(c);
    const double grid_min = grid_minimum_residual(m, 3, 500);
    std::vector<PolygonSolution> hits;
    for (const PolygonSolution& s : brute_force_oracle(m, 3, 500)) {
      if (s.residual_norm < 1e-6 && !s.degenerate) hits.push_back(s);
    }
    const int cond = precondition_condition(c, 3);
    out.require(grid_min >= 1e-6, fmt("corner grid-500 minimum residual %.2e >= 1e-6", grid_min));
    out.require(hits.empty(), "corner: no refined solution");
    out.require(cond == 1, fmt("corner: condition (i) reported (got %d)", cond));
    out.note(fmt("corner_triangle: grid-500 min residual %.3e, %zu refined solutions, condition %d",
                 grid_min, hits.size(), cond));
  }
  {
    const ClosedCurve c = catalog_curve("figure_eight");
    const ChordMetric m(c);
    std::size_t good = 0;
    for (const auto& s : brute_force_oracle(m, 3, 500)) good += verify_polygon(c, s).passed();
    for (const auto& s : multistart_newton(m, 3, 2000, 3)) good += verify_polygon(c, s).passed();
    const int cond = precondition_condition(c, 3);
    out.require(good == 0, fmt("figure eight: %zu non-degenerate solutions", good));
    out.require(cond == 2, fmt("figure eight: condition (ii) reported (got %d)", cond));
    out.note(fmt("figure_eight: %zu non-degenerate solutions (grid 500 + 2000 starts), condition %d",
                 good, cond));
  }
  return out;
}

Outcome degenerate_guard() {
  Outcome out;
  int rejected = 0;
  int total = 0;
  for (std::string_view name : {"circle", "ellipse", "trefoil", "circle4d"}) {
    const ChordMetric m(catalog_curve(name));
    for (int n = 3; n <= 8; ++n) {
      Eigen::VectorXd seed(n - 1);
      for (int i = 0; i < n - 1; ++i) seed(i) = (i + 1) * 1e-8;
      const SolveResult r = newton_solve(m, n, ParameterVector(seed));
      ++total;
      if (r.status == SolveStatus::kDegenerate && r.solution.degenerate && !r.ok()) ++rejected;
    }
  }
  out.require(rejected == total, fmt("%d of %d seeds rejected", rejected, total));
  out.note(fmt("%d of %d near-degenerate seeds rejected as degenerate", rejected, total));
  return out;
}

Outcome ambient_genericity() {
  // Every solver criterion above, repeated on the planar ellipse and the
  // circle rotated into R^4.
  Outcome out;
  auto absorb = [&out](const std::string& label, const Outcome& sub) {
    out.require(sub.pass, label);
    for (const auto& d : sub.details) out.note(label + ": " + d);
  };
  absorb("circle4d ground truth", circle_ground_truth("circle4d"));
  absorb("degree", degree_is_one({"circle4d"}));
  absorb("det M", det_m_identity({"ellipse", "circle4d"}));
  absorb("jacobian", jacobian_check({"ellipse", "circle4d"}));
  absorb("chain", chain_exactness("ellipse"));
  absorb("chain", chain_exactness("circle4d"));
  absorb("oracle", oracle_equivalence({"ellipse", "circle4d"}));
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"circle ground truth, n = 3..12", [] { return circle_ground_truth("circle"); }},
      {"|degree| = 1 with unique preimage at a",
       [] { return degree_is_one({"circle", "ellipse", "trefoil"}); }},
      {"det M closed form, 50 domains",
       [] { return det_m_identity({"circle", "ellipse", "trefoil", "lissajous", "circle4d"}); }},
      {"jacobian vs central differences",
       [] { return jacobian_check({"circle", "ellipse", "trefoil", "lissajous", "circle4d"}); }},
      {"epsilon chain exactness on the trefoil", [] { return chain_exactness("trefoil"); }},
      {"newton and brute-force solution sets coincide",
       [] { return oracle_equivalence({"circle", "ellipse", "trefoil"}); }},
      {"counterexamples: corner and double point", counterexamples},
      {"ambient dimension genericity (m = 2, m = 4)", ambient_genericity},
      {"near-degenerate seeds rejected", degenerate_guard},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = Clock::now();
    Outcome result;
    try {
      result = criteria[k].check();
    } catch (const std::exception& e) {
      result.pass = false;
      result.details.push_back(std::string("uncaught: ") + e.what());
    }
    failures += !result.pass;
    std::printf("%s  [%zu] %s  (%.2f s)\n", result.pass ? "PASS" : "FAIL", k + 1,
                criteria[k].name, seconds_since(start));
    for (const auto& d : result.details) std::printf("        %s\n", d.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
