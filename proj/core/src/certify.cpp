#include <sstream>

#include "ngon/degree.hpp"
#include "ngon/error.hpp"

namespace ngon {

std::string_view to_string(Conclusion conclusion) {
  switch (conclusion) {
    case Conclusion::kExistsCertified: return "exists_certified";
    case Conclusion::kFoundDirectly: return "found_directly";
    case Conclusion::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

SimplexDomain domain_or_precondition(const ClosedCurve& curve, int n) {
  try {
    return build_domain(curve, n);
  } catch (const PreconditionViolated&) {
    throw;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNoMonotoneBall) {
      throw PreconditionViolated(
          std::string("condition (i) fails at the base point: ") + e.what(), 1);
    }
    if (e.code() == ErrorCode::kBallNotSingleArc) {
      throw PreconditionViolated(
          std::string("condition (ii) fails at the base point: ") + e.what(), 2);
    }
    throw;
  }
}

// Newton from a boundary point where g was undefined, then verification.
std::optional<PolygonSolution> refine_hit(const ChordMetric& metric, int n,
                                          const std::vector<double>& point) {
  Eigen::VectorXd t(static_cast<Eigen::Index>(point.size()));
  for (std::size_t i = 0; i < point.size(); ++i) t(static_cast<Eigen::Index>(i)) = point[i];
  const ParameterVector seed(t);
  const SolveResult res = newton_solve(metric, n, seed);
  if (res.ok() && verify_polygon(metric.curve(), res.solution).passed()) {
    return res.solution;
  }
  PolygonSolution direct = make_solution(metric, seed, SolveMethod::kNewton);
  if (verify_polygon(metric.curve(), direct).passed()) return direct;
  return std::nullopt;
}

std::size_t simplex_count(int d, int level) {
  std::size_t count = 1;
  for (int i = 0; i < d; ++i) count <<= level;
  return count;
}

}  // namespace

Certificate certify_existence(const ClosedCurve& curve, int n,
                              const CertifyOptions& options) {
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "n must be at least 3");
  const ChordMetric metric(curve);
  Certificate cert;
  cert.domain = domain_or_precondition(curve, n);
  const SimplexDomain& domain = *cert.domain;

  if (n > options.max_degree_n) {
    for (const PolygonSolution& sol : multistart_newton(metric, n, 200, 0x5eed)) {
      if (verify_polygon(curve, sol).passed()) {
        cert.solution = sol;
        cert.conclusion = Conclusion::kFoundDirectly;
        cert.note = "face meshes too large for this n; Newton found a verified polygon";
        return cert;
      }
    }
    cert.note = "face meshes too large for this n and Newton found nothing";
    return cert;
  }

  // Face meshes beyond this size take minutes; stop refining there.
  constexpr std::size_t kMaxSimplicesPerFace = 4'000'000;
  try {
    if (n == 3) {
      cert.winding = winding_number_n3(metric, domain, options.winding_samples,
                                       options.degree);
    }
    for (int level = options.start_level; level <= options.max_level; ++level) {
      if (simplex_count(n - 2, level + 1) > kMaxSimplicesPerFace) break;
      cert.degree = simplicial_degree(metric, domain, level, options.degree);
      if (cert.degree->certified) break;
    }
  } catch (const AtDiagonal& hit) {
    cert.solution = refine_hit(metric, n, hit.point());
    if (cert.solution) {
      cert.solution->method = SolveMethod::kNewton;
      cert.conclusion = Conclusion::kFoundDirectly;
      cert.note = "g is undefined at a boundary point, which is an inscribed polygon";
    } else {
      cert.note = "g is undefined at a boundary point that failed verification";
    }
    return cert;
  }

  if (!cert.degree) {
    cert.note = "no mesh level fits the size cap";
    return cert;
  }
  const DegreeReport& deg = *cert.degree;
  if (!deg.certified) {
    std::ostringstream os;
    os << "preimage sets at mesh levels " << deg.mesh_level << " and "
       << deg.mesh_level + 1 << " disagree";
    cert.note = os.str();
    return cert;
  }
  if (cert.winding && (!cert.winding->certified || cert.winding->degree != deg.degree)) {
    std::ostringstream os;
    os << "winding number " << cert.winding->degree
       << " disagrees with simplicial degree " << deg.degree;
    cert.note = os.str();
    return cert;
  }
  if (deg.degree == 0) {
    cert.note = "degree is zero; existence is not certified";
    return cert;
  }
  cert.conclusion = Conclusion::kExistsCertified;
  return cert;
}

nlohmann::json to_json(const Certificate& certificate) {
  nlohmann::json out{{"conclusion", to_string(certificate.conclusion)},
                     {"note", certificate.note}};
  if (certificate.domain) {
    const SimplexDomain& d = *certificate.domain;
    const auto& a = d.anchor.interior();
    out["domain"] = {{"epsilon", d.epsilon},
                     {"p", d.p},
                     {"radius", d.ball.radius},
                     {"anchor", std::vector<double>(a.begin(), a.end())}};
  }
  if (certificate.degree) out["degree"] = to_json(*certificate.degree);
  if (certificate.winding) out["winding"] = to_json(*certificate.winding);
  if (certificate.solution) {
    const auto& t = certificate.solution->params.interior();
    out["solution"] = {{"params", std::vector<double>(t.begin(), t.end())},
                       {"edge_length", certificate.solution->edge_length},
                       {"residual", certificate.solution->residual_norm}};
  }
  return out;
}

}  // namespace ngon
