#include "cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "ngon/catalog.hpp"
#include "ngon/chain.hpp"
#include "ngon/curve_io.hpp"
#include "ngon/degree.hpp"
#include "ngon/error.hpp"
#include "ngon/parallel.hpp"

namespace ngon::cli {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kChain: return "chain";
    case Method::kNewton: return "newton";
    case Method::kBrute: return "brute";
    case Method::kCertify: return "certify";
    case Method::kAll: return "all";
  }
  return "unknown";
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::kJson ? "json" : "csv";
}

Method parse_method(std::string_view text) {
  for (Method m : {Method::kChain, Method::kNewton, Method::kBrute,
                   Method::kCertify, Method::kAll}) {
    if (text == to_string(m)) return m;
  }
  throw UsageError("unknown method '" + std::string(text) +
                   "' (chain, newton, brute, certify, all)");
}

OutputFormat parse_format(std::string_view text) {
  if (text == "json") return OutputFormat::kJson;
  if (text == "csv") return OutputFormat::kCsv;
  throw UsageError("unknown output format '" + std::string(text) + "' (json, csv)");
}

namespace {

int parse_int(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::pair<int, int> parse_n_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const int n = parse_int(text);
    return {n, n};
  }
  return {parse_int(text.substr(0, dots)), parse_int(text.substr(dots + 2))};
}

void validate(const RunConfig& config) {
  if (config.n_min < 3) throw UsageError("n must be at least 3");
  if (config.n_max < config.n_min) throw UsageError("empty n range");
  if (!(config.tol_polygon > 0.0) || !(config.tol_chain > 0.0)) {
    throw UsageError("tolerances must be positive");
  }
  if (config.base_param && !(*config.base_param >= 0.0 && *config.base_param < 1.0)) {
    throw UsageError("base parameter must lie in [0, 1)");
  }
  if (config.brute_grid < 0) throw UsageError("grid must be positive");
  if (config.curve_spec.empty()) throw UsageError("no curve given");
}

ClosedCurve resolve_curve(const RunConfig& config) {
  const auto names = catalog_names();
  if (std::find(names.begin(), names.end(), config.curve_spec) != names.end()) {
    return catalog_curve(config.curve_spec, config.base_param.value_or(0.0));
  }
  const std::filesystem::path path(config.curve_spec);
  if (!std::filesystem::exists(path)) {
    throw UsageError("'" + config.curve_spec +
                     "' is neither a catalog curve nor a readable file");
  }
  return load_curve_file(path, config.base_param);
}

namespace {

int default_grid(int n) {
  switch (n) {
    case 3: return 400;
    case 4: return 60;
    default: return 20;
  }
}

bool contains_solution(const std::vector<PolygonSolution>& set,
                       const PolygonSolution& sol) {
  return std::any_of(set.begin(), set.end(), [&](const PolygonSolution& s) {
    return (s.params.interior() - sol.params.interior()).lpNorm<Eigen::Infinity>() <
           kDedupDistance;
  });
}

class Runner {
 public:
  Runner(const RunConfig& config, const ClosedCurve& curve, int n)
      : config_(config), curve_(curve), metric_(curve), n_(n) {
    solver_.tol_polygon = config.tol_polygon;
    record_.curve = curve.label();
    record_.n = n;
  }

  RunRecord run() {
    try {
      switch (config_.method) {
        case Method::kChain: chain(); break;
        case Method::kNewton: newton(std::nullopt); break;
        case Method::kBrute: brute(); break;
        case Method::kCertify: certify(); break;
        case Method::kAll: all(); break;
      }
      finish();
    } catch (const std::exception& e) {
      record_.status = "error";
      record_.message = e.what();
      record_.hard_failure = true;
    }
    return std::move(record_);
  }

 private:
  bool verified(const PolygonSolution& sol) const {
    return verify_polygon(curve_, sol, config_.tol_polygon).passed();
  }

  void note(const std::string& text) {
    if (!record_.message.empty()) record_.message += "; ";
    record_.message += text;
  }

  void keep(const PolygonSolution& sol) {
    if (verified(sol) && !contains_solution(record_.solutions, sol)) {
      record_.solutions.push_back(sol);
    }
  }

  std::optional<PolygonSolution> chain() {
    record_.methods.emplace_back("chain");
    ChainBisectionOptions options;
    options.tol_polygon = config_.tol_polygon;
    options.tol_chain = config_.tol_chain;
    try {
      PolygonSolution sol = solve_by_chain_bisection(curve_, n_, options);
      keep(sol);
      return sol;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBracketNotFound) throw;
      note(std::string("chain: ") + e.what());
      return std::nullopt;
    }
  }

  std::optional<PolygonSolution> newton(std::optional<ParameterVector> seed) {
    record_.methods.emplace_back("newton");
    const ParameterVector start = seed ? *seed : ParameterVector::uniform(n_);
    const SolveResult res = newton_solve(metric_, n_, start, solver_);
    if (res.ok() && verified(res.solution)) {
      keep(res.solution);
      return res.solution;
    }
    note("newton from " + std::string(seed ? "seed" : "uniform polygon") + ": " +
         std::string(to_string(res.status)) + ", falling back to multistart");
    std::optional<PolygonSolution> first;
    for (const PolygonSolution& sol :
         multistart_newton(metric_, n_, 200, config_.seed, solver_)) {
      if (!verified(sol)) continue;
      keep(sol);
      if (!first) first = sol;
    }
    return first;
  }

  std::vector<PolygonSolution> brute() {
    record_.methods.emplace_back("brute");
    BruteForceOptions options;
    options.seed = config_.seed;
    options.solver = solver_;
    const int grid = config_.brute_grid > 0 ? config_.brute_grid : default_grid(n_);
    std::vector<PolygonSolution> found;
    for (const PolygonSolution& sol : brute_force_oracle(metric_, n_, grid, options)) {
      if (!verified(sol)) continue;
      found.push_back(sol);
      keep(sol);
    }
    return found;
  }

  void certify() {
    record_.methods.emplace_back("certify");
    try {
      const Certificate cert = certify_existence(curve_, n_);
      record_.degree = to_json(cert);
      conclusion_ = cert.conclusion;
      if (cert.solution) keep(*cert.solution);
      if (!cert.note.empty()) note("certify: " + cert.note);
    } catch (const PreconditionViolated& e) {
      record_.degree = nlohmann::json{{"conclusion", "precondition_violated"},
                                      {"condition", e.condition()},
                                      {"message", e.what()}};
      note(std::string("certify: ") + e.what());
    }
  }

  void all() {
    const std::optional<PolygonSolution> from_chain = chain();
    const std::vector<PolygonSolution> from_brute = brute();
    std::optional<ParameterVector> seed;
    if (from_chain) {
      seed = from_chain->params;
    } else if (!from_brute.empty()) {
      seed = from_brute.front().params;
    }
    const std::optional<PolygonSolution> from_newton = newton(seed);
    nlohmann::json checks = nlohmann::json::object();
    checks["brute_count"] = from_brute.size();
    if (from_newton) checks["newton_in_brute"] = contains_solution(from_brute, *from_newton);
    if (from_chain) checks["chain_in_brute"] = contains_solution(from_brute, *from_chain);
    record_.checks = std::move(checks);
    certify();
  }

  void finish() {
    std::stable_sort(record_.solutions.begin(), record_.solutions.end(),
                     [](const PolygonSolution& a, const PolygonSolution& b) {
                       return std::lexicographical_compare(
                           a.params.interior().begin(), a.params.interior().end(),
                           b.params.interior().begin(), b.params.interior().end());
                     });
    if (!record_.solutions.empty()) {
      record_.status = "solved";
    } else if (conclusion_ == Conclusion::kExistsCertified) {
      record_.status = "certified";
    } else {
      record_.status = "none_found";
    }
  }

  const RunConfig& config_;
  const ClosedCurve& curve_;
  ChordMetric metric_;
  int n_;
  SolverConfig solver_;
  RunRecord record_;
  std::optional<Conclusion> conclusion_;
};

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::vector<double> as_vector(const Eigen::VectorXd& v) {
  return {v.begin(), v.end()};
}

std::vector<double> as_vector(const Point& p) { return {p.begin(), p.end()}; }

nlohmann::json solution_json(const PolygonSolution& sol) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const Point& v : sol.vertices) vertices.push_back(as_vector(v));
  return {{"method", to_string(sol.method)},
          {"edge_length", sol.edge_length},
          {"params", as_vector(sol.params.interior())},
          {"vertices", std::move(vertices)},
          {"residual", sol.residual_norm}};
}

}  // namespace

RunOutcome run(const RunConfig& config) {
  validate(config);
  const ClosedCurve curve = resolve_curve(config);
  const int count = config.n_max - config.n_min + 1;
  RunOutcome outcome;
  outcome.records.resize(count);
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
    outcome.records[i] = Runner(config, curve, config.n_min + static_cast<int>(i)).run();
  });
  const bool failed = std::any_of(outcome.records.begin(), outcome.records.end(),
                                  [](const RunRecord& r) { return r.hard_failure; });
  outcome.exit_status = failed ? 1 : 0;

  if (!config.plot_dir.empty()) {
    std::vector<PolygonSolution> all;
    for (const RunRecord& r : outcome.records) {
      all.insert(all.end(), r.solutions.begin(), r.solutions.end());
    }
    emit_plot_data(all, curve, config.plot_dir);
  }
  return outcome;
}

nlohmann::json to_json(const RunRecord& record) {
  nlohmann::json out{{"curve", record.curve}, {"n", record.n}, {"status", record.status}};
  if (record.solutions.empty()) {
    out["edge_length"] = nullptr;
    out["params"] = nlohmann::json::array();
    out["vertices"] = nlohmann::json::array();
    out["residual"] = nullptr;
  } else {
    const nlohmann::json best = solution_json(record.solutions.front());
    for (const char* key : {"edge_length", "params", "vertices", "residual"}) {
      out[key] = best[key];
    }
  }
  out["degree"] = record.degree ? *record.degree : nlohmann::json(nullptr);
  out["methods"] = record.methods;
  nlohmann::json solutions = nlohmann::json::array();
  for (const PolygonSolution& sol : record.solutions) solutions.push_back(solution_json(sol));
  out["solutions"] = std::move(solutions);
  if (record.checks) out["checks"] = *record.checks;
  out["message"] = record.message;
  return out;
}

nlohmann::json to_json(const RunConfig& config) {
  nlohmann::json out{{"curve", config.curve_spec},
                     {"n_min", config.n_min},
                     {"n_max", config.n_max},
                     {"method", to_string(config.method)},
                     {"tol_polygon", config.tol_polygon},
                     {"tol_chain", config.tol_chain},
                     {"seed", config.seed}};
  out["base"] = config.base_param ? nlohmann::json(*config.base_param)
                                  : nlohmann::json(nullptr);
  return out;
}

std::string render_json(const RunConfig& config, const RunOutcome& outcome) {
  nlohmann::json records = nlohmann::json::array();
  for (const RunRecord& r : outcome.records) records.push_back(to_json(r));
  const nlohmann::json doc{{"config", to_json(config)}, {"records", std::move(records)}};
  return doc.dump(2) + "\n";
}

std::string render_csv(const RunOutcome& outcome) {
  std::ostringstream os;
  os << "curve,n,status,method,edge_length,residual,params\n";
  for (const RunRecord& r : outcome.records) {
    if (r.solutions.empty()) {
      os << r.curve << ',' << r.n << ',' << r.status << ",,,,\n";
      continue;
    }
    for (const PolygonSolution& sol : r.solutions) {
      os << r.curve << ',' << r.n << ',' << r.status << ',' << to_string(sol.method)
         << ',' << format_double(sol.edge_length) << ','
         << format_double(sol.residual_norm) << ',';
      const auto& t = sol.params.interior();
      for (Eigen::Index i = 0; i < t.size(); ++i) {
        os << (i ? ";" : "") << format_double(t(i));
      }
      os << '\n';
    }
  }
  return os.str();
}

namespace {

std::string coordinate_header(int dim) {
  static constexpr std::array<const char*, 4> kNames{"x", "y", "z", "w"};
  std::string out;
  for (int k = 0; k < dim; ++k) {
    out += ',';
    out += k < 4 ? std::string(kNames[k]) : "x" + std::to_string(k + 1);
  }
  return out;
}

void write_point(std::ostream& os, const Point& p) {
  for (Eigen::Index k = 0; k < p.size(); ++k) os << ',' << format_double(p(k));
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

}  // namespace

void emit_plot_data(const std::vector<PolygonSolution>& solutions,
                    const ClosedCurve& curve, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  const int dim = curve.ambient_dim();
  {
    std::ofstream out = open_for_write(dir / "curve.csv");
    out << 't' << coordinate_header(dim) << '\n';
    constexpr int kSamples = 2000;
    for (int k = 0; k < kSamples; ++k) {
      const double t = double(k) / (kSamples - 1);
      out << format_double(t);
      write_point(out, curve.eval(t));
      out << '\n';
    }
    if (!out) throw Error(ErrorCode::kIo, "write failed for curve.csv");
  }
  std::map<int, int> seen;
  for (const PolygonSolution& sol : solutions) {
    const int n = sol.n();
    const int k = seen[n]++;
    const std::string name =
        "polygon_" + std::to_string(n) + (k ? "_" + std::to_string(k) : "") + ".csv";
    std::ofstream out = open_for_write(dir / name);
    out << "i,t" << coordinate_header(dim) << '\n';
    for (int i = 0; i <= n; ++i) {
      const int j = i % n;
      out << i << ',' << format_double(sol.params[j]);
      write_point(out, curve.eval(sol.params[j]));
      out << '\n';
    }
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + name);
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Inscribed regular polygons in closed curves"};
  RunConfig config;
  std::string n_text = "3";
  std::string method_text = "newton";
  std::string format_text = "json";
  double base = 0.0;
  bool list_curves = false;
  app.add_option("--curve", config.curve_spec, "catalog name or JSON curve file");
  app.add_option("--n", n_text, "polygon size or inclusive range a..b");
  auto* base_opt = app.add_option("--base", base, "parameter of the pinned vertex in [0, 1)");
  app.add_option("--method", method_text, "chain | newton | brute | certify | all");
  app.add_option("--tol-polygon", config.tol_polygon, "edge equality tolerance");
  app.add_option("--tol-chain", config.tol_chain, "chain step tolerance");
  app.add_option("--output", config.output_path, "output file (default stdout)");
  app.add_option("--format", format_text, "json | csv");
  app.add_option("--seed", config.seed, "multistart seed");
  app.add_option("--grid", config.brute_grid, "brute-force grid per dimension");
  app.add_option("--plot-dir", config.plot_dir, "directory for curve.csv and polygon_<n>.csv");
  app.add_flag("--list-curves", list_curves, "print catalog curve names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (list_curves) {
    for (std::string_view name : catalog_names()) std::cout << name << '\n';
    return 0;
  }

  RunOutcome outcome;
  try {
    std::tie(config.n_min, config.n_max) = parse_n_range(n_text);
    config.method = parse_method(method_text);
    config.format = parse_format(format_text);
    if (*base_opt) config.base_param = base;
    outcome = run(config);
  } catch (const UsageError& e) {
    std::cerr << "ngon: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ngon: " << e.what() << '\n';
    return 1;
  }

  const std::string text = config.format == OutputFormat::kJson
                               ? render_json(config, outcome)
                               : render_csv(outcome);
  if (config.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(config.output_path, std::ios::binary);
    if (!(out << text)) {
      std::cerr << "ngon: cannot write " << config.output_path << '\n';
      return 1;
    }
  }
  return outcome.exit_status;
}

}  // namespace ngon::cli
