#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ngon/curve.hpp"
#include "ngon/polygon.hpp"

namespace ngon::cli {

enum class Method { kChain, kNewton, kBrute, kCertify, kAll };
enum class OutputFormat { kJson, kCsv };

std::string_view to_string(Method method);
std::string_view to_string(OutputFormat format);

// Bad flags or values. The executable maps it to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  // Catalog name or path to a JSON curve file.
  std::string curve_spec = "circle";
  int n_min = 3;
  int n_max = 3;
  // Defaults to 0, or to the file's "base" field for curve files.
  std::optional<double> base_param;
  Method method = Method::kNewton;
  double tol_polygon = 1e-9;
  double tol_chain = 1e-12;
  // Empty writes to stdout.
  std::string output_path;
  OutputFormat format = OutputFormat::kJson;
  std::uint64_t seed = 0x5eed;
  // Brute-force grid per dimension; 0 picks 400, 60 and 20 for n = 3, 4, 5.
  int brute_grid = 0;
  // When set, curve.csv and polygon_<n>.csv are written here.
  std::string plot_dir;
};

Method parse_method(std::string_view text);
OutputFormat parse_format(std::string_view text);
// "7" or "3..12".
std::pair<int, int> parse_n_range(std::string_view text);
// Throws UsageError on any invariant violation.
void validate(const RunConfig& config);

struct RunRecord {
  std::string curve;
  int n = 0;
  // solved | none_found | certified | error
  std::string status;
  std::vector<std::string> methods;
  std::vector<PolygonSolution> solutions;
  std::optional<nlohmann::json> degree;
  std::optional<nlohmann::json> checks;
  std::string message;
  bool hard_failure = false;
};

struct RunOutcome {
  std::vector<RunRecord> records;
  int exit_status = 0;
};

ClosedCurve resolve_curve(const RunConfig& config);

// One record per n in deterministic order. Never throws for per-run solver
// failures; those are recorded with status "error".
RunOutcome run(const RunConfig& config);

nlohmann::json to_json(const RunRecord& record);
nlohmann::json to_json(const RunConfig& config);
std::string render_json(const RunConfig& config, const RunOutcome& outcome);
std::string render_csv(const RunOutcome& outcome);

// curve.csv with 2000 samples t = k/1999 and polygon_<n>.csv (a suffix _<k>
// distinguishes further solutions of the same n). Throws Error(kIo).
void emit_plot_data(const std::vector<PolygonSolution>& solutions,
                    const ClosedCurve& curve, const std::filesystem::path& dir);

// Entry point of the ngon executable.
int main_entry(int argc, char** argv);

}  // namespace ngon::cli
