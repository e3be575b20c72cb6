#pragma once

#include "boxatom/core_model.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace boxatom::cli {

enum class Command { Coeffs, Curve, CiScan, NuclearMotion };
enum class OutputFormat { Csv, Json };

Command parse_command(std::string_view name);
const char *to_string(Command command);

inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kMinQuadPoints = 16;
inline constexpr int kMaxQuadPoints = 512;
inline constexpr const char *kQuadPointsEnv = "BOXATOM_QUAD_POINTS";

struct RunConfig {
  Command command{Command::Coeffs};
  std::string system_path; ///< file path or preset name
  double lambda_min{0.1};
  double lambda_max{2.0};
  int lambda_steps{20};
  std::vector<double> lambdas; ///< explicit grid; overrides min/max/steps
  std::optional<int> quadrature_points; ///< unset: env var, then 200
  int ci_nmax{8};
  OutputFormat output_format{OutputFormat::Csv};
  std::optional<std::string> output_path;
};

/// Flag value if set, else BOXATOM_QUAD_POINTS, else the default; checked
/// against [16, 512].
int resolve_quadrature_points(const RunConfig &config);

/// Explicit list if given, else `lambda_steps` evenly spaced points from
/// lambda_min to lambda_max (a single point at lambda_min when steps == 1).
std::vector<double> lambda_grid(const RunConfig &config);

/// Names accepted in place of a system file.
std::vector<std::string> preset_names();
std::optional<SystemDefinition> preset(std::string_view name);

/// Parse the system schema
///   {"particles":[{"mass":m,"charge":q,"clamped":b}...],"reference":i,"rc_bohr":r}
/// `clamped` defaults to false, `reference` to 0. Errors name the line or
/// field.
SystemDefinition parse_system_json(std::string_view text);

/// Preset name or path to a JSON file.
SystemDefinition load_system(const std::string &path_or_preset);

/// Execute a command and return the rendered report.
std::string run(const RunConfig &config);

/// Number formatting used for every emitted value (10 significant digits).
std::string format_number(double value);

struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata; ///< `# key=value`, in order
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string meta(std::string_view key) const;
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);
std::string write_csv(const CsvTable &table);

} // namespace boxatom::cli
