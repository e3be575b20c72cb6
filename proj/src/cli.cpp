#include "boxatom/cli.hpp"

#include "boxatom/ci.hpp"
#include "boxatom/errors.hpp"
#include "boxatom/perturbation.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace boxatom::cli {

using ordered_json = nlohmann::ordered_json;

Command parse_command(std::string_view name) {
  if (name == "coeffs")
    return Command::Coeffs;
  if (name == "curve")
    return Command::Curve;
  if (name == "ci-scan")
    return Command::CiScan;
  if (name == "nuclear-motion")
    return Command::NuclearMotion;
  throw ValidationError("unknown command '" + std::string(name) + "'");
}

const char *to_string(Command command) {
  switch (command) {
  case Command::Coeffs:
    return "coeffs";
  case Command::Curve:
    return "curve";
  case Command::CiScan:
    return "ci-scan";
  case Command::NuclearMotion:
    return "nuclear-motion";
  }
  return "?";
}

int resolve_quadrature_points(const RunConfig &config) {
  int points = kDefaultRuleOrder;
  if (config.quadrature_points) {
    points = *config.quadrature_points;
  } else if (const char *env = std::getenv(kQuadPointsEnv); env && *env) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0')
      throw ValidationError(std::string(kQuadPointsEnv) + ": not an integer: '" + env + "'");
    points = static_cast<int>(v);
  }
  if (points < kMinQuadPoints || points > kMaxQuadPoints)
    throw ValidationError("quadrature_points: " + std::to_string(points) + " outside [" +
                          std::to_string(kMinQuadPoints) + ", " +
                          std::to_string(kMaxQuadPoints) + "]");
  return points;
}

std::vector<double> lambda_grid(const RunConfig &config) {
  std::vector<double> grid = config.lambdas;
  if (grid.empty()) {
    if (config.lambda_steps < 1)
      throw ValidationError("lambda_steps: grid needs at least one point");
    if (!(config.lambda_min > 0.0))
      throw ValidationError("lambda_min: must be positive");
    if (config.lambda_steps > 1 && !(config.lambda_max > config.lambda_min))
      throw ValidationError("lambda_max: must exceed lambda_min");
    const int steps = config.lambda_steps;
    for (int k = 0; k < steps; ++k)
      grid.push_back(steps == 1 ? config.lambda_min
                                : config.lambda_min + (config.lambda_max - config.lambda_min) *
                                                          k / (steps - 1));
  }
  for (double lambda : grid)
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      throw ValidationError("lambdas: every value must be positive and finite");
  return grid;
}

std::vector<std::string> preset_names() { return {"he-clamped", "he-moving"}; }

std::optional<SystemDefinition> preset(std::string_view name) {
  if (name == "he-clamped")
    return helium(true);
  if (name == "he-moving")
    return helium(false);
  return std::nullopt;
}

namespace {

double number_field(const ordered_json &obj, const std::string &key, const std::string &where) {
  if (!obj.contains(key))
    throw ValidationError(where + "." + key + ": missing");
  const auto &v = obj.at(key);
  if (!v.is_number())
    throw ValidationError(where + "." + key + ": expected a number");
  return v.get<double>();
}

} // namespace

SystemDefinition parse_system_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    const auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
    const auto line = 1 + std::count(upto.begin(), upto.end(), '\n');
    throw ValidationError("system JSON: parse error at line " + std::to_string(line) + ": " +
                          e.what());
  }
  if (!doc.is_object())
    throw ValidationError("system JSON: top level must be an object");
  if (!doc.contains("particles") || !doc["particles"].is_array())
    throw ValidationError("particles: missing or not an array");

  SystemDefinition def;
  const auto &list = doc["particles"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto where = "particles[" + std::to_string(i) + "]";
    const auto &p = list[i];
    if (!p.is_object())
      throw ValidationError(where + ": expected an object");
    Particle particle;
    particle.mass = number_field(p, "mass", where);
    particle.charge = number_field(p, "charge", where);
    if (p.contains("clamped")) {
      if (!p["clamped"].is_boolean())
        throw ValidationError(where + ".clamped: expected true or false");
      particle.clamped = p["clamped"].get<bool>();
    }
    def.particles.push_back(particle);
  }
  if (doc.contains("reference")) {
    const auto &r = doc["reference"];
    if (!r.is_number_integer() || r.get<long long>() < 0)
      throw ValidationError("reference: expected a nonnegative integer");
    def.reference = r.get<std::size_t>();
  }
  if (!doc.contains("rc_bohr"))
    throw ValidationError("rc_bohr: missing");
  if (!doc["rc_bohr"].is_number())
    throw ValidationError("rc_bohr: expected a number");
  def.rc_bohr = doc["rc_bohr"].get<double>();
  validate(def);
  return def;
}

SystemDefinition load_system(const std::string &path_or_preset) {
  if (auto p = preset(path_or_preset))
    return *p;
  std::ifstream in(path_or_preset);
  if (!in)
    throw ValidationError("system: cannot open '" + path_or_preset +
                          "' (not a file and not a preset: he-clamped, he-moving)");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_system_json(buffer.str());
}

std::string format_number(double value) { return fmt::format("{:.10g}", value); }

// ---------------------------------------------------------------------------
// Reports

namespace {

struct Report {
  CsvTable table;

  void meta(std::string key, std::string value) {
    table.metadata.emplace_back(std::move(key), std::move(value));
  }
  void meta(std::string key, double value) { meta(std::move(key), format_number(value)); }
  void meta(std::string key, int value) { meta(std::move(key), std::to_string(value)); }
};

std::string render_json(const CsvTable &table) {
  const auto value = [](const std::string &s) -> ordered_json {
    char *end = nullptr;
    const long long i = std::strtoll(s.c_str(), &end, 10);
    if (!s.empty() && *end == '\0')
      return i;
    const double d = std::strtod(s.c_str(), &end);
    if (!s.empty() && *end == '\0')
      return d;
    return s;
  };
  ordered_json doc;
  ordered_json meta = ordered_json::object();
  for (const auto &[k, v] : table.metadata)
    meta[k] = value(v);
  doc["metadata"] = meta;
  doc["rows"] = ordered_json::array();
  for (const auto &row : table.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      obj[table.columns[c]] = value(row[c]);
    doc["rows"].push_back(obj);
  }
  return doc.dump(2) + "\n";
}

void describe_system(Report &r, const RunConfig &config, const DimensionlessSystem &sys,
                     int quad) {
  r.meta("command", to_string(config.command));
  r.meta("system", config.system_path);
  r.meta("quadrature_points", quad);
  r.meta("length_scale_a_bohr", sys.length_scale_a);
  r.meta("energy_prefactor_hartree", sys.energy_prefactor);
}

Report coeffs_report(const RunConfig &config) {
  const auto sys = nondimensionalize(load_system(config.system_path));
  const int quad = resolve_quadrature_points(config);
  CoulombIntegrals integrals(quad);
  const auto occ = ground_occupation(sys);
  const auto coeffs = epsilon1(sys, occ, integrals);

  Report r;
  describe_system(r, config, sys, quad);
  r.meta("lambda", sys.lambda);
  r.meta("rc_bohr", sys.lambda * sys.length_scale_a);
  r.meta("occupation", "ground (0,1) for every free particle");
  r.meta("spin", "not represented; spatial ground state is symmetric");
  r.meta("eps0", coeffs.eps0);
  r.meta("eps1", coeffs.eps1);
  r.table.columns = {"term", "kind", "i", "j", "prefactor", "integral", "value"};
  for (const auto &c : coeffs.breakdown)
    r.table.rows.push_back({c.label(), to_string(c.kind), std::to_string(c.i),
                            std::to_string(c.j), format_number(c.prefactor),
                            format_number(c.integral), format_number(c.value)});
  return r;
}

Report curve_report(const RunConfig &config) {
  const auto sys = nondimensionalize(load_system(config.system_path));
  const int quad = resolve_quadrature_points(config);
  const auto grid = lambda_grid(config);
  CoulombIntegrals integrals(quad);
  const auto occ = ground_occupation(sys);
  const auto coeffs = epsilon1(sys, occ, integrals);
  const auto curve = energy_curve(sys, coeffs, grid);

  Report r;
  describe_system(r, config, sys, quad);
  r.meta("eps0", coeffs.eps0);
  r.meta("eps1", coeffs.eps1);
  r.meta("truncation", "first order: E = eps0/lambda^2 + eps1/lambda");
  if (curve.turnover_lambda)
    r.meta("turnover_lambda", *curve.turnover_lambda);
  else
    r.meta("turnover_lambda", "none");
  r.table.columns = {"lambda", "rc_bohr", "energy_hartree"};
  for (const auto &p : curve.points)
    r.table.rows.push_back({format_number(p.lambda), format_number(p.rc_bohr),
                            format_number(p.energy * sys.energy_prefactor)});
  return r;
}

// Two free unit particles plus one clamped attractive charge.
double ci_nuclear_charge(const DimensionlessSystem &sys) {
  const auto fail = [](const std::string &why) {
    throw ValidationError("ci-scan: " + why +
                          "; the CI solver covers two electrons around a clamped nucleus");
  };
  if (sys.particles.size() != 3 || sys.free_count() != 2 || !sys.has_clamped())
    fail("system must have exactly two free particles and one clamped particle");
  for (const auto &p : sys.particles) {
    if (p.clamped)
      continue;
    if (p.mass != 1.0 || p.charge != 1.0)
      fail("free particles must be identical to the reference particle");
  }
  const double z = -sys.particles[sys.clamped_index()].charge;
  if (!(z > 0.0))
    fail("clamped particle must attract the free particles");
  return z;
}

Report ci_scan_report(const RunConfig &config) {
  const auto sys = nondimensionalize(load_system(config.system_path));
  const double z = ci_nuclear_charge(sys);
  const int quad = resolve_quadrature_points(config);
  const auto grid = lambda_grid(config);
  CoulombIntegrals integrals(quad);
  const CiBasis basis(config.ci_nmax);
  const auto scan = overlap_scan(z, grid, basis, integrals);
  const auto coeffs = epsilon1(sys, ground_occupation(sys), integrals);

  Report r;
  describe_system(r, config, sys, quad);
  r.meta("z", z);
  r.meta("ci_nmax", config.ci_nmax);
  r.meta("ci_configurations", static_cast<int>(basis.size()));
  r.meta("eps0", coeffs.eps0);
  r.meta("eps1", coeffs.eps1);
  r.meta("energy_units", "dimensionless eps");
  if (basis.nmax() >= 4) {
    const auto grid2 = default_second_order_grid();
    const auto est = second_order_estimate(z, basis, grid2, integrals);
    r.meta("s_limited_eps2", est.fit);
    r.meta("s_limited_eps2_sum_over_states", est.sum_over_states);
    r.meta("s_limited_eps2_note", "s-wave pair excitations only; partial sum of eps2");
  } else {
    r.meta("s_limited_eps2", "unavailable (ci_nmax < 4)");
  }
  r.table.columns = {"lambda", "rc_bohr", "energy_ci", "energy_first_order", "overlap0"};
  for (const auto &s : scan)
    r.table.rows.push_back({format_number(s.lambda),
                            format_number(s.lambda * sys.length_scale_a),
                            format_number(s.energy),
                            format_number(coeffs.eps0 + coeffs.eps1 * s.lambda),
                            format_number(s.overlap0)});
  return r;
}

Report nuclear_motion_report(const RunConfig &config) {
  auto def = load_system(config.system_path);
  std::size_t nucleus = def.particles.size();
  const double q_ref = def.particles[def.reference].charge;
  for (std::size_t i = 0; i < def.particles.size(); ++i) {
    if (std::abs(def.particles[i].charge / q_ref) > 1.0) {
      if (nucleus != def.particles.size())
        throw ValidationError("nuclear-motion: more than one nucleus-like particle (|q'| > 1)");
      nucleus = i;
    }
  }
  if (nucleus == def.particles.size())
    throw ValidationError("nuclear-motion: system has no nucleus-like particle (|q'| > 1)");
  if (nucleus == def.reference)
    throw ValidationError("nuclear-motion: the nucleus cannot be the reference particle");

  const int quad = resolve_quadrature_points(config);
  CoulombIntegrals integrals(quad);
  const auto coefficients = [&](bool clamped) {
    auto variant = def;
    variant.particles[nucleus].clamped = clamped;
    const auto sys = nondimensionalize(variant);
    return epsilon1(sys, ground_occupation(sys), integrals);
  };
  const auto report = boxatom::nuclear_motion_report(coefficients(true), coefficients(false));

  Report r;
  r.meta("command", to_string(config.command));
  r.meta("system", config.system_path);
  r.meta("quadrature_points", quad);
  r.meta("nucleus_index", static_cast<int>(nucleus));
  r.meta("nucleus_mass", def.particles[nucleus].mass);
  r.meta("kinetic_shift", report.kinetic_shift);
  r.meta("potential_shift", report.potential_shift);
  r.meta("dominant", to_string(report.dominant));
  r.table.columns = {"variant", "eps0", "eps1"};
  r.table.rows.push_back(
      {"clamped", format_number(report.clamped.eps0), format_number(report.clamped.eps1)});
  r.table.rows.push_back(
      {"moving", format_number(report.moving.eps0), format_number(report.moving.eps1)});
  return r;
}

} // namespace

std::string run(const RunConfig &config) {
  Report report;
  switch (config.command) {
  case Command::Coeffs:
    report = coeffs_report(config);
    break;
  case Command::Curve:
    report = curve_report(config);
    break;
  case Command::CiScan:
    report = ci_scan_report(config);
    break;
  case Command::NuclearMotion:
    report = nuclear_motion_report(config);
    break;
  }
  return config.output_format == OutputFormat::Json ? render_json(report.table)
                                                    : write_csv(report.table);
}

// ---------------------------------------------------------------------------
// CSV

std::string CsvTable::meta(std::string_view key) const {
  for (const auto &[k, v] : metadata)
    if (k == key)
      return v;
  throw ValidationError("csv: no metadata key '" + std::string(key) + "'");
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c] == name)
      return c;
  throw ValidationError("csv: no column '" + std::string(name) + "'");
}

double CsvTable::number(std::size_t row, std::string_view name) const {
  const auto &cell = rows.at(row).at(column(name));
  char *end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || *end != '\0')
    throw ValidationError("csv: cell '" + cell + "' in column '" + std::string(name) +
                          "' is not a number");
  return v;
}

namespace {

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return out;
}

} // namespace

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos)
      eol = text.size();
    const auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty())
      continue;
    if (line.starts_with("# ")) {
      const auto body = line.substr(2);
      const auto eq = body.find('=');
      if (eq == std::string_view::npos)
        throw ValidationError("csv: metadata line without '=': " + std::string(line));
      table.metadata.emplace_back(std::string(body.substr(0, eq)),
                                  std::string(body.substr(eq + 1)));
    } else if (table.columns.empty()) {
      table.columns = split(line);
    } else {
      auto row = split(line);
      if (row.size() != table.columns.size())
        throw ValidationError("csv: row has " + std::to_string(row.size()) +
                              " cells, header has " + std::to_string(table.columns.size()));
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

std::string write_csv(const CsvTable &table) {
  std::string out;
  for (const auto &[k, v] : table.metadata)
    out += "# " + k + "=" + v + "\n";
  const auto join = [&](const std::vector<std::string> &cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c)
        out += ',';
      out += cells[c];
    }
    out += '\n';
  };
  join(table.columns);
  for (const auto &row : table.rows)
    join(row);
  return out;
}

} // namespace boxatom::cli
