#include "boxatom/cli.hpp"
#include "boxatom/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char **argv) {
  using namespace boxatom;
  CLI::App app{"Strong-confinement perturbation coefficients for charged particles in a "
               "spherical box"};
  app.require_subcommand(1);

  cli::RunConfig config;
  std::string format = "csv";
  std::string output;
  int quad = 0;

  const auto add_common = [&](CLI::App *sub, bool grid) {
    sub->add_option("system", config.system_path,
                    "System JSON file or preset (he-clamped, he-moving)")
        ->required();
    sub->add_option("--quad-points", quad,
                    "Gauss-Legendre points per dimension [16, 512] (env BOXATOM_QUAD_POINTS)");
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("-o,--output", output, "Output file (default: stdout)");
    if (grid) {
      sub->add_option("--lambda-min", config.lambda_min, "Smallest lambda = R_c / a");
      sub->add_option("--lambda-max", config.lambda_max, "Largest lambda");
      sub->add_option("--steps", config.lambda_steps, "Number of evenly spaced grid points");
      sub->add_option("--lambdas", config.lambdas, "Explicit lambda list (overrides the grid)")
          ->delimiter(',');
    }
  };

  auto *coeffs = app.add_subcommand("coeffs", "First-order coefficients eps0, eps1 with breakdown");
  add_common(coeffs, false);
  auto *curve = app.add_subcommand("curve", "Energy E(lambda) through first order");
  add_common(curve, true);
  auto *scan = app.add_subcommand("ci-scan", "Two-electron CI energies and overlap with phi0");
  add_common(scan, true);
  scan->add_option("--ci-nmax", config.ci_nmax, "Highest radial mode in the CI basis");
  auto *motion = app.add_subcommand("nuclear-motion", "Clamped vs moving nucleus comparison");
  add_common(motion, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitValidation;
  }

  try {
    config.command = cli::parse_command(app.get_subcommands().front()->get_name());
    config.output_format = format == "json" ? cli::OutputFormat::Json : cli::OutputFormat::Csv;
    if (quad != 0)
      config.quadrature_points = quad;
    if (!output.empty())
      config.output_path = output;

    const auto text = cli::run(config);
    if (config.output_path) {
      std::ofstream out(*config.output_path, std::ios::binary);
      if (!out)
        throw ValidationError("output: cannot write '" + *config.output_path + "'");
      out << text;
    } else {
      std::cout << text;
    }
  } catch (const ValidationError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitValidation;
  } catch (const NumericalError &e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return cli::kExitNumerical;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
