// casimir: Casimir-Polder potentials and dilute-slab Casimir forces near planar reflectors.
//
//   casimir greens       --scenario s.json [--out f.csv] [--units si|reduced] [--tol 1e-9]
//   casimir cp-potential --scenario s.json ...
//   casimir plate-force  --scenario s.json ...
//   casimir fig3         [--out f.csv]
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical or assertion failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "casimir/cli.hpp"
#include "casimir/quadrature.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace casimir;

  CLI::App app{"Casimir-Polder potentials and Casimir forces on dilute slabs near planar reflectors"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::string units;
  std::optional<double> tol;

  auto add_common = [&](CLI::App* cmd, bool needs_scenario) {
    auto* opt = cmd->add_option("--scenario", scenario_path, "scenario file (JSON)");
    if (needs_scenario) opt->required();
    cmd->add_option("--out", out_path, "output CSV path (default: stdout)");
    cmd->add_option("--tol", tol, "relative tolerance of the potential integrals");
    cmd->add_option("--units", units, "si | reduced")->check(CLI::IsMember({"si", "reduced"}));
  };
  auto* greens = app.add_subcommand("greens", "scattering Green-tensor traces over a distance sweep");
  auto* potential = app.add_subcommand("cp-potential", "Casimir-Polder potential over a distance sweep");
  auto* force = app.add_subcommand("plate-force", "Casimir force on a dilute slab over a gap sweep");
  auto* fig3 = app.add_subcommand("fig3", "resonant force on an excited-atom plate near a perfect mirror");
  add_common(greens, true);
  add_common(potential, true);
  add_common(force, true);
  add_common(fig3, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open " << out_path << " for writing\n";
      return kConfigError;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;

  try {
    if (fig3->parsed()) {
      PotentialOptions tolerances;
      if (tol) tolerances.rel_tol = *tol;
      const auto report = cli::cmd_fig3(out, std::cerr, tolerances);
      if (!report.passed()) {
        std::cerr << "error: fig3 qualitative checks failed\n";
        return kNumericalError;
      }
      return 0;
    }

    cli::Scenario scenario = cli::load_scenario(scenario_path);
    if (!units.empty()) scenario.units = cli::parse_units(units);
    if (tol) {
      if (!(*tol > 0.0)) throw cli::ConfigError("--tol must be positive");
      scenario.tolerances.rel_tol = *tol;
    }
    if (greens->parsed()) cli::cmd_greens(scenario, out);
    if (potential->parsed()) cli::cmd_cp_potential(scenario, out);
    if (force->parsed()) cli::cmd_plate_force(scenario, out);
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const QuadratureError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  return 0;
}
