#pragma once

// Scenario files, reduced units and the command implementations behind the
// `casimir` executable. Commands write CSV to a stream and throw on failure;
// the executable maps ConfigError to exit code 2 and numerical failures to 3.
//
// Scenario schema (JSON, schema_version 1):
//
//   {
//     "schema_version": 1,
//     "atom": { ...atom object... }            or  "atom_file": "atom.json",
//     "reflector": {
//       "model": "perfect-electric-mirror" | "perfect-magnetic-mirror" | "drude-lorentz" | "vacuum",
//       "epsilon": [ {"strength_rad_s": .., "resonance_rad_s": .., "damping_rad_s": .., "kind": "absorbing"} ],
//       "mu":      [ ... ]
//     },
//     "sweep": { "z_min": .., "z_max": .., "points": 50, "spacing": "linear" | "log", "z_unit": "m" | "reduced" },
//     "slab":  { "thickness": .., "density_m3": .. },        // thickness in sweep.z_unit
//     "units": "si" | "reduced",
//     "tolerances": { "potential_rel_tol": 1e-9, "sommerfeld_rel_tol": 1e-7, "max_evaluations": 100000 }
//   }

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "casimir/forces.hpp"
#include "casimir/materials.hpp"
#include "casimir/potentials.hpp"

namespace casimir::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a fig3 qualitative check fails.
class AssertionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

enum class UnitSystem { si, reduced };

/// Reduced units tied to a reference transition (frequency w, |d|^2):
///   length          c / (2 w)                 (z_tilde = 2 w z / c)
///   energy          N0 = mu0 w^3 |d|^2 / (12 pi c)
///   force per area  eta N0
///   per thickness   eta N0 / length
///   atom force      N0 / length
/// trace_e is scaled by w / c and trace_m by (w / c)^3.
struct ReducedUnits {
  double omega;
  double dipole_sq;

  double length() const;
  double energy() const;
  double force_per_area(double eta) const { return eta * energy(); }
  double per_thickness(double eta) const { return eta * energy() / length(); }
  double atom_force() const { return energy() / length(); }
  double trace_e() const;
  double trace_m() const;
};

/// Reference transition: the one with the largest |d|^2 (magnetic |m|^2/c^2
/// when no transition is electric).
ReducedUnits reduced_units_for(const AtomModel& atom);

struct Sweep {
  double z_min;  // m
  double z_max;  // m
  int points;
  bool log_spacing;

  std::vector<double> grid() const;
};

struct Slab {
  double thickness;  // m
  double density;    // m^-3
};

struct Scenario {
  AtomModel atom;
  MaterialResponse reflector;
  std::optional<Sweep> sweep;
  std::optional<Slab> slab;
  UnitSystem units = UnitSystem::si;
  PotentialOptions tolerances;
  std::string hash;  // FNV-1a 64 of the scenario text
};

std::string fnv1a_hex(std::string_view bytes);

/// `base_dir` resolves a relative "atom_file".
Scenario parse_scenario(const nlohmann::json& j, const std::filesystem::path& base_dir, std::string hash);
Scenario parse_scenario_text(const std::string& text, const std::filesystem::path& base_dir = ".");
Scenario load_scenario(const std::filesystem::path& path);

UnitSystem parse_units(const std::string& s);

void cmd_greens(const Scenario& s, std::ostream& csv);
void cmd_cp_potential(const Scenario& s, std::ostream& csv);
void cmd_plate_force(const Scenario& s, std::ostream& csv);

struct Fig3Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct Fig3Report {
  std::vector<Fig3Check> checks;
  bool passed() const;
};

/// Built-in two-level scenario: per-thickness resonant force against z_tilde
/// for d = {0.1, 1, 5} c/w10 plus the single-atom resonant force, in reduced
/// units. Writes CSV to `csv`, summary lines to `summary`, and returns the
/// qualitative checks (short-range attraction, oscillation, amplitude order).
Fig3Report cmd_fig3(std::ostream& csv, std::ostream& summary, const PotentialOptions& tolerances = {});

}  // namespace casimir::cli
