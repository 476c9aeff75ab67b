#include "casimir/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "casimir/constants.hpp"
#include "casimir/greens.hpp"

namespace casimir::cli {

// ---------------------------------------------------------------------------
// Reduced units

double ReducedUnits::length() const { return kSpeedOfLight / (2.0 * omega); }

double ReducedUnits::energy() const {
  return kMu0 * omega * omega * omega * dipole_sq / (12.0 * kPi * kSpeedOfLight);
}

double ReducedUnits::trace_e() const { return omega / kSpeedOfLight; }

double ReducedUnits::trace_m() const {
  const double k = omega / kSpeedOfLight;
  return k * k * k;
}

ReducedUnits reduced_units_for(const AtomModel& atom) {
  const auto& ts = atom.transitions();
  const auto electric = std::max_element(ts.begin(), ts.end(),
                                         [](const Transition& a, const Transition& b) { return a.dipole_sq < b.dipole_sq; });
  if (electric->dipole_sq > 0.0) return {std::abs(electric->omega_nk), electric->dipole_sq};
  const auto magnetic = std::max_element(
      ts.begin(), ts.end(), [](const Transition& a, const Transition& b) { return a.magnetic_sq < b.magnetic_sq; });
  return {std::abs(magnetic->omega_nk), magnetic->magnetic_sq / (kSpeedOfLight * kSpeedOfLight)};
}

// ---------------------------------------------------------------------------
// Scenario parsing

std::vector<double> Sweep::grid() const {
  std::vector<double> z(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    z[i] = log_spacing ? z_min * std::pow(z_max / z_min, t) : z_min + (z_max - z_min) * t;
  }
  z.back() = z_max;
  return z;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return fmt::format("{:016x}", h);
}

UnitSystem parse_units(const std::string& s) {
  if (s == "si") return UnitSystem::si;
  if (s == "reduced") return UnitSystem::reduced;
  throw ConfigError("units must be 'si' or 'reduced', got '" + s + "'");
}

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view where) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(fmt::format("{}: unknown key '{}'", where, key));
    }
  }
}

std::vector<LorentzOscillator> parse_oscillators(const json& arr, std::string_view where) {
  if (!arr.is_array()) throw ConfigError(fmt::format("{}: expected an array of oscillators", where));
  std::vector<LorentzOscillator> out;
  for (const auto& o : arr) {
    reject_unknown_keys(o, {"strength_rad_s", "resonance_rad_s", "damping_rad_s", "kind"}, where);
    LorentzOscillator osc{o.at("strength_rad_s").get<double>(), o.value("resonance_rad_s", 0.0),
                          o.value("damping_rad_s", 0.0)};
    const std::string kind = o.value("kind", std::string("absorbing"));
    if (kind == "absorbing") {
      osc.kind = OscillatorKind::absorbing;
    } else if (kind == "amplifying") {
      osc.kind = OscillatorKind::amplifying;
    } else {
      throw ConfigError(fmt::format("{}: kind must be 'absorbing' or 'amplifying'", where));
    }
    out.push_back(osc);
  }
  return out;
}

MaterialResponse parse_reflector(const json& j) {
  reject_unknown_keys(j, {"model", "epsilon", "mu"}, "reflector");
  const std::string model = j.at("model").get<std::string>();
  const bool has_terms = j.contains("epsilon") || j.contains("mu");
  if (model == "perfect-electric-mirror" || model == "perfect-magnetic-mirror" || model == "vacuum") {
    if (has_terms) throw ConfigError("reflector: oscillators are only accepted for model 'drude-lorentz'");
    if (model == "vacuum") return MaterialResponse::vacuum();
    return model == "perfect-electric-mirror" ? MaterialResponse::perfect_electric_mirror()
                                               : MaterialResponse::perfect_magnetic_mirror();
  }
  if (model != "drude-lorentz") throw ConfigError("reflector: unknown model '" + model + "'");
  std::vector<LorentzOscillator> eps, mu;
  if (j.contains("epsilon")) eps = parse_oscillators(j.at("epsilon"), "reflector.epsilon");
  if (j.contains("mu")) mu = parse_oscillators(j.at("mu"), "reflector.mu");
  return MaterialResponse::drude_lorentz(std::move(eps), std::move(mu));
}

double length_unit(const json& sweep, const AtomModel& atom) {
  const std::string unit = sweep.value("z_unit", std::string("m"));
  if (unit == "m") return 1.0;
  if (unit == "reduced") return reduced_units_for(atom).length();
  throw ConfigError("sweep.z_unit must be 'm' or 'reduced'");
}

Scenario parse_checked(const json& j, const std::filesystem::path& base_dir, std::string hash) {
  if (!j.is_object()) throw ConfigError("scenario: expected a JSON object");
  reject_unknown_keys(j, {"schema_version", "atom", "atom_file", "reflector", "sweep", "slab", "units", "tolerances"},
                      "scenario");
  if (!j.contains("schema_version")) throw ConfigError("scenario: missing schema_version");
  const int version = j.at("schema_version").get<int>();
  if (version != kSchemaVersion) throw ConfigError(fmt::format("scenario: unsupported schema_version {}", version));

  if (j.contains("atom") == j.contains("atom_file")) {
    throw ConfigError("scenario: give exactly one of 'atom' and 'atom_file'");
  }
  AtomModel atom = j.contains("atom") ? atom_model_from_json(j.at("atom"))
                                      : load_atom_model(base_dir / j.at("atom_file").get<std::string>());
  if (!j.contains("reflector")) throw ConfigError("scenario: missing reflector");
  MaterialResponse reflector = parse_reflector(j.at("reflector"));

  Scenario s{std::move(atom), std::move(reflector), std::nullopt, std::nullopt, UnitSystem::si, {}, std::move(hash)};

  double unit = 1.0;
  if (j.contains("sweep")) {
    const json& w = j.at("sweep");
    reject_unknown_keys(w, {"z_min", "z_max", "points", "spacing", "z_unit"}, "sweep");
    unit = length_unit(w, s.atom);
    const std::string spacing = w.value("spacing", std::string("linear"));
    if (spacing != "linear" && spacing != "log") throw ConfigError("sweep.spacing must be 'linear' or 'log'");
    Sweep sweep{unit * w.at("z_min").get<double>(), unit * w.at("z_max").get<double>(), w.at("points").get<int>(),
                spacing == "log"};
    if (!(sweep.z_min > 0.0) || !(sweep.z_min < sweep.z_max) || sweep.points < 2) {
      throw ConfigError("sweep: require 0 < z_min < z_max and points >= 2");
    }
    s.sweep = sweep;
  }
  if (j.contains("slab")) {
    const json& sl = j.at("slab");
    reject_unknown_keys(sl, {"thickness", "density_m3"}, "slab");
    Slab slab{unit * sl.at("thickness").get<double>(), sl.at("density_m3").get<double>()};
    if (!(slab.thickness > 0.0) || !(slab.density > 0.0)) throw ConfigError("slab: thickness and density must be positive");
    s.slab = slab;
  }
  if (j.contains("units")) s.units = parse_units(j.at("units").get<std::string>());
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    reject_unknown_keys(t, {"potential_rel_tol", "sommerfeld_rel_tol", "max_evaluations"}, "tolerances");
    s.tolerances.rel_tol = t.value("potential_rel_tol", s.tolerances.rel_tol);
    s.tolerances.sommerfeld_rel_tol = t.value("sommerfeld_rel_tol", s.tolerances.sommerfeld_rel_tol);
    s.tolerances.max_evaluations = t.value("max_evaluations", s.tolerances.max_evaluations);
    if (!(s.tolerances.rel_tol > 0.0) || !(s.tolerances.sommerfeld_rel_tol > 0.0) || s.tolerances.max_evaluations < 42) {
      throw ConfigError("tolerances: tolerances must be positive and max_evaluations >= 42");
    }
  }
  return s;
}

}  // namespace

Scenario parse_scenario(const json& j, const std::filesystem::path& base_dir, std::string hash) {
  try {
    return parse_checked(j, base_dir, std::move(hash));
  } catch (const ConfigError&) {
    throw;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
}

Scenario parse_scenario_text(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  return parse_scenario(j, base_dir, fnv1a_hex(text));
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path.parent_path());
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

// RFC 4180 field quoting.
std::string field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << field(cells[i]);
  }
  os << "\r\n";
}

void write_provenance(std::ostream& os, std::string_view command, const Scenario& s, std::string_view units_note) {
  os << "# casimir " << command << "\n";
  os << "# schema_version: " << kSchemaVersion << "\n";
  os << "# scenario_hash: fnv1a64:" << s.hash << "\n";
  os << "# reflector: " << s.reflector.describe() << "\n";
  os << "# atom: " << atom_model_to_json(s.atom).dump() << "\n";
  os << "# units: " << (s.units == UnitSystem::si ? "si" : "reduced") << " (" << units_note << ")\n";
  os << fmt::format("# tolerances: potential_rel_tol={:g} sommerfeld_rel_tol={:g} max_evaluations={}\n",
                    s.tolerances.rel_tol, s.tolerances.sommerfeld_rel_tol, s.tolerances.max_evaluations);
}

const Sweep& require_sweep(const Scenario& s) {
  if (!s.sweep) throw ConfigError("scenario: this command needs a 'sweep' section");
  return *s.sweep;
}

}  // namespace

void cmd_greens(const Scenario& s, std::ostream& csv) {
  const Sweep& sweep = require_sweep(s);
  const ReducedUnits ru = reduced_units_for(s.atom);
  const bool reduced = s.units == UnitSystem::reduced;
  write_provenance(csv, "greens", s,
                   reduced ? "z = z_tilde = 2 w z / c; trace_e / (w/c); trace_m / (w/c)^3"
                           : "z in m; trace_e in 1/m; trace_m in 1/m^3");
  csv << fmt::format("# frequency: real w = {} rad/s; imaginary axis xi = {} rad/s\n", num(ru.omega), num(ru.omega));
  write_row(csv, {"z", "z_tilde", "re_trace_e", "im_trace_e", "re_trace_m", "im_trace_m", "trace_e_imag_axis",
                  "trace_m_imag_axis", "error_e", "error_m"});
  const QuadratureOptions inner{s.tolerances.sommerfeld_rel_tol, 0.0, s.tolerances.max_evaluations};
  const double se = reduced ? ru.trace_e() : 1.0;
  const double sm = reduced ? ru.trace_m() : 1.0;
  for (const double z : sweep.grid()) {
    const PlanarGeometry geo(s.reflector, z);
    const GreenTrace real = green_traces(geo, cdouble(ru.omega, 0.0), inner);
    const GreenTrace imag = green_traces(geo, cdouble(0.0, ru.omega), inner);
    const double zt = z / ru.length();
    write_row(csv, {num(reduced ? zt : z), num(zt), num(real.trace_e.real() / se), num(real.trace_e.imag() / se),
                    num(real.trace_m.real() / sm), num(real.trace_m.imag() / sm), num(imag.trace_e.real() / se),
                    num(imag.trace_m.real() / sm), num(std::max(real.error_e, imag.error_e) / se),
                    num(std::max(real.error_m, imag.error_m) / sm)});
  }
}

void cmd_cp_potential(const Scenario& s, std::ostream& csv) {
  const Sweep& sweep = require_sweep(s);
  const ReducedUnits ru = reduced_units_for(s.atom);
  const bool reduced = s.units == UnitSystem::reduced;
  write_provenance(csv, "cp-potential", s,
                   reduced ? "z = 2 w z / c; U / (mu0 w^3 |d|^2 / (12 pi c))" : "z in m; U in J");
  write_row(csv, {"z", "u_nonresonant", "u_resonant", "u_total", "error"});
  const double le = reduced ? ru.length() : 1.0;
  const double ee = reduced ? ru.energy() : 1.0;
  for (const double z : sweep.grid()) {
    const PotentialResult u = total_potential(s.atom, PlanarGeometry(s.reflector, z), s.tolerances);
    write_row(csv, {num(z / le), num(u.u_nonresonant / ee), num(u.u_resonant / ee), num(u.u_total / ee),
                    num(u.quadrature_error / ee)});
  }
}

void cmd_plate_force(const Scenario& s, std::ostream& csv) {
  const Sweep& sweep = require_sweep(s);
  if (!s.slab) throw ConfigError("scenario: plate-force needs a 'slab' section");
  const ReducedUnits ru = reduced_units_for(s.atom);
  const bool reduced = s.units == UnitSystem::reduced;
  const SlabScenario slab(sweep.z_min, s.slab->thickness, s.slab->density, s.atom, s.reflector);

  write_provenance(csv, "plate-force", s,
                   reduced ? "z = 2 w z / c; force / (eta mu0 w^3 |d|^2 / (12 pi c)); per_thickness = force / d_tilde"
                           : "z in m; forces in N/m^2; per_thickness in N/m^3");
  csv << fmt::format("# slab: thickness = {} m, density = {} m^-3\n", num(slab.d), num(slab.eta));
  csv << fmt::format("# plate_force_constant: C = 1/(2 pi) = {}\n", num(kPlateForceConstant));
  csv << "# sign_convention: " << to_string(SignConvention::minus_gradient)
      << "; positive force points away from the reflector\n";
  if (slab.dilute_guard_exceeded()) csv << "# warning: slab exceeds the dilute guard |eps - 1| < 0.1\n";
  write_row(csv, {"z", "f_resonant", "f_nonresonant", "f_total", "per_thickness", "error"});

  ForceOptions opts;
  opts.potential = s.tolerances;
  const auto grid = sweep.grid();
  const auto forces = force_decomposition(slab, grid, opts);
  const double le = reduced ? ru.length() : 1.0;
  const double fe = reduced ? ru.force_per_area(slab.eta) : 1.0;
  const double pe = reduced ? ru.per_thickness(slab.eta) : 1.0;
  for (const auto& f : forces) {
    write_row(csv, {num(f.z / le), num(f.f_resonant / fe), num(f.f_nonresonant / fe), num(f.f_total / fe),
                    num(f.per_thickness / pe), num(f.quadrature_error / fe)});
  }
}

// ---------------------------------------------------------------------------
// fig3

bool Fig3Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Fig3Check& c) { return c.passed; });
}

namespace {

constexpr double kFig3Omega = 2.0e15;      // rad/s
constexpr double kFig3DipoleSq = 1.0e-58;  // C^2 m^2
constexpr double kFig3Density = 1.0e22;    // m^-3
constexpr double kFig3ThicknessesOverLength[] = {0.1, 1.0, 5.0};  // d in units of c / w10

// Zero of f on [a, b] with f(a) f(b) < 0.
double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 80; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Fig3Report cmd_fig3(std::ostream& csv, std::ostream& summary, const PotentialOptions& tolerances) {
  const AtomModel atom = AtomModel::two_level_excited(kFig3Omega, kFig3DipoleSq);
  const MaterialResponse mirror = MaterialResponse::perfect_electric_mirror();
  const ReducedUnits ru{kFig3Omega, kFig3DipoleSq};
  const double ell = ru.length();  // c / (2 w10)

  const json canonical = {{"schema_version", kSchemaVersion},
                          {"atom", atom_model_to_json(atom)},
                          {"reflector", {{"model", "perfect-electric-mirror"}}},
                          {"sweep", {{"z_min", 0.05}, {"z_max", 30.0}, {"points", 1199}, {"z_unit", "reduced"}}},
                          {"slab", {{"density_m3", kFig3Density}, {"thickness_c_over_w10", {0.1, 1.0, 5.0}}}},
                          {"units", "reduced"}};
  Scenario prov{atom, mirror, std::nullopt, std::nullopt, UnitSystem::reduced, tolerances, fnv1a_hex(canonical.dump())};

  const Sweep sweep{0.05 * ell, 30.0 * ell, 1199, false};
  const auto grid = sweep.grid();

  ForceOptions opts;
  opts.potential = tolerances;
  opts.include_nonresonant = false;

  struct Curve {
    double d_over_length;  // d w10 / c
    double d;              // m
    std::vector<double> per_thickness;  // reduced
  };
  std::vector<Curve> curves;
  for (const double dl : kFig3ThicknessesOverLength) {
    const double d = dl * kSpeedOfLight / kFig3Omega;
    const SlabScenario slab(grid.front(), d, kFig3Density, atom, mirror);
    Curve c{dl, d, {}};
    for (const auto& f : force_decomposition(slab, grid, opts)) {
      c.per_thickness.push_back(f.f_resonant / slab.d / ru.per_thickness(kFig3Density));
    }
    curves.push_back(std::move(c));
  }
  std::vector<double> atom_force;
  for (const double z : grid) {
    atom_force.push_back(resonant_atom_force(atom, PlanarGeometry(mirror, z), opts).value / ru.atom_force());
  }

  write_provenance(csv, "fig3", prov,
                   "z_tilde = 2 w10 z / c; per_thickness = force / (eta mu0 w10^3 |d|^2 / (12 pi c)) / d_tilde; "
                   "atom_force = -dU_r/dz / (mu0 w10^3 |d|^2 / (12 pi c) / (c / 2 w10))");
  csv << fmt::format("# plate_force_constant: C = 1/(2 pi) = {}\n", num(kPlateForceConstant));
  csv << "# sign_convention: " << to_string(opts.sign) << "; positive force points away from the mirror\n";
  csv << "# component: resonant part only\n";
  write_row(csv, {"z_tilde", "per_thickness_d0.1", "per_thickness_d1", "per_thickness_d5", "atom_force"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    write_row(csv, {num(grid[i] / ell), num(curves[0].per_thickness[i]), num(curves[1].per_thickness[i]),
                    num(curves[2].per_thickness[i]), num(atom_force[i])});
  }

  Fig3Report report;

  // (a) attraction at short range
  {
    bool ok = true;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size() && grid[i] / ell < 0.5; ++i) {
      for (const auto& c : curves) {
        worst = std::max(worst, c.per_thickness[i]);
        ok = ok && c.per_thickness[i] < 0.0;
      }
      ok = ok && atom_force[i] < 0.0;
    }
    report.checks.push_back({"short-range attraction", ok,
                             fmt::format("largest per-thickness force for z_tilde < 0.5: {:.6g}", worst)});
  }

  // (b) retarded oscillation: sign changes on [5, 30] and asymptotic zero spacing
  {
    bool ok = true;
    std::string detail;
    for (const auto& c : curves) {
      const SlabScenario slab(grid.front(), c.d, kFig3Density, atom, mirror);
      auto force_at = [&](double zt) {
        const double z = zt * ell;
        return force_decomposition(slab, std::span<const double>(&z, 1), opts).front().f_resonant;
      };
      std::vector<double> zeros;
      for (std::size_t i = 1; i < grid.size(); ++i) {
        const double a = grid[i - 1] / ell, b = grid[i] / ell;
        if (a < 5.0 || b > 30.0 + 1e-9) continue;
        if ((c.per_thickness[i - 1] < 0.0) != (c.per_thickness[i] < 0.0)) zeros.push_back(bisect(force_at, a, b));
      }
      double spacing = 0.0;
      if (zeros.size() >= 2) spacing = zeros.back() - zeros[zeros.size() - 2];
      const bool count_ok = zeros.size() >= 6;
      const bool spacing_ok = std::abs(spacing - kPi) <= 0.05 * kPi;
      ok = ok && count_ok && spacing_ok;
      detail += fmt::format("{}d={}c/w10: {} sign changes, last zero spacing {:.6f}", detail.empty() ? "" : "; ",
                            c.d_over_length, zeros.size(), spacing);
    }
    report.checks.push_back({"retarded oscillation", ok, detail});
  }

  // (c) amplitude of the last oscillation decreases with thickness
  {
    std::vector<double> amp;
    for (const auto& c : curves) {
      double a = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] / ell >= 30.0 - 2.0 * kPi) a = std::max(a, std::abs(c.per_thickness[i]));
      }
      amp.push_back(a);
    }
    const bool ok = amp[0] > amp[1] && amp[1] > amp[2];
    report.checks.push_back({"amplitude decreases with thickness", ok,
                             fmt::format("last-period amplitudes {:.6g} > {:.6g} > {:.6g}", amp[0], amp[1], amp[2])});
  }

  for (const auto& c : report.checks) {
    summary << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  return report;
}

}  // namespace casimir::cli
