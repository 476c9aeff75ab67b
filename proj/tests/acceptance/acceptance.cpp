// Acceptance suite: one PASS/FAIL line per criterion, with its runtime.
// Exit status is nonzero when any criterion fails.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/cli.hpp"
#include "casimir/constants.hpp"
#include "casimir/finite_difference.hpp"
#include "casimir/forces.hpp"
#include "casimir/greens.hpp"
#include "casimir/potentials.hpp"

using namespace casimir;

namespace {

constexpr double kOmega10 = 2.0e15;
constexpr double kDipoleSq = 1.0e-58;
constexpr double kK = kOmega10 / kSpeedOfLight;
constexpr double kEta = 1e22;

double z_of(double z_tilde) { return z_tilde / (2.0 * kK); }
double rel(cdouble a, cdouble b) { return std::abs(a - b) / std::abs(b); }

struct Outcome {
  bool passed;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

MaterialResponse lossy() { return MaterialResponse::drude_lorentz({{1.5 * kOmega10, 0.8 * kOmega10, 0.3 * kOmega10}}); }

// eps(i xi) = 1e8 to ~1e-18 over the relevant band.
MaterialResponse eps_1e8() {
  const double w0 = 1e9 * kOmega10;
  return MaterialResponse::drude_lorentz({{std::sqrt(1e8 - 1.0) * w0, w0, 0.0}});
}

Outcome green_closed_form() {
  const Eigen::Vector3cd g = mirror_green_components(z_of(1.0), kOmega10);
  const double expected = std::sin(1.0) * kOmega10 / (4.0 * kPi * kSpeedOfLight);
  const double e1 = std::abs(g[0].real() - expected) / expected;
  const Eigen::Vector3cd s = mirror_green_components(z_of(1e-3), kOmega10);
  const cdouble ratio = s[2] / s[0];
  const double e2 = std::abs(ratio - 2.0);
  // Exact: G_zz / G_xx - 2 = 2 x^2 / (1 - i x - x^2) at x = z_tilde.
  const std::complex<long double> x(1e-3L, 0.0L), one(1.0L, 0.0L), i(0.0L, 1.0L);
  const long double exact = std::abs(2.0L * x * x / (one - i * x - x * x));
  return {e1 <= 1e-12 && e2 <= 1e-6,
          fmt::format("Re G_xx(z~=1) rel err {:.2e} (tol 1e-12); |G_zz/G_xx - 2| at z~=1e-3 = {:.6e} "
                      "(exact {:.6e}; tol 1e-6)",
                      e1, e2, static_cast<double>(exact))};
}

Outcome mirror_limit() {
  const QuadratureOptions opts{1e-11, 0.0, 200000};
  bool ok = true;
  std::string detail;
  for (const double zt : {0.1, 1.0, 10.0}) {
    const cdouble w(0.0, kOmega10);
    const GreenTrace h = halfspace_green_traces(PlanarGeometry(eps_1e8(), z_of(zt)), w, opts);
    const GreenTrace p = mirror_traces(ReflectorModel::perfect_electric_mirror, z_of(zt), w);
    const double de = rel(h.trace_e, p.trace_e);
    const double dm = rel(h.trace_m, p.trace_m);
    ok = ok && de <= 1e-4 && dm <= 1e-4;
    detail += fmt::format("{}z~={}: trace_e {:.3e}, trace_m {:.3e}", detail.empty() ? "" : "; ", zt, de, dm);
  }
  return {ok, detail + " (tol 1e-4)"};
}

Outcome oracle_equivalence() {
  ForceOptions opts;
  opts.potential.rel_tol = 1e-10;
  const auto atom = AtomModel::two_level_excited(kOmega10, kDipoleSq);
  double worst = 0.0;
  bool constant_stable = true;
  for (const double dk : {0.1, 1.0, 5.0}) {
    for (int i = 0; i < 50; ++i) {
      const double zt = 0.3 * std::pow(100.0, i / 49.0);
      const SlabScenario s(z_of(zt), dk / kK, kEta, atom, MaterialResponse::perfect_electric_mirror());
      const ClosedFormForce c = plate_force_closed_form(s);
      const ForceResult q = plate_force_quadrature(s, opts);
      constant_stable = constant_stable && c.constant == kPlateForceConstant;
      worst = std::max(worst, std::abs(c.value - q.f_resonant) / std::abs(q.f_resonant));
    }
  }
  return {worst <= 1e-8 && constant_stable,
          fmt::format("150 points, worst rel deviation {:.2e} (tol 1e-8); C = 1/(2 pi) = {:.17g}{}", worst,
                      kPlateForceConstant, constant_stable ? "" : " NOT STABLE")};
}

Outcome ground_excited_opposition() {
  const auto g = AtomModel::two_level_ground(kOmega10, kDipoleSq);
  const auto e = AtomModel::two_level_excited(kOmega10, kDipoleSq);
  double worst = 0.0;
  for (const auto& reflector : {MaterialResponse::perfect_electric_mirror(), lossy()}) {
    for (const double zt : {0.1, 1.0, 10.0}) {
      const PlanarGeometry geo(reflector, z_of(zt));
      const double ug = nonresonant_potential(g, geo).value;
      const double ue = nonresonant_potential(e, geo).value;
      worst = std::max(worst, std::abs(ue + ug) / std::abs(ug));
    }
  }
  return {worst <= 1e-10, fmt::format("worst |U_e + U_g| / |U_g| = {:.2e} (tol 1e-10)", worst)};
}

Outcome duality() {
  const double c2 = kSpeedOfLight * kSpeedOfLight;
  const AtomModel atom("mixed", {{kOmega10, kDipoleSq, 0.4 * c2 * kDipoleSq}, {-3.0 * kOmega10, 0.6 * kDipoleSq, c2 * kDipoleSq}});
  const auto eps_medium = lossy();
  const auto mu_medium = MaterialResponse::drude_lorentz({}, {{0.9 * kOmega10, 1.2 * kOmega10, 0.2 * kOmega10}});
  struct Pair {
    const char* name;
    MaterialResponse reflector;
  };
  const Pair pairs[] = {{"PEC<->PMC", MaterialResponse::perfect_electric_mirror()},
                        {"eps<->mu", eps_medium},
                        {"mu<->eps", mu_medium}};
  bool ok = true;
  double worst = 0.0;
  for (const auto& p : pairs) {
    for (const double zt : {0.3, 1.0, 4.0}) {
      const PlanarGeometry geo(p.reflector, z_of(zt));
      const auto [datom, dgeo] = duality_transform(atom, geo);
      const auto checks = {std::pair{resonant_potential(atom, geo), resonant_potential(datom, dgeo)},
                           std::pair{nonresonant_potential(atom, geo), nonresonant_potential(datom, dgeo)}};
      for (const auto& [u, v] : checks) {
        const double bound = 10.0 * (u.abs_error + v.abs_error);
        ok = ok && std::abs(u.value - v.value) <= bound;
        if (bound > 0.0) worst = std::max(worst, std::abs(u.value - v.value) / bound);
      }
    }
  }
  return {ok, fmt::format("3 reflector pairs x 3 distances x 2 parts; worst |dU| / (10 x error) = {:.3f}", worst)};
}

Outcome fig3() {
  std::ostringstream csv, summary;
  const auto report = cli::cmd_fig3(csv, summary);
  std::string detail;
  for (const auto& c : report.checks) {
    detail += fmt::format("{}{} {}", detail.empty() ? "" : "; ", c.passed ? "ok" : "FAILED", c.detail);
  }
  return {report.passed(), detail};
}

Outcome gradient_consistency() {
  const QuadratureOptions tight{1e-11, 0.0, 200000};
  PotentialOptions popts;
  popts.rel_tol = 1e-11;
  popts.sommerfeld_rel_tol = 1e-11;
  const auto atom = AtomModel::two_level_excited(kOmega10, kDipoleSq, 0.3 * kSpeedOfLight * kSpeedOfLight * kDipoleSq);
  double worst = 0.0;
  for (const auto& reflector : {MaterialResponse::perfect_electric_mirror(), lossy()}) {
    for (const double zt : {0.5, 1.0, 5.0}) {
      const double z = z_of(zt);
      const double h = distance_step(z);
      for (const cdouble w : {cdouble(kOmega10, 0.0), cdouble(0.0, kOmega10)}) {
        const GreenTrace d = d_dz_traces(PlanarGeometry(reflector, z), w, tight);
        const auto fd = richardson_derivative(
            [&](double zz) {
              const GreenTrace t = green_traces(PlanarGeometry(reflector, zz), w, tight);
              return Eigen::Vector2cd(t.trace_e, t.trace_m);
            },
            z, h);
        worst = std::max({worst, rel(d.trace_e, fd.value[0]), rel(d.trace_m, fd.value[1])});
      }
      const double g = resonant_potential_gradient(atom, PlanarGeometry(reflector, z), popts).value;
      const auto fu = richardson_derivative(
          [&](double zz) { return resonant_potential(atom, PlanarGeometry(reflector, zz), popts).value; }, z, h);
      worst = std::max(worst, rel(g, fu.value));
    }
  }
  return {worst <= 1e-6, fmt::format("worst rel deviation {:.2e} (tol 1e-6)", worst)};
}

Outcome structural_zeros() {
  const auto g = AtomModel::two_level_ground(kOmega10, kDipoleSq, 1e-44);
  const auto e = AtomModel::two_level_excited(kOmega10, kDipoleSq, 1e-44);
  // Evaluating any real-frequency trace of a gain medium throws, so a zero
  // here proves that no trace (and no quadrature) was evaluated.
  const auto gain = MaterialResponse::drude_lorentz({{kOmega10, kOmega10, 0.1 * kOmega10, OscillatorKind::amplifying}});
  bool ok = true;
  for (const auto& reflector : {MaterialResponse::perfect_electric_mirror(), lossy(), gain}) {
    const PlanarGeometry geo(reflector, z_of(1.0));
    ok = ok && resonant_potential(g, geo).value == 0.0 && resonant_potential_gradient(g, geo).value == 0.0;
    ok = ok && resonant_atom_force(g, geo).value == 0.0;
    ForceOptions no_nr;
    no_nr.include_nonresonant = false;
    ok = ok && plate_force_quadrature(SlabScenario(z_of(1.0), 1.0 / kK, kEta, g, reflector), no_nr).f_resonant == 0.0;
  }
  const auto vac = MaterialResponse::vacuum();
  for (const auto& atom : {g, e}) {
    const PlanarGeometry geo(vac, z_of(1.0));
    const auto u = total_potential(atom, geo);
    ok = ok && u.u_nonresonant == 0.0 && u.u_resonant == 0.0 && u.u_total == 0.0;
    ok = ok && resonant_atom_force(atom, geo).value == 0.0;
    const SlabScenario s(z_of(1.0), 1.0 / kK, kEta, atom, vac);
    const ForceResult f = plate_force_quadrature(s);
    ok = ok && f.f_resonant == 0.0 && f.f_nonresonant == 0.0 && f.f_total == 0.0;
    const std::vector<double> grid = {z_of(0.5), z_of(2.0)};
    for (const auto& r : force_decomposition(s, grid)) ok = ok && r.f_total == 0.0;
  }
  return {ok, ok ? "all exact zeros" : "a structural zero was not exact"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "mirror Green tensor closed form", 1.0, green_closed_form},
      {2, "mirror-limit convergence at eps = 1e8", 10.0, mirror_limit},
      {3, "closed-form plate force vs quadrature oracle", 60.0, oracle_equivalence},
      {4, "ground/excited nonresonant opposition", 10.0, ground_excited_opposition},
      {5, "duality invariance", 60.0, duality},
      {6, "plate-force figure qualitative checks", 120.0, fig3},
      {7, "gradient consistency", 10.0, gradient_consistency},
      {8, "structural zeros", 1.0, structural_zeros},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = dt < c.budget_s;
    const bool pass = out.passed && in_time;
    failures += pass ? 0 : 1;
    std::cout << fmt::format("{} [{}] {} ({:.3f} s, budget {:g} s{}): {}", pass ? "PASS" : "FAIL", c.id, c.name, dt,
                             c.budget_s, in_time ? "" : ", OVER BUDGET", out.detail)
              << std::endl;
  }
  std::cout << fmt::format("{} of {} criteria passed", criteria.size() - failures, criteria.size()) << std::endl;
  return failures == 0 ? 0 : 1;
}
