#include "casimir/forces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "casimir/quadrature.hpp"

namespace casimir {

SlabScenario::SlabScenario(double z, double d, double eta, AtomModel atom, MaterialResponse reflector)
    : z(z), d(d), eta(eta), atom(std::move(atom)), reflector(std::move(reflector)) {
  if (!(z > 0.0) || !(d > 0.0) || !(eta > 0.0)) {
    throw std::invalid_argument("SlabScenario: z, d and eta must be positive");
  }
}

bool SlabScenario::dilute_guard_exceeded(double guard) const {
  return clausius_mossotti(eta, atom, 0.0, 0.0, guard).dilute_guard_exceeded;
}

std::string_view to_string(SignConvention s) {
  return s == SignConvention::minus_gradient ? "F = -eta grad U" : "F = +eta grad U";
}

namespace {

double sign_factor(SignConvention s) { return s == SignConvention::minus_gradient ? -1.0 : 1.0; }

// int_a^b dz_A g(z_A) for g returning PotentialValue; inner errors are
// folded in as the worst relative inner error times the result.
template <class Gradient>
PotentialValue integrate_gradient(Gradient g, double a, double b, const PotentialOptions& opts) {
  double worst_inner_rel = 0.0;
  auto f = [&](double z_A) {
    const PotentialValue v = g(z_A);
    if (v.value != 0.0) worst_inner_rel = std::max(worst_inner_rel, v.abs_error / std::abs(v.value));
    return v.value;
  };
  const auto res = integrate_finite(f, a, b, {opts.rel_tol, 0.0, opts.max_evaluations});
  return {res.value, res.abs_error + worst_inner_rel * std::abs(res.value)};
}

}  // namespace

double plate_force_bracket(double x) {
  return ((2.0 - x * x) * std::cos(x) + 2.0 * x * std::sin(x)) / (x * x * x);
}

ClosedFormForce plate_force_closed_form(const SlabScenario& s, SignConvention sign) {
  if (s.atom.transitions().size() != 1) throw std::invalid_argument("closed-form plate force needs a two-level atom");
  const Transition& t = s.atom.transitions().front();
  if (t.magnetic_sq != 0.0) throw std::invalid_argument("closed-form plate force needs a purely electric atom");
  if (s.reflector.model() != ReflectorModel::perfect_electric_mirror) {
    throw std::invalid_argument("closed-form plate force needs a perfect electric mirror");
  }
  if (t.omega_nk < 0.0) return {0.0, kPlateForceConstant};

  const double w = t.omega_nk;
  const double k = w / kSpeedOfLight;
  const double h = kPlateForceConstant * k *
                   (plate_force_bracket(2.0 * k * (s.z + s.d)) - plate_force_bracket(2.0 * k * s.z));
  // -eta [U(z+d) - U(z)] with U = -(mu0/3) w^2 |d|^2 Re Tr G1
  const double value = -sign_factor(sign) * (kMu0 / 3.0) * s.eta * w * w * t.dipole_sq * h;
  return {value, kPlateForceConstant};
}

ForceResult plate_force_quadrature(const SlabScenario& s, const ForceOptions& opts) {
  ForceResult out;
  out.z = s.z;
  const double a = s.z;
  const double b = s.z + s.d;

  // Inner integrals run at a tenth of the outer tolerance.
  PotentialOptions inner = opts.potential;
  inner.rel_tol = 0.1 * opts.potential.rel_tol;

  PotentialValue r;
  if (!resonant_weights(s.atom).empty() && !s.reflector.is_vacuum()) {
    r = integrate_gradient(
        [&](double z_A) { return resonant_potential_gradient(s.atom, PlanarGeometry(s.reflector, z_A), inner); }, a, b,
        opts.potential);
  }
  PotentialValue nr;
  if (opts.include_nonresonant && !s.reflector.is_vacuum()) {
    nr = integrate_gradient(
        [&](double z_A) { return nonresonant_potential_gradient(s.atom, PlanarGeometry(s.reflector, z_A), inner); }, a,
        b, opts.potential);
  }

  const double f = sign_factor(opts.sign) * s.eta;
  out.f_resonant = f * r.value;
  out.f_nonresonant = f * nr.value;
  out.f_total = out.f_resonant + out.f_nonresonant;
  out.per_thickness = out.f_total / s.d;
  out.quadrature_error = s.eta * (r.abs_error + nr.abs_error);
  return out;
}

std::vector<ForceResult> force_decomposition(const SlabScenario& s, std::span<const double> z_grid,
                                             const ForceOptions& opts) {
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    if (!(z_grid[i] > 0.0) || (i > 0 && !(z_grid[i] > z_grid[i - 1]))) {
      throw std::invalid_argument("force_decomposition: z grid must be positive and strictly increasing");
    }
  }
  std::map<double, PotentialResult> cache;
  auto potential_at = [&](double z_A) -> const PotentialResult& {
    auto it = cache.find(z_A);
    if (it == cache.end()) {
      const PlanarGeometry geometry(s.reflector, z_A);
      PotentialResult u;
      if (opts.include_nonresonant) {
        u = total_potential(s.atom, geometry, opts.potential);
      } else {
        const PotentialValue r = resonant_potential(s.atom, geometry, opts.potential);
        u = {0.0, r.value, r.value, r.abs_error};
      }
      it = cache.emplace(z_A, u).first;
    }
    return it->second;
  };

  const double f = sign_factor(opts.sign) * s.eta;
  std::vector<ForceResult> out;
  out.reserve(z_grid.size());
  for (const double z : z_grid) {
    const PotentialResult& near = potential_at(z);
    const PotentialResult& far = potential_at(z + s.d);
    ForceResult r;
    r.z = z;
    r.f_resonant = f * (far.u_resonant - near.u_resonant);
    r.f_nonresonant = f * (far.u_nonresonant - near.u_nonresonant);
    r.f_total = r.f_resonant + r.f_nonresonant;
    r.per_thickness = r.f_total / s.d;
    r.quadrature_error = s.eta * (far.quadrature_error + near.quadrature_error);
    out.push_back(r);
  }
  return out;
}

PotentialValue resonant_atom_force(const AtomModel& atom, const PlanarGeometry& geometry, const ForceOptions& opts) {
  const PotentialValue g = resonant_potential_gradient(atom, geometry, opts.potential);
  return {sign_factor(opts.sign) * g.value, g.abs_error};
}

}  // namespace casimir
