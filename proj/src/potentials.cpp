#include "casimir/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "casimir/constants.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

QuadratureOptions inner_options(const PotentialOptions& opts) {
  return {std::min(opts.sommerfeld_rel_tol, 0.1 * opts.rel_tol), 0.0, opts.max_evaluations};
}

double max_transition_frequency(const AtomModel& atom) {
  double w = 0.0;
  for (const auto& t : atom.transitions()) w = std::max(w, std::abs(t.omega_nk));
  return w;
}

// Shared by the potential and its gradient; `traces` is green_traces or d_dz_traces.
template <class Traces>
PotentialValue nonresonant(const AtomModel& atom, const PlanarGeometry& geometry, const PotentialOptions& opts,
                           Traces traces) {
  if (geometry.reflector.is_vacuum()) return {};
  const bool magnetic = atom.has_magnetic_transitions();
  const QuadratureOptions inner = inner_options(opts);
  double worst_inner_rel = 0.0;

  auto integrand = [&](double xi) {
    const GreenTrace g = traces(geometry, cdouble(0.0, xi), inner);
    const double a = xi * xi * polarizability_imag_axis(atom, xi);
    double value = a * g.trace_e.real();
    double scale = std::abs(value);
    double err = std::abs(a) * g.error_e;
    if (magnetic) {
      const double b = magnetizability_imag_axis(atom, xi);
      value += b * g.trace_m.real();
      scale += std::abs(b * g.trace_m.real());
      err += std::abs(b) * g.error_m;
    }
    if (scale > 0.0) worst_inner_rel = std::max(worst_inner_rel, err / scale);
    return value;
  };

  const double scale = std::max(max_transition_frequency(atom), kSpeedOfLight / (2.0 * geometry.z_A));
  const QuadratureOptions outer{opts.rel_tol, 0.0, opts.max_evaluations};
  const auto res = integrate_semi_infinite(integrand, scale, outer);
  const double pref = kHbar * kMu0 / (2.0 * kPi);
  return {pref * res.value, pref * (res.abs_error + worst_inner_rel * std::abs(res.value))};
}

template <class Traces>
PotentialValue resonant(const AtomModel& atom, const PlanarGeometry& geometry, const PotentialOptions& opts,
                        Traces traces) {
  const auto weights = resonant_weights(atom);
  if (weights.empty() || geometry.reflector.is_vacuum()) return {};
  const QuadratureOptions inner{opts.sommerfeld_rel_tol, 0.0, opts.max_evaluations};
  PotentialValue out;
  for (const auto& w : weights) {
    const GreenTrace g = traces(geometry, cdouble(w.omega, 0.0), inner);
    const double e = w.omega * w.omega * w.electric_weight;
    out.value += e * g.trace_e.real() - w.magnetic_weight * g.trace_m.real();
    out.abs_error += e * g.error_e + w.magnetic_weight * g.error_m;
  }
  // (mu0 / 3) |d|^2 = (mu0 hbar / pi) * electric_weight
  const double pref = -kMu0 * kHbar / kPi;
  out.value *= pref;
  out.abs_error *= std::abs(pref);
  return out;
}

}  // namespace

PotentialValue nonresonant_potential(const AtomModel& atom, const PlanarGeometry& geometry,
                                     const PotentialOptions& opts) {
  return nonresonant(atom, geometry, opts, green_traces);
}

PotentialValue resonant_potential(const AtomModel& atom, const PlanarGeometry& geometry, const PotentialOptions& opts) {
  return resonant(atom, geometry, opts, green_traces);
}

PotentialValue nonresonant_potential_gradient(const AtomModel& atom, const PlanarGeometry& geometry,
                                              const PotentialOptions& opts) {
  return nonresonant(atom, geometry, opts, d_dz_traces);
}

PotentialValue resonant_potential_gradient(const AtomModel& atom, const PlanarGeometry& geometry,
                                           const PotentialOptions& opts) {
  return resonant(atom, geometry, opts, d_dz_traces);
}

PotentialResult total_potential(const AtomModel& atom, const PlanarGeometry& geometry, const PotentialOptions& opts) {
  const PotentialValue nr = nonresonant_potential(atom, geometry, opts);
  const PotentialValue r = resonant_potential(atom, geometry, opts);
  return {nr.value, r.value, nr.value + r.value, nr.abs_error + r.abs_error};
}

AtomModel dual_atom(const AtomModel& atom) {
  constexpr double c2 = kSpeedOfLight * kSpeedOfLight;
  std::vector<Transition> swapped;
  swapped.reserve(atom.transitions().size());
  for (const auto& t : atom.transitions()) swapped.emplace_back(t.omega_nk, t.magnetic_sq / c2, t.dipole_sq * c2);
  return AtomModel(atom.state_label(), std::move(swapped));
}

std::pair<AtomModel, PlanarGeometry> duality_transform(const AtomModel& atom, const PlanarGeometry& geometry) {
  return {dual_atom(atom), PlanarGeometry(geometry.reflector.dual(), geometry.z_A)};
}

}  // namespace casimir
