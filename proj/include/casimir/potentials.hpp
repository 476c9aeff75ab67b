#pragma once

#include <utility>

#include "casimir/greens.hpp"
#include "casimir/materials.hpp"

namespace casimir {

struct PotentialOptions {
  double rel_tol = 1e-9;              // imaginary-frequency integral
  double sommerfeld_rel_tol = 1e-7;   // inner integral, capped at rel_tol / 10 when nested
  std::size_t max_evaluations = 100000;
};

/// A potential (J) or its z_A-derivative (J/m) with its absolute error estimate.
struct PotentialValue {
  double value = 0.0;
  double abs_error = 0.0;
};

struct PotentialResult {
  double u_nonresonant = 0.0;
  double u_resonant = 0.0;
  double u_total = 0.0;
  double quadrature_error = 0.0;
};

/// Virtual-transition part:
///   U_nr = (hbar mu0 / 2 pi) int_0^inf dxi [xi^2 alpha(i xi) trace_e(i xi) + beta(i xi) trace_m(i xi)].
PotentialValue nonresonant_potential(const AtomModel& atom, const PlanarGeometry& geometry,
                                     const PotentialOptions& opts = {});

/// Real downward transitions:
///   U_r = -(mu0 / 3) sum_k theta(w_nk) [w_nk^2 |d_nk|^2 Re trace_e(w_nk) - |m_nk|^2 Re trace_m(w_nk)].
/// Zero without any quadrature for ground states.
PotentialValue resonant_potential(const AtomModel& atom, const PlanarGeometry& geometry,
                                  const PotentialOptions& opts = {});

PotentialResult total_potential(const AtomModel& atom, const PlanarGeometry& geometry,
                                const PotentialOptions& opts = {});

/// dU/dz_A built from the trace derivatives.
PotentialValue nonresonant_potential_gradient(const AtomModel& atom, const PlanarGeometry& geometry,
                                              const PotentialOptions& opts = {});
PotentialValue resonant_potential_gradient(const AtomModel& atom, const PlanarGeometry& geometry,
                                           const PotentialOptions& opts = {});

/// alpha <-> beta / c^2 on the atom (|d|^2 <-> |m|^2 / c^2), eps <-> mu on the reflector.
AtomModel dual_atom(const AtomModel& atom);
std::pair<AtomModel, PlanarGeometry> duality_transform(const AtomModel& atom, const PlanarGeometry& geometry);

}  // namespace casimir
