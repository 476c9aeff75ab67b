#pragma once

// Casimir force on a dilute slab of atoms occupying z <= z_A <= z + d in
// front of a planar reflector. In the dilute limit the force per unit area
// is the density-weighted sum of single-atom Casimir-Polder forces,
//
//   F = -eta * int_z^{z+d} dz_A dU/dz_A,
//
// with U = U_nr + U_r. Positive F points away from the reflector.

#include <span>
#include <string_view>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/materials.hpp"
#include "casimir/potentials.hpp"

namespace casimir {

struct SlabScenario {
  double z;    // gap between reflector and slab, m
  double d;    // slab thickness, m
  double eta;  // number density, m^-3
  AtomModel atom;
  MaterialResponse reflector;

  SlabScenario(double z, double d, double eta, AtomModel atom, MaterialResponse reflector);

  /// eta |alpha(0)| / eps0 above the dilute threshold.
  bool dilute_guard_exceeded(double guard = kDiluteGuard) const;
};

/// Per unit plate area (N/m^2); per_thickness in N/m^3.
struct ForceResult {
  double z = 0.0;
  double f_resonant = 0.0;
  double f_nonresonant = 0.0;
  double f_total = 0.0;
  double per_thickness = 0.0;
  double quadrature_error = 0.0;
};

enum class SignConvention {
  minus_gradient,  // F = -eta grad U (default)
  plus_gradient,   // F = +eta grad U
};

std::string_view to_string(SignConvention s);

struct ForceOptions {
  PotentialOptions potential;
  SignConvention sign = SignConvention::minus_gradient;
  bool include_nonresonant = true;
};

/// Constant C in H(z) = C (w10/c) [((2 - x^2) cos x + 2 x sin x) / x^3] evaluated
/// between x(z) and x(z + d), x = 2 w10 z / c. Fixed against
/// plate_force_quadrature; the regression tests assert it.
inline constexpr double kPlateForceConstant = 1.0 / (2.0 * kPi);

/// ((2 - x^2) cos x + 2 x sin x) / x^3.
double plate_force_bracket(double x);

struct ClosedFormForce {
  double value;     // N/m^2, resonant part
  double constant;  // C used
};

/// Resonant force on a slab of two-level electric atoms in front of a
/// perfect electric mirror. Zero for a ground-state atom.
ClosedFormForce plate_force_closed_form(const SlabScenario& scenario, SignConvention sign = SignConvention::minus_gradient);

/// Direct quadrature of -eta int dU/dz_A dz_A for both parts. Works for any
/// atom and reflector the potentials accept.
ForceResult plate_force_quadrature(const SlabScenario& scenario, const ForceOptions& opts = {});

/// Forces for every gap in z_grid (strictly increasing, positive) with the
/// slab thickness, density and atom of `scenario`; scenario.z is ignored.
/// Uses U(z + d) - U(z), evaluating U once per distinct z_A.
std::vector<ForceResult> force_decomposition(const SlabScenario& scenario, std::span<const double> z_grid,
                                             const ForceOptions& opts = {});

/// Resonant Casimir-Polder force -dU_r/dz_A on a single atom (N).
PotentialValue resonant_atom_force(const AtomModel& atom, const PlanarGeometry& geometry,
                                   const ForceOptions& opts = {});

}  // namespace casimir
