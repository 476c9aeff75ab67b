#pragma once

// Scattering part of the Green tensor at coincident points, r = r' = (0, 0, z_A),
// above a planar reflector occupying z < 0.
//
//   trace_e = Tr G1(r, r, w)                       [1/m]
//   trace_m = Tr [curl G1(r, r, w) x curl']         [1/m^3]
//
// Frequencies are either purely imaginary (i xi, xi > 0) or real positive.

#include <Eigen/Core>

#include <complex>

#include "casimir/materials.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

struct PlanarGeometry {
  MaterialResponse reflector;
  double z_A;  // m

  PlanarGeometry(MaterialResponse reflector, double z_A);
};

struct GreenTrace {
  cdouble freq;
  cdouble trace_e;
  cdouble trace_m;
  double error_e = 0.0;  // absolute, same units as trace_e
  double error_m = 0.0;
};

/// Default inner tolerance for transverse-wavevector integrals.
inline QuadratureOptions sommerfeld_defaults() { return {1e-7, 0.0, 100000}; }

bool is_imaginary_frequency(cdouble freq) noexcept;
bool is_real_frequency(cdouble freq) noexcept;

/// (G_xx, G_yy, G_zz) of the perfect electric mirror.
Eigen::Vector3cd mirror_green_components(double z_A, cdouble freq);

/// Tr[curl G1 x curl'] of the perfect electric mirror.
cdouble mirror_curlcurl_trace(double z_A, cdouble freq);

/// Closed-form traces for either perfect mirror.
GreenTrace mirror_traces(ReflectorModel mirror, double z_A, cdouble freq);

/// Traces from the s/p reflection-coefficient integral over the transverse
/// wavevector. Works for every reflector model; perfect mirrors use their
/// limiting coefficients (PEC: r_s = -1, r_p = +1; PMC: r_s = +1, r_p = -1).
/// Real frequencies require an absorbing medium at that frequency.
GreenTrace halfspace_green_traces(const PlanarGeometry& geometry, cdouble freq,
                                  const QuadratureOptions& opts = sommerfeld_defaults());

/// Closed forms for perfect mirrors, zeros for vacuum, the integral otherwise.
GreenTrace green_traces(const PlanarGeometry& geometry, cdouble freq,
                        const QuadratureOptions& opts = sommerfeld_defaults());

/// d/dz_A of both traces. Closed forms for mirrors; for media the z_A
/// dependence e^{2 i k_z z_A} is differentiated under the integral.
GreenTrace d_dz_traces(const PlanarGeometry& geometry, cdouble freq,
                       const QuadratureOptions& opts = sommerfeld_defaults());

/// Fresnel coefficients (r_s, r_p) for normal wavevector k_z in vacuum.
std::pair<cdouble, cdouble> reflection_coefficients(const MaterialResponse& reflector, cdouble freq, cdouble k_z);

}  // namespace casimir
