#include "casimir/greens.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <type_traits>

#include <fmt/format.h>

#include "casimir/constants.hpp"

namespace casimir {

PlanarGeometry::PlanarGeometry(MaterialResponse reflector, double z_A) : reflector(std::move(reflector)), z_A(z_A) {
  if (!(z_A > 0.0) || !std::isfinite(z_A)) throw std::invalid_argument("PlanarGeometry: z_A must be positive");
}

bool is_imaginary_frequency(cdouble freq) noexcept { return freq.real() == 0.0 && freq.imag() > 0.0; }

bool is_real_frequency(cdouble freq) noexcept { return freq.imag() == 0.0 && freq.real() > 0.0; }

namespace {

constexpr cdouble kI(0.0, 1.0);

void check_distance(double z_A) {
  if (!(z_A > 0.0) || !std::isfinite(z_A)) throw std::invalid_argument("z_A must be positive");
}

void check_frequency(cdouble freq) {
  if (!is_imaginary_frequency(freq) && !is_real_frequency(freq)) {
    throw std::invalid_argument(
        fmt::format("frequency ({:g}, {:g}) must be real positive or purely imaginary with positive imaginary part",
                    freq.real(), freq.imag()));
  }
}

// PEC trace and its z-derivative on the imaginary axis, real arithmetic.
// kappa0 = xi / c, y = 2 kappa0 z.
double pec_trace_imag(double kappa0, double z) {
  const double y = 2.0 * kappa0 * z;
  return -kappa0 * std::exp(-y) * (2.0 + y * (2.0 + y)) / (2.0 * kPi * y * y * y);
}

double pec_trace_imag_dz(double kappa0, double z) {
  const double y = 2.0 * kappa0 * z;
  const double y2 = y * y;
  return kappa0 * kappa0 * std::exp(-y) * (6.0 + y * (6.0 + y * (3.0 + y))) / (kPi * y2 * y2);
}

// Complex closed forms, x = 2 k z with k = w / c.
cdouble pec_trace(cdouble k, double z) {
  const cdouble x = 2.0 * k * z;
  return k * std::exp(kI * x) * (2.0 - 2.0 * kI * x - x * x) / (2.0 * kPi * x * x * x);
}

cdouble pec_trace_dz(cdouble k, double z) {
  const cdouble x = 2.0 * k * z;
  const cdouble x2 = x * x;
  return k * k * std::exp(kI * x) * (-6.0 + 6.0 * kI * x + 3.0 * x2 - kI * x2 * x) / (kPi * x2 * x2);
}

double mirror_sign(ReflectorModel mirror) {
  switch (mirror) {
    case ReflectorModel::perfect_electric_mirror:
      return 1.0;
    case ReflectorModel::perfect_magnetic_mirror:
      return -1.0;
    case ReflectorModel::drude_lorentz:
      break;
  }
  throw std::invalid_argument("closed-form traces need a perfect mirror");
}

GreenTrace mirror_closed_form(ReflectorModel mirror, double z, cdouble freq, bool derivative) {
  check_distance(z);
  check_frequency(freq);
  const double sign = mirror_sign(mirror);
  GreenTrace g{freq, 0.0, 0.0};
  {
    // Rounding estimate: a few ulps of the un-cancelled magnitude.
    const double ka = std::abs(freq) / kSpeedOfLight;
    const double xa = 2.0 * ka * z;
    const double damp = is_imaginary_frequency(freq) ? std::exp(-xa) : 1.0;
    const double bound = derivative ? ka * ka * damp * (6.0 + xa * (6.0 + xa * (3.0 + xa))) / (kPi * xa * xa * xa * xa)
                                    : ka * damp * (2.0 + xa * (2.0 + xa)) / (2.0 * kPi * xa * xa * xa);
    g.error_e = 16.0 * std::numeric_limits<double>::epsilon() * bound;
    g.error_m = ka * ka * g.error_e;
  }
  if (is_imaginary_frequency(freq)) {
    const double kappa0 = freq.imag() / kSpeedOfLight;
    const double te = derivative ? pec_trace_imag_dz(kappa0, z) : pec_trace_imag(kappa0, z);
    // k^2 = -kappa0^2 on the imaginary axis.
    g.trace_e = sign * te;
    g.trace_m = sign * (-kappa0 * kappa0 * te);
  } else {
    const cdouble k = freq / kSpeedOfLight;
    const cdouble te = derivative ? pec_trace_dz(k, z) : pec_trace(k, z);
    g.trace_e = sign * te;
    g.trace_m = sign * k * k * te;
  }
  return g;
}

struct Media {
  bool perfect = false;
  cdouble rs_fixed, rp_fixed;
  cdouble chi_e = 0.0, chi_m = 0.0;  // eps - 1, mu - 1

  cdouble eps() const { return 1.0 + chi_e; }
  cdouble mu() const { return 1.0 + chi_m; }
  cdouble eps_mu_minus_one() const { return chi_e + chi_m + chi_e * chi_m; }
};

Media media_at(const MaterialResponse& reflector, cdouble freq) {
  Media m;
  switch (reflector.model()) {
    case ReflectorModel::perfect_electric_mirror:
      m.perfect = true;
      m.rs_fixed = -1.0;
      m.rp_fixed = 1.0;
      return m;
    case ReflectorModel::perfect_magnetic_mirror:
      m.perfect = true;
      m.rs_fixed = 1.0;
      m.rp_fixed = -1.0;
      return m;
    case ReflectorModel::drude_lorentz:
      break;
  }
  m.chi_e = reflector.electric_susceptibility(freq);
  m.chi_m = reflector.magnetic_susceptibility(freq);
  return m;
}

// Fresnel coefficients written with kz1 - k_z = (eps mu - 1) k^2 / (kz1 + k_z),
// which stays accurate when the medium is close to vacuum.
template <class C>
std::pair<C, C> fresnel_from(C chi_e, C chi_m, C eps_mu_minus_one, C k2, C k_z) {
  C kz1 = std::sqrt(eps_mu_minus_one * k2 + k_z * k_z);
  if constexpr (std::is_same_v<C, cdouble>) {
    if (kz1.imag() < 0.0 || (kz1.imag() == 0.0 && kz1.real() < 0.0)) kz1 = -kz1;
  }
  const C sum = kz1 + k_z;
  const C diff = sum == C(0.0) ? C(0.0) : eps_mu_minus_one * k2 / sum;
  const C rs = (chi_m * k_z - diff) / ((1.0 + chi_m) * k_z + kz1);
  const C rp = (chi_e * k_z - diff) / ((1.0 + chi_e) * k_z + kz1);
  return {rs, rp};
}

std::pair<cdouble, cdouble> fresnel(const Media& m, cdouble k2, cdouble k_z) {
  if (m.perfect) return {m.rs_fixed, m.rp_fixed};
  return fresnel_from<cdouble>(m.chi_e, m.chi_m, m.eps_mu_minus_one(), k2, k_z);
}

// Imaginary axis: integrate over kappa = kappa0 + u with e^{-2 kappa0 z}
// factored out. Components are the e- and m-brackets.
GreenTrace sommerfeld_imag(const PlanarGeometry& geo, double xi, const QuadratureOptions& opts, bool derivative) {
  const Media m = media_at(geo.reflector, cdouble(0.0, xi));
  if (!m.perfect && (!(m.eps().real() > 0.0) || !(m.mu().real() > 0.0))) {
    throw std::domain_error("eps(i xi) and mu(i xi) must be positive for the imaginary-axis integral");
  }
  const double z = geo.z_A;
  const double kappa0 = xi / kSpeedOfLight;
  const double k0sq = kappa0 * kappa0;
  const double pref = std::exp(-2.0 * kappa0 * z) / (4.0 * kPi);
  if (pref == 0.0) return GreenTrace{cdouble(0.0, xi), 0.0, 0.0};
  const double chi_e = m.chi_e.real();
  const double chi_m = m.chi_m.real();
  const double chi_em = m.eps_mu_minus_one().real();

  auto integrand = [&](double u) {
    const double kappa = kappa0 + u;
    double rs, rp;
    if (m.perfect) {
      rs = m.rs_fixed.real();
      rp = m.rp_fixed.real();
    } else {
      // k_z = i kappa, kz1 = i kappa1 with kappa1^2 = kappa^2 + (eps mu - 1) kappa0^2.
      std::tie(rs, rp) = fresnel_from<double>(chi_e, chi_m, chi_em, k0sq, kappa);
    }
  const double q = 1.0 - 2.0 * kappa * kappa / k0sq;
    double w = std::exp(-2.0 * u * z);
    if (derivative) w *= -2.0 * kappa;
    return Eigen::Vector2d(w * (rs + rp * q), w * (rp + rs * q));
  };
  const auto res = integrate_semi_infinite(integrand, 1.0 / (2.0 * z), opts);
  GreenTrace g{cdouble(0.0, xi), pref * res.value[0], k0sq * pref * res.value[1]};
  g.error_e = pref * res.abs_error;
  g.error_m = k0sq * pref * res.abs_error;
  return g;
}

GreenTrace sommerfeld_real(const PlanarGeometry& geo, double omega, const QuadratureOptions& opts, bool derivative) {
  const Media m = media_at(geo.reflector, cdouble(omega, 0.0));
  if (!m.perfect) {
    const double ie = m.chi_e.imag();
    const double im = m.chi_m.imag();
    if (ie < 0.0 || im < 0.0) {
      throw std::domain_error(fmt::format("reflector amplifies at {:g} rad/s; real-frequency traces are only "
                                          "defined for absorbing reflectors",
                                          omega));
    }
    if (ie == 0.0 && im == 0.0) {
      throw std::domain_error(fmt::format("reflector is lossless at {:g} rad/s; real-frequency traces require "
                                          "absorption",
                                          omega));
    }
  }
  const double z = geo.z_A;
  const double k = omega / kSpeedOfLight;
  const cdouble k2 = k * k;

  // Propagating waves, 0 <= k_z <= k. The substitution k_par dk_par / k_z = -dk_z
  // removes the inverse-square-root endpoint singularity at k_par = k.
  auto propagating = [&](double kz) {
    const auto [rs, rp] = fresnel(m, k2, cdouble(kz, 0.0));
    const double q = 1.0 - 2.0 * kz * kz / (k * k);
    cdouble w = std::exp(kI * (2.0 * kz * z));
    if (derivative) w *= 2.0 * kI * kz;
    return Eigen::Vector2cd(w * (rs + rp * q), w * (rp + rs * q));
  };
  // Evanescent waves, k_z = i kappa.
  auto evanescent = [&](double kappa) {
    const auto [rs, rp] = fresnel(m, k2, cdouble(0.0, kappa));
    const double q = 1.0 + 2.0 * kappa * kappa / (k * k);
    double w = std::exp(-2.0 * kappa * z);
    if (derivative) w *= -2.0 * kappa;
    return Eigen::Vector2cd(w * (rs + rp * q), w * (rp + rs * q));
  };

  // Split the budget and tolerance between the two pieces.
  QuadratureOptions piece = opts;
  piece.rel_tol = 0.5 * opts.rel_tol;
  const auto prop = integrate_finite(propagating, 0.0, k, piece);
  const auto evan = integrate_semi_infinite(evanescent, 1.0 / (2.0 * z), piece);

  const Eigen::Vector2cd total = (kI * prop.value + evan.value) / (4.0 * kPi);
  const double err = (prop.abs_error + evan.abs_error) / (4.0 * kPi);
  GreenTrace g{cdouble(omega, 0.0), total[0], -k2 * total[1]};
  g.error_e = err;
  g.error_m = k * k * err;
  return g;
}

GreenTrace sommerfeld(const PlanarGeometry& geo, cdouble freq, const QuadratureOptions& opts, bool derivative) {
  check_frequency(freq);
  try {
    if (is_imaginary_frequency(freq)) return sommerfeld_imag(geo, freq.imag(), opts, derivative);
    return sommerfeld_real(geo, freq.real(), opts, derivative);
  } catch (const QuadratureError& e) {
    throw QuadratureError(fmt::format("transverse-wavevector integral at z_A = {:g} m: {}", geo.z_A, e.what()),
                          e.achieved_error(), e.evaluations());
  }
}

}  // namespace

Eigen::Vector3cd mirror_green_components(double z_A, cdouble freq) {
  check_distance(z_A);
  check_frequency(freq);
  if (is_imaginary_frequency(freq)) {
    const double kappa0 = freq.imag() / kSpeedOfLight;
    const double y = 2.0 * kappa0 * z_A;
    const double pref = -kappa0 * std::exp(-y) / (4.0 * kPi * y * y * y);
    const double xx = pref * (1.0 + y + y * y);
    const double zz = 2.0 * pref * (1.0 + y);
    return {xx, xx, zz};
  }
  const cdouble k = freq / kSpeedOfLight;
  const cdouble x = 2.0 * k * z_A;
  const cdouble pref = k * std::exp(kI * x) / (4.0 * kPi * x * x * x);
  const cdouble xx = pref * (1.0 - kI * x - x * x);
  const cdouble zz = 2.0 * pref * (1.0 - kI * x);
  return {xx, xx, zz};
}

cdouble mirror_curlcurl_trace(double z_A, cdouble freq) {
  return mirror_closed_form(ReflectorModel::perfect_electric_mirror, z_A, freq, false).trace_m;
}

GreenTrace mirror_traces(ReflectorModel mirror, double z_A, cdouble freq) {
  return mirror_closed_form(mirror, z_A, freq, false);
}

GreenTrace halfspace_green_traces(const PlanarGeometry& geometry, cdouble freq, const QuadratureOptions& opts) {
  return sommerfeld(geometry, freq, opts, false);
}

GreenTrace green_traces(const PlanarGeometry& geometry, cdouble freq, const QuadratureOptions& opts) {
  check_frequency(freq);
  if (geometry.reflector.is_perfect_mirror()) return mirror_closed_form(geometry.reflector.model(), geometry.z_A, freq, false);
  if (geometry.reflector.is_vacuum()) return GreenTrace{freq, 0.0, 0.0};
  return sommerfeld(geometry, freq, opts, false);
}

GreenTrace d_dz_traces(const PlanarGeometry& geometry, cdouble freq, const QuadratureOptions& opts) {
  check_frequency(freq);
  if (geometry.reflector.is_perfect_mirror()) return mirror_closed_form(geometry.reflector.model(), geometry.z_A, freq, true);
  if (geometry.reflector.is_vacuum()) return GreenTrace{freq, 0.0, 0.0};
  return sommerfeld(geometry, freq, opts, true);
}

std::pair<cdouble, cdouble> reflection_coefficients(const MaterialResponse& reflector, cdouble freq, cdouble k_z) {
  check_frequency(freq);
  const Media m = media_at(reflector, freq);
  const cdouble k = freq / kSpeedOfLight;
  return fresnel(m, k * k, k_z);
}

}  // namespace casimir
