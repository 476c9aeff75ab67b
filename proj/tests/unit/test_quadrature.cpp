#include <doctest.h>

#include <cmath>
#include <complex>

#include "casimir/constants.hpp"
#include "casimir/greens.hpp"
#include "casimir/potentials.hpp"
#include "casimir/quadrature.hpp"
#include "support.hpp"

using namespace casimir;
using support::rel;

TEST_SUITE("quadrature") {

TEST_CASE("exponential tail integrates to one") {
  const auto r = integrate_semi_infinite([](double x) { return std::exp(-x); }, 1.0, {1e-10, 0.0, 100000});
  CHECK(std::abs(r.value - 1.0) < 1e-10);
  CHECK(r.abs_error >= 0.0);
  CHECK(r.abs_error < 1e-10);
}

TEST_CASE("lorentzian over the half line") {
  const auto r = integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x * x); }, 1.0, {1e-12, 0.0, 100000});
  CHECK(rel(r.value, kPi / 2.0) < 1e-12);
}

TEST_CASE("lower limit of the semi-infinite map") {
  const auto r = integrate_semi_infinite([](double x) { return std::exp(-x); }, 3.0, {1e-12, 0.0, 100000}, 2.0);
  CHECK(rel(r.value, std::exp(-2.0)) < 1e-12);
}

TEST_CASE("sine over half a period") {
  const auto r = integrate_finite([](double x) { return std::sin(x); }, 0.0, kPi);
  CHECK(std::abs(r.value - 2.0) < 2e-9);
}

TEST_CASE("complex and vector integrands") {
  const auto c = integrate_finite([](double x) { return std::exp(std::complex<double>(0.0, x)); }, 0.0, 1.0,
                                  {1e-12, 0.0, 10000});
  const std::complex<double> expected = (std::exp(std::complex<double>(0.0, 1.0)) - 1.0) / std::complex<double>(0.0, 1.0);
  CHECK(rel(c.value, expected) < 1e-12);

  const auto v = integrate_finite([](double x) { return Eigen::Vector2d(x, x * x); }, 0.0, 3.0, {1e-12, 0.0, 10000});
  CHECK(rel(v.value[0], 4.5) < 1e-12);
  CHECK(rel(v.value[1], 9.0) < 1e-12);
}

TEST_CASE("empty and reversed intervals") {
  CHECK(integrate_finite([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
  CHECK_THROWS_AS(integrate_finite([](double) { return 1.0; }, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("linearity") {
  auto f = [](double x) { return std::cos(3.0 * x) * std::exp(-x); };
  auto g = [](double x) { return 1.0 / (1.0 + x * x * x * x); };
  const double a = 2.5, b = -0.75;
  const QuadratureOptions o{1e-11, 0.0, 100000};
  const auto rf = integrate_semi_infinite(f, 1.0, o);
  const auto rg = integrate_semi_infinite(g, 1.0, o);
  const auto rh = integrate_semi_infinite([&](double x) { return a * f(x) + b * g(x); }, 1.0, o);
  const double bound = std::abs(a) * rf.abs_error + std::abs(b) * rg.abs_error + rh.abs_error;
  CHECK(std::abs(rh.value - (a * rf.value + b * rg.value)) <= bound + 1e-15);
}

TEST_CASE("tighter tolerance costs more evaluations and shrinks the error") {
  auto f = [](double x) { return std::sqrt(x) * std::exp(-x); };
  const auto loose = integrate_semi_infinite(f, 1.0, {1e-5, 0.0, 100000});
  const auto tight = integrate_semi_infinite(f, 1.0, {1e-11, 0.0, 100000});
  CHECK(tight.evaluations >= loose.evaluations);
  CHECK(tight.abs_error <= loose.abs_error);
  CHECK(rel(tight.value, std::sqrt(kPi) / 2.0) < 1e-10);
}

TEST_CASE("failure modes raise instead of returning NaN") {
  CHECK_THROWS_AS(integrate_finite([](double x) { return 1.0 / x; }, 0.0, 1.0, {1e-12, 0.0, 2000}), QuadratureError);
  CHECK_THROWS_AS(integrate_finite([](double) { return std::nan(""); }, 0.0, 1.0), QuadratureError);
  try {
    integrate_finite([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, {1e-14, 0.0, 420});
    FAIL("expected a QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.evaluations() <= 420 + 21);
    CHECK(e.achieved_error() >= 0.0);
  }
}

TEST_CASE("nonresonant integrand against a brute-force trapezoid") {
  // Ground-state two-level atom at z_tilde = 1 before a perfect electric mirror.
  using support::kDipoleSq;
  using support::kOmega10;
  const long double c = kSpeedOfLight, hbar = kHbar, mu0 = kMu0, pi = 3.14159265358979323846264338327950288L;
  const long double z = support::kLength;
  auto integrand = [&](long double xi) -> long double {
    if (xi == 0.0L) return -2.0L * kDipoleSq / (3.0L * hbar * kOmega10) * c * c / (8.0L * pi * z * z * z);
    const long double alpha = 2.0L * kDipoleSq * kOmega10 / (3.0L * hbar * (kOmega10 * 1.0L * kOmega10 + xi * xi));
    const long double kappa = xi / c;
    const long double y = 2.0L * kappa * z;
    const long double trace = -kappa * std::exp(-y) * (2.0L + 2.0L * y + y * y) / (2.0L * pi * y * y * y);
    return xi * xi * alpha * trace;
  };
  // xi = s t / (1 - t), t in [0, 1)
  const long double s = 2.0L * kOmega10;
  const long n = 1000000;
  const long double h = 1.0L / n;
  long double sum = 0.5L * integrand(0.0L) * s;  // t = 1 contributes nothing
  for (long i = 1; i < n; ++i) {
    const long double t = i * h;
    const long double jac = s / ((1.0L - t) * (1.0L - t));
    sum += integrand(s * t / (1.0L - t)) * jac;
  }
  const double oracle = static_cast<double>(hbar * mu0 / (2.0L * pi) * sum * h);

  PotentialOptions opts;
  opts.rel_tol = 1e-11;
  const auto atom = AtomModel::two_level_ground(kOmega10, kDipoleSq);
  const auto u = nonresonant_potential(atom, PlanarGeometry(MaterialResponse::perfect_electric_mirror(), z), opts);
  CHECK(u.value < 0.0);
  CHECK(rel(u.value, oracle) < 1e-8);
}

}
