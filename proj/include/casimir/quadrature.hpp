#pragma once

// Adaptive Gauss-Kronrod integration with certified error estimates.
//
// The integrand may return double, std::complex<double> or a fixed-size
// Eigen vector (for several integrals sharing one set of nodes). Vector
// integrands must return an evaluated object, not an expression.

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace casimir {

template <class T>
struct QuadratureResult {
  T value;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-30;
  std::size_t max_evaluations = 100000;
};

/// Thrown when the requested tolerance is not met within the evaluation
/// budget, or when the integrand produces a non-finite value.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error, std::size_t evaluations)
      : std::runtime_error(what), achieved_error_(achieved_error), evaluations_(evaluations) {}

  double achieved_error() const noexcept { return achieved_error_; }
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  double achieved_error_;
  std::size_t evaluations_;
};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) {
  return v.cwiseAbs().maxCoeff();
}

namespace detail {

// QUADPACK qk21 abscissae and weights. Odd indices carry the embedded
// 10-point Gauss rule.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525634310, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
struct Segment {
  double a;
  double b;
  T value;
  double error;
  double roundoff;  // part of `error` that subdivision cannot reduce
};

template <class T>
bool finite(const T& v) {
  return std::isfinite(magnitude(v));
}

// One 21-point Gauss-Kronrod panel on [a, b]. Error estimate follows
// QUADPACK: |K21 - G10| rescaled by the panel's variation, floored by
// the roundoff level of the absolute integral.
template <class F>
auto gauss_kronrod21(F& f, double a, double b) {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<T, 21> fv{};
  for (int j = 0; j < 10; ++j) {
    fv[2 * j] = f(center - half * kXgk[j]);
    fv[2 * j + 1] = f(center + half * kXgk[j]);
  }
  fv[20] = f(center);

  T kronrod = fv[20] * kWgk[10];
  T gauss = fv[20] * 0.0;
  double resabs = kWgk[10] * magnitude(fv[20]);
  for (int j = 0; j < 10; ++j) {
    const T pair = fv[2 * j] + fv[2 * j + 1];
    kronrod = kronrod + pair * kWgk[j];
    if (j % 2 == 1) gauss = gauss + pair * kWg[j / 2];
    resabs += kWgk[j] * (magnitude(fv[2 * j]) + magnitude(fv[2 * j + 1]));
  }
  const T mean = kronrod * 0.5;
  double resasc = kWgk[10] * magnitude(T(fv[20] - mean));
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (magnitude(T(fv[2 * j] - mean)) + magnitude(T(fv[2 * j + 1] - mean)));
  }

  for (const auto& v : fv) {
    if (!finite(v)) {
      throw QuadratureError("integrand is not finite on [" + std::to_string(a) + ", " +
                                std::to_string(b) + "]",
                            std::numeric_limits<double>::infinity(), 21);
    }
  }

  const double habs = std::abs(half);
  resabs *= habs;
  resasc *= habs;
  double err = magnitude(T((kronrod - gauss) * half));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double roundoff = 50.0 * kEps * resabs;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(roundoff, err);

  return Segment<T>{a, b, T(kronrod * half), err, roundoff};
}

}  // namespace detail

/// Globally adaptive integration of f over [a, b]. Stops once the summed
/// error estimate, less its roundoff floor, is below max(abs_tol, rel_tol * |value|).
/// The reported error always includes the roundoff floor.
template <class F>
auto integrate_finite(F&& f, double a, double b, const QuadratureOptions& opts = {}) {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  if (!(a <= b)) throw std::invalid_argument("integrate_finite: require a <= b");
  if (a == b) return QuadratureResult<T>{T(f(a) * 0.0), 0.0, 1};

  using Seg = detail::Segment<T>;
  auto by_error = [](const Seg& l, const Seg& r) { return l.error < r.error; };

  std::vector<Seg> heap;
  heap.push_back(detail::gauss_kronrod21(f, a, b));
  std::size_t evals = 21;
  T total = heap.front().value;
  double total_err = heap.front().error;
  double total_roundoff = heap.front().roundoff;

  while (true) {
    const double target = std::max(opts.abs_tol, opts.rel_tol * magnitude(total));
    if (total_err - total_roundoff <= target) break;
    if (evals + 42 > opts.max_evaluations) {
      throw QuadratureError("quadrature did not converge within " + std::to_string(opts.max_evaluations) +
                                " evaluations (error estimate " + std::to_string(total_err) + ")",
                            total_err, evals);
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Seg worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureError("quadrature interval cannot be subdivided further", total_err, evals);
    }
    Seg left = detail::gauss_kronrod21(f, worst.a, mid);
    Seg right = detail::gauss_kronrod21(f, mid, worst.b);
    evals += 42;

    // Recompute the totals from scratch to keep the running sum free of
    // accumulated cancellation.
    heap.push_back(std::move(left));
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(std::move(right));
    std::push_heap(heap.begin(), heap.end(), by_error);
    total = heap.front().value;
    total_err = heap.front().error;
    total_roundoff = heap.front().roundoff;
    for (std::size_t i = 1; i < heap.size(); ++i) {
      total = total + heap[i].value;
      total_err += heap[i].error;
      total_roundoff += heap[i].roundoff;
    }
  }
  return QuadratureResult<T>{total, total_err, evals};
}

/// Integral of f over [lower, inf) via the map x = lower + scale * t / (1 - t).
/// `scale` should be the characteristic decay length of f beyond `lower`.
template <class F>
auto integrate_semi_infinite(F&& f, double scale, const QuadratureOptions& opts = {}, double lower = 0.0) {
  if (!(scale > 0.0)) throw std::invalid_argument("integrate_semi_infinite: scale must be positive");
  auto mapped = [&f, scale, lower](double t) {
    const double s = 1.0 - t;
    using T = std::decay_t<std::invoke_result_t<F&, double>>;
    return T(f(lower + scale * t / s) * (scale / (s * s)));
  };
  return integrate_finite(mapped, 0.0, 1.0, opts);
}

}  // namespace casimir
