#pragma once

#include <algorithm>
#include <type_traits>

#include "casimir/quadrature.hpp"

namespace casimir {

template <class T>
struct Derivative {
  T value;
  double abs_error;
};

/// Step rule for derivatives with respect to a distance z > 0 (metres).
inline double distance_step(double z) { return std::max(1e-6 * z, 1e-12); }

/// Central difference at steps h and h/2 combined by one Richardson step.
/// The error estimate is the size of the Richardson correction.
template <class F>
auto richardson_derivative(F&& f, double x, double h) {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  const T coarse = T((f(x + h) - f(x - h)) / (2.0 * h));
  const T fine = T((f(x + 0.5 * h) - f(x - 0.5 * h)) / h);
  const T correction = T((fine - coarse) / 3.0);
  return Derivative<T>{T(fine + correction), magnitude(correction)};
}

}  // namespace casimir
