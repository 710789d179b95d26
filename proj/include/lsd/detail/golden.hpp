#pragma once

#include <cmath>
#include <utility>

namespace lsd::detail {

struct GoldenResult {
  double x;
  double fx;
  int iterations;
};

/// Golden-section search for a minimum of a unimodal f on [lo, hi]. Stops
/// once `width(lo, hi) < tol` or after max_iter shrinks; `width` lets the
/// caller measure the bracket in another coordinate.
template <class F, class Width>
GoldenResult golden_section_minimize(F&& f, double lo, double hi, double tol, Width&& width,
                                     int max_iter = 500) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  for (; it < max_iter && width(lo, hi) >= tol; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
    }
  }
  return fc < fd ? GoldenResult{c, fc, it} : GoldenResult{d, fd, it};
}

template <class F>
GoldenResult golden_section_minimize(F&& f, double lo, double hi, double tol,
                                     int max_iter = 500) {
  return golden_section_minimize(std::forward<F>(f), lo, hi, tol,
                                 [](double a, double b) { return std::abs(b - a); }, max_iter);
}

}  // namespace lsd::detail
