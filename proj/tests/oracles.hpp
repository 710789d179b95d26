#pragma once
// Independent reference computations for the test suite. None of these call
// into the library's numerical kernels.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

/// Eigenvalues of a symmetric 3x3 matrix from the trigonometric solution of
/// its characteristic cubic, ascending.
inline std::array<double, 3> symmetric_3x3_eigenvalues(const std::array<std::array<double, 3>, 3>& m) {
  const double p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
  const double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
  std::array<double, 3> out{};
  if (p1 == 0.0) {
    out = {m[0][0], m[1][1], m[2][2]};
    std::sort(out.begin(), out.end());
    return out;
  }
  const double p2 = (m[0][0] - q) * (m[0][0] - q) + (m[1][1] - q) * (m[1][1] - q) +
                    (m[2][2] - q) * (m[2][2] - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  std::array<std::array<double, 3>, 3> b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = (m[i][j] - (i == j ? q : 0.0)) / p;
  const double det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                     b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                     b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  const double r = std::clamp(det / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
  out = {e3, 3.0 * q - e1 - e3, e1};
  std::sort(out.begin(), out.end());
  return out;
}

/// (1/n) X X^T by the textbook triple loop over a row-major p x n buffer.
inline std::vector<double> naive_covariance(const std::vector<double>& x, std::size_t p, std::size_t n) {
  std::vector<double> s(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      double acc = 0.0;
      for (std::size_t t = 0; t < n; ++t) acc += x[i * n + t] * x[j * n + t];
      s[i * p + j] = acc / static_cast<double>(n);
    }
  return s;
}

/// f(l) = |sum_k psi_k e^{ikl}|^2 / (2 pi), summed term by term.
inline double filter_density(const std::vector<double>& psi, double lambda) {
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    acc += psi[k] * std::polar(1.0, static_cast<double>(k) * lambda);
  }
  return std::norm(acc) / (2.0 * kPi);
}

/// Composite Simpson rule on [lo, hi] with an even number of panels.
template <class F>
double simpson(F&& f, double lo, double hi, std::size_t panels) {
  if (panels % 2 != 0) ++panels;
  const double h = (hi - lo) / static_cast<double>(panels);
  double acc = f(lo) + f(hi);
  for (std::size_t k = 1; k < panels; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(lo + h * static_cast<double>(k));
  return acc * h / 3.0;
}

/// A(s) = (1/2pi) int dl / (c s + 1/w(l)) by Simpson on [0, 2pi], for a
/// caller-supplied profile w = 2 pi f.
template <class W>
std::complex<double> operator_a(W&& w, double c, std::complex<double> s, std::size_t panels) {
  const double h = 2.0 * kPi / static_cast<double>(panels);
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k <= panels; ++k) {
    const double l = h * static_cast<double>(k);
    const double weight = (k == 0 || k == panels) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += weight / (c * s + 1.0 / w(l));
  }
  return acc * h / 3.0 / (2.0 * kPi);
}

/// Marchenko-Pastur density of index c, written out directly.
inline double marchenko_pastur(double c, double x) {
  const double lo = (1.0 - std::sqrt(c)) * (1.0 - std::sqrt(c));
  const double hi = (1.0 + std::sqrt(c)) * (1.0 + std::sqrt(c));
  if (x <= lo || x >= hi) return 0.0;
  return std::sqrt((hi - x) * (x - lo)) / (2.0 * kPi * c * x);
}

/// Deterministic inverse-transform sample of size m from a tabulated density
/// (linear interpolation, trapezoid CDF) with an optional atom at zero.
/// Quantiles are taken at (i + 1/2) / m.
inline std::vector<double> inverse_transform_sample(const std::vector<double>& xs,
                                                    const std::vector<double>& hs, double atom,
                                                    std::size_t m) {
  std::vector<double> cum(xs.size(), 0.0);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    cum[i] = cum[i - 1] + 0.5 * (hs[i] + hs[i - 1]) * (xs[i] - xs[i - 1]);
  }
  const double total = atom + cum.back();
  std::vector<double> out;
  out.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double u = (static_cast<double>(k) + 0.5) / static_cast<double>(m) * total;
    if (u <= atom) {
      out.push_back(0.0);
      continue;
    }
    const double target = u - atom;
    const auto it = std::lower_bound(cum.begin(), cum.end(), target);
    const std::size_t j = std::clamp<std::size_t>(static_cast<std::size_t>(it - cum.begin()), 1, xs.size() - 1);
    // Bisection on the piecewise-quadratic CDF inside [xs[j-1], xs[j]].
    double lo = xs[j - 1], hi = xs[j];
    const double h0 = hs[j - 1], slope = (hs[j] - hs[j - 1]) / (xs[j] - xs[j - 1]);
    for (int it2 = 0; it2 < 60; ++it2) {
      const double mid = 0.5 * (lo + hi);
      const double d = mid - xs[j - 1];
      const double v = cum[j - 1] + h0 * d + 0.5 * slope * d * d;
      (v < target ? lo : hi) = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

}  // namespace oracle
