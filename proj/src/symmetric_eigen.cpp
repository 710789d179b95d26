#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "lsd/errors.hpp"
#include "lsd/simulate.hpp"

namespace lsd {

namespace {

constexpr int kMaxSweeps = 50;

// Householder reduction of a symmetric matrix to tridiagonal form (d on the
// diagonal, e below it). Works on a private copy; no transforms are kept.
void tridiagonalize(Matrix a, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = a.rows();
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  std::vector<double> v(n), p(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm = std::hypot(norm, a(i, k));
    d[k] = a(k, k);
    if (norm == 0.0) {
      e[k] = 0.0;
      continue;
    }
    const double x0 = a(k + 1, k);
    const double alpha = x0 > 0.0 ? -norm : norm;
    e[k] = alpha;

    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a(i, k);
      if (i == k + 1) v[i] -= alpha;
      vnorm2 += v[i] * v[i];
    }
    const double beta = 2.0 / vnorm2;

    // p = beta A v, w = p - (beta/2)(v^T p) v, A <- A - v w^T - w v^T
    double vp = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) acc += a(i, j) * v[j];
      p[i] = beta * acc;
      vp += v[i] * p[i];
    }
    const double kc = 0.5 * beta * vp;
    for (std::size_t i = k + 1; i < n; ++i) p[i] -= kc * v[i];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= i; ++j) {
        const double upd = a(i, j) - v[i] * p[j] - p[i] * v[j];
        a(i, j) = upd;
        a(j, i) = upd;
      }
    }
  }
  if (n >= 2) {
    d[n - 2] = a(n - 2, n - 2);
    e[n - 2] = a(n - 1, n - 2);
  }
  if (n >= 1) d[n - 1] = a(n - 1, n - 1);
}

// Implicit-shift QL on a symmetric tridiagonal matrix; e[i] couples i and i+1.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  const double eps = std::numeric_limits<double>::epsilon();
  if (n == 0) return;
  e[static_cast<std::size_t>(n - 1)] = 0.0;

  for (int l = 0; l < n; ++l) {
    int sweeps = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++sweeps > kMaxSweeps) {
        std::ostringstream msg;
        msg << "QL iteration did not deflate eigenvalue " << l << " within " << kMaxSweeps
            << " sweeps";
        throw EigenNoConvergence(msg.str());
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i = m - 1;
      bool underflow = false;
      for (; i >= l; --i) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const Matrix& s) {
  if (s.rows() != s.cols()) throw DomainError("symmetric_eigenvalues requires a square matrix");
  const std::size_t n = s.rows();
  double scale = 0.0;
  for (double v : s.data()) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(s(i, j) - s(j, i)) > 1e-10 * std::max(scale, 1e-300)) {
        throw DomainError("symmetric_eigenvalues requires a symmetric matrix");
      }
    }
  }
  std::vector<double> d, e;
  tridiagonalize(s, d, e);
  tridiagonal_ql(d, e);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace lsd
