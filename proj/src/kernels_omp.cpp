#include <omp.h>

#include <algorithm>
#include <complex>
#include <exception>
#include <optional>
#include <vector>

#include "lsd/kernels.hpp"
#include "lsd/spectral_model.hpp"

namespace lsd::kernels::omp {

namespace {

// Runs fn(i) for i in [0, n) under `omp for`, capturing the first exception
// by index so the rethrown error does not depend on scheduling.
template <class Fn>
void guarded_for(std::size_t n, Fn&& fn, bool dynamic) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
  if (dynamic) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < count; ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

void filter_profile(std::span<const double> coeffs, double offset, std::span<double> out) {
  const double h = kTwoPi / static_cast<double>(out.size());
  const auto count = static_cast<long long>(out.size());
#pragma omp parallel for schedule(static)
  for (long long j = 0; j < count; ++j) {
    const std::complex<double> w = std::polar(1.0, h * (static_cast<double>(j) + offset));
    std::complex<double> acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * w + coeffs[k];
    out[static_cast<std::size_t>(j)] = std::norm(acc);
  }
}

Matrix covariance(const Matrix& x) {
  const std::size_t p = x.rows();
  const std::size_t n = x.cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  Matrix s(p, p);
  const auto rows = static_cast<long long>(p);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const auto xi = x.row(i);
    for (std::size_t j = i; j < p; ++j) {
      const auto xj = x.row(j);
      double acc = 0.0;
      for (std::size_t t = 0; t < n; ++t) acc += xi[t] * xj[t];
      s(i, j) = acc * inv_n;
    }
  }
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < i; ++j) s(i, j) = s(j, i);
  }
  return s;
}

void fill_rows(Matrix& m, const RowFill& fill) {
  guarded_for(m.rows(), [&](std::size_t i) { fill(i, m.row(i)); }, true);
}

void solve_sweep(const StieltjesOperator& op, std::span<const double> xs,
                 const SolverConfig& cfg, std::span<Solution> out) {
  const std::size_t n = xs.size();
  const std::size_t chunks = std::max<std::size_t>(
      1, std::min<std::size_t>(n, static_cast<std::size_t>(omp_get_max_threads())));
  guarded_for(
      chunks,
      [&](std::size_t c) {
        const std::size_t begin = c * n / chunks;
        const std::size_t end = (c + 1) * n / chunks;
        std::optional<Complex> warm;
        for (std::size_t i = begin; i < end; ++i) {
          out[i] = solve_stieltjes(op, Complex(xs[i], cfg.epsilon), cfg, warm);
          warm = out[i].s;
        }
      },
      false);
}

void map_indices(std::size_t n, const std::function<void(std::size_t)>& fn) {
  guarded_for(n, fn, true);
}

}  // namespace lsd::kernels::omp
