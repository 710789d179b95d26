#include <complex>
#include <optional>

#include "lsd/kernels.hpp"
#include "lsd/spectral_model.hpp"

namespace lsd::kernels::serial {

void filter_profile(std::span<const double> coeffs, double offset, std::span<double> out) {
  const double h = kTwoPi / static_cast<double>(out.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const std::complex<double> w = std::polar(1.0, h * (static_cast<double>(j) + offset));
    std::complex<double> acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * w + coeffs[k];
    out[j] = std::norm(acc);
  }
}

Matrix covariance(const Matrix& x) {
  const std::size_t p = x.rows();
  const std::size_t n = x.cols();
  Matrix s(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      double acc = 0.0;
      for (std::size_t t = 0; t < n; ++t) acc += x(i, t) * x(j, t);
      s(i, j) = acc / static_cast<double>(n);
    }
  }
  return s;
}

void fill_rows(Matrix& m, const RowFill& fill) {
  for (std::size_t i = 0; i < m.rows(); ++i) fill(i, m.row(i));
}

void solve_sweep(const StieltjesOperator& op, std::span<const double> xs,
                 const SolverConfig& cfg, std::span<Solution> out) {
  std::optional<Complex> warm;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i] = solve_stieltjes(op, Complex(xs[i], cfg.epsilon), cfg, warm);
    warm = out[i].s;
  }
}

void map_indices(std::size_t n, const std::function<void(std::size_t)>& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace lsd::kernels::serial
