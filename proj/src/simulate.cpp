#include "lsd/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "lsd/errors.hpp"
#include "lsd/kernels.hpp"

namespace lsd {

namespace {

using Engine = std::mt19937_64;

double atom_tolerance(std::span<const double> sorted) {
  const double top = sorted.empty() ? 0.0 : sorted.back();
  return 1e-8 * std::max(1.0, top);
}

}  // namespace

void PanelConfig::validate() const {
  if (p < 1 || n < 1) throw InvalidModel("panel dimensions p and n must be at least 1");
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t row_seed(std::uint64_t seed, std::size_t row) noexcept {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(row) + 1));
}

std::size_t default_burn_in(const ModelSpec& model) {
  return 1000 + arma_filter(model).coeffs.size();
}

Matrix simulate_panel(const ModelSpec& model, const PanelConfig& cfg) {
  validate(model);
  cfg.validate();
  const std::size_t burn = cfg.burn_in.value_or(default_burn_in(model));
  const double phi = model.phi;
  const double theta = model.theta;
  Matrix x(cfg.p, cfg.n);
  kernels::omp::fill_rows(x, [&](std::size_t row, std::span<double> out) {
    Engine gen(row_seed(cfg.seed, row));
    std::normal_distribution<double> noise;
    double z_prev = 0.0;
    double e_prev = 0.0;
    for (std::size_t t = 0; t < burn + out.size(); ++t) {
      const double e = noise(gen);
      const double z = phi * z_prev + e + theta * e_prev;
      if (t >= burn) out[t - burn] = z;
      z_prev = z;
      e_prev = e;
    }
  });
  return x;
}

Matrix simulate_panel(const LinearFilter& filter, const PanelConfig& cfg) {
  if (filter.coeffs.empty()) throw InvalidModel("filter has no coefficients");
  cfg.validate();
  const std::size_t order = filter.coeffs.size() - 1;
  const std::size_t burn = cfg.burn_in.value_or(0);
  Matrix x(cfg.p, cfg.n);
  kernels::omp::fill_rows(x, [&](std::size_t row, std::span<double> out) {
    Engine gen(row_seed(cfg.seed, row));
    std::normal_distribution<double> noise;
    std::vector<double> e(burn + order + out.size());
    for (double& v : e) v = noise(gen);
    for (std::size_t t = 0; t < out.size(); ++t) {
      const std::size_t now = burn + order + t;
      double acc = 0.0;
      for (std::size_t k = 0; k <= order; ++k) acc += filter.coeffs[k] * e[now - k];
      out[t] = acc;
    }
  });
  return x;
}

Matrix sample_covariance(const Matrix& x) {
  if (x.rows() < 1 || x.cols() < 1) throw InvalidModel("sample_covariance needs p, n >= 1");
  return kernels::omp::covariance(x);
}

EsdSample esd_from_panel(const Matrix& panel, const PanelConfig& cfg) {
  const Matrix s = sample_covariance(panel);
  EsdSample out;
  out.config = cfg;
  for (std::size_t i = 0; i < s.rows(); ++i) out.trace += s(i, i);
  out.eigenvalues = symmetric_eigenvalues(s);
  out.min_raw_eigenvalue = out.eigenvalues.front();
  const double top = std::max(1.0, out.eigenvalues.back());
  if (out.min_raw_eigenvalue < -1e-9 * top) {
    std::ostringstream msg;
    msg << "sample covariance has eigenvalue " << out.min_raw_eigenvalue
        << " below the round-off floor";
    throw InternalError(msg.str());
  }
  for (double& v : out.eigenvalues) v = std::max(v, 0.0);
  return out;
}

EsdSample simulate_esd(const ModelSpec& model, const PanelConfig& cfg) {
  EsdSample out = esd_from_panel(simulate_panel(model, cfg), cfg);
  out.model = model;
  return out;
}

double curve_cdf(const DensityCurve& curve, std::span<const double> cumulative, double x) {
  const auto& xs = curve.xs;
  const auto& hs = curve.hs;
  double mass = 0.0;
  if (x >= xs.back()) {
    mass = cumulative.back();
  } else if (x > xs.front()) {
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    const double u = x - xs[i];
    const double slope = (hs[i + 1] - hs[i]) / (xs[i + 1] - xs[i]);
    mass = cumulative[i] + hs[i] * u + 0.5 * slope * u * u;
  }
  if (x >= 0.0) mass += curve.point_mass_at_zero;
  return mass;
}

EsdComparison esd_vs_density(std::span<const double> eigenvalues, const DensityCurve& curve) {
  if (eigenvalues.empty()) throw InvalidModel("esd_vs_density needs at least one eigenvalue");
  if (curve.xs.size() < 2 || curve.xs.size() != curve.hs.size()) {
    throw InvalidModel("esd_vs_density needs a curve with at least two points");
  }
  std::vector<double> ev(eigenvalues.begin(), eigenvalues.end());
  std::sort(ev.begin(), ev.end());

  const bool has_atom = curve.point_mass_at_zero > 0.0;
  const double atom_tol = atom_tolerance(ev);
  const auto in_atom = [&](double v) { return has_atom && std::abs(v) <= atom_tol; };
  if (has_atom) {
    for (double& v : ev) {
      if (in_atom(v)) v = 0.0;
    }
  }

  const double delta = 0.02 * (curve.x2 - curve.x1);
  EsdComparison out;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : ev) {
    if (in_atom(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (v < curve.x1 - delta || v > curve.x2 + delta) ++out.n_outside_support;
  }
  if (lo < curve.xs.front() - delta || hi > curve.xs.back() + delta) {
    std::ostringstream msg;
    msg << "eigenvalues span [" << lo << ", " << hi << "] beyond the curve grid ["
        << curve.xs.front() << ", " << curve.xs.back() << "] by more than " << delta;
    throw GridCoverageError(msg.str());
  }

  const auto cum = cumulative_trapezoid(curve);
  const double p = static_cast<double>(ev.size());
  for (std::size_t i = 0; i < ev.size();) {
    std::size_t j = i;
    while (j < ev.size() && ev[j] == ev[i]) ++j;  // ties share the ECDF value
    const double ecdf = static_cast<double>(j) / p;
    out.ks_distance = std::max(out.ks_distance, std::abs(ecdf - curve_cdf(curve, cum, ev[i])));
    i = j;
  }
  return out;
}

EsdComparison esd_vs_density(const EsdSample& sample, const DensityCurve& curve) {
  return esd_vs_density(sample.eigenvalues, curve);
}

}  // namespace lsd
