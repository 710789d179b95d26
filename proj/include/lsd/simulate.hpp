#pragma once

// Monte Carlo oracle for the limiting spectral distribution: p independent
// linear-process rows observed at n epochs, their sample covariance and its
// eigenvalues.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lsd/matrix.hpp"
#include "lsd/spectral_model.hpp"
#include "lsd/stieltjes.hpp"

namespace lsd {

struct PanelConfig {
  std::size_t p = 400;
  std::size_t n = 2000;
  std::uint64_t seed = 0;
  std::optional<std::size_t> burn_in;  ///< default: 1000 + filter length

  double empirical_c() const { return static_cast<double>(p) / static_cast<double>(n); }
  void validate() const;
};

struct EsdSample {
  std::vector<double> eigenvalues;  ///< ascending, negative round-off clamped to 0
  PanelConfig config;
  ModelSpec model;
  double trace = 0.0;             ///< trace of S_n
  double min_raw_eigenvalue = 0;  ///< before clamping
};

struct EsdComparison {
  double ks_distance = 0.0;
  std::size_t n_outside_support = 0;
};

/// Stateless 64-bit mixer; row generators are seeded with
/// mix(seed ^ mix(row + 1)).
std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t row_seed(std::uint64_t seed, std::size_t row) noexcept;

std::size_t default_burn_in(const ModelSpec& model);

/// p x n panel; row i follows z_t = phi z_{t-1} + e_t + theta e_{t-1} with
/// standard Gaussian innovations from its own generator.
Matrix simulate_panel(const ModelSpec& model, const PanelConfig& cfg);
/// Same for a general filter: X_it = sum_k psi_k e_{i,t-k}, exact with K
/// pre-sample innovations.
Matrix simulate_panel(const LinearFilter& filter, const PanelConfig& cfg);

/// (1/n) X X^T, one triangle computed and mirrored.
Matrix sample_covariance(const Matrix& x);

/// All eigenvalues of a symmetric matrix, ascending. Householder
/// tridiagonalization followed by implicit-shift QL.
std::vector<double> symmetric_eigenvalues(const Matrix& s);

EsdSample simulate_esd(const ModelSpec& model, const PanelConfig& cfg);
/// Eigenvalues of (1/n) X X^T for an already simulated panel; `model` is left default.
EsdSample esd_from_panel(const Matrix& panel, const PanelConfig& cfg);

/// KS distance at the sample eigenvalues between the ECDF and the curve's
/// CDF (cumulative trapezoid plus the atom at zero), and the count of
/// eigenvalues beyond the support by more than 2% of its width. Eigenvalues
/// in the atom at zero are not counted as outside.
EsdComparison esd_vs_density(std::span<const double> eigenvalues, const DensityCurve& curve);
EsdComparison esd_vs_density(const EsdSample& sample, const DensityCurve& curve);

/// CDF of the density curve at x (cumulative trapezoid of the linear
/// interpolant plus the atom for x >= 0).
double curve_cdf(const DensityCurve& curve, std::span<const double> cumulative, double x);

}  // namespace lsd
