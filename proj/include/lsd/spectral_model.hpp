#pragma once

// Linear filters, ARMA(1,1) models and their spectral quantities.
//
// Conventions: the spectral density of z_t = sum_k psi_k eps_{t-k} with
// unit-variance white noise is f(l) = |sum_k psi_k e^{ikl}|^2 / (2 pi).
// Most of the machinery works with the "profile" 2 pi f, whose range [a, b]
// is the support of the Szego limit H of the Toeplitz covariance spectra.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "lsd/matrix.hpp"

namespace lsd {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Truncated causal filter psi_0..psi_K. `tail_bound` bounds the discarded
/// sum_{k>K} |psi_k|.
struct LinearFilter {
  std::vector<double> coeffs{1.0};
  double tail_bound = 0.0;
};

/// ARMA(1,1) coordinates z_t = phi z_{t-1} + eps_t + theta eps_{t-1}, with
/// dimension-to-sample-size ratio c.
struct ModelSpec {
  double phi = 0.0;
  double theta = 0.0;
  double c = 1.0;
};

/// A general linear filter with an aspect ratio; solved by quadrature only.
struct FilterModel {
  LinearFilter filter;
  double c = 1.0;
};

struct SpectralExtrema {
  double a = 1.0;  ///< min of 2 pi f
  double b = 1.0;  ///< max of 2 pi f
};

/// Throws InvalidModel unless |phi| < 1, |theta| != 1 and c > 0.
void validate(const ModelSpec& spec);
/// Throws InvalidModel unless the filter is nonempty, finite and c > 0.
void validate(const FilterModel& model);

/// Causal expansion psi_0 = 1, psi_k = (phi + theta) phi^{k-1}, truncated at
/// the smallest K whose analytic tail |phi+theta| |phi|^K / (1-|phi|) is
/// below `tol`.
LinearFilter arma_filter(const ModelSpec& spec, double tol = 1e-12);

/// One coefficient per line, psi_0 first; blank lines and lines starting
/// with '#' are skipped. Throws ParseError.
LinearFilter parse_filter(std::istream& in);
LinearFilter read_filter_file(const std::filesystem::path& path);

double spectral_density(const LinearFilter& filter, double lambda);
double arma_spectral_density(const ModelSpec& spec, double lambda);

/// 2 pi f(lambda) for the ARMA(1,1) model, i.e. |1+theta e^{il}|^2 / |1-phi e^{il}|^2.
double arma_profile(const ModelSpec& spec, double lambda);

/// gamma_k = sum_j psi_j psi_{j+k}.
double autocovariance(const LinearFilter& filter, std::size_t lag);

/// Closed forms for AR(1) and MA(1); general ARMA(1,1) goes through the
/// grid scan + golden-section refinement used for generic filters.
SpectralExtrema spectral_extrema(const ModelSpec& spec);
SpectralExtrema spectral_extrema(const LinearFilter& filter);

/// Values of 2 pi f at lambda_j = 2 pi (j + offset) / n, j = 0..n-1.
std::vector<double> spectral_profile(const ModelSpec& spec, std::size_t n, double offset = 0.0);
std::vector<double> spectral_profile(const LinearFilter& filter, std::size_t n,
                                     double offset = 0.0);

/// Szego limit H(x) = (1/2pi) |{l : 2 pi f(l) <= x}|, evaluated by the
/// midpoint rule. Construction sorts the profile once, so each query is a
/// binary search. Flat spectra (a single nonzero coefficient) give the exact
/// Dirac step.
class SzegoDistribution {
 public:
  static constexpr std::size_t kDefaultNodes = std::size_t{1} << 16;

  explicit SzegoDistribution(const LinearFilter& filter, std::size_t nodes = kDefaultNodes);

  double cdf(double x) const;
  double lower() const noexcept { return sorted_.front(); }
  double upper() const noexcept { return sorted_.back(); }

 private:
  std::vector<double> sorted_;
  bool dirac_ = false;
};

double szego_cdf(const LinearFilter& filter, double x);

/// Symmetric Toeplitz matrix T(s, t) = gamma_{|t-s|}.
Matrix toeplitz_covariance(const LinearFilter& filter, std::size_t n);

}  // namespace lsd
