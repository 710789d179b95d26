#include "lsd/spectral_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <string>

#include "lsd/detail/golden.hpp"
#include "lsd/errors.hpp"
#include "lsd/kernels.hpp"

namespace lsd {

namespace {

constexpr std::size_t kExtremaScanNodes = 4096;
constexpr double kExtremaLambdaTol = 1e-12;

// Min and max of a smooth 2 pi-periodic function: grid scan, then golden
// section on the two cells around the best node.
SpectralExtrema scan_extrema(const std::function<double(double)>& profile) {
  const double h = kTwoPi / static_cast<double>(kExtremaScanNodes);
  std::size_t imin = 0, imax = 0;
  double vmin = profile(0.0), vmax = vmin;
  for (std::size_t j = 1; j < kExtremaScanNodes; ++j) {
    const double v = profile(h * static_cast<double>(j));
    if (v < vmin) {
      vmin = v;
      imin = j;
    }
    if (v > vmax) {
      vmax = v;
      imax = j;
    }
  }
  const auto refine_min = [&](std::size_t i) {
    const double centre = h * static_cast<double>(i);
    auto r = detail::golden_section_minimize(profile, centre - h, centre + h, kExtremaLambdaTol);
    return std::min(r.fx, profile(centre));
  };
  const auto neg = [&](double l) { return -profile(l); };
  const double centre_max = h * static_cast<double>(imax);
  auto rmax = detail::golden_section_minimize(neg, centre_max - h, centre_max + h,
                                              kExtremaLambdaTol);
  return {std::min(vmin, refine_min(imin)), std::max(vmax, -rmax.fx)};
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

void validate(const ModelSpec& spec) {
  if (!std::isfinite(spec.phi) || std::abs(spec.phi) >= 1.0) {
    throw InvalidModel("phi must satisfy |phi| < 1");
  }
  if (!std::isfinite(spec.theta) || std::abs(spec.theta) == 1.0) {
    throw InvalidModel("theta must satisfy |theta| != 1");
  }
  if (!std::isfinite(spec.c) || spec.c <= 0.0) {
    throw InvalidModel("c must be positive");
  }
}

void validate(const FilterModel& model) {
  if (model.filter.coeffs.empty()) throw InvalidModel("filter has no coefficients");
  for (double v : model.filter.coeffs) {
    if (!std::isfinite(v)) throw InvalidModel("filter coefficients must be finite");
  }
  if (!std::isfinite(model.c) || model.c <= 0.0) throw InvalidModel("c must be positive");
}

LinearFilter arma_filter(const ModelSpec& spec, double tol) {
  if (!(std::abs(spec.phi) < 1.0)) throw InvalidModel("phi must satisfy |phi| < 1");
  if (!(tol > 0.0)) throw InvalidModel("filter truncation tolerance must be positive");

  const double lead = spec.phi + spec.theta;
  const double aphi = std::abs(spec.phi);
  const auto tail = [&](std::size_t k) {
    return std::abs(lead) * std::pow(aphi, static_cast<double>(k)) / (1.0 - aphi);
  };

  LinearFilter f;
  f.coeffs = {1.0};
  std::size_t k = 0;
  double psi = lead;  // psi_{k+1}
  while (tail(k) >= tol) {
    f.coeffs.push_back(psi);
    psi *= spec.phi;
    ++k;
  }
  f.tail_bound = tail(k);
  return f;
}

LinearFilter parse_filter(std::istream& in) {
  LinearFilter f;
  f.coeffs.clear();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    double v = 0.0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    if (*begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
      throw ParseError("filter file line " + std::to_string(lineno) + ": not a finite number: '" +
                       t + "'");
    }
    f.coeffs.push_back(v);
  }
  if (f.coeffs.empty()) throw ParseError("filter file contains no coefficients");
  f.tail_bound = 0.0;
  return f;
}

LinearFilter read_filter_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open filter file " + path.string());
  return parse_filter(in);
}

double spectral_density(const LinearFilter& filter, double lambda) {
  double out = 0.0;
  // One-node profile with offset chosen so the node sits at lambda.
  kernels::serial::filter_profile(filter.coeffs, lambda / kTwoPi, std::span<double>(&out, 1));
  return out / kTwoPi;
}

double arma_profile(const ModelSpec& spec, double lambda) {
  const double cl = std::cos(lambda);
  const double num = 1.0 + spec.theta * spec.theta + 2.0 * spec.theta * cl;
  const double den = 1.0 + spec.phi * spec.phi - 2.0 * spec.phi * cl;
  return num / den;
}

double arma_spectral_density(const ModelSpec& spec, double lambda) {
  return arma_profile(spec, lambda) / kTwoPi;
}

double autocovariance(const LinearFilter& filter, std::size_t lag) {
  const auto& c = filter.coeffs;
  double acc = 0.0;
  for (std::size_t j = 0; j + lag < c.size(); ++j) acc += c[j] * c[j + lag];
  return acc;
}

SpectralExtrema spectral_extrema(const ModelSpec& spec) {
  if (std::abs(spec.theta) == 1.0) {
    throw InvalidModel("theta must satisfy |theta| != 1 (spectral minimum would be zero)");
  }
  if (!(std::abs(spec.phi) < 1.0)) throw InvalidModel("phi must satisfy |phi| < 1");
  const double ap = std::abs(spec.phi);
  const double at = std::abs(spec.theta);
  if (spec.theta == 0.0) return {1.0 / ((1.0 + ap) * (1.0 + ap)), 1.0 / ((1.0 - ap) * (1.0 - ap))};
  if (spec.phi == 0.0) return {(1.0 - at) * (1.0 - at), (1.0 + at) * (1.0 + at)};
  return scan_extrema([&](double l) { return arma_profile(spec, l); });
}

SpectralExtrema spectral_extrema(const LinearFilter& filter) {
  if (filter.coeffs.empty()) throw InvalidModel("filter has no coefficients");
  const auto ext = scan_extrema([&](double l) { return kTwoPi * spectral_density(filter, l); });
  if (!(ext.a > 0.0)) throw InvalidModel("spectral minimum is zero (non-invertible filter)");
  return ext;
}

std::vector<double> spectral_profile(const ModelSpec& spec, std::size_t n, double offset) {
  std::vector<double> out(n);
  const double h = kTwoPi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = arma_profile(spec, h * (static_cast<double>(j) + offset));
  return out;
}

std::vector<double> spectral_profile(const LinearFilter& filter, std::size_t n, double offset) {
  std::vector<double> out(n);
  kernels::omp::filter_profile(filter.coeffs, offset, out);
  return out;
}

SzegoDistribution::SzegoDistribution(const LinearFilter& filter, std::size_t nodes) {
  const auto nonzero = std::count_if(filter.coeffs.begin(), filter.coeffs.end(),
                                     [](double v) { return v != 0.0; });
  if (nonzero <= 1) {
    double level = 0.0;
    for (double v : filter.coeffs) level += v * v;
    sorted_ = {level};
    dirac_ = true;
    return;
  }
  sorted_ = spectral_profile(filter, nodes, 0.5);
  std::sort(sorted_.begin(), sorted_.end());
}

double SzegoDistribution::cdf(double x) const {
  if (dirac_) return x >= sorted_.front() ? 1.0 : 0.0;
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double szego_cdf(const LinearFilter& filter, double x) {
  return SzegoDistribution(filter).cdf(x);
}

Matrix toeplitz_covariance(const LinearFilter& filter, std::size_t n) {
  std::vector<double> gamma(n);
  for (std::size_t k = 0; k < n; ++k) gamma[k] = autocovariance(filter, k);
  Matrix t(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t(i, j) = gamma[i > j ? i - j : j - i];
  }
  return t;
}

}  // namespace lsd
