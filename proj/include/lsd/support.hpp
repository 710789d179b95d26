#pragma once

// Support of the limiting spectral distribution.
//
// Restricted to real s outside the pole set [-1/(ac), -1/(bc)], the inverse
// map g(s) = -1/s + A(s) is real. The edges of the absolutely continuous part
// are its local extrema: a maximum s1 (on (0, inf) when c <= 1, on
// (-inf, -1/(ac)) when c > 1) and a minimum s2 on (-1/(bc), 0).

#include <cstddef>
#include <vector>

#include "lsd/spectral_model.hpp"

namespace lsd {

struct SupportInfo {
  double x1 = 0.0;
  double x2 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double a = 1.0;
  double b = 1.0;
  double point_mass_at_zero = 0.0;
  double c = 1.0;
  /// c == 1: no interior maximum exists and x1 is pinned at 0.
  bool hard_edge_at_zero = false;
  /// Number of g' sign changes seen by the scans (1 each for a regular model).
  int s1_sign_changes = 0;
  int s2_sign_changes = 0;
};

/// Real trace of g, by periodic-trapezoid quadrature of the profile.
/// Quadrature is 4096 nodes, raised to 2^16 near the pole set. Throws
/// DomainError for s = 0 or s inside [-1/(ac), -1/(bc)].
class RealInverseMap {
 public:
  static constexpr std::size_t kCoarseNodes = 4096;
  static constexpr std::size_t kFineNodes = std::size_t{1} << 16;

  explicit RealInverseMap(const ModelSpec& spec);
  explicit RealInverseMap(const FilterModel& model);

  double operator()(double s) const;

  /// Central difference with step 1e-6 max(1, |s|), shrunk to stay inside the domain.
  double derivative(double s) const;

  bool in_domain(double s) const;
  double pole_lo() const noexcept { return pole_lo_; }  ///< -1/(ac)
  double pole_hi() const noexcept { return pole_hi_; }  ///< -1/(bc)
  double c() const noexcept { return c_; }
  const SpectralExtrema& extrema() const noexcept { return extrema_; }

 private:
  void init();
  double distance_to_domain_edge(double s) const;
  bool needs_fine(double s) const;
  // Half-period profiles with trapezoid end weights folded in; the profile is
  // even in lambda so the half range carries the full integral.
  static double integrate(const std::vector<double>& half_weights,
                          const std::vector<double>& half_profile, double cs);

  double c_ = 1.0;
  SpectralExtrema extrema_{};
  double pole_lo_ = -1.0;
  double pole_hi_ = -1.0;
  std::vector<double> coarse_, coarse_w_;
  std::vector<double> fine_, fine_w_;
};

double g_real(const ModelSpec& spec, double s);
double g_real(const FilterModel& model, double s);

inline double point_mass_at_zero(double c) { return c > 1.0 ? 1.0 - 1.0 / c : 0.0; }

SupportInfo find_support(const ModelSpec& spec);
SupportInfo find_support(const FilterModel& model);
SupportInfo find_support(const RealInverseMap& g);

}  // namespace lsd
