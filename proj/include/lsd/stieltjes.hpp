#pragma once

// Stieltjes transform of the limiting spectral distribution.
//
// For a model with spectral profile w = 2 pi f and aspect ratio c, the
// Stieltjes transform s(z) solves
//
//     z = -1/s + A(s),    A(s) = (1/2pi) int_0^{2pi} dl / (c s + 1/w(l)),
//
// and the density is recovered as h(x) = Im s(x + i eps) / pi. The fixed
// point s <- 1 / (-z + A(s)) maps C+ into itself, so every iterate stays a
// valid Stieltjes value.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "lsd/spectral_model.hpp"

namespace lsd {

using Complex = std::complex<double>;

/// Square root with nonnegative imaginary part; the nonnegative real root
/// on [0, inf).
Complex complex_sqrt_upper(Complex z);

/// Pieces of the ARMA(1,1) residue formula for A at a given s:
///   denom = c s theta - phi
///   alpha = (c s (1 + theta^2) + 1 + phi^2) / denom
///   eps_alpha = sgn Im(alpha), with +1 when Im(alpha) == 0.
struct ArmaKernel {
  Complex alpha;
  int eps_alpha = 1;
  Complex denom;

  static constexpr double kDenomThreshold = 1e-8;
  static constexpr double kDiscriminantThreshold = 1e-12;

  /// Empty when the closed form is numerically singular at s.
  static std::optional<ArmaKernel> make(const ModelSpec& spec, Complex s);
};

inline constexpr std::size_t kDefaultQuadratureNodes = 4096;
inline constexpr std::size_t kOracleQuadratureNodes = std::size_t{1} << 14;

/// Periodic trapezoid approximation of A(s). Real s inside the pole set
/// [-1/(ac), -1/(bc)] is rejected with DomainError.
Complex operator_A_quadrature(const ModelSpec& spec, Complex s,
                              std::size_t n_nodes = kDefaultQuadratureNodes);
Complex operator_A_quadrature(const FilterModel& model, Complex s,
                              std::size_t n_nodes = kDefaultQuadratureNodes);

/// Closed-form A(s) for ARMA(1,1), with AR(1), MA(1) and white-noise
/// reductions. Falls back to quadrature on the singular set of the formula.
/// Im(s) < 0 is answered through conjugate symmetry.
Complex operator_A_arma(const ModelSpec& spec, Complex s);

/// A(s) for one model: either the ARMA closed form or a precomputed profile
/// for quadrature. Cheap to copy for the closed form.
class StieltjesOperator {
 public:
  static StieltjesOperator closed_form(const ModelSpec& spec);
  static StieltjesOperator quadrature(const ModelSpec& spec,
                                      std::size_t n_nodes = kDefaultQuadratureNodes);
  static StieltjesOperator quadrature(const FilterModel& model,
                                      std::size_t n_nodes = kDefaultQuadratureNodes);

  Complex operator()(Complex s) const;
  /// |z - (-1/s + A(s))|
  double residual(Complex z, Complex s) const;
  double c() const noexcept { return c_; }

 private:
  StieltjesOperator() = default;

  ModelSpec spec_{};
  double c_ = 1.0;
  std::vector<double> inv_profile_;  // 1 / (2 pi f) at the nodes; empty for closed form
  bool closed_form_ = true;
};

struct SolverConfig {
  double epsilon = 1e-6;   ///< imaginary offset of z = x + i eps
  double tol = 1e-10;      ///< bound on |s_{k+1} - s_k| and on the equation residual
  int max_iter = 2000;     ///< plain fixed-point budget
  double init_im = 1.0;    ///< s_0 = i * init_im
  double damping = 0.5;    ///< omega of the retry s <- (1-omega) s + omega T(s)
  int damped_max_iter = 200000;

  void validate() const;
};

struct Solution {
  Complex s;
  int iterations = 0;  ///< total, plain + damped
  bool damped = false;
};

/// Fixed-point solve of z = -1/s + A(s) for Im z > 0. Stops when both the
/// step |s_{k+1} - s_k| and the residual are below cfg.tol. A plain run is
/// followed, if needed, by one damped retry; if that fails too,
/// NonConvergence is thrown.
Solution solve_stieltjes(const StieltjesOperator& op, Complex z, const SolverConfig& cfg = {},
                         std::optional<Complex> start = std::nullopt);
Solution solve_stieltjes(const ModelSpec& spec, Complex z, const SolverConfig& cfg = {});

/// Im s(x + i eps) / pi, with round-off in (-1e-12, 0) clamped to 0.
double density_at(const StieltjesOperator& op, double x, const SolverConfig& cfg = {});
double density_at(const ModelSpec& spec, double x, const SolverConfig& cfg = {});

/// Clamp helper shared by the sweep kernels. Throws InternalError below -1e-12.
double density_from_stieltjes(Complex s);

struct GridSpec {
  std::size_t n_points = 400;
  std::optional<double> x_lo;  ///< auto: x1 - 2% of the support width
  std::optional<double> x_hi;  ///< auto: x2 + 2% of the support width
};

struct DensityCurve {
  std::vector<double> xs;
  std::vector<double> hs;
  double x1 = 0.0;
  double x2 = 0.0;
  double point_mass_at_zero = 0.0;
  std::vector<int> iterations;
};

/// Evaluates the density on a uniform grid. Warm starts run within each
/// parallel chunk, so values agree across thread counts only up to tol.
DensityCurve density_curve(const ModelSpec& spec, const GridSpec& grid = {},
                           const SolverConfig& cfg = {});
DensityCurve density_curve(const FilterModel& model, const GridSpec& grid = {},
                           const SolverConfig& cfg = {});

/// Marchenko-Pastur density of index c, without the 1 - 1/c atom.
double mp_density_reference(double c, double x);

/// Cumulative trapezoid integral of a density curve, same length as xs.
std::vector<double> cumulative_trapezoid(const DensityCurve& curve);
double curve_mass(const DensityCurve& curve);

}  // namespace lsd
