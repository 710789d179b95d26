#include "lsd/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lsd/errors.hpp"
#include "lsd/kernels.hpp"
#include "lsd/support.hpp"

namespace lsd {

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_real_domain(Complex s, double c, const SpectralExtrema& ext) {
  if (s.imag() != 0.0) return;
  const double lo = -1.0 / (ext.a * c);
  const double hi = -1.0 / (ext.b * c);
  if (s.real() >= lo && s.real() <= hi) {
    std::ostringstream msg;
    msg << "real s = " << s.real() << " lies in the pole set [" << lo << ", " << hi << "]";
    throw DomainError(msg.str());
  }
}

// (1/N) sum_j 1 / (c s + inv_w[j])
Complex trapezoid_A(const std::vector<double>& inv_profile, double c, Complex s) {
  const Complex cs = c * s;
  Complex acc = 0.0;
  for (double iw : inv_profile) acc += 1.0 / (cs + iw);
  return acc / static_cast<double>(inv_profile.size());
}

std::vector<double> inverted(std::vector<double> profile) {
  for (double& v : profile) v = 1.0 / v;
  return profile;
}

DensityCurve sweep(const StieltjesOperator& op, const SupportInfo& support, const GridSpec& grid,
                   const SolverConfig& cfg) {
  cfg.validate();
  if (grid.n_points < 2) throw InvalidModel("density grid needs at least 2 points");

  const double width = support.x2 - support.x1;
  double lo = support.x1 - 0.02 * width;
  if (lo <= 0.0) {
    // Stay clear of the atom (c > 1) or the hard edge (c = 1) at the origin.
    lo = support.x1 > 0.0 ? 0.5 * support.x1 : 0.005 * width;
    if (support.c < 1.0) lo = 0.0;
  }
  double hi = support.x2 + 0.02 * width;
  if (grid.x_lo) lo = *grid.x_lo;
  if (grid.x_hi) hi = *grid.x_hi;
  if (!(std::isfinite(lo) && std::isfinite(hi) && hi > lo)) {
    throw InvalidModel("density grid requires finite x_lo < x_hi");
  }

  DensityCurve curve;
  curve.x1 = support.x1;
  curve.x2 = support.x2;
  curve.point_mass_at_zero = support.point_mass_at_zero;
  curve.xs.resize(grid.n_points);
  const double step = (hi - lo) / static_cast<double>(grid.n_points - 1);
  for (std::size_t i = 0; i < grid.n_points; ++i) curve.xs[i] = lo + step * static_cast<double>(i);
  curve.xs.back() = hi;

  std::vector<Solution> sol(grid.n_points);
  kernels::omp::solve_sweep(op, curve.xs, cfg, sol);
  curve.hs.resize(grid.n_points);
  curve.iterations.resize(grid.n_points);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    curve.hs[i] = density_from_stieltjes(sol[i].s);
    curve.iterations[i] = sol[i].iterations;
  }
  return curve;
}

}  // namespace

NonConvergence::NonConvergence(double x, std::complex<double> last, double step, double residual)
    : Error([&] {
        std::ostringstream msg;
        msg.precision(6);
        msg << "fixed point did not converge at x = " << x << " (last s = " << last.real()
            << (last.imag() < 0 ? " - " : " + ") << std::abs(last.imag()) << "i, step = " << step
            << ", residual = " << residual << ")";
        return msg.str();
      }()),
      x_(x),
      last_(last),
      step_(step),
      residual_(residual) {}

Complex complex_sqrt_upper(Complex z) {
  Complex w = std::sqrt(z);
  if (w.imag() < 0.0) w = -w;
  if (w.imag() == 0.0) w = Complex(std::abs(w.real()), 0.0);
  return w;
}

std::optional<ArmaKernel> ArmaKernel::make(const ModelSpec& spec, Complex s) {
  const Complex m = spec.c * s;
  ArmaKernel k;
  k.denom = m * spec.theta - spec.phi;
  if (std::abs(k.denom) < kDenomThreshold) return std::nullopt;
  k.alpha = (m * (1.0 + spec.theta * spec.theta) + 1.0 + spec.phi * spec.phi) / k.denom;
  if (std::abs(k.alpha * k.alpha - 4.0) < kDiscriminantThreshold) return std::nullopt;
  k.eps_alpha = k.alpha.imag() < 0.0 ? -1 : 1;
  return k;
}

Complex operator_A_quadrature(const ModelSpec& spec, Complex s, std::size_t n_nodes) {
  validate(spec);
  if (n_nodes < 16) throw InvalidModel("quadrature needs at least 16 nodes");
  if (s.imag() == 0.0) check_real_domain(s, spec.c, spectral_extrema(spec));
  return trapezoid_A(inverted(spectral_profile(spec, n_nodes)), spec.c, s);
}

Complex operator_A_quadrature(const FilterModel& model, Complex s, std::size_t n_nodes) {
  validate(model);
  if (n_nodes < 16) throw InvalidModel("quadrature needs at least 16 nodes");
  if (s.imag() == 0.0) check_real_domain(s, model.c, spectral_extrema(model.filter));
  return trapezoid_A(inverted(spectral_profile(model.filter, n_nodes)), model.c, s);
}

Complex operator_A_arma(const ModelSpec& spec, Complex s) {
  if (s.imag() < 0.0) return std::conj(operator_A_arma(spec, std::conj(s)));
  if (s.imag() == 0.0) return operator_A_quadrature(spec, s);

  const double phi = spec.phi;
  const double theta = spec.theta;
  const Complex m = spec.c * s;
  if (phi == 0.0 && theta == 0.0) return 1.0 / (m + 1.0);

  const auto kernel = ArmaKernel::make(spec, s);
  if (!kernel) return operator_A_quadrature(spec, s);

  if (theta == 0.0) {
    const Complex q = m + 1.0 + phi * phi;
    return 1.0 / complex_sqrt_upper(q * q - 4.0 * phi * phi);
  }
  if (phi == 0.0) {
    const Complex inv_m = 1.0 / m;
    const Complex q = inv_m + 1.0 + theta * theta;
    return inv_m + inv_m * inv_m / complex_sqrt_upper(q * q - 4.0 * theta * theta);
  }
  const Complex d = kernel->denom;
  const Complex root = complex_sqrt_upper(kernel->alpha * kernel->alpha - 4.0);
  return theta / d -
         (phi + theta) * (1.0 + phi * theta) / (d * d) * static_cast<double>(kernel->eps_alpha) / root;
}

StieltjesOperator StieltjesOperator::closed_form(const ModelSpec& spec) {
  validate(spec);
  StieltjesOperator op;
  op.spec_ = spec;
  op.c_ = spec.c;
  op.closed_form_ = true;
  return op;
}

StieltjesOperator StieltjesOperator::quadrature(const ModelSpec& spec, std::size_t n_nodes) {
  validate(spec);
  StieltjesOperator op;
  op.spec_ = spec;
  op.c_ = spec.c;
  op.closed_form_ = false;
  op.inv_profile_ = inverted(spectral_profile(spec, n_nodes));
  return op;
}

StieltjesOperator StieltjesOperator::quadrature(const FilterModel& model, std::size_t n_nodes) {
  validate(model);
  StieltjesOperator op;
  op.c_ = model.c;
  op.closed_form_ = false;
  op.inv_profile_ = inverted(spectral_profile(model.filter, n_nodes));
  return op;
}

Complex StieltjesOperator::operator()(Complex s) const {
  if (closed_form_) return operator_A_arma(spec_, s);
  return trapezoid_A(inv_profile_, c_, s);
}

double StieltjesOperator::residual(Complex z, Complex s) const {
  return std::abs(z + 1.0 / s - (*this)(s));
}

void SolverConfig::validate() const {
  if (!(epsilon > 0.0)) throw InvalidModel("solver epsilon must be positive");
  if (!(tol > 0.0)) throw InvalidModel("solver tol must be positive");
  if (max_iter < 1) throw InvalidModel("solver max_iter must be at least 1");
  if (!(init_im > 0.0)) throw InvalidModel("solver init_im must be positive");
  if (!(damping > 0.0 && damping <= 1.0)) throw InvalidModel("solver damping must lie in (0, 1]");
  if (damped_max_iter < 1) throw InvalidModel("solver damped_max_iter must be at least 1");
}

Solution solve_stieltjes(const StieltjesOperator& op, Complex z, const SolverConfig& cfg,
                         std::optional<Complex> start) {
  cfg.validate();
  if (!(z.imag() > 0.0)) throw DomainError("solve_stieltjes requires Im(z) > 0");

  Complex s0(0.0, cfg.init_im);
  if (start && start->imag() > 0.0 && is_finite(*start)) s0 = *start;

  Complex last = s0;
  double last_step = 0.0;
  double last_residual = 0.0;

  // s <- (1 - omega) s + omega / (-z + A(s)); A at the new iterate doubles
  // as the residual check and the next step's input.
  const auto run = [&](double omega, int budget, int& used) -> std::optional<Complex> {
    Complex s = s0;
    Complex a = op(s);
    for (used = 1; used <= budget; ++used) {
      const Complex t = 1.0 / (-z + a);
      const Complex next = omega == 1.0 ? t : (1.0 - omega) * s + omega * t;
      const Complex a_next = op(next);
      last_step = std::abs(next - s);
      s = next;
      a = a_next;
      last = s;
      if (!is_finite(s) || !is_finite(a)) return std::nullopt;
      if (last_step < cfg.tol) {
        last_residual = std::abs(z + 1.0 / s - a);
        if (last_residual < cfg.tol) return s;
      }
    }
    last_residual = std::abs(z + 1.0 / s - a);
    return std::nullopt;
  };

  int plain_used = 0;
  if (auto s = run(1.0, cfg.max_iter, plain_used)) return {*s, plain_used, false};
  const int plain_total = std::min(plain_used, cfg.max_iter);

  int damped_used = 0;
  if (auto s = run(cfg.damping, cfg.damped_max_iter, damped_used)) {
    return {*s, plain_total + damped_used, true};
  }
  throw NonConvergence(z.real(), last, last_step, last_residual);
}

Solution solve_stieltjes(const ModelSpec& spec, Complex z, const SolverConfig& cfg) {
  return solve_stieltjes(StieltjesOperator::closed_form(spec), z, cfg);
}

double density_from_stieltjes(Complex s) {
  const double h = s.imag() / M_PI;
  if (h >= 0.0) return h;
  if (h > -1e-12) return 0.0;
  throw InternalError("negative density from the Stieltjes solve");
}

double density_at(const StieltjesOperator& op, double x, const SolverConfig& cfg) {
  if (!std::isfinite(x)) throw DomainError("density_at requires finite x");
  return density_from_stieltjes(solve_stieltjes(op, Complex(x, cfg.epsilon), cfg).s);
}

double density_at(const ModelSpec& spec, double x, const SolverConfig& cfg) {
  return density_at(StieltjesOperator::closed_form(spec), x, cfg);
}

DensityCurve density_curve(const ModelSpec& spec, const GridSpec& grid, const SolverConfig& cfg) {
  validate(spec);
  return sweep(StieltjesOperator::closed_form(spec), find_support(spec), grid, cfg);
}

DensityCurve density_curve(const FilterModel& model, const GridSpec& grid,
                           const SolverConfig& cfg) {
  validate(model);
  return sweep(StieltjesOperator::quadrature(model), find_support(model), grid, cfg);
}

double mp_density_reference(double c, double x) {
  if (!(c > 0.0)) throw InvalidModel("c must be positive");
  const double rc = std::sqrt(c);
  const double a = (1.0 - rc) * (1.0 - rc);
  const double b = (1.0 + rc) * (1.0 + rc);
  if (!(x > a && x < b) || x <= 0.0) return 0.0;
  return std::sqrt((b - x) * (x - a)) / (2.0 * M_PI * c * x);
}

std::vector<double> cumulative_trapezoid(const DensityCurve& curve) {
  std::vector<double> cum(curve.xs.size(), 0.0);
  for (std::size_t i = 1; i < curve.xs.size(); ++i) {
    cum[i] = cum[i - 1] + 0.5 * (curve.hs[i] + curve.hs[i - 1]) * (curve.xs[i] - curve.xs[i - 1]);
  }
  return cum;
}

double curve_mass(const DensityCurve& curve) {
  const auto cum = cumulative_trapezoid(curve);
  return cum.empty() ? 0.0 : cum.back();
}

}  // namespace lsd
