#include "lsd/support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "lsd/detail/golden.hpp"
#include "lsd/errors.hpp"
#include "lsd/kernels.hpp"

namespace lsd {

namespace {

constexpr double kScanLo = -30.0;
constexpr double kScanHi = 30.0;
constexpr std::size_t kScanNodes = 2000;
constexpr double kLocateTol = 1e-10;
// Scan nodes closer than this (relative) to the pole set are not used for
// bracketing: the profile's rounding dominates g there.
constexpr double kPoleGuard = 1e-10;

struct HalfProfile {
  std::vector<double> inv;  // 1 / (2 pi f) on [0, pi]
  std::vector<double> weights;
};

// Trapezoid weights for an even periodic integrand folded onto [0, pi].
HalfProfile fold(const std::vector<double>& full) {
  const std::size_t n = full.size();
  const std::size_t half = n / 2;
  HalfProfile hp;
  hp.inv.resize(half + 1);
  hp.weights.assign(half + 1, 2.0 / static_cast<double>(n));
  for (std::size_t j = 0; j <= half; ++j) hp.inv[j] = 1.0 / full[j];
  hp.weights.front() = 1.0 / static_cast<double>(n);
  hp.weights.back() = 1.0 / static_cast<double>(n);
  return hp;
}

struct SearchMap {
  std::function<double(double)> to_s;
};

struct Located {
  double s = 0.0;
  double x = 0.0;
  int sign_changes = 0;
  bool found = false;
};

// Scans g' along s = to_s(t) for t in [-30, 30] and refines the best
// bracketed extremum by golden section in t.
Located locate_extremum(const RealInverseMap& g, const SearchMap& map, bool maximum) {
  std::vector<double> ts(kScanNodes);
  std::vector<double> slope(kScanNodes, std::numeric_limits<double>::quiet_NaN());
  const double dt = (kScanHi - kScanLo) / static_cast<double>(kScanNodes - 1);
  for (std::size_t k = 0; k < kScanNodes; ++k) ts[k] = kScanLo + dt * static_cast<double>(k);

  const auto near_pole = [&](double s) {
    const double d = std::min(std::abs(s - g.pole_lo()), std::abs(s - g.pole_hi()));
    return d < kPoleGuard * std::abs(g.pole_hi());
  };

  kernels::omp::map_indices(kScanNodes, [&](std::size_t k) {
    const double s = map.to_s(ts[k]);
    if (!g.in_domain(s) || near_pole(s)) return;
    slope[k] = g.derivative(s);
  });

  Located best;
  std::size_t prev = kScanNodes;
  for (std::size_t k = 0; k < kScanNodes; ++k) {
    if (!std::isfinite(slope[k]) || slope[k] == 0.0) continue;
    if (prev != kScanNodes && (slope[prev] > 0.0) != (slope[k] > 0.0)) {
      ++best.sign_changes;
      const double sign = maximum ? -1.0 : 1.0;
      const auto objective = [&](double t) { return sign * g(map.to_s(t)); };
      const auto width = [&](double lo, double hi) {
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(lo))) {
          return 0.0;
        }
        return std::abs(map.to_s(hi) - map.to_s(lo));
      };
      const auto r = detail::golden_section_minimize(objective, ts[prev], ts[k], kLocateTol, width);
      const double s = map.to_s(r.x);
      const double x = g(s);
      const bool better = !best.found || (maximum ? x > best.x : x < best.x);
      if (better) {
        best.s = s;
        best.x = x;
        best.found = true;
      }
    }
    prev = k;
  }
  return best;
}

}  // namespace

RealInverseMap::RealInverseMap(const ModelSpec& spec) {
  validate(spec);
  c_ = spec.c;
  extrema_ = spectral_extrema(spec);
  const auto coarse = fold(spectral_profile(spec, kCoarseNodes));
  const auto fine = fold(spectral_profile(spec, kFineNodes));
  coarse_ = coarse.inv;
  coarse_w_ = coarse.weights;
  fine_ = fine.inv;
  fine_w_ = fine.weights;
  init();
}

RealInverseMap::RealInverseMap(const FilterModel& model) {
  validate(model);
  c_ = model.c;
  extrema_ = spectral_extrema(model.filter);
  const auto coarse = fold(spectral_profile(model.filter, kCoarseNodes));
  const auto fine = fold(spectral_profile(model.filter, kFineNodes));
  coarse_ = coarse.inv;
  coarse_w_ = coarse.weights;
  fine_ = fine.inv;
  fine_w_ = fine.weights;
  init();
}

void RealInverseMap::init() {
  pole_lo_ = -1.0 / (extrema_.a * c_);
  pole_hi_ = -1.0 / (extrema_.b * c_);
}

bool RealInverseMap::in_domain(double s) const {
  return std::isfinite(s) && s != 0.0 && (s < pole_lo_ || s > pole_hi_);
}

double RealInverseMap::distance_to_domain_edge(double s) const {
  return std::min({std::abs(s), std::abs(s - pole_lo_), std::abs(s - pole_hi_)});
}

bool RealInverseMap::needs_fine(double s) const {
  // Within a factor 10 of the pole set.
  return s < 0.0 && s >= 10.0 * pole_lo_ && s <= 0.1 * pole_hi_;
}

double RealInverseMap::integrate(const std::vector<double>& half_weights,
                                 const std::vector<double>& half_profile, double cs) {
  double acc = 0.0;
  for (std::size_t j = 0; j < half_profile.size(); ++j) acc += half_weights[j] / (cs + half_profile[j]);
  return acc;
}

double RealInverseMap::operator()(double s) const {
  if (!in_domain(s)) {
    std::ostringstream msg;
    msg << "g is undefined at s = " << s << " (excluded: 0 and [" << pole_lo_ << ", " << pole_hi_
        << "])";
    throw DomainError(msg.str());
  }
  const double cs = c_ * s;
  const double a = needs_fine(s) ? integrate(fine_w_, fine_, cs) : integrate(coarse_w_, coarse_, cs);
  return -1.0 / s + a;
}

double RealInverseMap::derivative(double s) const {
  double h = 1e-6 * std::max(1.0, std::abs(s));
  h = std::min(h, 0.5 * distance_to_domain_edge(s));
  return ((*this)(s + h) - (*this)(s - h)) / (2.0 * h);
}

double g_real(const ModelSpec& spec, double s) { return RealInverseMap(spec)(s); }

double g_real(const FilterModel& model, double s) { return RealInverseMap(model)(s); }

SupportInfo find_support(const RealInverseMap& g) {
  SupportInfo info;
  info.c = g.c();
  info.a = g.extrema().a;
  info.b = g.extrema().b;
  info.point_mass_at_zero = point_mass_at_zero(info.c);

  const double pole_lo = g.pole_lo();
  const double pole_hi = g.pole_hi();

  // Upper edge: minimum on (-1/(bc), 0).
  const SearchMap lower_gap{[pole_hi](double t) { return pole_hi / (1.0 + std::exp(-t)); }};
  const Located upper = locate_extremum(g, lower_gap, false);
  info.s2_sign_changes = upper.sign_changes;
  if (!upper.found) {
    throw BracketError("no sign change of g' on (-1/(bc), 0); cannot locate the upper support edge");
  }

  // Lower edge: maximum on (0, inf) for c <= 1, on (-inf, -1/(ac)) for c > 1.
  const bool above_one = info.c > 1.0;
  const SearchMap lower_map =
      above_one ? SearchMap{[pole_lo](double t) { return pole_lo - std::exp(t); }}
                : SearchMap{[](double t) { return std::exp(t); }};
  if (std::abs(info.c - 1.0) < 1e-12) {
    // c == 1: g rises towards 0 on (0, inf) without an interior maximum and
    // the bulk touches the origin. The far end of the scan only sees
    // round-off in g', so it is not searched.
    info.s1 = lower_map.to_s(kScanHi);
    info.x1 = 0.0;
    info.hard_edge_at_zero = true;
    info.s2 = upper.s;
    info.x2 = upper.x;
    return info;
  }
  const Located lower = locate_extremum(g, lower_map, true);
  info.s1_sign_changes = lower.sign_changes;

  if (lower.found) {
    info.s1 = lower.s;
    info.x1 = std::max(0.0, lower.x);
  } else {
    throw BracketError(above_one
                           ? "no sign change of g' on (-inf, -1/(ac)); cannot locate the lower support edge"
                           : "no sign change of g' on (0, inf); cannot locate the lower support edge");
  }
  info.s2 = upper.s;
  info.x2 = upper.x;
  if (info.x2 < info.x1) throw BracketError("support edges are out of order");
  return info;
}

SupportInfo find_support(const ModelSpec& spec) { return find_support(RealInverseMap(spec)); }

SupportInfo find_support(const FilterModel& model) { return find_support(RealInverseMap(model)); }

}  // namespace lsd
