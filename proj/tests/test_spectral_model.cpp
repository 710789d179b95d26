#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "lsd/errors.hpp"
#include "lsd/simulate.hpp"
#include "lsd/spectral_model.hpp"
#include "oracles.hpp"

namespace {

using lsd::LinearFilter;
using lsd::ModelSpec;
constexpr double kPi = std::numbers::pi;

LinearFilter filter_of(std::vector<double> coeffs) {
  LinearFilter f;
  f.coeffs = std::move(coeffs);
  return f;
}

TEST(Validate, RejectsOutOfRangeParameters) {
  EXPECT_THROW(lsd::validate(ModelSpec{1.2, 0.0, 0.2}), lsd::InvalidModel);
  EXPECT_THROW(lsd::validate(ModelSpec{-1.0, 0.0, 0.2}), lsd::InvalidModel);
  EXPECT_THROW(lsd::validate(ModelSpec{0.0, 1.0, 0.2}), lsd::InvalidModel);
  EXPECT_THROW(lsd::validate(ModelSpec{0.0, -1.0, 0.2}), lsd::InvalidModel);
  EXPECT_THROW(lsd::validate(ModelSpec{0.0, 0.0, 0.0}), lsd::InvalidModel);
  EXPECT_NO_THROW(lsd::validate(ModelSpec{0.4, 1.5, 3.0}));
  try {
    lsd::validate(ModelSpec{1.2, 0.0, 0.2});
  } catch (const lsd::InvalidModel& e) {
    EXPECT_STREQ(e.what(), "phi must satisfy |phi| < 1");
  }
}

TEST(ArmaFilter, WhiteNoiseIsSingleCoefficient) {
  const auto f = lsd::arma_filter({0.0, 0.0, 1.0});
  ASSERT_EQ(f.coeffs.size(), 1u);
  EXPECT_EQ(f.coeffs[0], 1.0);
}

TEST(ArmaFilter, MovingAverageTerminates) {
  const auto f = lsd::arma_filter({0.0, 0.5, 1.0});
  ASSERT_EQ(f.coeffs.size(), 2u);
  EXPECT_EQ(f.coeffs[1], 0.5);
  EXPECT_EQ(f.tail_bound, 0.0);
}

TEST(ArmaFilter, ExpansionMatchesRecursion) {
  const ModelSpec spec{0.4, 0.2, 1.0};
  const auto f = lsd::arma_filter(spec);
  EXPECT_NEAR(f.coeffs[1], 0.6, 1e-15);
  EXPECT_NEAR(f.coeffs[2], 0.24, 1e-15);
  EXPECT_NEAR(f.coeffs[3], 0.096, 1e-15);
  EXPECT_LT(f.tail_bound, 1e-12);

  // Impulse response of z_t = phi z_{t-1} + e_t + theta e_{t-1}.
  double prev_z = 0.0, prev_e = 0.0;
  for (std::size_t t = 0; t < f.coeffs.size(); ++t) {
    const double e = t == 0 ? 1.0 : 0.0;
    const double z = spec.phi * prev_z + e + spec.theta * prev_e;
    EXPECT_NEAR(f.coeffs[t], z, 1e-15) << "t=" << t;
    prev_z = z;
    prev_e = e;
  }
}

TEST(ArmaFilter, TailBoundIsBelowTolerance) {
  for (double phi : {-0.9, -0.5, 0.3, 0.9}) {
    const auto f = lsd::arma_filter({phi, 0.4, 1.0}, 1e-12);
    EXPECT_LT(f.tail_bound, 1e-10);
    double tail = 0.0;
    for (std::size_t k = f.coeffs.size(); k < f.coeffs.size() + 2000; ++k) {
      tail += std::abs((phi + 0.4) * std::pow(phi, static_cast<double>(k) - 1.0));
    }
    EXPECT_LE(tail, f.tail_bound * (1 + 1e-9));
  }
}

TEST(SpectralDensity, ClosedValues) {
  EXPECT_NEAR(lsd::spectral_density(filter_of({1.0}), 0.7), 1.0 / (2 * kPi), 1e-15);
  EXPECT_NEAR(1.0 / (2 * kPi), 0.159155, 1e-6);
  EXPECT_NEAR(lsd::spectral_density(filter_of({1.0, 0.5}), 0.0), 0.358099, 1e-6);
  EXPECT_NEAR(lsd::arma_spectral_density({0.0, 0.0, 1.0}, 1.0), 1.0 / (2 * kPi), 1e-15);
  EXPECT_NEAR(lsd::arma_spectral_density({0.4, 0.0, 1.0}, 0.0), 0.442097, 1e-6);
  EXPECT_NEAR(lsd::arma_spectral_density({0.4, 0.6, 1.0}, kPi), 0.012992, 1e-6);
}

TEST(SpectralDensity, TruncatedFilterMatchesClosedForm) {
  const ModelSpec spec{0.4, 0.2, 1.0};
  EXPECT_NEAR(lsd::spectral_density(lsd::arma_filter(spec), kPi / 3),
              lsd::arma_spectral_density(spec, kPi / 3), 1e-10);
}

TEST(SpectralDensity, SymmetricAndNonnegativeAcrossModels) {
  for (double phi : {-0.9, -0.4, 0.0, 0.5, 0.9}) {
    for (double theta : {-0.9, -0.2, 0.0, 0.6, 0.9}) {
      const ModelSpec spec{phi, theta, 1.0};
      const auto filter = lsd::arma_filter(spec);
      double worst = 0.0;
      for (int j = 0; j < 1000; ++j) {
        const double l = 2 * kPi * j / 1000.0;
        const double f = lsd::spectral_density(filter, l);
        EXPECT_GE(f, 0.0);
        EXPECT_NEAR(f, lsd::spectral_density(filter, 2 * kPi - l), 1e-12 * std::max(1.0, f));
        worst = std::max(worst, std::abs(f - lsd::arma_spectral_density(spec, l)));
        EXPECT_NEAR(f, oracle::filter_density(filter.coeffs, l), 1e-10 * std::max(1.0, f));
      }
      EXPECT_LT(worst, 1e-9) << phi << ' ' << theta;
    }
  }
}

TEST(Autocovariance, ClosedValues) {
  EXPECT_DOUBLE_EQ(lsd::autocovariance(filter_of({1.0}), 0), 1.0);
  EXPECT_DOUBLE_EQ(lsd::autocovariance(filter_of({1.0}), 1), 0.0);
  EXPECT_DOUBLE_EQ(lsd::autocovariance(filter_of({1.0, 0.5}), 1), 0.5);
}

TEST(Autocovariance, VarianceEqualsIntegratedDensity) {
  for (double phi : {-0.8, 0.0, 0.4, 0.9}) {
    for (double theta : {-0.5, 0.2, 0.7}) {
      const ModelSpec spec{phi, theta, 1.0};
      const auto filter = lsd::arma_filter(spec);
      const double gamma0 = lsd::autocovariance(filter, 0);
      const double integral =
          oracle::simpson([&](double l) { return lsd::arma_spectral_density(spec, l); }, 0.0, 2 * kPi, 20000);
      EXPECT_NEAR(gamma0, integral, 1e-9) << phi << ' ' << theta;
      for (std::size_t k = 1; k < 5; ++k) EXPECT_LE(std::abs(lsd::autocovariance(filter, k)), gamma0);
    }
  }
}

TEST(SpectralExtrema, ClosedForms) {
  auto e = lsd::spectral_extrema(ModelSpec{0.0, 0.0, 1.0});
  EXPECT_DOUBLE_EQ(e.a, 1.0);
  EXPECT_DOUBLE_EQ(e.b, 1.0);
  e = lsd::spectral_extrema(ModelSpec{0.4, 0.0, 1.0});
  EXPECT_NEAR(e.a, 0.510204, 1e-6);
  EXPECT_NEAR(e.b, 2.777778, 1e-6);
  e = lsd::spectral_extrema(ModelSpec{0.0, 0.6, 1.0});
  EXPECT_NEAR(e.a, 0.16, 1e-12);
  EXPECT_NEAR(e.b, 2.56, 1e-12);
  EXPECT_THROW(lsd::spectral_extrema(ModelSpec{0.3, 1.0, 1.0}), lsd::InvalidModel);
}

TEST(SpectralExtrema, BracketSampledProfile) {
  for (double phi : {-0.8, -0.3, 0.0, 0.4, 0.8}) {
    for (double theta : {-0.7, -0.2, 0.0, 0.2, 0.6, 1.4}) {
      const ModelSpec spec{phi, theta, 1.0};
      const auto e = lsd::spectral_extrema(spec);
      ASSERT_GT(e.a, 0.0);
      ASSERT_LE(e.a, e.b);
      double lo = 1e300, hi = 0.0;
      for (int j = 0; j < 10000; ++j) {
        const double w = 2 * kPi * lsd::arma_spectral_density(spec, 2 * kPi * j / 10000.0);
        EXPECT_GE(w, e.a - 1e-9);
        EXPECT_LE(w, e.b + 1e-9);
        lo = std::min(lo, w);
        hi = std::max(hi, w);
      }
      EXPECT_NEAR(lo, e.a, 1e-6 * e.b);
      EXPECT_NEAR(hi, e.b, 1e-6 * e.b);
      const auto ef = lsd::spectral_extrema(lsd::arma_filter(spec));
      EXPECT_NEAR(ef.a, e.a, 1e-8 * e.b);
      EXPECT_NEAR(ef.b, e.b, 1e-8 * e.b);
    }
  }
}

TEST(SzegoCdf, WhiteNoiseIsExactStep) {
  const auto f = filter_of({1.0});
  EXPECT_EQ(lsd::szego_cdf(f, 0.99), 0.0);
  EXPECT_EQ(lsd::szego_cdf(f, 1.0), 1.0);
}

TEST(SzegoCdf, LimitsAndMonotone) {
  const ModelSpec spec{0.4, 0.0, 1.0};
  const auto f = lsd::arma_filter(spec);
  const auto e = lsd::spectral_extrema(spec);
  const lsd::SzegoDistribution h(f);
  EXPECT_EQ(h.cdf(e.b + 0.1), 1.0);
  EXPECT_EQ(h.cdf(e.a - 0.01), 0.0);
  double prev = 0.0;
  for (int k = 0; k <= 500; ++k) {
    const double x = e.a - 0.1 + (e.b - e.a + 0.2) * k / 500.0;
    const double v = h.cdf(x);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_NEAR(h.cdf(e.b), 1.0, 1e-3);
  EXPECT_LT(h.cdf(e.a + 1e-9), 1e-3);
}

TEST(SzegoCdf, MatchesClosedFormForAr1) {
  // For AR(1), 2 pi f(l) <= x  <=>  cos l <= (1 + phi^2 - 1/x) / (2 phi).
  const double phi = 0.4;
  const auto f = lsd::arma_filter({phi, 0.0, 1.0});
  for (double x : {0.6, 0.9, 1.3, 2.0, 2.6}) {
    const double u = std::clamp((1 + phi * phi - 1 / x) / (2 * phi), -1.0, 1.0);
    const double expected = 1.0 - std::acos(u) / kPi;
    EXPECT_NEAR(lsd::szego_cdf(f, x), expected, 1e-4) << x;
  }
}

TEST(SzegoCdf, AgreesWithToeplitzEigenvalues) {
  const auto f = lsd::arma_filter({0.4, 0.2, 1.0});
  const auto eig = lsd::symmetric_eigenvalues(lsd::toeplitz_covariance(f, 512));
  const lsd::SzegoDistribution h(f);
  double sup = 0.0;
  for (std::size_t i = 0; i < eig.size(); ++i) {
    const double lo = static_cast<double>(i) / eig.size();
    const double hi = static_cast<double>(i + 1) / eig.size();
    const double v = h.cdf(eig[i]);
    sup = std::max({sup, std::abs(v - lo), std::abs(v - hi)});
  }
  EXPECT_LT(sup, 0.02);
}

TEST(FilterFile, ParsesCommentsAndBlanks) {
  std::istringstream in("# ma(1)\n1\n\n  0.5 \n# end\n");
  const auto f = lsd::parse_filter(in);
  ASSERT_EQ(f.coeffs.size(), 2u);
  EXPECT_EQ(f.coeffs[1], 0.5);
}

TEST(FilterFile, RejectsGarbageAndEmpty) {
  std::istringstream bad("1\nabc\n");
  EXPECT_THROW(lsd::parse_filter(bad), lsd::ParseError);
  std::istringstream empty("# nothing\n");
  EXPECT_THROW(lsd::parse_filter(empty), lsd::ParseError);
  EXPECT_THROW(lsd::read_filter_file("/nonexistent/filter.txt"), lsd::Error);
}

}  // namespace
