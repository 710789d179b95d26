#include <gtest/gtest.h>

#include <cmath>

#include "lsd/errors.hpp"
#include "lsd/stieltjes.hpp"
#include "lsd/support.hpp"
#include "oracles.hpp"

namespace {

using lsd::ModelSpec;

double ar1_profile(double phi, double l) { return 1.0 / (1 + phi * phi - 2 * phi * std::cos(l)); }

TEST(GReal, WhiteNoiseClosedForm) {
  const ModelSpec mp{0.0, 0.0, 0.2};
  EXPECT_NEAR(lsd::g_real(mp, -10.0), -0.9, 1e-13);
  EXPECT_NEAR(lsd::g_real(mp, -2.5), 0.4 + 1.0 / 0.5, 1e-13);
  EXPECT_THROW(lsd::g_real(mp, -5.0), lsd::DomainError);
  EXPECT_THROW(lsd::g_real(mp, 0.0), lsd::DomainError);
}

TEST(GReal, MatchesFineQuadrature) {
  const ModelSpec m{0.4, 0.0, 0.2};
  const double s = -20.0;
  const auto a = oracle::simpson(
      [&](double l) { return 1.0 / (m.c * s + 1.0 / ar1_profile(m.phi, l)); }, 0.0, 2 * oracle::kPi, 1 << 16);
  EXPECT_NEAR(lsd::g_real(m, s), -1.0 / s + a / (2 * oracle::kPi), 1e-10);
  // Inside [-1/(ac), -1/(bc)] = [-9.8, -1.8].
  EXPECT_THROW(lsd::g_real(m, -5.0), lsd::DomainError);
}

TEST(FindSupport, MarchenkoPasturScaling) {
  for (double c : {0.2, 0.5, 2.0}) {
    const auto s = lsd::find_support(ModelSpec{0.0, 0.0, c});
    EXPECT_NEAR(s.x1, std::pow(1 - std::sqrt(c), 2), 1e-6) << c;
    EXPECT_NEAR(s.x2, std::pow(1 + std::sqrt(c), 2), 1e-6) << c;
    EXPECT_EQ(s.s1_sign_changes, 1);
    EXPECT_EQ(s.s2_sign_changes, 1);
  }
}

TEST(FindSupport, MarchenkoPasturCaption) {
  const auto s = lsd::find_support(ModelSpec{0.0, 0.0, 0.2});
  EXPECT_NEAR(s.x1, 0.30557, 1e-4);
  EXPECT_NEAR(s.x2, 2.09443, 1e-4);
  EXPECT_EQ(s.point_mass_at_zero, 0.0);
}

TEST(FindSupport, Ar1Row) {
  const auto s = lsd::find_support(ModelSpec{0.4, 0.0, 0.2});
  EXPECT_NEAR(s.x1, 0.310, 0.005);
  EXPECT_NEAR(s.x2, 2.875, 0.005);
}

// Edges for the strongly correlated model are pinned to our own
// computation, which a 400 x 2000 Monte Carlo spectrum supports
// (eigenvalues observed in [0.333, 16.72]).
TEST(FindSupport, StronglyCorrelatedModel) {
  const auto s = lsd::find_support(ModelSpec{0.8, 0.2, 0.2});
  EXPECT_NEAR(s.x1, 0.32259, 1e-4);
  EXPECT_NEAR(s.x2, 17.3396, 1e-3);
}

TEST(FindSupport, ExtremizersAreOutsidePoleSetAndSingle) {
  for (const ModelSpec m : {ModelSpec{0.4, 0.0, 0.2}, ModelSpec{0.4, 0.2, 0.2}, ModelSpec{0.4, 0.6, 0.2},
                            ModelSpec{0.8, 0.2, 0.2}, ModelSpec{0.3, 0.1, 2.0}, ModelSpec{-0.5, 0.4, 0.7}}) {
    const auto s = lsd::find_support(m);
    const double lo = -1.0 / (s.a * m.c), hi = -1.0 / (s.b * m.c);
    EXPECT_TRUE(s.s1 < lo || s.s1 > hi);
    EXPECT_TRUE(s.s2 < lo || s.s2 > hi);
    EXPECT_GT(s.s2, hi);
    EXPECT_LT(s.s2, 0.0);
    if (m.c > 1) {
      EXPECT_LT(s.s1, lo);
    } else {
      EXPECT_GT(s.s1, 0.0);
    }
    EXPECT_EQ(s.s1_sign_changes, 1);
    EXPECT_EQ(s.s2_sign_changes, 1);
    EXPECT_GE(s.x1, 0.0);
    EXPECT_LE(s.x1, s.x2);
    EXPECT_DOUBLE_EQ(s.point_mass_at_zero, m.c > 1 ? 1 - 1 / m.c : 0.0);
  }
}

TEST(FindSupport, DensityVanishesBeyondEdges) {
  for (const ModelSpec m : {ModelSpec{0.4, 0.0, 0.2}, ModelSpec{0.4, 0.2, 0.2}, ModelSpec{0.4, 0.6, 0.2},
                            ModelSpec{0.8, 0.2, 0.2}}) {
    const auto s = lsd::find_support(m);
    const double w = s.x2 - s.x1;
    EXPECT_LT(lsd::density_at(m, s.x1 - 0.05 * w), 1e-3);
    EXPECT_LT(lsd::density_at(m, s.x2 + 0.05 * w), 1e-3);
    EXPECT_GT(lsd::density_at(m, 0.5 * (s.x1 + s.x2)), 1e-3);
  }
}

TEST(FindSupport, WidensWithAspectRatio) {
  EXPECT_GT(lsd::find_support(ModelSpec{0.4, 0.2, 0.5}).x2, lsd::find_support(ModelSpec{0.4, 0.2, 0.2}).x2);
}

TEST(FindSupport, UnitAspectRatioPinsLowerEdge) {
  const auto s = lsd::find_support(ModelSpec{0.0, 0.0, 1.0});
  EXPECT_TRUE(s.hard_edge_at_zero);
  EXPECT_EQ(s.x1, 0.0);
  EXPECT_NEAR(s.x2, 4.0, 1e-6);
}

TEST(FindSupport, GeneralFilterMatchesArma) {
  const ModelSpec m{0.4, 0.6, 0.2};
  const auto a = lsd::find_support(m);
  const auto b = lsd::find_support(lsd::FilterModel{lsd::arma_filter(m), m.c});
  EXPECT_NEAR(a.x1, b.x1, 1e-7);
  EXPECT_NEAR(a.x2, b.x2, 1e-6);
}

}  // namespace
