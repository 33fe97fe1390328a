#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "patchdyn/coupling.hpp"
#include "patchdyn/reference.hpp"
#include "test_helpers.hpp"

using namespace patchdyn;
using testing_support::coarse;
using testing_support::coarse_config;

namespace {

// Exact tooth averages of a + b x + c x^2 (+ e x^4) without boundary pinning.
CoarseField<double> polynomial_averages(const ValidatedConfig& cfg, double a, double b, double c, double e = 0) {
  const double h = cfg.patch_width();
  auto anti = [&](double x) { return a * x + b * x * x / 2 + c * x * x * x / 3 + e * std::pow(x, 5) / 5; };
  CoarseField<double> f;
  f.values.resize(cfg.n_macro() + 1);
  for (int j = 0; j <= cfg.n_macro(); ++j) {
    const double x = cfg.node(j);
    f.values[j] = (anti(x + h / 2) - anti(x - h / 2)) / h;
  }
  return f;
}

ValidatedConfig with_degree(int eta, Interpolation mode) {
  auto c = coarse_config();
  c.poly_degree = eta;
  c.interpolation = mode;
  return require_valid(c);
}

}  // namespace

TEST(Simpson, ExactForCubics) {
  const int m = 10;
  VectorXd s(m + 1);
  for (int i = 0; i <= m; ++i) {
    const double x = static_cast<double>(i) / m;  // on [0, 1]
    s[i] = 1 - 2 * x + 3 * x * x + 4 * x * x * x;
  }
  EXPECT_NEAR(simpson_average(s), 1 - 1 + 1 + 1, 1e-14);
}

TEST(Simpson, RejectsOddIntervalCount) {
  EXPECT_THROW(simpson_average<double>(VectorXd::Ones(4)), std::invalid_argument);
  EXPECT_THROW(simpson_average<double>(VectorXd::Ones(2)), std::invalid_argument);
  EXPECT_DOUBLE_EQ(simpson_average<double>(VectorXd::Constant(3, 2.0)), 2.0);
}

TEST(Simpson, BeatsTrapezoidOnSmoothData) {
  const int m = 20;
  VectorXd s(m + 1);
  for (int i = 0; i <= m; ++i) s[i] = std::exp(static_cast<double>(i) / m);
  const double exact = std::exp(1.0) - 1.0;
  EXPECT_LT(std::abs(simpson_average(s) - exact), 1e-7);
  EXPECT_GT(std::abs(trapezoid_average(s) - exact), 1e-5);
}

TEST(Coupling, StencilOffsets) {
  const auto cfg = with_degree(4, Interpolation::BoxAverage);
  const auto s = make_stencil(cfg, 5);
  EXPECT_EQ(s.offsets, (std::vector<int>{-2, -1, 0, 1, 2}));
  EXPECT_NEAR(s.node_positions.front(), 0.15, 1e-15);
}

TEST(Coupling, QuadraticBoxAverageSlopesExact) {
  const auto cfg = coarse();
  const Coupling<double> coupling(cfg);
  const auto f = polynomial_averages(cfg, 0.0, 0.0, 1.0);
  for (int j = 1; j < cfg.n_macro(); ++j) {
    const auto [sl, sr] = coupling.boundary_slopes(f, j);
    EXPECT_NEAR(sl, 2 * (cfg.node(j) - 0.01), 1e-12) << j;
    EXPECT_NEAR(sr, 2 * (cfg.node(j) + 0.01), 1e-12) << j;
  }
}

TEST(Coupling, GeneralQuadraticSlopesExact) {
  const auto cfg = coarse();
  const auto f = polynomial_averages(cfg, 0.7, -3.0, 2.5);
  for (int j = 1; j < cfg.n_macro(); ++j) {
    const auto [sl, sr] = boundary_slopes(f, j, cfg);
    EXPECT_NEAR(sl, -3.0 + 5.0 * (cfg.node(j) - 0.01), 1e-12);
    EXPECT_NEAR(sr, -3.0 + 5.0 * (cfg.node(j) + 0.01), 1e-12);
  }
}

TEST(Coupling, PointAndBoxSlopesCoincideForQuadratics) {
  const auto box = with_degree(2, Interpolation::BoxAverage);
  const auto point = with_degree(2, Interpolation::PointValue);
  const auto f = sample_field<double>(box, sine_profile);
  const Coupling<double> cb(box), cp(point);
  for (int j = 1; j < box.n_macro(); ++j) {
    EXPECT_NEAR(cb.boundary_slopes(f, j).first, cp.boundary_slopes(f, j).first, 1e-11);
    EXPECT_NEAR(cb.boundary_slopes(f, j).second, cp.boundary_slopes(f, j).second, 1e-11);
  }
}

TEST(Coupling, QuarticBoxAverageSlopesExactAwayFromEnds) {
  const auto cfg = with_degree(4, Interpolation::BoxAverage);
  const Coupling<double> coupling(cfg);
  const auto f = polynomial_averages(cfg, 0.2, 1.0, -1.0, 3.0);
  auto slope = [](double x) { return 1.0 - 2.0 * x + 12.0 * x * x * x; };
  for (int j = 2; j <= cfg.n_macro() - 2; ++j) {
    const auto [sl, sr] = coupling.boundary_slopes(f, j);
    EXPECT_NEAR(sl, slope(cfg.node(j) - 0.01), 1e-10);
    EXPECT_NEAR(sr, slope(cfg.node(j) + 0.01), 1e-10);
  }
}

TEST(Coupling, QuarticPointValueExact) {
  const auto cfg = with_degree(4, Interpolation::PointValue);
  CoarseField<double> f;
  f.values.resize(cfg.n_macro() + 1);
  for (int j = 0; j <= cfg.n_macro(); ++j) f.values[j] = std::pow(cfg.node(j), 4);
  for (int j = 2; j <= cfg.n_macro() - 2; ++j) {
    const auto [sl, sr] = boundary_slopes(f, j, cfg);
    EXPECT_NEAR(sl, 4 * std::pow(cfg.node(j) - 0.01, 3), 1e-10);
    EXPECT_NEAR(sr, 4 * std::pow(cfg.node(j) + 0.01, 3), 1e-10);
  }
}

TEST(Coupling, ReflectionKeepsOddProfilesExactNearEnds) {
  // sin(pi x) is odd about both ends, so the reflected stencil sees the same
  // data as an unbounded one would; compare node 1 with node 19 by symmetry.
  const auto cfg = with_degree(4, Interpolation::PointValue);
  const auto f = sample_field<double>(cfg, sine_profile);
  const Coupling<double> coupling(cfg);
  const auto [l1, r1] = coupling.boundary_slopes(f, 1);
  const auto [l19, r19] = coupling.boundary_slopes(f, 19);
  EXPECT_NEAR(l1, -r19, 1e-12);
  EXPECT_NEAR(r1, -l19, 1e-12);
  EXPECT_NEAR(l1, std::numbers::pi * std::cos(std::numbers::pi * 0.04), 1e-2);
}

TEST(Coupling, SymmetricFieldGivesMirroredSlopes) {
  const auto cfg = coarse();
  const auto f = sample_field<double>(cfg, sine_profile);
  const Coupling<double> coupling(cfg);
  for (int j = 1; j < cfg.n_macro(); ++j) {
    const auto [l, r] = coupling.boundary_slopes(f, j);
    const auto [lm, rm] = coupling.boundary_slopes(f, cfg.n_macro() - j);
    EXPECT_NEAR(l, -rm, 1e-12);
    EXPECT_NEAR(r, -lm, 1e-12);
  }
}

TEST(Coupling, SlopesAreLinear) {
  const auto cfg = coarse();
  const Coupling<double> coupling(cfg);
  std::mt19937 rng(7);
  std::normal_distribution<double> n01;
  CoarseField<double> a, b, c;
  a.values = VectorXd::NullaryExpr(21, [&](Eigen::Index) { return n01(rng); });
  b.values = VectorXd::NullaryExpr(21, [&](Eigen::Index) { return n01(rng); });
  c.values = 3.0 * a.values - 0.5 * b.values;
  for (int j = 1; j < 20; ++j) {
    EXPECT_NEAR(coupling.boundary_slopes(c, j).first,
                3.0 * coupling.boundary_slopes(a, j).first - 0.5 * coupling.boundary_slopes(b, j).first, 1e-9);
  }
}

TEST(Coupling, LiftReproducesQuadraticExactly) {
  const auto cfg = coarse();
  const auto f = polynomial_averages(cfg, 0.0, 0.0, 1.0);
  const Coupling<double> coupling(cfg);
  for (int j = 2; j <= 18; ++j) {
    const auto patch = coupling.lift(f, j);
    ASSERT_EQ(patch.micro_values.size(), cfg.micro_intervals() + 1);
    for (int i = 0; i <= cfg.micro_intervals(); ++i) {
      const double x = cfg.node(j) - 0.01 + i * cfg.micro_dx();
      EXPECT_NEAR(patch.micro_values[i], x * x, 1e-12);
    }
    EXPECT_NEAR(patch.slope_left, 2 * (cfg.node(j) - 0.01), 1e-12);
  }
}

TEST(Coupling, RestrictLiftRoundtrip) {
  for (int eta : {2, 4}) {
    for (int order : {2, 4}) {
      auto c = coarse_config();
      c.poly_degree = eta;
      c.macro_pde_order = order;
      const auto cfg = require_valid(c);
      const Coupling<double> coupling(cfg);

      std::mt19937 rng(11);
      std::uniform_real_distribution<double> phase(0.0, 6.0);
      const double p1 = phase(rng), p2 = phase(rng);
      std::vector<CoarseField<double>> fields{
          sample_field<double>(cfg, sine_profile),
          sample_field<double>(cfg, [](double x) { return x * x; }),
          sample_field<double>(cfg, [&](double x) { return std::sin(3 * x + p1) + 0.3 * std::cos(7 * x + p2); })};
      for (const auto& f : fields) {
        for (int j = 1; j < cfg.n_macro(); ++j) {
          EXPECT_NEAR(restrict_average(coupling.lift(f, j)), f.values[j], 1e-10)
              << "eta " << eta << " order " << order << " j " << j;
        }
      }
    }
  }
}

TEST(Coupling, InteriorOnly) {
  const auto cfg = coarse();
  const auto f = sample_field<double>(cfg, sine_profile);
  EXPECT_THROW(lift(f, 0, cfg), std::out_of_range);
  EXPECT_THROW(lift(f, 20, cfg), std::out_of_range);
}

TEST(Coupling, CentralDifferenceWeights) {
  const auto w = detail::central_difference_weights(2, 1, 0.1);
  EXPECT_NEAR(w[0], 100.0, 1e-9);
  EXPECT_NEAR(w[1], -200.0, 1e-9);
  EXPECT_NEAR(w[2], 100.0, 1e-9);
  const auto d1 = detail::central_difference_weights(1, 2, 1.0);
  EXPECT_NEAR(d1[0], 1.0 / 12, 1e-12);
  EXPECT_NEAR(d1[1], -8.0 / 12, 1e-12);
  EXPECT_NEAR(d1[2], 0.0, 1e-12);
}
