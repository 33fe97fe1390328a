#include <gtest/gtest.h>

#include "patchdyn/config.hpp"
#include "test_helpers.hpp"

using namespace patchdyn;
using testing_support::coarse_config;

TEST(Config, DefaultsValidate) {
  const auto r = validate_config(MacroConfig{});
  ASSERT_TRUE(r.ok()) << r.message();
  EXPECT_EQ(r.config->micro_intervals(), 100);
  EXPECT_EQ(r.config->micro_steps_per_tau(), 625);
  EXPECT_DOUBLE_EQ(r.config->final_time(), 1.0);
}

TEST(Config, NearIntegerMicroGridSnaps) {
  MacroConfig c;
  c.micro_dx = 4.4444e-5;
  c.micro_dt = 9.5238e-10;
  const auto r = validate_config(c);
  ASSERT_TRUE(r.ok()) << r.message();
  EXPECT_EQ(r.config->micro_intervals(), 450);
  EXPECT_EQ(r.config->micro_steps_per_tau(), 10500);
  // snapped values are exact divisors
  EXPECT_NEAR(r.config->micro_dx() * 450, 0.02, 1e-15);
  EXPECT_NEAR(r.config->micro_dt() * 10500, 1e-5, 1e-18);
  EXPECT_LE(r.config->micro_dt(), 0.5 * r.config->micro_dx() * r.config->micro_dx());
}

TEST(Config, RejectsUnstableMicroStep) {
  MacroConfig c;
  c.micro_dt = 2.5e-8;  // dx^2/2 = 2e-8
  const auto r = validate_config(c);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(r.has(ConfigErrorKind::StabilityViolation));
}

TEST(Config, StabilityEdgeAccepted) {
  MacroConfig c;
  c.micro_dt = 2e-8;  // exactly dx^2 / 2, tau/dt = 500
  EXPECT_TRUE(validate_config(c).ok());
}

TEST(Config, RejectsNonCommensurateRatios) {
  MacroConfig c;
  c.micro_dx = 3e-4;
  EXPECT_TRUE(validate_config(c).has(ConfigErrorKind::NonCommensurate));

  MacroConfig d;
  d.micro_dt = 1.7e-8;
  EXPECT_TRUE(validate_config(d).has(ConfigErrorKind::NonCommensurate));

  MacroConfig odd;
  odd.micro_dx = 0.02 / 99;
  odd.micro_dt = 1e-8;
  EXPECT_TRUE(validate_config(odd).has(ConfigErrorKind::NonCommensurate));
}

TEST(Config, GeometryErrors) {
  MacroConfig overlap;
  overlap.patch_width = 0.06;
  overlap.micro_dx = 6e-4;
  overlap.micro_dt = 1e-7;
  EXPECT_TRUE(validate_config(overlap).has(ConfigErrorKind::GeometryError));

  MacroConfig bad_n;
  bad_n.n_macro = 19;
  EXPECT_TRUE(validate_config(bad_n).has(ConfigErrorKind::GeometryError));

  MacroConfig short_step;
  short_step.delta_t = 1e-5;
  EXPECT_TRUE(validate_config(short_step).has(ConfigErrorKind::GeometryError));
}

TEST(Config, InvalidParameters) {
  MacroConfig odd;
  odd.poly_degree = 3;
  EXPECT_TRUE(validate_config(odd).has(ConfigErrorKind::InvalidParameter));

  MacroConfig neg;
  neg.tau = -1e-5;
  EXPECT_TRUE(validate_config(neg).has(ConfigErrorKind::InvalidParameter));

  MacroConfig hint;
  hint.relaxation_time_hint = -1.0;
  EXPECT_TRUE(validate_config(hint).has(ConfigErrorKind::InvalidParameter));
}

TEST(Config, RequireValidThrowsWithAllIssues) {
  MacroConfig c;
  c.micro_dx = 3e-4;
  c.poly_degree = 5;
  try {
    (void)require_valid(c);
    FAIL() << "expected throw";
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("NonCommensurate"), std::string::npos);
    EXPECT_NE(msg.find("InvalidParameter"), std::string::npos);
  }
}

TEST(Config, NodesCoverDomainExactly) {
  const auto cfg = require_valid(coarse_config(600));
  EXPECT_EQ(cfg.node(0), 0.0);
  EXPECT_EQ(cfg.node(20), 1.0);
  EXPECT_NEAR(cfg.node(7), 0.35, 1e-15);
  EXPECT_NEAR(cfg.final_time(), 1.0, 1e-12);
}
