#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "briberynet/comparative_statics.hpp"
#include "test_support.hpp"

namespace briberynet {
namespace {

using testing::reference_params;

// Values below come from symbolic differentiation of B* = n x A / (2k).
TEST(Partials, ReferenceFixture) {
  const ModelParams m = reference_params();
  EXPECT_NEAR(partial_wrt_p(m), 3.44045368620, 1e-10);
  EXPECT_NEAR(partial_wrt_ph(m), 12.9678638941, 1e-9);
  EXPECT_NEAR(partial_wrt_n(m), 0.322306238185, 1e-11);
  EXPECT_NEAR(partial_wrt_x(m), -0.427221172023, 1e-11);
  EXPECT_NEAR(partial_wrt_p_variant(m), 2.40548204159, 1e-10);
}

TEST(Partials, ZeroSurplusCases) {
  ModelParams m = reference_params();
  m.officer_fine = m.citizen_fine = 4.0;
  m.harassment_detection = 0.0;
  m.payoff = 0.0;
  EXPECT_DOUBLE_EQ(partial_wrt_p(m), 0.0);
  EXPECT_DOUBLE_EQ(partial_wrt_x(m), 0.0);

  m = reference_params();
  m.officer_fine = m.citizen_fine = 0.0;
  m.payoff = 0.0;
  EXPECT_DOUBLE_EQ(partial_wrt_ph(m), 0.0);
}

TEST(Partials, NoDetectionLeavesShareWithoutEffect) {
  ModelParams m = reference_params();
  m.detection = 0.0;
  m.harassment_detection = 0.0;
  EXPECT_DOUBLE_EQ(partial_wrt_x(m), 0.0);
}

TEST(Partials, HarassmentAtFeasibilityBoundary) {
  ModelParams m = reference_params();
  m.network_size = 1;
  m.share = m.detection = 0.3;
  m.harassment_detection = 0.1;
  const double x = m.share, p = m.detection;
  const double k = x * (1.0 - m.harassment_detection);
  const double expected =
      (x / 2.0) * (x * p * (m.officer_fine - m.citizen_fine) + x * m.officer_fine + x * m.payoff) / (k * k);
  EXPECT_NEAR(partial_wrt_ph(m), expected, 1e-12);
}

TEST(Partials, NetworkSizeReducedForms) {
  ModelParams m = reference_params();
  m.harassment_detection = 0.0;
  m.share = m.detection = 0.2;
  EXPECT_NEAR(partial_wrt_n(m), 0.0, 1e-15);

  m = reference_params();
  m.harassment_detection = 0.0;
  const double x = m.share, p = m.detection;
  const double k = m.network_size * x + x - p;
  const double reduced = x * (x - p) * (m.payoff + p * (m.officer_fine - m.citizen_fine)) / (2.0 * k * k);
  EXPECT_NEAR(partial_wrt_n(m), reduced, 1e-14);
  EXPECT_GE(reduced, 0.0);
}

TEST(Partials, SingularSlope) {
  ModelParams m = reference_params();
  m.network_size = 1;
  m.harassment_detection = 0.0;
  m.share = 0.25;
  m.detection = 0.5;
  for (auto fn : {&partial_wrt_p, &partial_wrt_ph, &partial_wrt_n, &partial_wrt_x}) {
    try {
      fn(m);
      FAIL() << "expected a singularity";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Singularity);
    }
  }
}

TEST(PartialReport, FiniteDifferencesAgreeAtReference) {
  const PartialReport r = partial_report(reference_params());
  EXPECT_LE(r.max_rel_deviation, 1e-5);
  EXPECT_NEAR(r.finite_differences[0], 3.44045368620, 1e-6);
}

TEST(PartialReport, GradientCheckOnRandomDraws) {
  testing::ParamGenerator gen(31);
  for (int i = 0; i < 1000; ++i) {
    const ModelParams m = gen.active();
    EXPECT_LE(partial_report(m).max_rel_deviation, 1e-5) << "draw " << i;
  }
}

TEST(PartialReport, SignsUnderAsymmetricPunishment) {
  testing::ParamGenerator gen(32);
  for (int i = 0; i < 1000; ++i) {
    ModelParams m = gen.active();
    if (m.officer_fine <= m.citizen_fine) continue;
    const PartialReport r = partial_report(m);
    EXPECT_GE(r.d_bribe_d_p, 0.0);
    EXPECT_GE(r.d_bribe_d_ph, 0.0);
    EXPECT_GE(r.d_bribe_d_n, 0.0);
    EXPECT_LE(r.d_bribe_d_x, 0.0);
  }
}

TEST(PartialReport, VariantDeviationIdentity) {
  testing::ParamGenerator gen(33);
  for (int i = 0; i < 1000; ++i) {
    const ModelParams m = gen.active();
    const double n = m.network_size, x = m.share, ph = m.harassment_detection;
    const double k = bribe_cost_slope(m);
    const double expected = (n * x / 2.0) * x * (m.officer_fine - m.citizen_fine) *
                            ((n * (1.0 - ph) + 1.0) - (ph * (n - 1.0) + 1.0)) / (k * k);
    const double got = partial_wrt_p(m) - partial_wrt_p_variant(m);
    EXPECT_NEAR(got, expected, 1e-10 * std::max(1.0, std::abs(partial_wrt_p(m))));
  }
  ModelParams sym = reference_params();
  sym.citizen_fine = sym.officer_fine;
  EXPECT_DOUBLE_EQ(partial_wrt_p(sym), partial_wrt_p_variant(sym));
}

TEST(PartialReport, FiniteDifferencesRejectVariant) {
  ModelParams m = reference_params();
  m.officer_fine = 50.0;
  m.citizen_fine = 0.5;
  const double fd = finite_difference_wrt_p(m);
  EXPECT_LE(relative_deviation(fd, partial_wrt_p(m)), 1e-5);
  EXPECT_GT(relative_deviation(partial_wrt_p_variant(m), fd), 1e-3);
}

TEST(BribeSweep, HarassmentAxisAtHalfDetectionIncreases) {
  ModelParams m = reference_params();
  m.detection = 0.5;
  m.share = 0.7;
  m.harassment_detection = 0.0;
  const std::vector<double> grid{0.1, 0.2, 0.3, 0.4};
  const auto rows = sweep_bribe_vs_probability(m, SweepAxis::HarassmentDetection, grid);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_TRUE(rows[i].bribe && rows[i - 1].bribe);
    EXPECT_GT(*rows[i].bribe, *rows[i - 1].bribe);
  }
}

TEST(BribeSweep, SinglePointMatchesClosedForm) {
  ModelParams m = reference_params();
  const std::vector<double> grid{0.2};
  const auto rows = sweep_bribe_vs_probability(m, SweepAxis::Detection, grid);
  m.detection = 0.2;
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(*rows[0].bribe, equilibrium_bribe_closed_form(m).bribe);
  EXPECT_EQ(rows[0].feasible, equilibrium_bribe_closed_form(m).feasible);
}

TEST(BribeSweep, CrossingShareFlagsInfeasible) {
  const std::vector<double> grid{0.2, 0.4, 0.6, 0.8};
  const auto rows = sweep_bribe_vs_probability(reference_params(), SweepAxis::Detection, grid);
  EXPECT_FALSE(rows[2].feasible);
  EXPECT_FALSE(rows[3].feasible);
  for (const auto& r : rows) EXPECT_TRUE(r.bribe.has_value());
}

TEST(BribeSweep, DegeneratePointsAreSkipped) {
  ModelParams m = reference_params();
  const std::vector<double> grid{0.05, 0.1};  // p_h = 0.05 fixed, so p = 0.05 is degenerate
  const auto rows = sweep_bribe_vs_probability(m, SweepAxis::Detection, grid);
  EXPECT_FALSE(rows[0].bribe.has_value());
  ASSERT_TRUE(rows[0].skipped.has_value());
  EXPECT_EQ(*rows[0].skipped, ErrorKind::DegenerateObjective);
  EXPECT_TRUE(rows[1].bribe.has_value());
}

TEST(BribeSweep, GridErrors) {
  const std::vector<double> empty;
  EXPECT_THROW(sweep_bribe_vs_probability(reference_params(), SweepAxis::Detection, empty), Error);
  const std::vector<double> bad{0.2, 1.2};
  EXPECT_THROW(sweep_bribe_vs_probability(reference_params(), SweepAxis::Detection, bad), Error);
}

TEST(BribeSweep, MonotoneAlongBothAxes) {
  testing::ParamGenerator gen(34);
  for (int i = 0; i < 200; ++i) {
    ModelParams m = gen.active();
    std::vector<double> grid;
    for (int j = 1; j <= 10; ++j) grid.push_back(m.share * j / 11.0);
    m.harassment_detection = 0.5 * grid.front();
    const auto rows = sweep_bribe_vs_probability(m, SweepAxis::Detection, grid);
    for (std::size_t j = 1; j < rows.size(); ++j) EXPECT_GE(*rows[j].bribe, *rows[j - 1].bribe);

    std::vector<double> ph_grid;
    for (int j = 0; j < 10; ++j) ph_grid.push_back(m.detection * j / 10.0);
    const auto ph_rows = sweep_bribe_vs_probability(m, SweepAxis::HarassmentDetection, ph_grid);
    for (std::size_t j = 1; j < ph_rows.size(); ++j) EXPECT_GE(*ph_rows[j].bribe, *ph_rows[j - 1].bribe);
  }
}

TEST(BribeSweep, ParallelMatchesSequential) {
  std::vector<double> grid;
  for (int j = 0; j < 200; ++j) grid.push_back(j / 199.0);
  SweepOptions seq;
  SweepOptions par;
  par.threads = 8;
  const auto a = sweep_bribe_vs_probability(reference_params(), SweepAxis::Detection, grid, seq);
  const auto b = sweep_bribe_vs_probability(reference_params(), SweepAxis::Detection, grid, par);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].bribe, b[i].bribe);
    EXPECT_EQ(a[i].feasible, b[i].feasible);
    EXPECT_EQ(a[i].skipped, b[i].skipped);
  }
}

}  // namespace
}  // namespace briberynet
