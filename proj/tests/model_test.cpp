#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "briberynet/model.hpp"
#include "test_support.hpp"

namespace briberynet {
namespace {

using testing::kReferenceBribe;
using testing::reference_params;

TEST(CitizenUtility, ReferenceFixture) {
  EXPECT_NEAR(citizen_utility(reference_params(), kReferenceBribe), 6.132609, 1e-6);
}

TEST(CitizenUtility, NoDetectionZeroBribeIsPayoff) {
  ModelParams m = reference_params();
  m.detection = 0.0;
  m.harassment_detection = 0.0;
  EXPECT_DOUBLE_EQ(citizen_utility(m, 0.0), m.payoff);
}

TEST(CitizenUtility, HighDetectionExample) {
  ModelParams m = reference_params();
  m.detection = 0.3;
  m.harassment_detection = 0.1;
  // 10 - 6.45 - 0.3*2 + 0.1*(6.45 + 20)
  EXPECT_NEAR(citizen_utility(m, 6.45), 5.595, 1e-12);
}

TEST(CitizenUtility, LinearInBribe) {
  testing::ParamGenerator gen(11);
  for (int i = 0; i < 500; ++i) {
    const ModelParams m = gen.active();
    const double b = gen.uniform(0.0, 50.0);
    const double h = 0.25;
    const double d2 = citizen_utility(m, b + 2.0 * h) - 2.0 * citizen_utility(m, b + h) + citizen_utility(m, b);
    EXPECT_NEAR(d2, 0.0, 1e-12 * (std::abs(citizen_utility(m, b)) + m.payoff + b + 1.0));
  }
}

TEST(AwardFunction, Examples) {
  ModelParams m = reference_params();
  EXPECT_DOUBLE_EQ(award_function(m, 6.45).amount, 26.45);
  EXPECT_TRUE(award_function(m, 6.45).exceeds_citizen_fine);

  m.network_size = 1;
  m.officer_fine = 0.0;
  m.citizen_fine = 0.0;
  EXPECT_DOUBLE_EQ(award_function(m, 0.0).amount, 0.0);
  EXPECT_FALSE(award_function(m, 0.0).exceeds_citizen_fine);

  m.network_size = 2;
  m.officer_fine = 3.0;
  EXPECT_DOUBLE_EQ(award_function(m, 1.0).amount, 7.0);
}

TEST(OfficerUtility, RankExamples) {
  const ModelParams m = reference_params();
  EXPECT_NEAR(officer_utility_at_rank(m, kReferenceBribe, 1), 1.465217, 1e-6);
  EXPECT_NEAR(officer_utility_at_rank(m, kReferenceBribe, 3), -0.008696, 1e-6);
  // rank 1 is x B - p (F_O + B)
  const double b = kReferenceBribe;
  EXPECT_DOUBLE_EQ(officer_utility_at_rank(m, b, 1), m.share * b - m.detection * (m.officer_fine + b));

  ModelParams quiet = m;
  quiet.detection = 0.0;
  quiet.harassment_detection = 0.0;
  EXPECT_DOUBLE_EQ(officer_utility_at_rank(quiet, 0.0, 7), 0.0);
}

TEST(OfficerUtility, RejectsRankZero) {
  try {
    officer_utility_at_rank(reference_params(), 1.0, 0);
    FAIL() << "expected a domain error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}

TEST(OfficerUtility, DecreasesWithRankWhenShareExceedsDetection) {
  testing::ParamGenerator gen(12);
  for (int i = 0; i < 500; ++i) {
    const ModelParams m = gen.active();
    const double b = gen.uniform(0.01, 100.0);
    // deep ranks keep a share below rounding of the fine term, so only early ranks are strict
    for (int j = 1; j < 20; ++j) {
      const double next = officer_utility_at_rank(m, b, j + 1);
      const double here = officer_utility_at_rank(m, b, j);
      EXPECT_LE(next, here);
      if (j < 4) {
        EXPECT_LT(next, here);
      }
    }
  }
}

TEST(OfficerUtility, KeptFractionNeverExceedsBribe) {
  testing::ParamGenerator gen(13);
  for (int i = 0; i < 200; ++i) {
    const double x = gen.uniform(1e-6, 1.0 - 1e-6);
    for (int j = 1; j <= 60; ++j) EXPECT_LE(x * std::pow(1.0 - x, j - 1), 1.0);
  }
}

TEST(NetworkUtility, Examples) {
  ModelParams m = reference_params();
  EXPECT_NEAR(network_utility(m, kReferenceBribe), 0.482609, 1e-6);

  m.detection = 0.0;
  m.harassment_detection = 0.0;
  EXPECT_DOUBLE_EQ(network_utility(m, 8.0), 2.0);

  m = reference_params();
  m.detection = 0.3;
  m.harassment_detection = 0.1;
  EXPECT_NEAR(network_utility(m, 6.45), -0.855, 1e-12);
}

TEST(NetworkUtility, ExactSumGapIdentity) {
  testing::ParamGenerator gen(14);
  for (int i = 0; i < 1000; ++i) {
    const ModelParams m = gen.active();
    const double b = gen.uniform(0.0, 200.0);
    const double gap = network_utility(m, b) - network_utility_exact(m, b);
    const double tail = std::pow(1.0 - m.share, m.network_size) * b / (m.network_size * m.share);
    EXPECT_NEAR(gap, (m.share - m.detection) * tail, 1e-9 * (1.0 + b));
    EXPECT_LE(std::abs(gap), std::pow(1.0 - m.share, m.network_size) * b / m.network_size + 1e-12);
  }
}

TEST(NetworkUtility, ExactSumAtReference) {
  // mean of the four rank utilities 1.4652, 0.4826, -0.0087, -0.2543
  EXPECT_NEAR(network_utility_exact(reference_params(), kReferenceBribe), 0.421195652, 1e-9);
}

TEST(Validation, RejectsOutOfRangeParameters) {
  auto kind_of = [](ModelParams m) {
    try {
      validate(m);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;  // sentinel: no error
  };
  ModelParams m = reference_params();
  EXPECT_EQ(kind_of(m), ErrorKind::Io);
  m.share = 0.0;
  EXPECT_EQ(kind_of(m), ErrorKind::Domain);
  m = reference_params();
  m.share = 1.0;
  EXPECT_EQ(kind_of(m), ErrorKind::Domain);
  m = reference_params();
  m.harassment_detection = 0.2;
  EXPECT_EQ(kind_of(m), ErrorKind::Domain);
  m = reference_params();
  m.network_size = 0;
  EXPECT_EQ(kind_of(m), ErrorKind::Domain);
  m = reference_params();
  m.payoff = -1.0;
  EXPECT_EQ(kind_of(m), ErrorKind::Domain);
  m = reference_params();
  m.officer_fine = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(kind_of(m), ErrorKind::Domain);
  m = reference_params();
  m.detection = 1.5;
  EXPECT_EQ(kind_of(m), ErrorKind::Domain);
}

TEST(Validation, NegativeBribeRejected) {
  EXPECT_THROW(citizen_utility(reference_params(), -1.0), Error);
}

TEST(PunishmentRegime, Classification) {
  ModelParams m = reference_params();
  EXPECT_EQ(punishment_regime(m), PunishmentRegime::Asymmetric);
  m.citizen_fine = m.officer_fine;
  EXPECT_EQ(punishment_regime(m), PunishmentRegime::Symmetric);
  m.citizen_fine = m.officer_fine + 1.0;
  EXPECT_THROW(punishment_regime(m), Error);
}

TEST(Feasibility, ClausesReportedSeparately) {
  ModelParams m = reference_params();
  m.harassment_detection = 0.02;
  m.payoff = 10.0;
  m.reservation_payoff = 1.0;
  const FeasibilityReport r = feasibility_report(m, kReferenceBribe);
  EXPECT_EQ(r.activity, Activity::Active);
  EXPECT_TRUE(r.share_exceeds_detection);
  EXPECT_FALSE(r.detection_above_network_floor);  // 0.1 < 0.5 / 3.5
  EXPECT_TRUE(r.harassment_below_per_officer);    // 0.025 > 0.02
  EXPECT_TRUE(r.payoff_meets_reservation);
}

TEST(Feasibility, DetectionAboveShareMeansNoBribery) {
  ModelParams m = reference_params();
  m.share = 0.3;
  m.detection = 0.5;
  EXPECT_EQ(feasibility_report(m, 1.0).activity, Activity::NoBribery);
}

TEST(Feasibility, PayoffBelowReservationMeansNoBribery) {
  ModelParams m = reference_params();
  m.payoff = 0.5;
  m.reservation_payoff = 1.0;
  const FeasibilityReport r = feasibility_report(m, 1.0);
  EXPECT_FALSE(r.payoff_meets_reservation);
  EXPECT_EQ(r.activity, Activity::NoBribery);
}

TEST(Feasibility, AwardRatioClause) {
  ModelParams m = reference_params();
  // (B + p F_C) / (B + n F_O) = (1 + 0.2) / (1 + 20) ~ 0.0571 > p_h = 0.05
  EXPECT_FALSE(feasibility_report(m, 1.0).harassment_above_award_ratio);
  m.harassment_detection = 0.06;
  m.detection = 0.1;
  EXPECT_TRUE(feasibility_report(m, 1.0).harassment_above_award_ratio);
}

}  // namespace
}  // namespace briberynet
