#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "critline/errors.hpp"
#include "critline/forms.hpp"
#include "critline/lfunc.hpp"
#include "critline/moments.hpp"

using namespace critline;
using namespace critline::moments;

namespace {
constexpr double kPi = std::numbers::pi;
}

// mpmath quad, tests/oracles/oracles.txt
TEST(Window, MassAndShape) {
  EXPECT_NEAR(mollifier_mass(), 0.22199690808403972, 2e-12);
  for (double d : {4.0, 10.0}) {
    const auto w = make_window(d);
    EXPECT_EQ(w(1.5), 1.0);
    EXPECT_EQ(w(0.99), 0.0);
    EXPECT_EQ(w(2.01), 0.0);
    EXPECT_NEAR(w.mass, 1.0 - 1.0 / d, 1e-10);
    for (double x = 1.0; x <= 2.0; x += 0.001) ASSERT_LE(std::abs(w.derivative(x, 2)), 9 * d * d) << x;
  }
  for (double u = 0.05; u < 1; u += 0.1) EXPECT_NEAR(ramp(u) + ramp(1 - u), 1.0, 1e-13);
  EXPECT_TRUE(sharp_window().sharp());
  EXPECT_EQ(sharp_window().mass, 1.0);
}

TEST(MainTerm, Formula) {
  const double z2 = kPi * kPi / 6;
  EXPECT_NEAR(main_term(0.8, 100, 0.75), 2 * 0.75 * 100 * 0.64 / z2, 1e-12);
  EXPECT_GT(default_grid_step(100), default_grid_step(1000));
}

TEST(MeanValue, SingleTermAndOrthogonality) {
  // |n^{it}|² = 1, so the integral is T
  EXPECT_NEAR(mean_value_integral({cplx(1, 0)}, 50), 50, 1e-9);
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(0, 2 * kPi);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<cplx> a(40);
    for (auto& x : a) x = std::polar(1.0, u(g));
    EXPECT_LE(mean_value_ratio(a, 200), 1.0);
  }
}

TEST(FitLogSlope, ExactPowerLaw) {
  std::vector<double> x = {1, 2, 4, 8}, y;
  for (double v : x) y.push_back(3 * std::pow(v, -0.7));
  EXPECT_NEAR(fit_log_slope(x, y), -0.7, 1e-12);
}

TEST(Moment, SmallHeightNearMainTerm) {
  const auto shape = forms::build_delta(1);
  const auto f = forms::build_delta(required_table_length(shape, 100, Engine::direct));
  MomentJob job;
  job.form = &f;
  job.T = 100;
  job.window = make_window(4);
  const auto r = mixed_moment(job);
  EXPECT_NEAR(r.main_term, main_term(f, 100, job.window), 1e-9 * r.main_term);
  EXPECT_LE(std::abs(r.ratio - 1.0), 0.6);
  EXPECT_LE(r.richardson_defect, 0.01);
  EXPECT_GT(r.panels, 0u);
  // Conjugating t → −t sends the integrand to its conjugate over [−2T, −T];
  // on [T, 2T] alone the imaginary part is not forced to vanish but stays
  // at the size of the error term.
  EXPECT_LE(std::abs(r.moment.imag()), 3 * std::pow(100.0, 0.75));
  EXPECT_EQ(r.residual, r.moment - r.main_term);
}

TEST(Moment, RejectsShortTable) {
  const auto f = forms::build_delta(50);
  MomentJob job;
  job.form = &f;
  job.T = 100;
  job.window = make_window(4);
  EXPECT_THROW(mixed_moment(job), TableTooShortError);
}
