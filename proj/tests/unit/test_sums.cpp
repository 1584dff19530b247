#include <gtest/gtest.h>

#include <cmath>

#include "critline/arith.hpp"
#include "critline/errors.hpp"
#include "critline/forms.hpp"
#include "critline/sums.hpp"

using namespace critline;
using namespace critline::sums;

namespace {
const forms::FormDescriptor& delta() {
  static const auto f = forms::build_delta(1 << 14);
  return f;
}
}  // namespace

TEST(Wilton, ConjugateSymmetryAndZeroFrequency) {
  for (double a : {0.1, 0.37, 0.5}) {
    const cplx s = wilton_sum(delta(), a, 3000), t = wilton_sum(delta(), -a, 3000);
    EXPECT_LE(std::abs(s - std::conj(t)), 1e-9) << a;
  }
  double plain = 0;
  for (std::size_t n = 1; n <= 3000; ++n) plain += delta().lambda(n);
  EXPECT_NEAR(wilton_sum(delta(), 0.0, 3000).real(), plain, 1e-9);
}

TEST(Wilton, SupRatioBounded) {
  const auto pts = wilton_sup_ratios(delta(), 8, {1024, 4096, 16384});
  ASSERT_EQ(pts.size(), 3u);
  for (const auto& p : pts) EXPECT_LE(p.sup_ratio, 50.0) << p.x;
}

TEST(Rankin, RatiosFlat) {
  const auto r = rankin_selberg_ratios(delta(), 64);
  ASSERT_FALSE(r.empty());
  for (const auto& p : r) {
    EXPECT_GE(p.ratio, 0.05);
    EXPECT_LE(p.ratio, 20.0);
  }
}

// mpmath quad, tests/oracles/oracles.txt
TEST(Completion, WindowFourierFrozen) {
  const auto w = default_completion_window();
  EXPECT_LE(std::abs(window_fourier(w, 0) - 0.22199690808403972), 1e-12);
  EXPECT_LE(std::abs(window_fourier(w, 0.5) - cplx(0, 0.18157222387521881)), 1e-12);
  EXPECT_LE(std::abs(window_fourier(w, 3) - (-0.0045310504428137876)), 1e-12);
}

TEST(Completion, ResidualSmall) {
  const auto w = default_completion_window();
  for (auto [n, r, K] : {std::tuple{1L, 7L, 50.0}, {3L, 12L, 100.0}, {5L, 97L, 300.0}, {0L, 30L, 60.0}})
    EXPECT_LE(completion_residual(n, r, K, w), 1e-6) << n << " " << r;
}

TEST(Completion, MonotoneInBudget) {
  const auto w = default_completion_window();
  const auto loose = completion_detail(2, 15, 80, w, 1e-3);
  const auto tight = completion_detail(2, 15, 80, w, 1e-12);
  EXPECT_LE(loose.m_max, tight.m_max);
  EXPECT_LE(tight.residual, 1e-9);
}

TEST(Bilinear, FactorizedMatchesDirect) {
  for (int sign : {1, -1}) {
    const auto cfg = random_bilinear(6, 5, 17, sign);
    const cplx a = bilinear_sum(cfg, 7), b = bilinear_sum_direct(cfg, 7);
    EXPECT_LE(std::abs(a - b), 1e-9 * std::max(1.0, std::abs(b))) << sign;
  }
}

TEST(Bilinear, DeltaConfigIsOneKloostermanSum) {
  const auto cfg = delta_bilinear(4, 4, 5, 7, 1);
  const cplx direct = bilinear_sum_direct(cfg, 5);
  EXPECT_LE(std::abs(bilinear_sum(cfg, 5) - direct), 1e-10);
  cplx want = 0;
  for (std::int64_t c = 5; c <= 15; ++c)
    want += bilinear_beta(5 / 4.0) * bilinear_beta(7 / 4.0) * bilinear_beta(c / 5.0) *
            arith::kloosterman_sum({5, 7, c});
  EXPECT_LE(std::abs(direct - want), 1e-10);
}

TEST(Bilinear, WeightBoundAndRatio) {
  EXPECT_LE(bilinear_weight_bound(), 1.0 + 1e-12);
  EXPECT_EQ(bilinear_beta(0.9), 0.0);
  EXPECT_EQ(bilinear_beta(3.1), 0.0);
  EXPECT_LE(bilinear_average_ratio(random_bilinear(20, 20, 3), 20), 20.0);
}
