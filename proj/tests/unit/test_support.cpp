#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "critline/errors.hpp"
#include "critline/lattice.hpp"
#include "critline/parallel.hpp"
#include "critline/quadrature.hpp"

using namespace critline;

TEST(Quadrature, GaussLegendreExactness) {
  for (int n : {2, 4, 6, 8, 10, 16, 20, 30}) {
    const auto& r = quad::gauss_legendre(n);
    ASSERT_EQ(r.nodes.size(), std::size_t(n));
    // degree 2n−1 monomial integrates exactly
    double s = 0;
    for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], 2 * n - 2);
    EXPECT_NEAR(s, 2.0 / (2 * n - 1), 1e-13) << n;
  }
  EXPECT_NEAR(quad::integrate([](double x) { return std::sin(x); }, 0, std::numbers::pi, 8), 2.0, 1e-14);
  EXPECT_THROW(quad::gauss_legendre(7), PreconditionError);
}

TEST(Lattice, MatchesDirectSums) {
  std::vector<double> b(300);
  for (std::size_t n = 0; n < b.size(); ++n) b[n] = 1.0 / std::sqrt(n + 1.0);
  const double tau0 = 123.4, step = 0.013;
  std::vector<cplx> out(600);
  lattice::dirichlet_progression(b, tau0, step, out.size(), out.data());
  for (std::size_t m : {0u, 1u, 255u, 256u, 599u}) {
    cplx want = 0;
    const double tau = tau0 + m * step;
    for (std::size_t n = 1; n <= b.size(); ++n) want += b[n - 1] * std::polar(1.0, -tau * std::log(double(n)));
    EXPECT_LE(std::abs(out[m] - want), 1e-11) << m;
  }
}

TEST(Lattice, BlocksAreOrderIndependent) {
  std::vector<cplx> b(100, cplx(0.5, 0.25));
  const lattice::DirichletLattice L(b, 0.02);
  std::vector<cplx> whole(768), part(256);
  L.eval(10.0, 0, whole.size(), whole.data());
  L.eval(10.0, 512, part.size(), part.data());
  for (std::size_t i = 0; i < part.size(); ++i) ASSERT_EQ(part[i], whole[512 + i]);
}

TEST(Parallel, CoversEveryIndexAndRethrowsLowest) {
  set_worker_count(3);
  std::vector<int> hit(1000, 0);
  parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) ASSERT_EQ(h, 1);
  try {
    parallel_for(100, [](std::size_t i) {
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "17");
  }
  EXPECT_THROW(set_worker_count(0), PreconditionError);
  set_worker_count(1);
}
