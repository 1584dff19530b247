#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "critline/errors.hpp"
#include "critline/forms.hpp"
#include "critline/lfunc.hpp"
#include "critline/special.hpp"

using namespace critline;
using namespace critline::forms;

namespace {
const std::string kTable = CRITLINE_TEST_TABLE;
const double kR = 13.7797513518907362;

const FormDescriptor& delta() {
  static const FormDescriptor f = build_delta(20000);
  return f;
}
}  // namespace

TEST(Delta, Normalization) {
  const auto& f = delta();
  EXPECT_EQ(f.kind, FormKind::holomorphic);
  EXPECT_EQ(f.lambda(1), 1.0);
  EXPECT_NEAR(f.lambda(2), -24.0 / std::pow(2.0, 5.5), 1e-15);
  EXPECT_NEAR(f.lambda(2), -0.530330, 1e-6);
  EXPECT_GT(f.lambda(3), 0.0);
  EXPECT_NEAR(f.lambda(2) * f.lambda(2) - f.lambda(4), 1.0, 1e-14);
  EXPECT_TRUE(f.self_dual());
  ASSERT_EQ(f.kappa.size(), 2u);
  EXPECT_THROW(build_delta(0), PreconditionError);
}

TEST(Delta, InvariantsHold) {
  const auto rep = check_invariants(delta());
  EXPECT_TRUE(rep.ok) << rep.failure;
  EXPECT_LE(rep.max_hecke_defect, 1e-12);
  EXPECT_GE(rep.min_rankin_ratio, 0.05);
  EXPECT_LE(rep.max_rankin_ratio, 20.0);
  EXPECT_LE(hecke_defect(delta(), 10000), 1e-12);
}

TEST(Delta, RankinSelbergFlatAcrossDyadicRange) {
  const auto& f = delta();
  double lo = 1e300, hi = 0, acc = 0;
  std::size_t next = 1024;
  for (std::size_t n = 1; n <= f.n_max(); ++n) {
    acc += f.lambda(n) * f.lambda(n);
    if (n == next) {
      lo = std::min(lo, acc / n);
      hi = std::max(hi, acc / n);
      next *= 2;
    }
  }
  EXPECT_LT(hi / lo, 2.0);
}

TEST(Ingest, SingleRow) {
  std::istringstream in("# header\n1\t1\n");
  const auto f = ingest_eigenvalues(in, 9.5, 1);
  EXPECT_EQ(f.n_max(), 1u);
  EXPECT_EQ(f.kind, FormKind::maass);
  EXPECT_EQ(f.mu, 9.5);
}

TEST(Ingest, PrimeRowsReproduceDelta) {
  std::stringstream io;
  write_eigenvalues(io, delta(), true);
  const auto g = ingest_eigenvalues(io, 0.0, 5000);
  for (std::size_t n = 1; n <= 5000; ++n) ASSERT_NEAR(g.lambda(n), delta().lambda(n), 1e-12) << n;
}

TEST(Ingest, FullPrefixRoundTrip) {
  std::stringstream io;
  write_eigenvalues(io, build_delta(300), false);
  const auto g = ingest_eigenvalues(io, 0.0, 300);
  for (std::size_t n = 1; n <= 300; ++n) ASSERT_NEAR(g.lambda(n), delta().lambda(n), 1e-14);
}

TEST(Ingest, RejectsBadTables) {
  {
    std::ostringstream o;
    for (int n = 1; n <= 8; ++n) o << n << "\t" << (n == 6 ? 0.5 : delta().lambda(n)) << "\n";
    std::istringstream in(o.str());
    EXPECT_THROW(ingest_eigenvalues(in, 0.0, 8), DataError);  // λ(6) ≠ λ(2)λ(3)
  }
  {
    std::istringstream in("1\t1\n2\t0.3\n5\t0.1\n");
    EXPECT_THROW(ingest_eigenvalues(in, 0.0, 5), DataError);  // p = 3 missing
  }
  {
    std::istringstream in("1\t1\n2\tabc\n");
    EXPECT_THROW(ingest_eigenvalues(in, 0.0, 2), DataError);
  }
  {
    std::istringstream in("1\t2\n");
    EXPECT_THROW(ingest_eigenvalues(in, 0.0, 1), DataError);
  }
  EXPECT_THROW(ingest_eigenvalues_file("/nonexistent/table.tsv", 1.0, 10), DataError);
}

TEST(Ingest, MaassTable) {
  const auto f = ingest_eigenvalues_file(kTable, kR, 8192);
  EXPECT_EQ(f.kind, FormKind::maass);
  EXPECT_EQ(f.n_max(), 8192u);
  // First even level-one Maass form, published Hecke eigenvalues
  EXPECT_NEAR(f.lambda(2), 1.549304477941, 1e-10);
  EXPECT_NEAR(f.lambda(3), 0.246899772453, 1e-10);
  const auto rep = check_invariants(f);
  EXPECT_TRUE(rep.ok) << rep.failure;
  EXPECT_LE(hecke_defect(f, 8192), 1e-12);
}

TEST(LAtOne, DeltaAgainstIncompleteGammaSeries) {
  const auto d = l_at_one_detail(delta());
  EXPECT_NEAR(d.value, 0.83934551203194209, 1e-10);
  EXPECT_LE(std::abs(d.imag), 1e-10);
  EXPECT_LE(d.discretization, 1e-8);
  EXPECT_GT(d.value, 0.0);
}

TEST(LAtOne, CollapseIdentityPipeline) {
  // Σλ(n)d(n)n^{−s} → L(s,f)²/ζ(2s): at s = 1.5 the partial sum to 2·10⁴
  // already fixes three digits.
  EXPECT_LE(lfunc::collapse_identity_residual(delta(), 1.5, 20000), 1e-2);
  EXPECT_LE(lfunc::collapse_identity_residual(delta(), 2.0, 10000), 1e-3);
}

TEST(LAtOne, TableTooShort) { EXPECT_THROW(l_at_one(build_delta(10)), TableTooShortError); }

TEST(GammaFactor, DuplicationForm) {
  // π^{−s}Γ((s+11/2)/2)Γ((s+13/2)/2) = 2^{−9/2−s}π^{1/2−s}Γ(s+11/2)
  const double lp = std::log(std::numbers::pi), l2 = std::log(2.0);
  for (cplx s : {cplx(0.5, 0), cplx(0.5, 30), cplx(2, -7)}) {
    const cplx lhs = log_gamma_factor(delta(), s);
    const cplx rhs = (-4.5 - s) * l2 + (0.5 - s) * lp + special::log_gamma(s + 5.5);
    EXPECT_LE(std::abs(std::exp(lhs - rhs) - 1.0), 1e-12) << s;
  }
}
