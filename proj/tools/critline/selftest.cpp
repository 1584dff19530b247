// Quick property checks, one or a few per module; the full suites live in
// tests/. Each check is cheap enough that the whole table runs in seconds.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "critline/arith.hpp"
#include "critline/errors.hpp"
#include "critline/forms.hpp"
#include "critline/lfunc.hpp"
#include "critline/moments.hpp"
#include "critline/oscillatory.hpp"
#include "critline/special.hpp"
#include "critline/sums.hpp"
#include "critline/voronoi.hpp"

namespace critline::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

struct Suite {
  std::vector<SelftestRow> rows;

  // fn returns the measured quantity; pass iff it is ≤ tol.
  void le(const std::string& module, const std::string& check, double tol, const std::function<double()>& fn) {
    SelftestRow r{module, check, false, {}};
    try {
      const double v = fn();
      r.pass = v <= tol;
      r.detail = sci(v) + " <= " + sci(tol);
    } catch (const std::exception& e) {
      r.detail = std::string("threw: ") + e.what();
    }
    rows.push_back(r);
  }
};

}  // namespace

std::vector<SelftestRow> run_selftest(const std::string& maass_table) {
  Suite s;

  s.le("arith", "tau(1..5) exact", 0, [] {
    const auto t = arith::ramanujan_tau(5);
    const long want[] = {1, -24, 252, -1472, 4830};
    double bad = 0;
    for (int i = 0; i < 5; ++i) bad += t[i] != want[i];
    return bad;
  });
  s.le("arith", "Weil bound |S(a,b;p)| <= 2sqrt(p), p <= 100", 1.0, [] {
    double worst = 0;
    for (auto p : arith::primes_up_to(100)) {
      const arith::KloostermanModulus km(p);
      for (std::int64_t a = 1; a < p; ++a)
        for (std::int64_t b = 1; b < p; ++b)
          worst = std::max(worst, std::abs(km.sum(a, b)) / (2 * std::sqrt(double(p))));
    }
    return worst;
  });
  s.le("arith", "S(a,b;c) = S(b,a;c), c <= 60", 1e-12, [] {
    double d = 0;
    for (std::int64_t c = 1; c <= 60; ++c)
      for (std::int64_t a = 0; a < 7; ++a)
        d = std::max(d, std::abs(arith::kloosterman_sum({a, 3, c}) - arith::kloosterman_sum({3, a, c})));
    return d;
  });

  s.le("special", "log Gamma(1/2) = log sqrt(pi)", 1e-14,
       [] { return std::abs(special::log_gamma(0.5) - 0.5 * std::log(kPi)); });
  s.le("special", "Stirling defect at t = 400 <= 10/t", 10.0 / 400, [] {
    return special::stirling_ratio({400.0, cplx(0.5, 1.0), -5.5, special::StirlingDirection::same_sign})
        .relative_defect();
  });
  s.le("special", "K_{2i}(10): shifted vs real-axis rule", 1e-10, [] {
    const double a = special::bessel_k_imag(1.0, 10.0).value;
    return std::abs(a - special::bessel_k_imag_real_axis(1.0, 10.0)) / std::abs(a);
  });
  s.le("special", "J_{2i}(30): Hankel contour vs asymptotic", 1e-10, [] {
    cplx asym;
    if (!special::bessel_j_asymptotic(cplx(0, 2), 30.0, asym)) return 1.0;
    const cplx h = 0.5 * (special::hankel1(cplx(0, 2), 30.0) + std::conj(special::hankel1(cplx(0, -2), 30.0)));
    return std::abs(h - asym);
  });

  const auto delta = forms::build_delta(10000);
  s.le("forms", "Delta Hecke relations, n <= 1e4", 1e-12, [&] { return forms::hecke_defect(delta, 10000); });
  s.le("forms", "lambda(2) = -24/2^5.5", 1e-15,
       [&] { return std::abs(delta.lambda(2) + 24.0 / std::pow(2.0, 5.5)); });
  s.le("forms", "prime rows re-ingest to the same table", 1e-12, [&] {
    std::stringstream io;
    forms::write_eigenvalues(io, delta, true);
    const auto g = forms::ingest_eigenvalues(io, 0.0, 2000);
    double d = 0;
    for (std::size_t n = 1; n <= 2000; ++n) d = std::max(d, std::abs(g.lambda(n) - delta.lambda(n)));
    return d;
  });
  const bool have_table = std::ifstream(maass_table).good();
  if (have_table)
    s.le("forms", "Maass table passes the invariants", 0, [&] {
      const auto f = forms::ingest_eigenvalues_file(maass_table, table_mu(maass_table), 8192);
      return forms::check_invariants(f, 1e-8).ok ? 0.0 : 1.0;
    });

  s.le("lfunc", "zeta(2)", 1e-13, [] { return std::abs(lfunc::zeta(2.0) - kPi * kPi / 6); });
  s.le("lfunc", "zeta(1/2)", 1e-13, [] { return std::abs(lfunc::zeta(0.5) + 1.460354508809587); });
  s.le("lfunc", "dyadic partition of unity, n <= 1000", 1e-10, [] {
    const lfunc::DyadicPartition p;
    double d = 0;
    for (int n = 1; n <= 1000; ++n) d = std::max(d, std::abs(p.partition_sum(n) - 1.0));
    return d;
  });
  s.le("lfunc", "L(1/2, Delta) central value", 1e-9, [&] {
    return std::abs(lfunc::smoothed_l_value(delta, 0.0) - 0.7921228386460325);
  });

  s.le("oscillatory", "order-0 stationary phase on h4, T = 1e4", 1.0, [] {
    const double m = std::round(1.5e4 / (2 * kPi));
    const auto p = osc::family_h4(1e4, m, m);
    const cplx o = osc::oracle_integral(p);
    return std::abs(osc::stationary_point_expansion(p, 0) / o - 1.0) * p.R / 10.0;
  });
  s.le("oscillatory", "linear phase under the A = 3 envelope", 1.0, [] {
    const auto w = osc::bump_window(1, 2);
    const double X = osc::inert_scale(w, 1, 2, 1.0);
    const auto p = osc::linear_phase(30 * X, w, 1, 2, 1.0, X);
    return std::abs(osc::oracle_integral(p)) / osc::first_derivative_test(p);
  });

  s.le("voronoi", "Phi+ two-term expansion at x = 100", 1.0, [] {
    const auto k = voronoi::make_kernel(1.0);
    const double d = std::abs(voronoi::phi_plus_asymptotic(k, 100.0, 2) - voronoi::phi_plus(k, 100.0));
    return d / std::pow(100.0, -1.75);
  });
  if (have_table)
    s.le("voronoi", "Voronoi residual, q = 1, a = 1, N = 10", 1e-4, [&] {
      const auto f = forms::ingest_eigenvalues_file(maass_table, table_mu(maass_table), 8192);
      return voronoi::voronoi_residual(f, 1, 1, 10.0, voronoi::make_kernel(f.mu));
    });

  s.le("sums", "completion residual n = 3, r = 7, K = 50", 1e-6,
       [] { return sums::completion_residual(3, 7, 50.0, sums::default_completion_window()); });
  s.le("sums", "bilinear sum: factorized vs direct", 1e-12, [] {
    const auto cfg = sums::random_bilinear(6, 5, 7);
    const cplx a = sums::bilinear_sum(cfg, 6), b = sums::bilinear_sum_direct(cfg, 6);
    return std::abs(a - b) / std::max(1e-300, std::abs(b));
  });
  s.le("sums", "Wilton sup ratio, q = 31, x <= 4096", 50, [&] {
    double worst = 0;
    for (const auto& w : sums::wilton_sup_ratios(delta, 31, {256, 1024, 4096})) worst = std::max(worst, w.sup_ratio);
    return worst;
  });

  s.le("moments", "main term linear in T", 1e-12, [] {
    const double a = moments::main_term(0.8, 400, 0.875), b = moments::main_term(0.8, 800, 0.875);
    return std::abs(b / a - 2.0);
  });
  s.le("moments", "window mass = 1 - 1/Delta", 1e-12, [] { return std::abs(moments::make_window(8).mass - 0.875); });
  s.le("moments", "mean value ratio <= 1, 20 seeds", 1.0, [] {
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      std::mt19937_64 g(seed);
      std::normal_distribution<double> nd;
      std::vector<cplx> a(40);
      for (auto& x : a) x = cplx(nd(g), nd(g));
      worst = std::max(worst, moments::mean_value_ratio(a, 50.0));
    }
    return worst;
  });

  return s.rows;
}

}  // namespace critline::cli
