#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "critline/forms.hpp"
#include "critline/numeric.hpp"
#include "critline/oscillatory.hpp"

namespace critline::sums {

// Σ_{n≤x} λ(n)e(αn), compensated.
cplx wilton_sum(const forms::FormDescriptor& f, double alpha, std::size_t x);

struct WiltonPoint {
  std::size_t x = 0;
  double sup_ratio = 0.0;  // max over α = k/q of |S(α, x)|/√x
  std::size_t argmax_k = 0;
};
// All checkpoints in one pass per α = k/q, 0 ≤ k < q. xs ascending.
std::vector<WiltonPoint> wilton_sup_ratios(const forms::FormDescriptor& f, std::uint32_t q,
                                           const std::vector<std::size_t>& xs);

struct RankinPoint {
  std::size_t x = 0;
  double ratio = 0.0;  // Σ_{n≤x}|λ(n)|²/x
};
// Dyadic x = 2^k ≤ n_max, starting at x_min.
std::vector<RankinPoint> rankin_selberg_ratios(const forms::FormDescriptor& f, std::size_t x_min = 2);

// W(x) for the completion identity: a jet window supported in [lo, hi] ⊂ (0, ∞).
struct CompletionWindow {
  osc::JetFn w;
  double lo = 1.0, hi = 2.0;
};
CompletionWindow default_completion_window();  // the mollifier bump on [1, 2]

// Ŵ(ξ) = ∫ W(x)e(−xξ)dx by the oscillatory oracle.
cplx window_fourier(const CompletionWindow& w, double xi);

struct CompletionDetail {
  cplx lhs;
  cplx rhs;
  double residual = 0.0;
  long m_max = 0;        // dual sum over |m| ≤ m_max
  double tail_bound = 0.0;
};
// LHS Σ_{(k,r)=1} e(nk̄/r)W(k/K), RHS (K/r)Σ_m S(m,n;r)Ŵ(mK/r). The dual sum
// stops once the integration-by-parts bound on the remaining tail, including
// the |S| ≤ r factor and K/r, is below `budget`.
CompletionDetail completion_detail(std::int64_t n, std::int64_t r, double K, const CompletionWindow& w,
                                   double budget = 1e-10);
double completion_residual(std::int64_t n, std::int64_t r, double K, const CompletionWindow& w,
                           double budget = 1e-10);

// a on integers m ∈ [M, 3M], b on n ∈ [N, 3N]; first index ⌈M⌉, ⌈N⌉.
struct BilinearConfig {
  double M = 0.0, N = 0.0;
  std::vector<cplx> a, b;
  int sign = 1;  // S(m, sign·n; c)

  std::int64_t m_first() const;
  std::int64_t n_first() const;
};

// Unimodular a and b from a seeded generator.
BilinearConfig random_bilinear(double M, double N, std::uint64_t seed, int sign = 1);
// Single nonzero entries a_{m0} = b_{n0} = 1.
BilinearConfig delta_bilinear(double M, double N, std::int64_t m0, std::int64_t n0, int sign = 1);

// g(m,n,c) = β(m/M)β(n/N)β(c/C) with β the bump on [1, 3] scaled so that
// sup|β^{(j)}| ≤ 1 for j ≤ 2, hence |∂^{j+k+l}g| ≤ M^{−j}N^{−k}C^{−l}.
double bilinear_beta(double u);
double bilinear_beta_derivative(double u, int j);
// Sampled max of |∂_m^j ∂_n^k ∂_c^l g|·M^jN^kC^l over j,k,l ≤ 2; ≤ 1 by design.
double bilinear_weight_bound(int samples = 201);

// Σ_c Σ_m Σ_n a_m b_n g(m,n,c) S(m, ±n; c), c over integers in [C, 3C].
// Factorized per c through the unit group; parallel over c, merged in c order.
cplx bilinear_sum(const BilinearConfig& cfg, double C);
// The literal triple sum with one Kloosterman sum per (m, n, c); for checks.
cplx bilinear_sum_direct(const BilinearConfig& cfg, double C);
// |bilinear_sum| / (C√(MN)‖a‖₂‖b‖₂)
double bilinear_average_ratio(const BilinearConfig& cfg, double C);

}  // namespace critline::sums
