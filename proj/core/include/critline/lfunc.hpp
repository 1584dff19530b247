#pragma once

#include <cstddef>
#include <vector>

#include "critline/forms.hpp"
#include "critline/numeric.hpp"

namespace critline::lfunc {

using forms::FormDescriptor;

// Test function G(u) = exp(a·u²) and the contour used for W_s. The smoothed
// evaluators default to a = 1/8: with a = 1 the cutoff W_s(x) has a transition
// too wide for the sums to stay short (see README).
struct CutoffKernel {
  double gaussian_scale = 0.125;
  double contour_re = 1.0;
  double contour_height = 20.0;
  int resolution = 256;

  cplx g(cplx u) const { return std::exp(gaussian_scale * u * u); }
  double spacing() const { return 2.0 * contour_height / resolution; }

  // G(w) = e^{w²} on Re w = 1/2, |Im w| ≤ 5.5: the kernel of the truncated
  // dyadic approximate functional equations.
  static CutoffKernel dyadic_default();
};

// v1(x) = φ(x)/Σ_{k∈ℤ} φ(2^k x), φ a C^∞ bump on [4/5, 11/5]; the
// partition identity Σ_N v1(n/N) = 1 over N = 2^k, k ∈ ℤ, holds by
// construction.
struct DyadicPartition {
  static double phi(double x);
  double v1(double x) const;
  // Exponents k with 2^k ≤ n_max/(4/5) whose block meets [1, n_max]; starts
  // at k = −1 because v1(n/N) with N = 1/2 is non-zero at n = 1.
  std::vector<int> block_exponents(double n_max) const;
  double partition_sum(double n) const;
};

cplx zeta(cplx s);

// Euler–Maclaurin with explicit truncation; exposed for the lattice engine.
struct ZetaEulerMaclaurin {
  std::size_t n_terms = 0;  // main sum over n < n_terms
  int bernoulli_terms = 10;
};
ZetaEulerMaclaurin zeta_plan(cplx s);
// Tail of Euler–Maclaurin: everything except Σ_{n<N} n^{−s}.
cplx zeta_em_tail(cplx s, std::size_t n_terms, int bernoulli_terms);

// log(γ(s+u)/γ(s)).
cplx log_gamma_ratio(const FormDescriptor& f, cplx s, cplx u);

// Taylor expansion of log(γ(s+u)/γ(s)) in u about 0, for fast evaluation on
// many contour nodes at one s. Valid for |u| ≤ radius.
class GammaRatioExpansion {
 public:
  GammaRatioExpansion(const FormDescriptor& f, cplx s, double radius);
  bool valid() const { return valid_; }
  cplx log_ratio(cplx u) const;

 private:
  std::vector<cplx> coeffs_;  // coeffs_[m] multiplies u^m
  bool valid_ = false;
};

// W_s(x) by trapezoid quadrature at the kernel resolution and twice it;
// throws ConvergenceError if they differ by more than 1e-8.
cplx w_cutoff(const CutoffKernel& k, const FormDescriptor& f, cplx s, double x);
cplx w_cutoff_at_resolution(const CutoffKernel& k, const FormDescriptor& f, cplx s, double x);

// Smallest length N with the tail of Σ λ(n)n^{−s}W_s(n) below tol, from the
// shifted-contour bound |W_s(x)| ≤ x^{−σ}B(σ).
std::size_t cutoff_length(const CutoffKernel& k, const FormDescriptor& f, cplx s, double tol);

// The smoothed sum Σ λ(n) n^{−s} W_s(n), contour discretized by the
// trapezoid rule with spacing k.spacing().
cplx smoothed_sum(const CutoffKernel& k, const FormDescriptor& f, cplx s, std::size_t n_terms,
                  bool conjugate_coefficients = false);

// L(s,f) from both sums of the approximate functional equation with exact
// gamma quotients. Valid anywhere the cutoff integrals converge.
cplx smoothed_l_value(const FormDescriptor& f, cplx s, const CutoffKernel& k = {});
cplx smoothed_l_value(const FormDescriptor& f, double t, const CutoffKernel& k = {});

// L(½+it,f) through the truncated dyadic AFE with Stirling closed forms.
cplx afe_l_value(const FormDescriptor& f, double t, const DyadicPartition& p,
                 const CutoffKernel& k = CutoffKernel::dyadic_default());

// ζ²(½−it) through the d(m) specialization of the dyadic AFE.
cplx afe_zeta_squared(double t, const DyadicPartition& p,
                      const CutoffKernel& k = CutoffKernel::dyadic_default());

// Dyadic truncation used by the two AFE evaluators: the largest block scale
// and the last n kept, for the ratio (t/2π)^{d/2}.
std::size_t afe_truncation(double t, int degree, const CutoffKernel& k);

// Building blocks of the dyadic AFE, shared with the moment engines.
// Σ_{N=2^k} v1(n/N) over the blocks kept for heights up to t_max, n = 1..len;
// element n−1 is the weight of n.
std::vector<double> afe_block_weights(double t_max, int degree, const DyadicPartition& p,
                                      const CutoffKernel& k);

// Trapezoid weights on w_j = ε + i(−H + jη) for the two sums at height t,
// with the Stirling closed forms folded in:
//   first:  (η/2π) G(w)/w · (|t|/2π)^{dw/2} q^{w/2} e^{i sgn(t) π d w/4}
//   second: (η/2π) G(w)/w · (|t|/2π)^{dw/2} q^{w/2} e^{i sgn(t) π(−dw/4 + d/4 + Σκ/2)}
// and the reflection factor ε (|t|/2πe)^{−idt} q^{−it} of the second sum.
struct AfeWeights {
  std::vector<cplx> first, second;
  cplx reflection;
};
void afe_weights(const CutoffKernel& k, int degree, double kappa_sum, double conductor, cplx root_number,
                 double t, AfeWeights& out);

// |Σ_{n≤N} λ(n)d(n)n^{−s} − L(s,f)²/ζ(2s)|.
double collapse_identity_residual(const FormDescriptor& f, double s, std::size_t n);

}  // namespace critline::lfunc
