#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "critline/forms.hpp"
#include "critline/numeric.hpp"
#include "critline/oscillatory.hpp"

namespace critline::voronoi {

struct NodeCache;

// Test function F on [lo, hi] ⊂ [1/2, 5/2], spectral parameter μ and the
// coefficients of
//   Φ⁺(x) = x^{−1/4} ∫ F(y) y^{−1/4} Σ_{j≤J} (c_j e(2√(xy)) + d_j e(−2√(xy)))/(xy)^{j/2} dy + O(x^{−J/2−3/4}).
// From the Hankel expansions: c_j = (i/√2)e^{−iπ/4} i^j a_j(2iμ)/(4π)^j,
// d_j = conj(c_j), a_j(ν) = ∏_{k≤j}(4ν² − (2k−1)²)/(j!·8^j).
struct VoronoiKernel {
  osc::JetFn F;
  double lo = 0.5, hi = 2.5;
  double mu = 0.0;
  int J = 2;
  std::vector<cplx> c, d;
  double F_scale = 1.0;  // sup|F|, for scale-free truncation thresholds
  std::shared_ptr<NodeCache> nodes;  // quadrature nodes weighted by F, filled lazily
};

// exp(8 − 2/(v(1−v))), v = (y − 1/2)/2: peak 1 at y = 3/2. Narrower than the
// plain mollifier, so Φ^± fall below 1e-10 by x ≈ 500 rather than x ≈ 5000.
osc::JetFn default_test_function();
VoronoiKernel make_kernel(double mu, int J = 2);
VoronoiKernel make_kernel(double mu, int J, const osc::JetFn& F, double lo, double hi);

struct PhiValue {
  double value = 0.0;
  double resolution_defect = 0.0;
};

// Φ⁺(x) = −π/sin(πiμ) ∫F(y)(J_{2iμ} − J_{−2iμ})(4π√(xy))dy. For real x and μ
// the bracket is 2i·Im J_{2iμ}, so Φ⁺ is real. Two panel counts must agree
// to 1e-7·sup|F| or ConvergenceError.
PhiValue phi_plus_detail(const VoronoiKernel& k, double x);
cplx phi_plus(const VoronoiKernel& k, double x);
// Φ⁻(x) = 4cosh(πμ) ∫F(y) K_{2iμ}(4π√(xy)) dy.
PhiValue phi_minus_detail(const VoronoiKernel& k, double x);
double phi_minus(const VoronoiKernel& k, double x);

// The J-term expansion, each y-integral by the oscillatory oracle. x ≥ 5.
cplx phi_plus_asymptotic(const VoronoiKernel& k, double x);
cplx phi_plus_asymptotic(const VoronoiKernel& k, double x, int J);

enum class Sign { plus, minus };

struct MellinValue {
  cplx s;
  cplx value;
  cplx near_zero;   // (0, x0], termwise from the Bessel power series
  cplx middle;      // (x0, X], quadrature in log x
  double tail_bound = 0.0;  // |contribution of (X, ∞)|, not computed
  double X = 0.0;
};
// Φ̃(s) = ∫₀^∞ Φ(x)x^{s−1}dx split into three ranges. X is the first power
// of two with sup|Φ| ≤ 1e-13·sup|F| on [X, 2X]; the range past X is not
// integrated and tail_bound reports it under an x^{−2} envelope.
MellinValue mellin_phi(const VoronoiKernel& k, Sign sign, cplx s);

struct MellinSample {
  cplx s;
  double magnitude = 0.0;
};
// |Φ̃(s)| on Re s = 0.05, Im s = 0, step, 2·step, … ≤ s_im_max.
std::vector<MellinSample> mellin_phi_decay(const VoronoiKernel& k, Sign sign, double s_im_max, double step = 1.0);

// Closed form, via ∫J_ν(z)z^{2s−1}dz and ∫K_ν(z)z^{2s−1}dz:
//   Φ̃⁺(s) = (iπ/sinh πμ)(2π)^{−2s}[Γ(s+iμ)/Γ(1−s+iμ) − Γ(s−iμ)/Γ(1−s−iμ)] F̃(1−s)
//   Φ̃⁻(s) = 2cosh(πμ)(2π)^{−2s} Γ(s+iμ)Γ(s−iμ) F̃(1−s)
// with F̃(1−s) = ∫F(y)y^{−s}dy; valid for 0 < Re s < 3/4.
cplx mellin_phi_closed_form(const VoronoiKernel& k, Sign sign, cplx s);

// Least-squares slope of log|Φ̃| against log(1+|s|) over samples with
// |s| ∈ [lo, hi].
double mellin_slope(const std::vector<MellinSample>& samples, double lo, double hi);

struct VoronoiCheck {
  cplx lhs;
  cplx rhs;
  double residual = 0.0;
  std::size_t n_cut_plus = 0, n_cut_minus = 0;
  std::int64_t a_bar = 0;
};
// LHS Σλ(n)e(an/q)F(n/N); RHS (N/q)Σ_±Σ_n λ(n)e(∓ān/q)Φ^±(nN/q²), each dual
// sum stopped at a power of two n once the octave (n/2, n] contributes at
// most 1e-7·sup|F| in absolute value.
// Maass descriptors only (|μ| ≥ 1e-3); the kernel's μ must match the form's.
VoronoiCheck voronoi_check(const forms::FormDescriptor& f, std::int64_t a, std::int64_t q, double N,
                           const VoronoiKernel& k);
double voronoi_residual(const forms::FormDescriptor& f, std::int64_t a, std::int64_t q, double N,
                        const VoronoiKernel& k);

}  // namespace critline::voronoi
