#pragma once

#include <complex>
#include <vector>

#include "critline/numeric.hpp"

namespace critline::special {

// Principal branch of log Γ(z). Throws PreconditionError at the poles.
cplx log_gamma(cplx z);

// log Γ(z+v) − log Γ(z), computed without forming either term when |z| is
// large, so that phases stay accurate for |Im z| in the thousands.
cplx log_gamma_diff(cplx z, cplx v);

// Polygamma ψ^{(m)}(z) for m = 0..m_max at one point, via shift recurrence and
// the asymptotic series. Used to Taylor-expand gamma quotients in the shift.
std::vector<cplx> polygammas(cplx z, int m_max);

enum class StirlingDirection { same_sign, reflected };

struct StirlingRatioRequest {
  double t = 0.0;
  cplx w = 0.0;
  cplx kappa = 0.0;
  StirlingDirection direction = StirlingDirection::same_sign;
};

struct StirlingRatio {
  cplx exact;
  cplx approx;
  double relative_defect() const { return std::abs(exact / approx - 1.0); }
};

// same_sign:  Γ((½+it+w−κ)/2)/Γ((½+it−κ)/2)  vs  (|t|/2)^{w/2} e^{i sgn(t)πw/4}
// reflected:  Γ((½−it−κ)/2)/Γ((½+it−κ)/2)    vs  (|t|/2e)^{−it} e^{iπ sgn(t)(1/4+κ/2)}
StirlingRatio stirling_ratio(const StirlingRatioRequest& r);

// Bessel J of complex order at positive real argument.
cplx bessel_j(cplx order, double x);

// j-th derivative in x, from the three-term recurrence.
cplx bessel_j_derivative(cplx order, double x, int j);

// Hankel function of the first kind; the contour route used when neither the
// power series nor the large-argument expansion is accurate.
cplx hankel1(cplx order, double x);

// Which route bessel_j takes; exposed for the seam tests.
enum class BesselRoute { series, asymptotic, contour };
BesselRoute bessel_j_route(cplx order, double x);
cplx bessel_j_series(cplx order, double x);
// Returns false when the large-argument series does not reach full accuracy.
bool bessel_j_asymptotic(cplx order, double x, cplx& out);

struct BesselKResult {
  double value = 0.0;
  bool underflow = false;
};

// K_{2iμ}(x), real for real μ. Underflows to zero (flagged) for x ≥ 500.
BesselKResult bessel_k_imag(double mu, double x);

// The plain cosine integral ∫₀^∞ e^{−x cosh u} cos(2μu) du on the real axis,
// a second independent rule used to cross-check bessel_k_imag when it is not
// ill-conditioned (moderate μ, x ≳ μ).
double bessel_k_imag_real_axis(double mu, double x);

// Largest |order| accepted by the Bessel routines.
inline constexpr double kMaxBesselOrder = 40.0;

}  // namespace critline::special
