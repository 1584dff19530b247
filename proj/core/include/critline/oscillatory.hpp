#pragma once

#include <functional>

#include "critline/jet.hpp"
#include "critline/numeric.hpp"

namespace critline::osc {

// Jets carry enough derivatives for the p_n corrections up to n = 6.
inline constexpr int kJetOrder = 12;
using RJet = Jet<double, kJetOrder>;
using JetFn = std::function<RJet(const RJet&)>;

// I = ∫ w(ξ) e^{ih(ξ)} dξ with w supported in [lo, hi] ⊂ [Z, 2Z] up to
// rescaling, w^{(j)} ≪ (Z/X)^{−j} and h^{(j)} ≪ Y/Z^j.
struct PhaseProblem {
  JetFn w, h;
  double lo = 0.0, hi = 0.0;
  double Z = 1.0, X = 1.0, Y = 1.0, R = 1.0;

  double window(double x) const { return w(RJet(x)).c[0]; }
  double phase(double x) const { return h(RJet(x)).c[0]; }
  // h^{(k)}(x), k ≤ kJetOrder
  double phase_derivative(double x, int k) const { return h(RJet::variable(x)).derivative(k); }
};

// Windows as jet functions.
JetFn bump_window(double lo, double hi);      // exp(−1/(4v(1−v))), v = (x−lo)/(hi−lo)
JetFn partition_window(double scale = 1.0);   // v1(x/scale) of the dyadic partition
JetFn ramp_window(double delta, double scale = 1.0);  // the moments window V(x/scale)

// Z · max_{1≤j≤4} (sup|w^{(j)}| / sup|w|)^{1/j}, sampled on [lo, hi]: the
// smallest X for which w^{(j)} ≤ sup|w|·(X/Z)^j holds at orders j ≤ 4.
double inert_scale(const JetFn& w, double lo, double hi, double Z, int samples = 2001);

struct OracleResult {
  cplx value;
  double refinement_defect = 0.0;  // |I(panels) − I(panels/2)|
  std::size_t panels = 0;
};
// Composite 20-point Gauss panels no wider than one local oscillation
// 2π/|h′|, so ≥ 20 nodes per period; compared against the same panels split
// in two. Throws ConvergenceError if the levels differ by more than 1e-9·Z.
OracleResult oracle_detail(const PhaseProblem& p);
cplx oracle_integral(const PhaseProblem& p);

struct StationaryPoint {
  double xi0 = 0.0;
  double h0 = 0.0;   // h(ξ0)
  double h2 = 0.0;   // h″(ξ0)
};
// Sign change of h′ on a uniform grid, then Newton with bisection fallback to
// |h′(ξ0)| ≤ 1e-12·Y/Z. Throws PreconditionError if h′ has no zero or more
// than one zero on the support.
StationaryPoint find_stationary_point(const PhaseProblem& p);

// e^{ih(ξ0)}/√h″(ξ0) · Σ_{n≤order} p_n(ξ0) with
// p_n = √(2π) e^{iπ/4}/n! · (i/(2h″(ξ0)))^n G^{(2n)}(ξ0), G = w e^{iH},
// H = h − h(ξ0) − ½h″(ξ0)(ξ−ξ0)². Principal square root, so h″ < 0 works.
cplx stationary_point_expansion(const PhaseProblem& p, int order);

// The same series grouped by powers of 1/h″: p_n carries h″^{−n} but its
// G^{(2n)} contains (h‴)^k terms of net size h″^{−n+k}, so the complete
// correction of relative size R^{−k} needs every p_n with n ≤ 3k.
cplx stationary_point_asymptotic(const PhaseProblem& p, int k);

// Z·(Y/X)^{−A}; checks min|h′| ≥ Y/Z on the support by sampling.
double first_derivative_test(const PhaseProblem& p, int A = 3);

// Model problems.
PhaseProblem fresnel(double omega, double xi0, double lo, double hi);
PhaseProblem linear_phase(double lambda, const JetFn& w, double lo, double hi, double Z, double X);

// The four phase shapes of the main-term analysis, windows of unit scale:
//   h2(x) = Tξ log(Abx/n) − 2πAax          on the partition window
//   h3(ξ) = Tξ log(bTξ/(2πane))             on the moments window
//   h4(ξ) = 2Tξ log(Tξ/(2πe√(mn)))          on the moments window
//   h5(x) = −4π√(Abnx) − 2πAax (a < 0)      on the partition window
PhaseProblem family_h2(double T, double xi, double A, double a, double b, double n);
PhaseProblem family_h3(double T, double a, double b, double n);
PhaseProblem family_h4(double T, double m, double n);
PhaseProblem family_h5(double A, double a, double b, double n);

}  // namespace critline::osc
