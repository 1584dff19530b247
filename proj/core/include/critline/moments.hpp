#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "critline/forms.hpp"
#include "critline/numeric.hpp"

namespace critline::moments {

using forms::FormDescriptor;

// V on [1, 2]: a C^∞ ramp of width 1/Δ at each edge and V ≡ 1 on
// [1+1/Δ, 2−1/Δ]. The ramp is ρ(u) = ∫_0^u b / ∫_0^1 b with the mollifier
// b(v) = exp(−1/(4v(1−v))), so ρ(u) + ρ(1−u) = 1 and ∫V = 1 − 1/Δ.
// A sharp window is the indicator of [1, 2].
struct SmoothWindow {
  double delta = 0.0;  // 0 for the sharp window
  double mass = 1.0;   // ∫V, by quadrature

  bool sharp() const { return delta == 0.0; }
  double operator()(double x) const;
  // V^{(order)}(x), order ≤ 6, by Taylor jets of the mollifier.
  double derivative(double x, int order) const;
};

double ramp(double u);
double mollifier_mass();  // ∫_0^1 exp(−1/(4v(1−v))) dv
SmoothWindow make_window(double delta);
SmoothWindow sharp_window();

enum class Engine { direct, afe };

struct MomentJob {
  const FormDescriptor* form = nullptr;
  double T = 0.0;
  SmoothWindow window;
  double grid_step = 0.0;  // 0 selects 0.1/log T
  Engine engine = Engine::direct;
  bool richardson = true;   // also integrate at grid_step/2
  double l_one = 0.0;       // 0: computed by forms::l_at_one
};

struct MomentReport {
  double T = 0.0;
  double c = 0.0;
  double l_one = 0.0;
  double zeta2 = 0.0;
  cplx moment;
  double main_term = 0.0;
  cplx residual;
  double ratio = 0.0;
  double grid_step = 0.0;
  std::size_t panels = 0;
  double richardson_defect = 0.0;  // |M(h) − M(h/2)| / main_term
  double seconds = 0.0;
};

double default_grid_step(double T);

// Coefficients the engine needs for a form of this shape (only kind, degree
// and κ are read) at height T; lets callers size tables before building them.
std::size_t required_table_length(const FormDescriptor& shape, double T, Engine engine);

// 2cT·L(1,f)²/ζ(2).
double main_term(double l_one, double T, double mass);
double main_term(const FormDescriptor& f, double T, const SmoothWindow& w);

// ∫ V(t/T) L(½+it,f) ζ(½−it)² dt over [T, 2T] by composite 6-point
// Gauss–Legendre panels. Throws ConvergenceError when halving the grid moves
// the value by more than 1% of the main term.
MomentReport mixed_moment(const MomentJob& job);

MomentReport sharp_cutoff_moment(const FormDescriptor& f, double T, double grid_step = 0.0,
                                 Engine engine = Engine::direct);

// ∫_lo^hi |L(½+it,f)ζ(½−it)²| dt and max of the integrand on the same grid:
// the edge-strip diagnostics of the smooth-to-sharp comparison.
struct StripEstimate {
  double integral_abs = 0.0;
  double max_abs = 0.0;
};
StripEstimate strip_estimate(const FormDescriptor& f, double lo, double hi, double grid_step = 0.0);

// ∫_0^T |Σ a_n n^{it}|² dt / ((T+3N)Σ|a_n|²).
double mean_value_ratio(const std::vector<cplx>& coeffs, double T);
// Same with the raw integral also returned, for diagnostics.
double mean_value_integral(const std::vector<cplx>& coeffs, double T);

struct ScalingStudy {
  double exponent = 0.0;  // least-squares slope of log|residual| against log T
  std::vector<MomentReport> rows;
};
ScalingStudy scaling_study(const FormDescriptor& f, const std::vector<double>& T_list, double window_delta,
                           double grid_step = 0.0, Engine engine = Engine::direct);

// Least-squares slope of log y against log x.
double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace critline::moments
