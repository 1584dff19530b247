#include "critline/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "critline/errors.hpp"
#include "critline/moments.hpp"
#include "critline/quadrature.hpp"

namespace critline::osc {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// Σ_k coef[k]·(x − x.c[0])^k: composes a Taylor series about x.c[0] with a jet.
RJet compose(const std::array<double, kJetOrder + 1>& coef, const RJet& x) {
  RJet d = x;
  d.c[0] = 0.0;
  RJet acc(coef[kJetOrder]);
  for (int k = kJetOrder - 1; k >= 0; --k) acc = acc * d + RJet(coef[k]);
  return acc;
}

RJet mollifier(const RJet& v) {
  if (v.c[0] <= 0.0 || v.c[0] >= 1.0) return RJet(0.0);
  return exp(RJet(-0.25) / (v * (RJet(1.0) - v)));
}

RJet partition_phi(const RJet& x) {
  const RJet y = (x - RJet(1.5)) * RJet(1.0 / 0.7);
  if (std::abs(y.c[0]) >= 1.0) return RJet(0.0);
  return exp(RJet(-1.0) / (RJet(1.0) - y * y));
}

// ρ about u0 as a Taylor series: ρ_0 = ρ(u0), ρ_k = b_{k−1}/(kZ).
RJet ramp_jet(const RJet& u) {
  const double u0 = u.c[0];
  if (u0 <= 0.0) return RJet(0.0);
  if (u0 >= 1.0) return RJet(1.0);
  const RJet b = mollifier(RJet::variable(u0));
  std::array<double, kJetOrder + 1> coef{};
  coef[0] = moments::ramp(u0);
  for (int k = 1; k <= kJetOrder; ++k) coef[k] = b.c[k - 1] / (k * moments::mollifier_mass());
  return compose(coef, u);
}

}  // namespace

JetFn bump_window(double lo, double hi) {
  if (!(hi > lo)) throw PreconditionError("bump_window: requires lo < hi");
  return [lo, hi](const RJet& x) { return mollifier((x - RJet(lo)) * RJet(1.0 / (hi - lo))); };
}

JetFn partition_window(double scale) {
  return [scale](const RJet& x) {
    const RJet u = x * RJet(1.0 / scale);
    if (u.c[0] <= 0.8 || u.c[0] >= 2.2) return RJet(0.0);
    RJet total(0.0);
    for (int k = -2; k <= 2; ++k) total += partition_phi(u * RJet(std::ldexp(1.0, k)));
    return partition_phi(u) / total;
  };
}

JetFn ramp_window(double delta, double scale) {
  if (!(delta >= 2.0)) throw PreconditionError("ramp_window: delta must be >= 2");
  return [delta, scale](const RJet& x) {
    const RJet u = x * RJet(1.0 / scale);
    const double u0 = u.c[0];
    if (u0 <= 1.0 || u0 >= 2.0) return RJet(0.0);
    if ((u0 - 1.0) * delta < 1.0) return ramp_jet((u - RJet(1.0)) * RJet(delta));
    if ((2.0 - u0) * delta < 1.0) return ramp_jet((RJet(2.0) - u) * RJet(delta));
    return RJet(1.0);
  };
}

double inert_scale(const JetFn& w, double lo, double hi, double Z, int samples) {
  std::array<double, 5> sup{};
  for (int k = 0; k < samples; ++k) {
    const double x = lo + (hi - lo) * (k + 0.5) / samples;
    const RJet j = w(RJet::variable(x));
    for (int d = 0; d <= 4; ++d) sup[d] = std::max(sup[d], std::abs(j.derivative(d)));
  }
  if (sup[0] == 0.0) throw PreconditionError("inert_scale: window vanishes");
  double x = 0.0;
  for (int d = 1; d <= 4; ++d) x = std::max(x, std::pow(sup[d] / sup[0], 1.0 / d));
  return Z * x;
}

// ---------------------------------------------------------------------------

namespace {

struct Panel {
  double a, b;
};

std::vector<Panel> layout(const PhaseProblem& p) {
  std::vector<Panel> panels;
  const double base = (p.hi - p.lo) / 32.0;
  double x = p.lo;
  while (x < p.hi) {
    // width from the local frequency at both ends of a trial panel
    double width = std::min(base, p.hi - x);
    for (int it = 0; it < 4; ++it) {
      const double f = std::max(std::abs(p.phase_derivative(x, 1)), std::abs(p.phase_derivative(x + width, 1)));
      const double limit = f > 0.0 ? 2.0 * kPi / f : base;
      if (width <= limit) break;
      width = limit;
    }
    const double end = (p.hi - (x + width) < 1e-12 * (p.hi - p.lo)) ? p.hi : x + width;
    panels.push_back({x, end});
    x = end;
  }
  return panels;
}

cplx integrate_panels(const PhaseProblem& p, const std::vector<Panel>& panels, int split) {
  const auto& rule = quad::gauss_legendre(20);
  ComplexNeumaierSum acc;
  for (const Panel& pn : panels) {
    const double h = (pn.b - pn.a) / split;
    for (int s = 0; s < split; ++s) {
      const double a = pn.a + s * h;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = a + 0.5 * h * (rule.nodes[i] + 1.0);
        const double wv = p.window(x);
        if (wv == 0.0) continue;
        acc.add(0.5 * h * rule.weights[i] * wv * std::exp(kI * p.phase(x)));
      }
    }
  }
  return acc.value();
}

}  // namespace

OracleResult oracle_detail(const PhaseProblem& p) {
  if (!(p.hi > p.lo)) throw PreconditionError("oracle_integral: empty support");
  const auto panels = layout(p);
  OracleResult r;
  const cplx coarse = integrate_panels(p, panels, 1);
  r.value = integrate_panels(p, panels, 2);
  r.refinement_defect = std::abs(r.value - coarse);
  r.panels = 2 * panels.size();
  if (r.refinement_defect > 1e-9 * p.Z)
    throw ConvergenceError("oracle_integral: refinement levels differ by " + std::to_string(r.refinement_defect));
  return r;
}

cplx oracle_integral(const PhaseProblem& p) { return oracle_detail(p).value; }

StationaryPoint find_stationary_point(const PhaseProblem& p) {
  constexpr int kGrid = 256;
  auto d1 = [&](double x) { return p.phase_derivative(x, 1); };
  std::vector<std::pair<double, double>> brackets;
  double xa = p.lo, fa = d1(xa);
  for (int k = 1; k <= kGrid; ++k) {
    const double xb = p.lo + (p.hi - p.lo) * k / kGrid;
    const double fb = d1(xb);
    if ((fa < 0.0) != (fb < 0.0)) brackets.emplace_back(xa, xb);
    xa = xb;
    fa = fb;
  }
  if (brackets.empty()) throw PreconditionError("stationary_point_expansion: h' has no zero on the support");
  if (brackets.size() > 1)
    throw PreconditionError("stationary_point_expansion: h' has " + std::to_string(brackets.size()) +
                            " zeros on the support");
  double a = brackets[0].first, b = brackets[0].second;
  double fa0 = d1(a);
  double x = 0.5 * (a + b);
  const double tol = 1e-12 * p.Y / p.Z;
  for (int it = 0; it < 200; ++it) {
    const RJet j = p.h(RJet::variable(x));
    const double f1 = j.derivative(1), f2 = j.derivative(2);
    if (std::abs(f1) <= tol) break;
    if ((f1 < 0.0) == (fa0 < 0.0)) {
      a = x;
      fa0 = f1;
    } else {
      b = x;
    }
    double next = f2 != 0.0 ? x - f1 / f2 : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (next == x) break;
    x = next;
  }
  const RJet j = p.h(RJet::variable(x));
  if (std::abs(j.derivative(1)) > tol * 1e3)
    throw ConvergenceError("stationary_point_expansion: root finder did not reach |h'| tolerance");
  return {x, j.c[0], j.derivative(2)};
}

cplx stationary_point_expansion(const PhaseProblem& p, int order) {
  if (order < 0 || 2 * order > kJetOrder)
    throw PreconditionError("stationary_point_expansion: order must be in [0, " + std::to_string(kJetOrder / 2) + "]");
  const StationaryPoint sp = find_stationary_point(p);
  using CJet = Jet<cplx, kJetOrder>;
  RJet hj = p.h(RJet::variable(sp.xi0));
  hj.c[0] = 0.0;
  hj.c[2] = 0.0;
  const CJet g = complexify(p.w(RJet::variable(sp.xi0))) * exp(CJet(kI) * complexify(hj));
  const cplx h2(sp.h2, 0.0);
  const cplx step = kI / (2.0 * h2);
  cplx sum = 0.0, pw = 1.0;
  double fact = 1.0;
  for (int n = 0; n <= order; ++n) {
    if (n > 0) {
      pw *= step;
      fact *= n;
    }
    sum += pw / fact * g.derivative(2 * n);
  }
  return std::exp(kI * sp.h0) / std::sqrt(h2) * std::sqrt(2.0 * kPi) * std::exp(kI * kPi / 4.0) * sum;
}

cplx stationary_point_asymptotic(const PhaseProblem& p, int k) {
  if (k < 0 || 6 * k > kJetOrder) throw PreconditionError("stationary_point_asymptotic: k must be in [0, 2]");
  return stationary_point_expansion(p, 3 * k);
}

double first_derivative_test(const PhaseProblem& p, int A) {
  constexpr int kSamples = 1024;
  const double floor = p.Y / p.Z;
  double sign = 0.0;
  for (int k = 0; k <= kSamples; ++k) {
    const double x = p.lo + (p.hi - p.lo) * k / kSamples;
    const double d = p.phase_derivative(x, 1);
    if (std::abs(d) < floor * (1.0 - 1e-12))
      throw PreconditionError("first_derivative_test: |h'| = " + std::to_string(std::abs(d)) +
                              " below Y/Z = " + std::to_string(floor) + " at x = " + std::to_string(x));
    if (sign != 0.0 && (d > 0.0) != (sign > 0.0))
      throw PreconditionError("first_derivative_test: h' changes sign on the support");
    sign = d;
  }
  return p.Z * std::pow(p.Y / p.X, -A);
}

// ---------------------------------------------------------------------------

PhaseProblem fresnel(double omega, double xi0, double lo, double hi) {
  PhaseProblem p;
  p.w = bump_window(lo, hi);
  p.h = [omega, xi0](const RJet& x) {
    const RJet d = x - RJet(xi0);
    return RJet(omega) * d * d;
  };
  p.lo = lo;
  p.hi = hi;
  p.Z = hi - lo;
  p.X = inert_scale(p.w, lo, hi, p.Z);
  p.Y = omega * p.Z * p.Z;
  p.R = p.Y / (p.X * p.X);
  return p;
}

PhaseProblem linear_phase(double lambda, const JetFn& w, double lo, double hi, double Z, double X) {
  PhaseProblem p;
  p.w = w;
  p.h = [lambda](const RJet& x) { return RJet(lambda) * x; };
  p.lo = lo;
  p.hi = hi;
  p.Z = Z;
  p.X = X;
  p.Y = std::abs(lambda) * Z;
  p.R = 1.0;
  return p;
}

namespace {

// The windows here are fixed shapes of unit scale, X = 1 in the lemma's
// normalization (their derivative constants do not grow with T), so R = Y.
PhaseProblem finish_family(PhaseProblem p, double lo, double hi, double Y) {
  p.lo = lo;
  p.hi = hi;
  p.Z = 1.0;
  p.X = 1.0;
  p.Y = Y;
  p.R = Y;
  return p;
}

}  // namespace

PhaseProblem family_h2(double T, double xi, double A, double a, double b, double n) {
  PhaseProblem p;
  p.w = partition_window();
  p.h = [=](const RJet& x) { return RJet(T * xi) * log(x * RJet(A * b / n)) - RJet(2.0 * kPi * A * a) * x; };
  return finish_family(std::move(p), 0.8, 2.2, T * xi);
}

PhaseProblem family_h3(double T, double a, double b, double n) {
  PhaseProblem p;
  p.w = ramp_window(4.0);
  p.h = [=](const RJet& x) {
    return RJet(T) * x * log(x * RJet(b * T / (2.0 * kPi * a * n * std::numbers::e)));
  };
  return finish_family(std::move(p), 1.0, 2.0, T);
}

PhaseProblem family_h4(double T, double m, double n) {
  PhaseProblem p;
  p.w = ramp_window(4.0);
  p.h = [=](const RJet& x) {
    return RJet(2.0 * T) * x * log(x * RJet(T / (2.0 * kPi * std::numbers::e * std::sqrt(m * n))));
  };
  return finish_family(std::move(p), 1.0, 2.0, 2.0 * T);
}

PhaseProblem family_h5(double A, double a, double b, double n) {
  if (!(a < 0.0)) throw PreconditionError("family_h5: the stationary point needs a < 0");
  PhaseProblem p;
  p.w = partition_window();
  p.h = [=](const RJet& x) {
    return RJet(-4.0 * kPi) * sqrt(x * RJet(A * b * n)) - RJet(2.0 * kPi * A * a) * x;
  };
  return finish_family(std::move(p), 0.8, 2.2, 4.0 * kPi * std::sqrt(A * b * n * 1.5));
}

}  // namespace critline::osc
