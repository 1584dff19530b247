#include <cmath>
#include <numbers>
#include <string>

#include "critline/errors.hpp"
#include "critline/special.hpp"

namespace critline::special {

namespace {

constexpr double kSeriesLimit = 20.0;
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

void check_order(cplx order, double x, const char* who) {
  if (!(x > 0.0)) throw PreconditionError(std::string(who) + ": requires x > 0");
  if (std::abs(order) > kMaxBesselOrder)
    throw PreconditionError(std::string(who) + ": |order| exceeds " + std::to_string(kMaxBesselOrder));
}

bool negative_integer(cplx nu, int& n) {
  if (nu.imag() != 0.0 || nu.real() >= 0.0 || nu.real() != std::round(nu.real())) return false;
  n = static_cast<int>(-nu.real());
  return true;
}

}  // namespace

cplx bessel_j_series(cplx nu, double x) {
  int n = 0;
  if (negative_integer(nu, n)) return ((n % 2 == 0) ? 1.0 : -1.0) * bessel_j_series(-nu, x);
  const double q = -0.25 * x * x;
  cplx term = 1.0, sum = 1.0;
  for (int k = 1; k < 2000; ++k) {
    term *= q / (static_cast<double>(k) * (nu + static_cast<double>(k)));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > 0.5 * x) break;
  }
  return std::exp(nu * std::log(0.5 * x) - log_gamma(nu + 1.0)) * sum;
}

bool bessel_j_asymptotic(cplx nu, double x, cplx& out) {
  const cplx mu4 = 4.0 * nu * nu;
  cplx a = 1.0;
  cplx s1 = 1.0, s2 = 1.0;  // Σ i^k a_k/x^k and Σ (−i)^k a_k/x^k
  cplx ik = 1.0;
  double prev = 1.0;
  bool converged = false;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu4 - odd * odd) / (8.0 * k * x);
    ik *= kI;
    const double mag = std::abs(a);
    if (mag > prev && k > 2) break;
    s1 += ik * a;
    s2 += std::conj(ik) * a;
    prev = mag;
    if (mag < 1e-17) {
      converged = true;
      break;
    }
  }
  if (!converged && prev > 1e-15) return false;
  const cplx omega = x - nu * kPi / 2.0 - kPi / 4.0;
  const double amp = std::sqrt(2.0 / (kPi * x));
  out = 0.5 * amp * (std::exp(kI * omega) * s1 + std::exp(-kI * omega) * s2);
  return true;
}

// H^{(1)}_ν(x) = e^{−iνπ/2}/(πi) ∫ e^{ix cosh w − νw} dw along a path from
// −∞−iπ/2 to +∞+iπ/2, routed through the saddle sinh w = −iν/x so the
// integrand never exceeds its saddle value. Trapezoid rule in the path
// parameter, refined until stable.
cplx hankel1(cplx nu, double x) {
  check_order(nu, x, "hankel1");
  const cplx ws = std::asinh(-kI * nu / x);
  const double us = ws.real();
  const double vs = std::clamp(ws.imag(), -kPi / 2.0 + 0.3, kPi / 2.0 - 0.3);
  const double theta = std::min(std::max(1.0, std::abs(vs) + 0.25), kPi - std::abs(vs) - 0.2);

  auto phase = [&](double u, cplx& dw) {
    const double th = std::tanh(u - us);
    const cplx w(u, vs + theta * th);
    dw = cplx(1.0, theta * (1.0 - th * th));
    return kI * x * std::cosh(w) - nu * w;
  };
  cplx dw;
  const double ref = phase(us, dw).real();

  auto extent = [&](double dir) {
    double u = 0.0;
    for (int i = 0; i < 400; ++i) {
      u += 0.125;
      if (phase(us + dir * u, dw).real() - ref < -42.0) return u;
    }
    throw ConvergenceError("hankel1: integrand does not decay along the path");
  };
  const double lo = us - extent(-1.0), hi = us + extent(1.0);

  auto integrand = [&](double u) {
    cplx d;
    const cplx p = phase(u, d);
    return std::exp(p - ref) * d;
  };
  int n = 64;
  double h = (hi - lo) / n;
  cplx sum = 0.0;
  double mass = 0.0;
  for (int k = 0; k <= n; ++k) {
    const cplx v = (k == 0 || k == n ? 0.5 : 1.0) * integrand(lo + k * h);
    sum += v;
    mass += std::abs(v);
  }
  cplx val = sum * h;
  for (int level = 0; level < 14; ++level) {
    for (int k = 0; k < n; ++k) {
      const cplx v = integrand(lo + (k + 0.5) * h);
      sum += v;
      mass += std::abs(v);
    }
    n *= 2;
    h *= 0.5;
    const cplx next = sum * h;
    const double tol = 1e-14 * std::abs(next) + 4e-16 * mass * h;
    const bool done = std::abs(next - val) <= tol && level >= 1;
    val = next;
    if (done) return std::exp(-kI * nu * kPi / 2.0 + ref) / (kPi * kI) * val;
  }
  throw ConvergenceError("hankel1: trapezoid refinement did not converge");
}

BesselRoute bessel_j_route(cplx nu, double x) {
  if (x <= kSeriesLimit) return BesselRoute::series;
  cplx tmp;
  return bessel_j_asymptotic(nu, x, tmp) ? BesselRoute::asymptotic : BesselRoute::contour;
}

cplx bessel_j(cplx nu, double x) {
  check_order(nu, x, "bessel_j");
  if (x <= kSeriesLimit) return bessel_j_series(nu, x);
  cplx out;
  if (bessel_j_asymptotic(nu, x, out)) return out;
  // H2_ν(x) = conj(H1_{ν̄}(x)) for real x.
  return 0.5 * (hankel1(nu, x) + std::conj(hankel1(std::conj(nu), x)));
}

cplx bessel_j_derivative(cplx nu, double x, int j) {
  if (j < 0) throw PreconditionError("bessel_j_derivative: j must be >= 0");
  if (j == 0) return bessel_j(nu, x);
  cplx acc = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= j; ++k) {
    acc += ((k % 2 == 0) ? 1.0 : -1.0) * binom * bessel_j(nu - static_cast<double>(j) + 2.0 * k, x);
    binom = binom * (j - k) / (k + 1);
  }
  return acc / std::pow(2.0, j);
}

BesselKResult bessel_k_imag(double mu, double x) {
  if (!(x > 0.0)) throw PreconditionError("bessel_k_imag: requires x > 0");
  if (2.0 * std::abs(mu) > kMaxBesselOrder)
    throw PreconditionError("bessel_k_imag: |2mu| exceeds " + std::to_string(kMaxBesselOrder));
  if (x >= 500.0) return {0.0, true};
  const double tau = 2.0 * std::abs(mu);

  // Shift the real-axis integral up by θ. With θ = arcsin(τ/x) the shifted
  // integrand is stationary and non-oscillating at u = 0; for τ ≳ x the shift
  // stops short of π/2 so the decay e^{−x cos θ cosh u} stays usable.
  const double delta = std::min(0.5, 6.0 / std::max(tau, 1.0));
  const double theta = std::min(std::asin(std::min(tau / x, 1.0)), kPi / 2.0 - delta);
  const double ct = std::cos(theta), st = std::sin(theta);

  auto g = [&](double u) {
    return std::exp(-x * ct * (std::cosh(u) - 1.0)) * std::cos(tau * u - x * st * std::sinh(u));
  };
  // exp(−x cosθ (cosh U − 1)) < 1e-19
  const double umax = std::acosh(1.0 + 44.0 / (x * ct));
  int n = 32;
  double h = umax / n;
  double sum = 0.5 * g(0.0), mass = 0.5;
  for (int k = 1; k <= n; ++k) {
    const double v = g(k * h);
    sum += v;
    mass += std::abs(v);
  }
  double val = sum * h;
  for (int level = 0; level < 20; ++level) {
    for (int k = 0; k < n; ++k) {
      const double v = g((k + 0.5) * h);
      sum += v;
      mass += std::abs(v);
    }
    n *= 2;
    h *= 0.5;
    const double next = sum * h;
    // Once the rule has converged, successive values differ only by rounding
    // in the (possibly cancelling) sum.
    const double tol = 1e-14 * std::abs(next) + 4e-16 * mass * h;
    const bool done = std::abs(next - val) <= tol && level >= 1;
    val = next;
    if (done) return {std::exp(-x * ct - tau * theta) * val, false};
  }
  throw ConvergenceError("bessel_k_imag: quadrature did not converge");
}

double bessel_k_imag_real_axis(double mu, double x) {
  if (!(x > 0.0)) throw PreconditionError("bessel_k_imag_real_axis: requires x > 0");
  // Composite 2-point Gauss on a uniform mesh: deliberately unrelated to the
  // trapezoid rule above.
  const double umax = std::acosh(1.0 + 44.0 / x);
  const int panels = 4000;
  const double h = umax / panels;
  const double g = 0.5 / std::sqrt(3.0);
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (double s : {-g, g}) {
      const double u = mid + s * h;
      acc += std::exp(-x * std::cosh(u)) * std::cos(2.0 * mu * u);
    }
  }
  return acc * 0.5 * h;
}

}  // namespace critline::special
