#include "critline/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include "critline/errors.hpp"

namespace critline::special {

namespace {

constexpr int kStirlingTerms = 12;
constexpr double kStirlingRadius = 15.0;
const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

// B_{2k} / (2k(2k−1)), k = 1..kStirlingTerms.
const std::array<double, kStirlingTerms>& stirling_coefficients() {
  static const auto table = [] {
    std::array<double, kStirlingTerms> c{};
    for (int k = 1; k <= kStirlingTerms; ++k)
      c[k - 1] = boost::math::bernoulli_b2n<double>(k) / (2.0 * k * (2.0 * k - 1.0));
    return c;
  }();
  return table;
}

bool stirling_ok(cplx z) {
  return std::abs(z) >= kStirlingRadius && (z.real() >= 0.5 || std::abs(z.imag()) >= std::abs(z.real()));
}

cplx stirling_tail(cplx z) {
  const auto& c = stirling_coefficients();
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx acc = 0.0;
  for (int k = kStirlingTerms - 1; k >= 0; --k) acc = acc * inv2 + c[k];
  return acc * inv;
}

cplx stirling(cplx z) { return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + stirling_tail(z); }

bool is_pole(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

cplx log_gamma(cplx z) {
  if (is_pole(z)) throw PreconditionError("log_gamma: pole at " + std::to_string(z.real()));
  cplx shift = 0.0;
  while (!stirling_ok(z) || z.real() < 0.5) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling(z) - shift;
}

cplx log_gamma_diff(cplx z, cplx v) {
  const cplx zv = z + v;
  if (!stirling_ok(z) || !stirling_ok(zv) || std::abs(v) > 0.5 * std::abs(z))
    return log_gamma(zv) - log_gamma(z);
  // (z+v−½)log(z+v) − (z−½)log z − v, rearranged so the large parts cancel
  // analytically.
  const cplx lead = (z - 0.5) * std::log(1.0 + v / z) + v * std::log(zv) - v;
  return lead + stirling_tail(zv) - stirling_tail(z);
}

std::vector<cplx> polygammas(cplx z, int m_max) {
  if (m_max < 0) throw PreconditionError("polygammas: m_max must be >= 0");
  if (is_pole(z)) throw PreconditionError("polygammas: pole");
  const double radius = std::max(20.0, 2.0 * m_max + 10.0);
  std::vector<cplx> out(static_cast<std::size_t>(m_max) + 1, 0.0);
  std::vector<double> fact(static_cast<std::size_t>(m_max) + 2 * kStirlingTerms + 2, 1.0);
  for (std::size_t i = 1; i < fact.size(); ++i) fact[i] = fact[i - 1] * static_cast<double>(i);

  // ψ^{(m)}(z) = ψ^{(m)}(z+1) − (−1)^m m! z^{−m−1}
  while (std::abs(z) < radius || z.real() < 0.5) {
    cplx inv = 1.0 / z;
    cplx pw = inv;
    for (int m = 0; m <= m_max; ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      out[m] -= sign * fact[m] * pw;
      pw *= inv;
    }
    z += 1.0;
  }
  const cplx inv = 1.0 / z;
  // m = 0
  {
    cplx acc = std::log(z) - 0.5 * inv;
    cplx pw = inv * inv;
    for (int k = 1; k <= kStirlingTerms; ++k) {
      acc -= boost::math::bernoulli_b2n<double>(k) / (2.0 * k) * pw;
      pw *= inv * inv;
    }
    out[0] += acc;
  }
  for (int m = 1; m <= m_max; ++m) {
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;  // (−1)^{m+1}
    cplx pw = std::pow(inv, m);
    cplx acc = fact[m - 1] * pw + 0.5 * fact[m] * pw * inv;
    cplx p2 = pw * inv * inv;
    for (int k = 1; k <= kStirlingTerms; ++k) {
      acc += boost::math::bernoulli_b2n<double>(k) * fact[2 * k + m - 1] / fact[2 * k] * p2;
      p2 *= inv * inv;
    }
    out[m] += sign * acc;
  }
  return out;
}

StirlingRatio stirling_ratio(const StirlingRatioRequest& r) {
  const double t = r.t;
  if (std::abs(t) < 2.0) throw PreconditionError("stirling_ratio: requires |t| >= 2");
  if (std::abs(t) > 1e8) throw PreconditionError("stirling_ratio: |t| exceeds the precision budget 1e8");
  if (r.w.real() < 0.0) throw PreconditionError("stirling_ratio: requires Re w >= 0");
  const double sgn = t > 0 ? 1.0 : -1.0;
  const double at = std::abs(t);
  const cplx i(0.0, 1.0);
  const cplx z = (0.5 + i * t - r.kappa) / 2.0;
  StirlingRatio out;
  if (r.direction == StirlingDirection::same_sign) {
    out.exact = std::exp(log_gamma_diff(z, r.w / 2.0));
    out.approx = std::exp(r.w / 2.0 * std::log(at / 2.0) + i * sgn * std::numbers::pi * r.w / 4.0);
  } else {
    const cplx zr = (0.5 - i * t - r.kappa) / 2.0;
    out.exact = std::exp(log_gamma(zr) - log_gamma(z));
    out.approx = std::exp(-i * t * std::log(at / (2.0 * std::numbers::e)) +
                          i * std::numbers::pi * sgn * (0.25 + r.kappa / 2.0));
  }
  return out;
}

}  // namespace critline::special
