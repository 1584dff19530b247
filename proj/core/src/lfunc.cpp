#include "critline/lfunc.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include "critline/arith.hpp"
#include "critline/errors.hpp"
#include "critline/lattice.hpp"
#include "critline/special.hpp"

namespace critline::lfunc {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);
}  // namespace

CutoffKernel CutoffKernel::dyadic_default() {
  CutoffKernel k;
  k.gaussian_scale = 1.0;
  k.contour_re = 0.5;
  k.contour_height = 5.5;
  k.resolution = 110;
  return k;
}

// ---------------------------------------------------------------------------
// Dyadic partition

double DyadicPartition::phi(double x) {
  const double y = (x - 1.5) / 0.7;
  if (std::abs(y) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - y * y));
}

double DyadicPartition::v1(double x) const {
  if (!(x > 0.8 && x < 2.2)) return 0.0;
  // Σ_k φ(2^k x) has at most two non-zero terms since 2.2/0.8 < 4.
  double total = 0.0;
  for (int k = -2; k <= 2; ++k) total += phi(std::ldexp(x, k));
  return phi(x) / total;
}

std::vector<int> DyadicPartition::block_exponents(double n_max) const {
  std::vector<int> ks;
  for (int k = -1; 0.8 * std::ldexp(1.0, k) < n_max; ++k) ks.push_back(k);
  return ks;
}

double DyadicPartition::partition_sum(double n) const {
  double acc = 0.0;
  const int lo = static_cast<int>(std::floor(std::log2(n / 2.2))) - 1;
  const int hi = static_cast<int>(std::ceil(std::log2(n / 0.8))) + 1;
  for (int k = lo; k <= hi; ++k) acc += v1(n / std::ldexp(1.0, k));
  return acc;
}

// ---------------------------------------------------------------------------
// ζ by Euler–Maclaurin

ZetaEulerMaclaurin zeta_plan(cplx s) {
  ZetaEulerMaclaurin plan;
  plan.bernoulli_terms = 10;
  // With N ≥ |s| + 2K the remainder is below 2(2π)^{−2K−2} relative.
  plan.n_terms = static_cast<std::size_t>(std::ceil(std::abs(s))) + 2 * plan.bernoulli_terms + 10;
  return plan;
}

cplx zeta_em_tail(cplx s, std::size_t n_terms, int bernoulli_terms) {
  const double n = static_cast<double>(n_terms);
  const cplx n_ms = std::exp(-s * std::log(n));
  cplx acc = n * n_ms / (s - 1.0) + 0.5 * n_ms;
  cplx rising = s;  // s(s+1)…(s+2k−2)
  cplx pw = n_ms / n;
  double fact = 2.0;  // (2k)!
  for (int k = 1; k <= bernoulli_terms; ++k) {
    acc += boost::math::bernoulli_b2n<double>(k) / fact * rising * pw;
    rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    pw /= n * n;
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return acc;
}

cplx zeta(cplx s) {
  if (s == cplx(1.0, 0.0)) throw PreconditionError("zeta: pole at s = 1");
  if (std::abs(s.imag()) > 1e5) throw PreconditionError("zeta: |Im s| exceeds the desk-scale limit 1e5");
  const ZetaEulerMaclaurin plan = zeta_plan(s);
  ComplexNeumaierSum acc;
  for (std::size_t m = 1; m < plan.n_terms; ++m) acc.add(std::exp(-s * std::log(static_cast<double>(m))));
  return acc.value() + zeta_em_tail(s, plan.n_terms, plan.bernoulli_terms);
}

// ---------------------------------------------------------------------------
// Gamma quotients

cplx log_gamma_ratio(const FormDescriptor& f, cplx s, cplx u) {
  cplx acc = -0.5 * f.degree * u * std::log(kPi);
  for (const cplx& k : f.kappa) acc += special::log_gamma_diff((s - k) / 2.0, u / 2.0);
  return acc;
}

GammaRatioExpansion::GammaRatioExpansion(const FormDescriptor& f, cplx s, double radius) {
  double zmin = 1e300;
  for (const cplx& k : f.kappa) zmin = std::min(zmin, std::abs((s - k) / 2.0));
  const double ratio = 0.5 * radius / zmin;
  if (ratio > 0.25 || f.kappa.empty()) return;
  int m_max = 1;
  while (std::pow(ratio, m_max) / m_max > 1e-18 && m_max < 40) ++m_max;
  coeffs_.assign(static_cast<std::size_t>(m_max) + 2, 0.0);
  coeffs_[1] = -0.5 * f.degree * std::log(kPi);
  for (const cplx& k : f.kappa) {
    const auto psi = special::polygammas((s - k) / 2.0, m_max);
    double scale = 0.5;  // 2^{−(m+1)}/(m+1)!
    for (int m = 0; m <= m_max; ++m) {
      coeffs_[m + 1] += psi[m] * scale;
      scale *= 0.5 / (m + 2.0);
    }
  }
  valid_ = true;
}

cplx GammaRatioExpansion::log_ratio(cplx u) const {
  cplx acc = 0.0;
  for (std::size_t m = coeffs_.size(); m-- > 0;) acc = acc * u + coeffs_[m];
  return acc;
}

// ---------------------------------------------------------------------------
// W_s and the smoothed sums of the approximate functional equation

namespace {

void check_kernel(const CutoffKernel& k) {
  if (!(k.contour_re > 0.0)) throw PreconditionError("cutoff kernel: contour_re must be > 0");
  if (!(k.contour_height > 0.0) || k.resolution < 2)
    throw PreconditionError("cutoff kernel: contour height and resolution must be positive");
}

// Trapezoid weights (η/2π)·G(u)·γ(s+u)/γ(s)/u on u_j = c + i(−H + jη).
std::vector<cplx> contour_weights(const CutoffKernel& k, const FormDescriptor& f, cplx s) {
  const int r = k.resolution;
  const double eta = k.spacing();
  std::vector<cplx> w(static_cast<std::size_t>(r) + 1);
  for (int j = 0; j <= r; ++j) {
    const cplx u(k.contour_re, -k.contour_height + j * eta);
    const double end = (j == 0 || j == r) ? 0.5 : 1.0;
    w[j] = end * eta / (2.0 * kPi) * std::exp(k.gaussian_scale * u * u + log_gamma_ratio(f, s, u)) / u;
  }
  return w;
}

}  // namespace

cplx w_cutoff_at_resolution(const CutoffKernel& k, const FormDescriptor& f, cplx s, double x) {
  check_kernel(k);
  if (!(x > 0.0)) throw PreconditionError("w_cutoff: requires x > 0");
  const auto w = contour_weights(k, f, s);
  const double eta = k.spacing();
  const double lx = std::log(x);
  ComplexNeumaierSum acc;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const cplx u(k.contour_re, -k.contour_height + static_cast<double>(j) * eta);
    acc.add(w[j] * std::exp(-u * lx));
  }
  return acc.value();
}

cplx w_cutoff(const CutoffKernel& k, const FormDescriptor& f, cplx s, double x) {
  if (std::abs(s.imag()) < 2.0) throw PreconditionError("w_cutoff: requires |t| >= 2");
  const cplx coarse = w_cutoff_at_resolution(k, f, s, x);
  CutoffKernel fine = k;
  fine.resolution *= 2;
  const cplx value = w_cutoff_at_resolution(fine, f, s, x);
  if (std::abs(value - coarse) > 1e-8)
    throw ConvergenceError("w_cutoff: resolution doubling changed the value by " +
                           std::to_string(std::abs(value - coarse)));
  return value;
}

std::size_t cutoff_length(const CutoffKernel& k, const FormDescriptor& f, cplx s, double tol) {
  check_kernel(k);
  const double a = k.gaussian_scale;
  double best = 1e300;
  for (double sigma = std::max(2.0, k.contour_re); sigma <= 60.0; sigma += 2.0) {
    // B(σ) = (1/2π)∫|G(u)γ(s+u)/γ(s)/u| dy on Re u = σ.
    const double ymax = std::sqrt(sigma * sigma + 60.0 / a);
    const int nodes = 400;
    const double h = 2.0 * ymax / nodes;
    double acc = 0.0;
    for (int j = 0; j <= nodes; ++j) {
      const cplx u(sigma, -ymax + j * h);
      acc += std::exp((k.gaussian_scale * u * u + log_gamma_ratio(f, s, u)).real()) / std::abs(u);
    }
    const double log_b = std::log(acc * h / (2.0 * kPi) + 1e-300);
    // x^{−σ}B(σ)·x^{1−Re s}… keep a factor 100 for the tail of the n-sum.
    const double n_sigma = std::exp((log_b - std::log(tol / 100.0)) / sigma);
    best = std::min(best, n_sigma);
  }
  return static_cast<std::size_t>(std::ceil(std::max(best, 1.0)));
}

cplx smoothed_sum(const CutoffKernel& k, const FormDescriptor& f, cplx s, std::size_t n_terms,
                  bool conjugate_coefficients) {
  check_kernel(k);
  if (n_terms > f.n_max())
    throw TableTooShortError("smoothed_sum: needs " + std::to_string(n_terms) + " coefficients, table has " +
                             std::to_string(f.n_max()));
  const auto w = contour_weights(k, f, s);
  std::vector<double> b(n_terms);
  for (std::size_t n = 1; n <= n_terms; ++n)
    b[n - 1] = f.lambda(n) * std::pow(static_cast<double>(n), -(s.real() + k.contour_re));
  // λ real: conjugation only matters for the phase direction, handled by the
  // caller through s.
  (void)conjugate_coefficients;
  std::vector<cplx> d(w.size());
  lattice::dirichlet_progression(b, s.imag() - k.contour_height, k.spacing(), w.size(), d.data());
  ComplexNeumaierSum acc;
  for (std::size_t j = 0; j < w.size(); ++j) acc.add(w[j] * d[j]);
  return acc.value();
}

cplx smoothed_l_value(const FormDescriptor& f, cplx s, const CutoffKernel& k) {
  const cplx s_dual = 1.0 - s;
  const std::size_t n1 = cutoff_length(k, f, s, 1e-14);
  const std::size_t n2 = cutoff_length(k, f, s_dual, 1e-14);
  const std::size_t need = std::max(n1, n2);
  if (need > f.n_max())
    throw TableTooShortError("smoothed_l_value: needs " + std::to_string(need) + " coefficients, table has " +
                             std::to_string(f.n_max()));
  const cplx first = smoothed_sum(k, f, s, n1);
  const cplx second = smoothed_sum(k, f, s_dual, n2, true);
  const cplx chi = std::exp(log_gamma_factor(f, s_dual) - log_gamma_factor(f, s) +
                            (0.5 - s) * std::log(static_cast<double>(f.conductor)));
  return first + f.root_number * chi * second;
}

cplx smoothed_l_value(const FormDescriptor& f, double t, const CutoffKernel& k) {
  return smoothed_l_value(f, cplx(0.5, t), k);
}

// ---------------------------------------------------------------------------
// Truncated dyadic approximate functional equations

std::size_t afe_truncation(double t, int degree, const CutoffKernel& k) {
  // With G(w) = e^{a w²} the Stirling-form cutoff decays like
  // exp(−L²/(4a)) in L = log(n/x0); stop at a tail of 1e-4, far below the
  // O(t^{−1/2}) error of the Stirling closed forms.
  const double x0 = std::pow(std::abs(t) / (2.0 * kPi), 0.5 * degree);
  const double l = std::sqrt(4.0 * k.gaussian_scale * (std::log(1e4) + std::pow(kPi * degree / 4.0, 2) / (4.0 * k.gaussian_scale)));
  return static_cast<std::size_t>(std::ceil(x0 * std::exp(l)));
}

std::vector<double> afe_block_weights(double t_max, int degree, const DyadicPartition& p,
                                      const CutoffKernel& k) {
  const std::size_t need = afe_truncation(t_max, degree, k);
  const auto ks = p.block_exponents(static_cast<double>(need));
  const auto len = static_cast<std::size_t>(std::floor(2.2 * std::ldexp(1.0, ks.back())));
  std::vector<double> v(len, 0.0);
  for (std::size_t n = 1; n <= len; ++n)
    for (int e : ks) v[n - 1] += p.v1(static_cast<double>(n) / std::ldexp(1.0, e));
  return v;
}

void afe_weights(const CutoffKernel& k, int degree, double kappa_sum, double conductor, cplx root_number,
                 double t, AfeWeights& out) {
  const double d = degree;
  const double sgn = t > 0 ? 1.0 : -1.0;
  const double at = std::abs(t);
  const int r = k.resolution;
  const double eta = k.spacing();
  const double log_x0 = 0.5 * d * std::log(at / (2.0 * kPi)) + 0.5 * std::log(conductor);
  out.first.resize(r + 1);
  out.second.resize(r + 1);
  for (int j = 0; j <= r; ++j) {
    const cplx w(k.contour_re, -k.contour_height + j * eta);
    const double end = (j == 0 || j == r) ? 0.5 : 1.0;
    const cplx common = end * eta / (2.0 * kPi) * std::exp(k.gaussian_scale * w * w + w * log_x0) / w;
    out.first[j] = common * std::exp(kI * sgn * kPi * d * w / 4.0);
    out.second[j] = common * std::exp(kI * kPi * sgn * (-d * w / 4.0 + d / 4.0 + kappa_sum / 2.0));
  }
  out.reflection = root_number * std::exp(-kI * d * t * std::log(at / (2.0 * kPi * std::numbers::e)) -
                                          kI * t * std::log(conductor));
}

namespace {

struct AfeData {
  std::vector<double> coeffs;  // coeffs[n-1]
  int degree = 2;
  double kappa_sum = 0.0;      // Σ κ_j (real shifts only)
  cplx root_number = 1.0;
  double conductor = 1.0;
};

// Dyadic AFE evaluation at t for an L-function with real coefficients.
cplx dyadic_afe(const AfeData& data, double t, const DyadicPartition& p, const CutoffKernel& k) {
  check_kernel(k);
  if (std::abs(t) < 50.0) throw PreconditionError("afe: requires |t| >= 50");
  const auto v = afe_block_weights(t, data.degree, p, k);
  const std::size_t n_end = v.size();
  if (n_end > data.coeffs.size())
    throw TableTooShortError("afe: needs " + std::to_string(n_end) + " coefficients, table has " +
                             std::to_string(data.coeffs.size()));
  std::vector<double> b(n_end);
  for (std::size_t n = 1; n <= n_end; ++n)
    b[n - 1] = data.coeffs[n - 1] * v[n - 1] * std::pow(static_cast<double>(n), -0.5 - k.contour_re);

  AfeWeights w;
  afe_weights(k, data.degree, data.kappa_sum, data.conductor, data.root_number, t, w);
  const std::size_t count = w.first.size();
  std::vector<cplx> d1(count), d2(count);
  lattice::dirichlet_progression(b, t - k.contour_height, k.spacing(), count, d1.data());
  lattice::dirichlet_progression(b, -t - k.contour_height, k.spacing(), count, d2.data());
  ComplexNeumaierSum first, second;
  for (std::size_t j = 0; j < count; ++j) {
    first.add(w.first[j] * d1[j]);
    second.add(w.second[j] * d2[j]);
  }
  return first.value() + w.reflection * second.value();
}

}  // namespace

cplx afe_l_value(const FormDescriptor& f, double t, const DyadicPartition& p, const CutoffKernel& k) {
  AfeData data;
  data.coeffs = f.eigenvalues;
  data.degree = f.degree;
  for (const cplx& kk : f.kappa) data.kappa_sum += kk.real();
  data.root_number = f.root_number;
  data.conductor = static_cast<double>(f.conductor);
  return dyadic_afe(data, t, p, k);
}

cplx afe_zeta_squared(double t, const DyadicPartition& p, const CutoffKernel& k) {
  // ζ²(½−it) is the degree-2 L-function with coefficients d(m), κ = (0, 0),
  // evaluated at height −t.
  const std::size_t n_end = afe_block_weights(t, 2, p, k).size();
  const auto dtab = arith::divisor_count_table(n_end);
  AfeData data;
  data.coeffs.assign(dtab.begin() + 1, dtab.end());
  return dyadic_afe(data, -t, p, k);
}

// ---------------------------------------------------------------------------

double collapse_identity_residual(const FormDescriptor& f, double s, std::size_t n) {
  if (s < 1.2) throw PreconditionError("collapse_identity_residual: requires s >= 1.2");
  if (n > f.n_max())
    throw TableTooShortError("collapse_identity_residual: needs " + std::to_string(n) + " coefficients");
  const auto dtab = arith::divisor_count_table(n);
  NeumaierSum lhs;
  for (std::size_t m = 1; m <= n; ++m) lhs.add(f.lambda(m) * dtab[m] * std::pow(static_cast<double>(m), -s));
  const cplx l = smoothed_l_value(f, cplx(s, 0.0));
  const cplx rhs = l * l / zeta(cplx(2.0 * s, 0.0));
  return std::abs(lhs.value() - rhs);
}

}  // namespace critline::lfunc
