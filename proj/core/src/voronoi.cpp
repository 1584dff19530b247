#include "critline/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "critline/arith.hpp"
#include "critline/errors.hpp"
#include "critline/parallel.hpp"
#include "critline/quadrature.hpp"
#include "critline/special.hpp"

namespace critline::voronoi {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// Piecewise Chebyshev interpolant on unit-width cells of [lo, lo + cells).
// The Bessel kernels are smooth on the scale of one unit once z ≥ 8, and
// the contour route of bessel_j costs ~100µs per value, so each kernel is
// sampled once per μ and reused by every Φ value.
class ChebTable {
 public:
  static constexpr int kDeg = 24;

  template <class Fn>
  ChebTable(double lo, double hi, Fn fn) : lo_(lo), cells_(static_cast<int>(std::ceil(hi - lo))) {
    coef_.assign(static_cast<std::size_t>(cells_) * (kDeg + 1), 0.0);
    std::array<double, kDeg + 1> node{}, val{};
    for (int j = 0; j <= kDeg; ++j) node[j] = std::cos(kPi * (j + 0.5) / (kDeg + 1));
    std::vector<std::array<double, kDeg + 1>> values(static_cast<std::size_t>(cells_));
    parallel_for(values.size(), [&](std::size_t cell) {
      for (int j = 0; j <= kDeg; ++j) values[cell][j] = fn(lo_ + cell + 0.5 * (node[j] + 1.0));
    });
    for (int cell = 0; cell < cells_; ++cell) {
      val = values[static_cast<std::size_t>(cell)];
      for (int k = 0; k <= kDeg; ++k) {
        double s = 0.0;
        for (int j = 0; j <= kDeg; ++j) s += val[j] * std::cos(kPi * k * (j + 0.5) / (kDeg + 1));
        coef_[static_cast<std::size_t>(cell) * (kDeg + 1) + k] = (k == 0 ? 1.0 : 2.0) * s / (kDeg + 1);
      }
    }
  }

  double lo() const { return lo_; }
  double hi() const { return lo_ + cells_; }

  double operator()(double z) const {
    const int cell = std::min(cells_ - 1, static_cast<int>(z - lo_));
    const double t = 2.0 * (z - lo_ - cell) - 1.0;
    const double* c = &coef_[static_cast<std::size_t>(cell) * (kDeg + 1)];
    double b1 = 0.0, b2 = 0.0;
    for (int k = kDeg; k >= 1; --k) {
      const double b0 = 2.0 * t * b1 - b2 + c[k];
      b2 = b1;
      b1 = b0;
    }
    return t * b1 - b2 + c[0];
  }

 private:
  double lo_;
  int cells_;
  std::vector<double> coef_;
};

constexpr double kTableLo = 8.0;
constexpr double kJTableHi = 1032.0;

// −2π Im J_{2iμ}(z)/sinh(πμ): the Φ⁺ kernel, since J_{−2iμ}(z) = conj J_{2iμ}(z).
double plus_kernel_direct(double mu, double z) {
  return -2.0 * kPi * special::bessel_j(cplx(0.0, 2.0 * mu), z).imag() / std::sinh(kPi * mu);
}

// 4cosh(πμ)K_{2iμ}(z)
double minus_kernel_direct(double mu, double z) {
  return 4.0 * std::cosh(kPi * mu) * special::bessel_k_imag(mu, z).value;
}

struct KernelTables {
  ChebTable plus;
  ChebTable minus;
  double minus_cutoff;  // 4cosh(πμ)K_{2iμ}(z) < 1e-30 beyond
};

double minus_cutoff(double mu) { return 2.0 * std::abs(mu) + 90.0; }

std::shared_ptr<const KernelTables> tables_for(double mu) {
  static std::mutex mutex;
  static std::map<double, std::shared_ptr<const KernelTables>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(mu);
    if (it != cache.end()) return it->second;
  }
  // Built outside the lock; a concurrent duplicate fill stores an identical table.
  const double cut = minus_cutoff(mu);
  auto t = std::make_shared<const KernelTables>(KernelTables{
      ChebTable(kTableLo, kJTableHi, [mu](double z) { return plus_kernel_direct(mu, z); }),
      ChebTable(kTableLo, std::max(kTableLo + 1.0, cut), [mu](double z) { return minus_kernel_direct(mu, z); }),
      cut});
  std::lock_guard lock(mutex);
  return cache.emplace(mu, std::move(t)).first->second;
}

double plus_kernel(const KernelTables& t, double mu, double z) {
  if (z >= t.plus.lo() && z < t.plus.hi()) return t.plus(z);
  return plus_kernel_direct(mu, z);
}

double minus_kernel(const KernelTables& t, double mu, double z) {
  if (z >= t.minus_cutoff) return 0.0;
  if (z >= t.minus.lo() && z < t.minus.hi()) return t.minus(z);
  return minus_kernel_direct(mu, z);
}

}  // namespace

// Gauss nodes on [lo, hi] split into `panels`, with weights multiplied by F.
struct NodeCache {
  std::mutex mutex;
  std::map<int, std::shared_ptr<const std::vector<std::pair<double, double>>>> levels;
};

namespace {

std::shared_ptr<const std::vector<std::pair<double, double>>> weighted_nodes(const VoronoiKernel& k, int panels) {
  {
    std::lock_guard lock(k.nodes->mutex);
    auto it = k.nodes->levels.find(panels);
    if (it != k.nodes->levels.end()) return it->second;
  }
  const auto& rule = quad::gauss_legendre(20);
  auto v = std::make_shared<std::vector<std::pair<double, double>>>();
  v->reserve(static_cast<std::size_t>(panels) * rule.nodes.size());
  const double h = (k.hi - k.lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = k.lo + p * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double y = a + 0.5 * h * (rule.nodes[i] + 1.0);
      const double fy = k.F(osc::RJet(y)).c[0];
      if (fy != 0.0) v->emplace_back(y, 0.5 * h * rule.weights[i] * fy);
    }
  }
  std::lock_guard lock(k.nodes->mutex);
  return k.nodes->levels.emplace(panels, std::move(v)).first->second;
}

// Panels for ∫F(y)kernel(4π√(xy))dy: one per half oscillation of e(2√(xy))
// plus the y^{±iμ} rotation near z = 0, rounded up to a power of two so the
// node sets are shared across x.
int panel_count(const VoronoiKernel& k, double x) {
  const double cycles = 2.0 * std::sqrt(x) * (std::sqrt(k.hi) - std::sqrt(k.lo)) +
                        std::abs(k.mu) * std::log(k.hi / k.lo) / kPi;
  int p = 16;
  while (p < 16 + 2.0 * cycles) p *= 2;
  return p;
}

template <class Kernel>
PhiValue transform(const VoronoiKernel& k, double x, Kernel kernel, const char* name) {
  if (!(x > 0.0)) throw PreconditionError(std::string(name) + ": x must be positive");
  const int p = panel_count(k, x);
  const double scale = 4.0 * kPi * std::sqrt(x);
  auto integrate = [&](int panels) {
    NeumaierSum acc;
    for (const auto& [y, w] : *weighted_nodes(k, panels)) acc.add(w * kernel(scale * std::sqrt(y)));
    return acc.value();
  };
  const double coarse = integrate(p);
  PhiValue r;
  r.value = integrate(2 * p);
  r.resolution_defect = std::abs(r.value - coarse);
  if (r.resolution_defect > 1e-7 * k.F_scale)
    throw ConvergenceError(std::string(name) + ": resolutions differ by " + std::to_string(r.resolution_defect) +
                           " at x = " + std::to_string(x));
  return r;
}

void check_mu(double mu, const char* name) {
  if (!(std::abs(mu) >= 1e-3))
    throw PreconditionError(std::string(name) + ": |mu| must be >= 1e-3 (the prefactor is singular at 0)");
}

}  // namespace

osc::JetFn default_test_function() {
  return [](const osc::RJet& y) {
    const osc::RJet v = (y - osc::RJet(0.5)) * osc::RJet(0.5);
    if (v.c[0] <= 0.0 || v.c[0] >= 1.0) return osc::RJet(0.0);
    return exp(osc::RJet(8.0) - osc::RJet(2.0) / (v * (osc::RJet(1.0) - v)));
  };
}

VoronoiKernel make_kernel(double mu, int J) { return make_kernel(mu, J, default_test_function(), 0.5, 2.5); }

VoronoiKernel make_kernel(double mu, int J, const osc::JetFn& F, double lo, double hi) {
  if (J < 0 || J > 6) throw PreconditionError("VoronoiKernel: J must be in 0..6");
  if (!(lo >= 0.5 && hi <= 2.5 && lo < hi)) throw PreconditionError("VoronoiKernel: support must lie in [1/2, 5/2]");
  if (std::abs(mu) > special::kMaxBesselOrder / 2.0)
    throw PreconditionError("VoronoiKernel: |mu| exceeds the Bessel order limit");
  VoronoiKernel k;
  k.F = F;
  k.lo = lo;
  k.hi = hi;
  k.mu = mu;
  k.J = J;
  k.nodes = std::make_shared<NodeCache>();
  const double four_nu2 = -16.0 * mu * mu;
  double a = 1.0;  // a_j(2iμ)
  cplx ij = 1.0;   // i^j
  for (int j = 0; j <= J; ++j) {
    if (j > 0) {
      a *= (four_nu2 - (2.0 * j - 1.0) * (2.0 * j - 1.0)) / (8.0 * j);
      ij *= kI;
    }
    const cplx c = kI / std::sqrt(2.0) * std::polar(1.0, -kPi / 4.0) * ij * a / std::pow(4.0 * kPi, j);
    k.c.push_back(c);
    k.d.push_back(std::conj(c));
  }
  double sup = 0.0;
  for (int i = 0; i <= 2000; ++i) sup = std::max(sup, std::abs(F(osc::RJet(lo + (hi - lo) * i / 2000.0)).c[0]));
  k.F_scale = sup;
  return k;
}

PhiValue phi_plus_detail(const VoronoiKernel& k, double x) {
  check_mu(k.mu, "phi_plus");
  const auto t = tables_for(k.mu);
  const double mu = k.mu;
  return transform(k, x, [&](double z) { return plus_kernel(*t, mu, z); }, "phi_plus");
}

cplx phi_plus(const VoronoiKernel& k, double x) { return phi_plus_detail(k, x).value; }

PhiValue phi_minus_detail(const VoronoiKernel& k, double x) {
  const auto t = tables_for(k.mu);
  const double mu = k.mu;
  return transform(k, x, [&](double z) { return minus_kernel(*t, mu, z); }, "phi_minus");
}

double phi_minus(const VoronoiKernel& k, double x) { return phi_minus_detail(k, x).value; }

cplx phi_plus_asymptotic(const VoronoiKernel& k, double x) { return phi_plus_asymptotic(k, x, k.J); }

cplx phi_plus_asymptotic(const VoronoiKernel& k, double x, int J) {
  if (!(x >= 5.0)) throw PreconditionError("phi_plus_asymptotic: requires x >= 5");
  if (J < 0 || J > k.J) throw PreconditionError("phi_plus_asymptotic: J exceeds the kernel's order");
  const double omega = 4.0 * kPi * std::sqrt(x);
  ComplexNeumaierSum acc;
  for (int j = 0; j <= J; ++j) {
    const double p = -0.25 - 0.5 * j;
    cplx term = 0.0;
    for (int sgn : {1, -1}) {
      osc::PhaseProblem pr;
      const osc::JetFn F = k.F;
      pr.w = [F, p](const osc::RJet& y) { return F(y) * exp(osc::RJet(p) * log(y)); };
      pr.h = [omega, sgn](const osc::RJet& y) { return osc::RJet(sgn * omega) * sqrt(y); };
      pr.lo = k.lo;
      pr.hi = k.hi;
      pr.Z = k.hi - k.lo;
      pr.Y = omega;
      term += (sgn > 0 ? k.c[j] : k.d[j]) * osc::oracle_integral(pr);
    }
    acc.add(term * std::pow(x, p));
  }
  return acc.value();
}

namespace {

// ∫F(y)y^p dy for complex p.
cplx moment(const VoronoiKernel& k, cplx p) {
  cplx acc = 0.0;
  for (const auto& [y, w] : *weighted_nodes(k, 64)) acc += w * std::exp(p * std::log(y));
  return acc;
}

constexpr double kNearZero = 0.04;  // 4π√(x·5/2) ≤ 4 on (0, x0]

// ∫_0^{x0} Φ(x)x^{s−1}dx from the power series of I_{±ν} or J_{±ν}, ν = 2iμ:
// (4π√(xy)/2)^{2m±ν} = (2π)^{2m±ν}(xy)^{m±ν/2}, whose Mellin piece is
// x0^{s+m±ν/2}/(s+m±ν/2)·∫F y^{m±ν/2}.
cplx near_zero_mellin(const VoronoiKernel& k, Sign sign, cplx s) {
  const cplx nu(0.0, 2.0 * k.mu);
  auto series = [&](cplx v) {
    ComplexNeumaierSum acc;
    for (int m = 0; m < 60; ++m) {
      const cplx e = double(m) + 0.5 * v;
      const cplx log_coef = (2.0 * m + v) * std::log(2.0 * kPi) - std::lgamma(m + 1.0) - special::log_gamma(double(m) + v + 1.0);
      const cplx term = std::exp(log_coef + (s + e) * std::log(kNearZero)) / (s + e) * moment(k, e);
      const double sgn = (sign == Sign::plus && m % 2 == 1) ? -1.0 : 1.0;
      acc.add(sgn * term);
      if (m > 4 && std::abs(term) < 1e-18 * std::max(1.0, std::abs(acc.value()))) break;
    }
    return acc.value();
  };
  if (sign == Sign::plus) {
    // Φ⁺ kernel (iπ/sinh πμ)(J_ν − J_{−ν})
    return kI * kPi / std::sinh(kPi * k.mu) * (series(nu) - series(-nu));
  }
  // K_ν = π(I_{−ν} − I_ν)/(2 sin νπ), sin(2iμπ) = i sinh(2πμ)
  return 4.0 * std::cosh(kPi * k.mu) * kPi / (2.0 * kI * std::sinh(2.0 * kPi * k.mu)) * (series(-nu) - series(nu));
}

double phi_value(const VoronoiKernel& k, Sign sign, double x) {
  return sign == Sign::plus ? phi_plus_detail(k, x).value : phi_minus_detail(k, x).value;
}

// Φ on a log-x panel grid covering (x0, X]. Panels resolve e^{i t u} for
// |t| ≤ t_max, the x^{±iμ} rotation and the e(2√(xy)) oscillation.
struct MellinGrid {
  std::vector<double> u, w, phi;
  double X = 0.0;
  double tail_sup = 0.0;
};

MellinGrid mellin_grid(const VoronoiKernel& k, Sign sign, double t_max) {
  // X: first power of two past which |Φ| ≤ 1e-13·sup|F| on a full octave.
  double X = 1.0;
  double tail_sup = 0.0;
  for (;; X *= 2.0) {
    if (X > 1e6) throw ConvergenceError("mellin_phi: no decay of Phi up to x = 1e6");
    double sup = 0.0;
    for (int i = 0; i <= 64; ++i) sup = std::max(sup, std::abs(phi_value(k, sign, X * (1.0 + i / 64.0))));
    if (sup <= 1e-13 * k.F_scale) {
      tail_sup = sup;
      break;
    }
  }
  MellinGrid g;
  g.X = X;
  g.tail_sup = tail_sup;
  const auto& rule = quad::gauss_legendre(20);
  const double u_end = std::log(X);
  double u = std::log(kNearZero);
  while (u < u_end) {
    const double x = std::exp(u);
    const double freq = t_max + 2.0 * std::abs(k.mu) + 2.0 * kPi * std::sqrt(k.hi * x * std::exp(0.25));
    const double h = std::min({0.25, 2.0 * kPi / freq, u_end - u});
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      g.u.push_back(u + 0.5 * h * (rule.nodes[i] + 1.0));
      g.w.push_back(0.5 * h * rule.weights[i]);
    }
    u += h;
  }
  g.phi.resize(g.u.size());
  parallel_for(g.u.size(), [&](std::size_t i) { g.phi[i] = phi_value(k, sign, std::exp(g.u[i])); });
  return g;
}

MellinValue mellin_from_grid(const VoronoiKernel& k, Sign sign, const MellinGrid& g, cplx s) {
  MellinValue v;
  v.s = s;
  v.X = g.X;
  v.near_zero = near_zero_mellin(k, sign, s);
  ComplexNeumaierSum acc;
  for (std::size_t i = 0; i < g.u.size(); ++i) acc.add(g.w[i] * g.phi[i] * std::exp(s * g.u[i]));
  v.middle = acc.value();
  // Past X the tail is bounded assuming |Φ(x)| ≤ sup_{[X,2X]}|Φ|·(X/x)²,
  // which the expansion's x^{−A} decay supports with room to spare.
  v.tail_bound = g.tail_sup * std::pow(g.X, s.real()) / (2.0 - s.real());
  v.value = v.near_zero + v.middle;
  return v;
}

}  // namespace

MellinValue mellin_phi(const VoronoiKernel& k, Sign sign, cplx s) {
  if (sign == Sign::plus) check_mu(k.mu, "mellin_phi");
  if (!(s.real() > 0.0 && s.real() < 0.75)) throw PreconditionError("mellin_phi: requires 0 < Re s < 3/4");
  return mellin_from_grid(k, sign, mellin_grid(k, sign, std::abs(s.imag())), s);
}

std::vector<MellinSample> mellin_phi_decay(const VoronoiKernel& k, Sign sign, double s_im_max, double step) {
  if (sign == Sign::plus) check_mu(k.mu, "mellin_phi_decay");
  if (!(s_im_max > 0.0 && step > 0.0)) throw PreconditionError("mellin_phi_decay: s_im_max and step must be positive");
  const auto g = mellin_grid(k, sign, s_im_max);
  const auto count = static_cast<std::size_t>(std::floor(s_im_max / step + 1e-9)) + 1;
  std::vector<MellinSample> out(count);
  parallel_for(count, [&](std::size_t i) {
    const cplx s(0.05, step * static_cast<double>(i));
    out[i] = {s, std::abs(mellin_from_grid(k, sign, g, s).value)};
  });
  return out;
}

cplx mellin_phi_closed_form(const VoronoiKernel& k, Sign sign, cplx s) {
  if (!(s.real() > 0.0 && s.real() < 0.75)) throw PreconditionError("mellin_phi_closed_form: requires 0 < Re s < 3/4");
  const cplx imu(0.0, k.mu);
  const cplx ftilde = moment(k, -s);
  const cplx lead = std::exp(-2.0 * s * std::log(2.0 * kPi));
  using special::log_gamma;
  if (sign == Sign::plus) {
    check_mu(k.mu, "mellin_phi_closed_form");
    const cplx q1 = std::exp(log_gamma(s + imu) - log_gamma(1.0 - s + imu));
    const cplx q2 = std::exp(log_gamma(s - imu) - log_gamma(1.0 - s - imu));
    return kI * kPi / std::sinh(kPi * k.mu) * lead * (q1 - q2) * ftilde;
  }
  return 2.0 * std::cosh(kPi * k.mu) * lead * std::exp(log_gamma(s + imu) + log_gamma(s - imu)) * ftilde;
}

double mellin_slope(const std::vector<MellinSample>& samples, double lo, double hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& m : samples) {
    const double a = std::abs(m.s);
    if (a < lo || a > hi || m.magnitude <= 0.0) continue;
    const double x = std::log1p(a), y = std::log(m.magnitude);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw PreconditionError("mellin_slope: fewer than two samples in range");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

VoronoiCheck voronoi_check(const forms::FormDescriptor& f, std::int64_t a, std::int64_t q, double N,
                           const VoronoiKernel& k) {
  if (f.kind != forms::FormKind::maass)
    throw PreconditionError("voronoi_residual: applies to Maass descriptors only");
  check_mu(f.mu, "voronoi_residual");
  if (std::abs(f.mu - k.mu) > 1e-9 * std::abs(f.mu))
    throw PreconditionError("voronoi_residual: kernel mu does not match the form");
  if (q < 1) throw PreconditionError("voronoi_residual: q must be >= 1");
  if (!(N > 0.0)) throw PreconditionError("voronoi_residual: N must be positive");
  if (arith::gcd(a, q) != 1) throw PreconditionError("voronoi_residual: gcd(a, q) must be 1");

  VoronoiCheck r;
  r.a_bar = arith::mod_inverse(a, q);
  const double qd = static_cast<double>(q);

  const auto n_lo = static_cast<std::size_t>(std::max(1.0, std::ceil(N * k.lo)));
  const auto n_hi = static_cast<std::size_t>(std::floor(N * k.hi));
  if (n_hi > f.n_max()) throw TableTooShortError("voronoi_residual: table too short for the left side");
  ComplexNeumaierSum lhs;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    const double fv = k.F(osc::RJet(static_cast<double>(n) / N)).c[0];
    const double frac = static_cast<double>((static_cast<__int128>(a % q + q) * static_cast<__int128>(n)) % q) / qd;
    lhs.add(f.lambda(n) * fv * e_of(frac));
  }
  r.lhs = lhs.value();

  // Φ^± decay faster than any power, so each octave of the dual sum is far
  // smaller than the one before; stopping once an octave's absolute
  // contribution is below budget/10 keeps the whole tail under the budget.
  const double octave_budget = 1e-7 * k.F_scale;
  auto dual = [&](Sign sign, std::size_t& n_cut) {
    constexpr std::size_t kBlock = 128;
    ComplexNeumaierSum acc;
    NeumaierSum octave;
    const double sgn = sign == Sign::plus ? -1.0 : 1.0;
    for (std::size_t start = 1;; start += kBlock) {
      std::vector<double> phi(kBlock);
      parallel_for(kBlock, [&](std::size_t i) {
        const double x = static_cast<double>(start + i) * N / (qd * qd);
        phi[i] = phi_value(k, sign, x);
      });
      for (std::size_t i = 0; i < kBlock; ++i) {
        const std::size_t n = start + i;
        if (n > f.n_max())
          throw TableTooShortError("voronoi_residual: tail budget unreachable with table length " +
                                   std::to_string(f.n_max()));
        const std::int64_t abar_n = static_cast<std::int64_t>((static_cast<__int128>(r.a_bar) * n) % q);
        acc.add(f.lambda(n) * phi[i] * e_of(sgn * static_cast<double>(abar_n) / qd));
        octave.add(N / qd * std::abs(f.lambda(n) * phi[i]));
        if ((n & (n - 1)) == 0) {  // n a power of two closes the octave (n/2, n]
          if (n >= 16 && octave.value() <= octave_budget) {
            n_cut = n;
            return acc.value();
          }
          octave = NeumaierSum();
        }
      }
    }
  };
  const cplx plus = dual(Sign::plus, r.n_cut_plus);
  const cplx minus = dual(Sign::minus, r.n_cut_minus);
  r.rhs = N / qd * (plus + minus);
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

double voronoi_residual(const forms::FormDescriptor& f, std::int64_t a, std::int64_t q, double N,
                        const VoronoiKernel& k) {
  return voronoi_check(f, a, q, N, k).residual;
}

}  // namespace critline::voronoi
