#include "critline/sums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "critline/arith.hpp"
#include "critline/errors.hpp"
#include "critline/parallel.hpp"

namespace critline::sums {

namespace {

constexpr double kPi = std::numbers::pi;

using BJet = Jet<double, 2>;

// Unit roots e(k/q), k < q.
std::vector<cplx> roots_of_unity(std::int64_t q) {
  std::vector<cplx> r(static_cast<std::size_t>(q));
  for (std::int64_t k = 0; k < q; ++k) r[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * kPi * k / q);
  return r;
}

std::int64_t reduce(std::int64_t a, std::int64_t c) { return ((a % c) + c) % c; }

}  // namespace

cplx wilton_sum(const forms::FormDescriptor& f, double alpha, std::size_t x) {
  if (x > f.n_max())
    throw TableTooShortError("wilton_sum: x = " + std::to_string(x) + " exceeds table length " +
                             std::to_string(f.n_max()));
  ComplexNeumaierSum acc;
  const double frac = alpha - std::floor(alpha);
  for (std::size_t n = 1; n <= x; ++n) {
    // frac·n reduced before e() keeps the argument small.
    const double arg = std::fmod(frac * static_cast<double>(n), 1.0);
    acc.add(f.lambda(n) * e_of(arg));
  }
  return acc.value();
}

std::vector<WiltonPoint> wilton_sup_ratios(const forms::FormDescriptor& f, std::uint32_t q,
                                           const std::vector<std::size_t>& xs) {
  if (q == 0) throw PreconditionError("wilton_sup_ratios: q must be >= 1");
  if (xs.empty()) return {};
  if (!std::is_sorted(xs.begin(), xs.end())) throw PreconditionError("wilton_sup_ratios: xs must ascend");
  const std::size_t x_max = xs.back();
  if (x_max > f.n_max())
    throw TableTooShortError("wilton_sup_ratios: x = " + std::to_string(x_max) + " exceeds table length " +
                             std::to_string(f.n_max()));
  const auto roots = roots_of_unity(q);
  // ratio[k][i] for α = k/q at xs[i]
  std::vector<std::vector<double>> ratio(q, std::vector<double>(xs.size()));
  parallel_for(q, [&](std::size_t k) {
    ComplexNeumaierSum acc;
    std::size_t i = 0;
    std::uint64_t idx = 0;
    for (std::size_t n = 1; n <= x_max; ++n) {
      idx = (idx + k) % q;
      acc.add(f.lambda(n) * roots[idx]);
      while (i < xs.size() && xs[i] == n) {
        ratio[k][i] = std::abs(acc.value()) / std::sqrt(static_cast<double>(n));
        ++i;
      }
    }
  });
  std::vector<WiltonPoint> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i].x = xs[i];
    for (std::size_t k = 0; k < q; ++k)
      if (ratio[k][i] > out[i].sup_ratio) {
        out[i].sup_ratio = ratio[k][i];
        out[i].argmax_k = k;
      }
  }
  return out;
}

std::vector<RankinPoint> rankin_selberg_ratios(const forms::FormDescriptor& f, std::size_t x_min) {
  std::vector<RankinPoint> out;
  NeumaierSum acc;
  std::size_t next = 1;
  while (next < std::max<std::size_t>(x_min, 1)) next *= 2;
  for (std::size_t n = 1; n <= f.n_max(); ++n) {
    acc.add(f.lambda(n) * f.lambda(n));
    if (n == next) {
      out.push_back({n, acc.value() / static_cast<double>(n)});
      next *= 2;
    }
  }
  return out;
}

CompletionWindow default_completion_window() { return {osc::bump_window(1.0, 2.0), 1.0, 2.0}; }

cplx window_fourier(const CompletionWindow& w, double xi) {
  osc::PhaseProblem p;
  p.w = w.w;
  const double omega = -2.0 * kPi * xi;
  p.h = [omega](const osc::RJet& x) { return osc::RJet(omega) * x; };
  p.lo = w.lo;
  p.hi = w.hi;
  p.Z = w.hi - w.lo;
  p.Y = std::max(1.0, std::abs(omega) * p.Z);
  return osc::oracle_integral(p);
}

namespace {

// ‖W^{(j)}‖₁ for j ≤ 10 by a midpoint rule, padded by 5% for the sampling.
std::vector<double> derivative_l1(const CompletionWindow& w) {
  constexpr int kSamples = 4000;
  constexpr int kMaxJ = 10;
  std::vector<double> l1(kMaxJ + 1, 0.0);
  const double h = (w.hi - w.lo) / kSamples;
  for (int s = 0; s < kSamples; ++s) {
    const osc::RJet j = w.w(osc::RJet::variable(w.lo + (s + 0.5) * h));
    for (int d = 0; d <= kMaxJ; ++d) l1[d] += std::abs(j.derivative(d)) * h;
  }
  for (double& v : l1) v *= 1.05;
  return l1;
}

// Bound on (K/r)Σ_{|m|>M}|S(m,n;r)||Ŵ(mK/r)| with |S| ≤ r and
// |Ŵ(ξ)| ≤ ‖W^{(j)}‖₁(2π|ξ|)^{−j}.
double tail_bound(const std::vector<double>& l1, std::int64_t r, double K, long M) {
  if (M < 1) return INFINITY;
  double best = INFINITY;
  const double base = static_cast<double>(r) / (2.0 * kPi * K);
  for (int j = 2; j < static_cast<int>(l1.size()); ++j) {
    const double b = 2.0 * K * l1[j] * std::pow(base, j) * std::pow(static_cast<double>(M), 1.0 - j) / (j - 1);
    best = std::min(best, b);
  }
  return best;
}

}  // namespace

CompletionDetail completion_detail(std::int64_t n, std::int64_t r, double K, const CompletionWindow& w,
                                   double budget) {
  if (r < 1) throw PreconditionError("completion_residual: r must be >= 1");
  if (!(K > 0.0)) throw PreconditionError("completion_residual: K must be positive");
  if (!(budget > 0.0)) throw PreconditionError("completion_residual: budget must be positive");
  if (!(w.lo > 0.0 && w.hi > w.lo)) throw PreconditionError("completion_residual: window must sit in (0, inf)");

  CompletionDetail d;
  const auto roots = roots_of_unity(r);
  ComplexNeumaierSum lhs;
  const auto k_lo = static_cast<std::int64_t>(std::ceil(K * w.lo));
  const auto k_hi = static_cast<std::int64_t>(std::floor(K * w.hi));
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    if (arith::gcd(k, r) != 1) continue;
    const std::int64_t kbar = arith::mod_inverse(k, r);
    const double wk = w.w(osc::RJet(static_cast<double>(k) / K)).c[0];
    const auto idx = static_cast<std::size_t>(static_cast<__int128>(reduce(n, r)) * kbar % r);
    lhs.add(wk * roots[idx]);
  }
  d.lhs = lhs.value();

  const auto l1 = derivative_l1(w);
  constexpr long kMaxTerms = 200000;
  long M = 1;
  while (tail_bound(l1, r, K, M) > budget) {
    if (++M > kMaxTerms)
      throw ConvergenceError("completion_residual: truncation budget " + std::to_string(budget) +
                             " unreachable within " + std::to_string(kMaxTerms) + " dual terms");
  }
  d.m_max = M;
  d.tail_bound = tail_bound(l1, r, K, M);

  const arith::KloostermanModulus kl(r);
  std::vector<cplx> terms(static_cast<std::size_t>(M) + 1);
  parallel_for(terms.size(), [&](std::size_t i) {
    const auto m = static_cast<std::int64_t>(i);
    const cplx wh = window_fourier(w, static_cast<double>(m) * K / static_cast<double>(r));
    // Ŵ(−ξ) = conj Ŵ(ξ) for real W.
    terms[i] = m == 0 ? kl.sum(0, n) * wh : kl.sum(m, n) * wh + kl.sum(-m, n) * std::conj(wh);
  });
  ComplexNeumaierSum rhs;
  for (const cplx& t : terms) rhs.add(t);
  d.rhs = K / static_cast<double>(r) * rhs.value();
  d.residual = std::abs(d.lhs - d.rhs);
  return d;
}

double completion_residual(std::int64_t n, std::int64_t r, double K, const CompletionWindow& w, double budget) {
  return completion_detail(n, r, K, w, budget).residual;
}

std::int64_t BilinearConfig::m_first() const { return static_cast<std::int64_t>(std::ceil(M)); }
std::int64_t BilinearConfig::n_first() const { return static_cast<std::int64_t>(std::ceil(N)); }

namespace {

std::size_t range_length(double X) {
  const auto lo = static_cast<std::int64_t>(std::ceil(X));
  const auto hi = static_cast<std::int64_t>(std::floor(3.0 * X));
  return hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;
}

void check_config(const BilinearConfig& cfg) {
  if (!(cfg.M >= 1.0 && cfg.N >= 1.0)) throw PreconditionError("bilinear: M and N must be >= 1");
  if (cfg.a.size() != range_length(cfg.M) || cfg.b.size() != range_length(cfg.N))
    throw PreconditionError("bilinear: sequence lengths must match [M, 3M] and [N, 3N]");
  if (cfg.sign != 1 && cfg.sign != -1) throw PreconditionError("bilinear: sign must be +1 or -1");
}

BJet unit_bump(const BJet& u) {
  const BJet v = (u - BJet(1.0)) * BJet(0.5);
  if (v.c[0] <= 0.0 || v.c[0] >= 1.0) return BJet(0.0);
  return exp(BJet(-0.25) / (v * (BJet(1.0) - v)));
}

// max_{j≤2} sup|b^{(j)}| on [1, 3], sampled finely and padded.
double beta_scale() {
  static const double scale = [] {
    double s = 0.0;
    constexpr int kSamples = 20000;
    for (int i = 0; i <= kSamples; ++i) {
      const BJet j = unit_bump(BJet::variable(1.0 + 2.0 * i / kSamples));
      for (int d = 0; d <= 2; ++d) s = std::max(s, std::abs(j.derivative(d)));
    }
    return 1.001 * s;
  }();
  return scale;
}

void check_c(double C) {
  if (!(C >= 1.0)) throw PreconditionError("bilinear: C must be >= 1");
}

}  // namespace

double bilinear_beta(double u) { return unit_bump(BJet(u)).c[0] / beta_scale(); }

double bilinear_beta_derivative(double u, int j) {
  if (j < 0 || j > 2) throw PreconditionError("bilinear_beta_derivative: order must be 0..2");
  return unit_bump(BJet::variable(u)).derivative(j) / beta_scale();
}

double bilinear_weight_bound(int samples) {
  // The weight factorizes, so the scaled mixed derivative is a product of
  // one-variable factors β^{(j)}(u); its sup is the product of sups.
  std::array<double, 3> sup{};
  for (int i = 0; i <= samples; ++i) {
    const double u = 1.0 + 2.0 * i / samples;
    for (int j = 0; j <= 2; ++j) sup[j] = std::max(sup[j], std::abs(bilinear_beta_derivative(u, j)));
  }
  double worst = 0.0;
  for (int j = 0; j <= 2; ++j)
    for (int k = 0; k <= 2; ++k)
      for (int l = 0; l <= 2; ++l) worst = std::max(worst, sup[j] * sup[k] * sup[l]);
  return worst;
}

BilinearConfig random_bilinear(double M, double N, std::uint64_t seed, int sign) {
  BilinearConfig cfg;
  cfg.M = M;
  cfg.N = N;
  cfg.sign = sign;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  cfg.a.resize(range_length(M));
  cfg.b.resize(range_length(N));
  for (auto& v : cfg.a) v = e_of(unit(rng));
  for (auto& v : cfg.b) v = e_of(unit(rng));
  return cfg;
}

BilinearConfig delta_bilinear(double M, double N, std::int64_t m0, std::int64_t n0, int sign) {
  BilinearConfig cfg;
  cfg.M = M;
  cfg.N = N;
  cfg.sign = sign;
  cfg.a.assign(range_length(M), 0.0);
  cfg.b.assign(range_length(N), 0.0);
  const std::int64_t i = m0 - cfg.m_first(), j = n0 - cfg.n_first();
  if (i < 0 || i >= static_cast<std::int64_t>(cfg.a.size()) || j < 0 ||
      j >= static_cast<std::int64_t>(cfg.b.size()))
    throw PreconditionError("delta_bilinear: index outside [M, 3M] x [N, 3N]");
  cfg.a[static_cast<std::size_t>(i)] = 1.0;
  cfg.b[static_cast<std::size_t>(j)] = 1.0;
  return cfg;
}

cplx bilinear_sum(const BilinearConfig& cfg, double C) {
  check_config(cfg);
  check_c(C);
  const auto c_lo = static_cast<std::int64_t>(std::ceil(C));
  const auto c_hi = static_cast<std::int64_t>(std::floor(3.0 * C));
  std::vector<double> wa(cfg.a.size()), wb(cfg.b.size());
  for (std::size_t i = 0; i < wa.size(); ++i)
    wa[i] = bilinear_beta(static_cast<double>(cfg.m_first() + static_cast<std::int64_t>(i)) / cfg.M);
  for (std::size_t i = 0; i < wb.size(); ++i)
    wb[i] = bilinear_beta(static_cast<double>(cfg.n_first() + static_cast<std::int64_t>(i)) / cfg.N);

  const std::size_t count = c_hi >= c_lo ? static_cast<std::size_t>(c_hi - c_lo + 1) : 0;
  std::vector<cplx> per_c(count);
  parallel_for(count, [&](std::size_t ci) {
    const std::int64_t c = c_lo + static_cast<std::int64_t>(ci);
    const double gc = bilinear_beta(static_cast<double>(c) / C);
    if (gc == 0.0) return;
    const auto roots = roots_of_unity(c);
    // S(m, n; c) = Σ_x e((mx + nx̄)/c), so the double sum is Σ_x A(x)B(x̄).
    auto transform = [&](const std::vector<cplx>& seq, const std::vector<double>& wt, std::int64_t first,
                         int sgn, std::int64_t x) {
      ComplexNeumaierSum acc;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] == 0.0 || wt[i] == 0.0) continue;
        const std::int64_t m = first + static_cast<std::int64_t>(i);
        acc.add(seq[i] * wt[i] * roots[static_cast<std::size_t>(reduce(sgn * m * x, c))]);
      }
      return acc.value();
    };
    ComplexNeumaierSum acc;
    for (std::int64_t x = 0; x < c; ++x) {
      if (arith::gcd(x, c) != 1) continue;  // gcd(0, 1) = 1 covers c = 1
      const std::int64_t xbar = arith::mod_inverse(x, c);
      acc.add(transform(cfg.a, wa, cfg.m_first(), 1, x) * transform(cfg.b, wb, cfg.n_first(), cfg.sign, xbar));
    }
    per_c[ci] = gc * acc.value();
  });
  ComplexNeumaierSum total;
  for (const cplx& v : per_c) total.add(v);
  return total.value();
}

cplx bilinear_sum_direct(const BilinearConfig& cfg, double C) {
  check_config(cfg);
  check_c(C);
  const auto c_lo = static_cast<std::int64_t>(std::ceil(C));
  const auto c_hi = static_cast<std::int64_t>(std::floor(3.0 * C));
  ComplexNeumaierSum total;
  for (std::int64_t c = c_lo; c <= c_hi; ++c) {
    const double gc = bilinear_beta(static_cast<double>(c) / C);
    if (gc == 0.0) continue;
    const arith::KloostermanModulus kl(c);
    for (std::size_t i = 0; i < cfg.a.size(); ++i) {
      if (cfg.a[i] == 0.0) continue;
      const std::int64_t m = cfg.m_first() + static_cast<std::int64_t>(i);
      const double gm = bilinear_beta(static_cast<double>(m) / cfg.M);
      for (std::size_t j = 0; j < cfg.b.size(); ++j) {
        if (cfg.b[j] == 0.0) continue;
        const std::int64_t n = cfg.n_first() + static_cast<std::int64_t>(j);
        const double g = gc * gm * bilinear_beta(static_cast<double>(n) / cfg.N);
        total.add(cfg.a[i] * cfg.b[j] * g * kl.sum(m, cfg.sign * n));
      }
    }
  }
  return total.value();
}

double bilinear_average_ratio(const BilinearConfig& cfg, double C) {
  const cplx s = bilinear_sum(cfg, C);
  double na = 0.0, nb = 0.0;
  for (const cplx& v : cfg.a) na += std::norm(v);
  for (const cplx& v : cfg.b) nb += std::norm(v);
  const double denom = C * std::sqrt(cfg.M * cfg.N) * std::sqrt(na * nb);
  if (denom == 0.0) throw PreconditionError("bilinear_average_ratio: zero sequence");
  return std::abs(s) / denom;
}

}  // namespace critline::sums
