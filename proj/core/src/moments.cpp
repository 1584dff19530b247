#include "critline/moments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

#include "critline/arith.hpp"
#include "critline/errors.hpp"
#include "critline/jet.hpp"
#include "critline/lattice.hpp"
#include "critline/lfunc.hpp"
#include "critline/parallel.hpp"
#include "critline/quadrature.hpp"

namespace critline::moments {

namespace {

constexpr double kPi = std::numbers::pi;
const double kZeta2 = kPi * kPi / 6.0;

double bump(double v) {
  if (v <= 0.0 || v >= 1.0) return 0.0;
  return std::exp(-0.25 / (v * (1.0 - v)));
}

double bump_integral(double u) {
  const auto& rule = quad::gauss_legendre(20);
  constexpr int kPanels = 8;
  const double h = u / kPanels;
  NeumaierSum acc;
  for (int p = 0; p < kPanels; ++p)
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc.add(0.5 * h * rule.weights[i] * bump(p * h + 0.5 * h * (rule.nodes[i] + 1.0)));
  return acc.value();
}

}  // namespace

double mollifier_mass() {
  static const double z = bump_integral(1.0);
  return z;
}

double ramp(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  // ρ(u) = 1 − ρ(1−u): integrate over the shorter side.
  if (u > 0.5) return 1.0 - bump_integral(1.0 - u) / mollifier_mass();
  return bump_integral(u) / mollifier_mass();
}

double SmoothWindow::operator()(double x) const {
  if (x < 1.0 || x > 2.0) return 0.0;
  if (sharp()) return 1.0;
  const double up = (x - 1.0) * delta, down = (2.0 - x) * delta;
  if (up < 1.0) return ramp(up);
  if (down < 1.0) return ramp(down);
  return 1.0;
}

double SmoothWindow::derivative(double x, int order) const {
  if (order == 0) return (*this)(x);
  if (order < 0 || order > 6) throw PreconditionError("window derivative: order must be in [0, 6]");
  if (sharp() || x <= 1.0 || x >= 2.0) return 0.0;
  const double up = (x - 1.0) * delta, down = (2.0 - x) * delta;
  double u, sign;
  if (up < 1.0) {
    u = up;
    sign = 1.0;
  } else if (down < 1.0) {
    u = down;
    sign = (order % 2 == 0) ? 1.0 : -1.0;
  } else {
    return 0.0;
  }
  // ρ^{(k)} = b^{(k−1)}/Z
  using J = Jet<double, 6>;
  const J v = J::variable(u);
  const J b = exp(J(-0.25) / (v * (J(1.0) - v)));
  return sign * std::pow(delta, order) * b.derivative(order - 1) / mollifier_mass();
}

SmoothWindow make_window(double delta) {
  if (!(delta >= 2.0)) throw PreconditionError("make_window: delta must be >= 2");
  SmoothWindow w;
  w.delta = delta;
  // ∫V = plateau + two ramps, each ramp integrated by GL panels.
  const double ramp_mass = quad::integrate([](double u) { return ramp(u); }, 0.0, 1.0, 8, 20);
  w.mass = (1.0 - 2.0 / delta) + 2.0 * ramp_mass / delta;
  return w;
}

SmoothWindow sharp_window() { return {}; }

double default_grid_step(double T) { return 0.1 / std::log(T); }

double main_term(double l_one, double T, double mass) { return 2.0 * mass * T * l_one * l_one / kZeta2; }

double main_term(const FormDescriptor& f, double T, const SmoothWindow& w) {
  return main_term(forms::l_at_one(f), T, w.mass);
}

// ---------------------------------------------------------------------------
// Integrand engines. Nodes t = lo + pP + g_i (6-point Gauss panels); each
// L-sum is a lattice of Dirichlet polynomial values at spacing P, one per
// Gauss offset, and the contour spacing is a multiple of P so every contour
// node lands on the lattice.

namespace {

constexpr int kOrder = 6;
constexpr std::size_t kBlock = lattice::kReseed * 8;

struct Grid {
  double lo = 0.0;
  double P = 0.0;
  std::size_t panels = 0;
  std::array<double, kOrder> offset{}, weight{};
  double node(std::size_t p, int i) const { return lo + static_cast<double>(p) * P + offset[i]; }
};

Grid make_grid(double lo, double len, std::size_t panels) {
  Grid g;
  g.lo = lo;
  g.panels = panels;
  g.P = len / static_cast<double>(panels);
  const auto& rule = quad::gauss_legendre(kOrder);
  for (int i = 0; i < kOrder; ++i) {
    g.offset[i] = 0.5 * g.P * (rule.nodes[i] + 1.0);
    g.weight[i] = 0.5 * g.P * rule.weights[i];
  }
  return g;
}

// out[i][m] = D(tau0[i] + m·step) for m < count, blocks spread over workers.
std::vector<std::vector<cplx>> lattice_rows(const lattice::DirichletLattice& lat,
                                            const std::array<double, kOrder>& tau0, std::size_t count) {
  std::vector<std::vector<cplx>> rows(kOrder, std::vector<cplx>(count));
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  parallel_for(kOrder * blocks, [&](std::size_t u) {
    const std::size_t i = u / blocks, b = u % blocks;
    const std::size_t first = b * kBlock;
    lat.eval(tau0[i], first, std::min(kBlock, count - first), rows[i].data() + first);
  });
  return rows;
}

lfunc::CutoffKernel direct_kernel(double P) {
  lfunc::CutoffKernel k;
  const int r = std::max(1, static_cast<int>(std::floor(0.16 / P)));
  const double eta = r * P;
  const int half = static_cast<int>(std::ceil(20.0 / eta));
  k.contour_height = half * eta;
  k.resolution = 2 * half;
  return k;
}

lfunc::CutoffKernel afe_kernel(double P) {
  lfunc::CutoffKernel k = lfunc::CutoffKernel::dyadic_default();
  const int r = std::max(1, static_cast<int>(std::floor(0.1 / P)));
  const double eta = r * P;
  const int half = static_cast<int>(std::ceil(5.5 / eta));
  k.contour_height = half * eta;
  k.resolution = 2 * half;
  return k;
}

std::size_t direct_terms(const FormDescriptor& f, double lo, double hi, const lfunc::CutoffKernel& k) {
  return std::max(lfunc::cutoff_length(k, f, cplx(0.5, hi), 1e-12), lfunc::cutoff_length(k, f, cplx(0.5, lo), 1e-12));
}

// ζ(½−it) at every node: Euler–Maclaurin with one N for the whole range.
std::vector<cplx> zeta_values(const Grid& g, double hi) {
  const auto plan = lfunc::zeta_plan(cplx(0.5, hi));
  std::vector<double> b(plan.n_terms - 1);
  for (std::size_t n = 1; n < plan.n_terms; ++n) b[n - 1] = 1.0 / std::sqrt(static_cast<double>(n));
  const lattice::DirichletLattice lat(b, -g.P);
  std::array<double, kOrder> tau0{};
  for (int i = 0; i < kOrder; ++i) tau0[i] = -(g.lo + g.offset[i]);
  const auto rows = lattice_rows(lat, tau0, g.panels);
  std::vector<cplx> z(g.panels * kOrder);
  parallel_for(g.panels, [&](std::size_t p) {
    for (int i = 0; i < kOrder; ++i) {
      const cplx s(0.5, -g.node(p, i));
      z[p * kOrder + i] = rows[i][p] + lfunc::zeta_em_tail(s, plan.n_terms, plan.bernoulli_terms);
    }
  });
  return z;
}

// L(½+it,f) from both smoothed sums with exact gamma quotients.
std::vector<cplx> l_values_direct(const FormDescriptor& f, const Grid& g, double hi) {
  const lfunc::CutoffKernel k = direct_kernel(g.P);
  const double eta = k.spacing();
  const int half = k.resolution / 2;
  const auto r = static_cast<std::size_t>(std::lround(eta / g.P));
  const std::size_t n = direct_terms(f, g.lo, hi, k);
  if (n > f.n_max())
    throw TableTooShortError("mixed_moment: needs " + std::to_string(n) + " coefficients, table has " +
                             std::to_string(f.n_max()));
  const std::size_t count = g.panels + 2 * half * r + 1;
  const bool self_dual = f.self_dual();

  std::vector<double> b(n);
  for (std::size_t m = 1; m <= n; ++m) b[m - 1] = f.lambda(m) * std::pow(static_cast<double>(m), -0.5 - k.contour_re);
  const lattice::DirichletLattice lat(b, g.P);
  std::array<double, kOrder> tau0{}, tau0_dual{};
  for (int i = 0; i < kOrder; ++i) {
    tau0[i] = g.lo + g.offset[i] - half * eta;
    tau0_dual[i] = -(g.lo + g.offset[i]) + half * eta;
  }
  const auto rows = lattice_rows(lat, tau0, count);
  std::vector<std::vector<cplx>> dual_rows;
  if (!self_dual) {
    // λ real in every descriptor we build; conjugation kept for generality
    const lattice::DirichletLattice dual(b, -g.P);
    dual_rows = lattice_rows(dual, tau0_dual, count);
  }

  const double radius = std::abs(cplx(k.contour_re, k.contour_height)) + 0.5;
  std::vector<cplx> out(g.panels * kOrder);
  parallel_for(g.panels, [&](std::size_t p) {
    std::vector<cplx> w(k.resolution + 1);
    auto weights = [&](cplx s) {
      const lfunc::GammaRatioExpansion ex(f, s, radius);
      for (int j = 0; j <= k.resolution; ++j) {
        const cplx u(k.contour_re, (j - half) * eta);
        const cplx lr = ex.valid() ? ex.log_ratio(u) : lfunc::log_gamma_ratio(f, s, u);
        const double end = (j == 0 || j == k.resolution) ? 0.5 : 1.0;
        w[j] = end * eta / (2.0 * kPi) * std::exp(k.gaussian_scale * u * u + lr) / u;
      }
    };
    for (int i = 0; i < kOrder; ++i) {
      const double t = g.node(p, i);
      const cplx s(0.5, t);
      weights(s);
      cplx first = 0.0;
      for (int j = 0; j <= k.resolution; ++j) first += w[j] * rows[i][p + j * r];
      cplx second;
      if (self_dual) {
        second = std::conj(first);
      } else {
        weights(std::conj(s));
        second = 0.0;
        for (int j = 0; j <= k.resolution; ++j) second += w[j] * dual_rows[i][p + (2 * half - j) * r];
      }
      const cplx chi = std::exp(forms::log_gamma_factor(f, std::conj(s)) - forms::log_gamma_factor(f, s) -
                                cplx(0.0, t) * std::log(static_cast<double>(f.conductor)));
      out[p * kOrder + i] = first + f.root_number * chi * second;
    }
  });
  return out;
}

// L(½+it,f)·ζ(½−it)² from the truncated dyadic AFEs with Stirling closed
// forms. The block set is the one for height hi, kept for every t.
std::vector<cplx> integrand_afe(const FormDescriptor& f, const Grid& g, double hi) {
  if (!f.self_dual()) throw PreconditionError("afe engine: requires real coefficients");
  const lfunc::CutoffKernel k = afe_kernel(g.P);
  const double eta = k.spacing();
  const int half = k.resolution / 2;
  const auto r = static_cast<std::size_t>(std::lround(eta / g.P));
  const lfunc::DyadicPartition dp;
  const auto v = lfunc::afe_block_weights(hi, f.degree, dp, k);
  const std::size_t n = v.size();
  if (n > f.n_max())
    throw TableTooShortError("mixed_moment: afe needs " + std::to_string(n) + " coefficients, table has " +
                             std::to_string(f.n_max()));
  const auto dtab = arith::divisor_count_table(n);
  std::vector<double> bl(n), bz(n);
  for (std::size_t m = 1; m <= n; ++m) {
    const double scale = v[m - 1] * std::pow(static_cast<double>(m), -0.5 - k.contour_re);
    bl[m - 1] = f.lambda(m) * scale;
    bz[m - 1] = dtab[m] * scale;
  }
  const std::size_t count = g.panels + 2 * half * r + 1;
  std::array<double, kOrder> tau0{};
  for (int i = 0; i < kOrder; ++i) tau0[i] = g.lo + g.offset[i] - half * eta;
  const auto rl = lattice_rows(lattice::DirichletLattice(bl, g.P), tau0, count);
  const auto rz = lattice_rows(lattice::DirichletLattice(bz, g.P), tau0, count);

  double kappa_sum = 0.0;
  for (const cplx& kk : f.kappa) kappa_sum += kk.real();
  std::vector<cplx> out(g.panels * kOrder);
  parallel_for(g.panels, [&](std::size_t p) {
    lfunc::AfeWeights wl, wz;
    for (int i = 0; i < kOrder; ++i) {
      const double t = g.node(p, i);
      lfunc::afe_weights(k, f.degree, kappa_sum, static_cast<double>(f.conductor), f.root_number, t, wl);
      lfunc::afe_weights(k, 2, 0.0, 1.0, 1.0, -t, wz);
      cplx l1 = 0.0, l2 = 0.0, z1 = 0.0, z2 = 0.0;
      for (int j = 0; j <= k.resolution; ++j) {
        const cplx up = rl[i][p + j * r], down = std::conj(rl[i][p + (2 * half - j) * r]);
        const cplx zup = rz[i][p + j * r], zdown = std::conj(rz[i][p + (2 * half - j) * r]);
        l1 += wl.first[j] * up;
        l2 += wl.second[j] * down;
        z1 += wz.first[j] * zdown;
        z2 += wz.second[j] * zup;
      }
      out[p * kOrder + i] = (l1 + wl.reflection * l2) * (z1 + wz.reflection * z2);
    }
  });
  return out;
}

std::vector<cplx> integrand(const FormDescriptor& f, const Grid& g, double hi, Engine engine) {
  if (engine == Engine::afe) return integrand_afe(f, g, hi);
  auto l = l_values_direct(f, g, hi);
  const auto z = zeta_values(g, hi);
  for (std::size_t k = 0; k < l.size(); ++k) l[k] *= z[k] * z[k];
  return l;
}

// Fixed-shape pairwise reduction: the result depends only on the inputs.
cplx tree_sum(std::vector<cplx> v) {
  if (v.empty()) return 0.0;
  while (v.size() > 1) {
    const std::size_t half = (v.size() + 1) / 2;
    for (std::size_t k = 0; k + half < v.size(); ++k) v[k] += v[k + half];
    v.resize(half);
  }
  return v[0];
}

cplx integrate_window(const FormDescriptor& f, double T, const SmoothWindow& w, std::size_t panels,
                      Engine engine) {
  const Grid g = make_grid(T, T, panels);
  const auto values = integrand(f, g, 2.0 * T, engine);
  std::vector<cplx> per_panel(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    cplx acc = 0.0;
    for (int i = 0; i < kOrder; ++i) acc += g.weight[i] * w(g.node(p, i) / T) * values[p * kOrder + i];
    per_panel[p] = acc;
  }
  return tree_sum(std::move(per_panel));
}

}  // namespace

std::size_t required_table_length(const FormDescriptor& shape, double T, Engine engine) {
  const double P = 6.0 * default_grid_step(T);
  if (engine == Engine::afe) {
    const lfunc::DyadicPartition dp;
    return lfunc::afe_block_weights(2.0 * T, shape.degree, dp, afe_kernel(P / 2.0)).size();
  }
  return direct_terms(shape, T, 2.0 * T, direct_kernel(P / 2.0));
}

MomentReport mixed_moment(const MomentJob& job) {
  const auto start = std::chrono::steady_clock::now();
  if (job.form == nullptr) throw PreconditionError("mixed_moment: no form");
  const double T = job.T;
  if (!(T >= 50.0)) throw PreconditionError("mixed_moment: requires T >= 50");
  const double step = job.grid_step > 0.0 ? job.grid_step : default_grid_step(T);
  if (step > 0.2 / std::log(T))
    throw PreconditionError("mixed_moment: grid_step " + std::to_string(step) + " exceeds 0.2/log T");
  const auto panels = static_cast<std::size_t>(std::ceil(T / (kOrder * step)));

  MomentReport rep;
  rep.T = T;
  rep.c = job.window.mass;
  rep.l_one = job.l_one > 0.0 ? job.l_one : forms::l_at_one(*job.form);
  rep.zeta2 = kZeta2;
  rep.main_term = main_term(rep.l_one, T, rep.c);
  rep.panels = panels;
  rep.grid_step = T / static_cast<double>(panels) / kOrder;
  rep.moment = integrate_window(*job.form, T, job.window, panels, job.engine);
  if (job.richardson) {
    const cplx fine = integrate_window(*job.form, T, job.window, 2 * panels, job.engine);
    rep.richardson_defect = std::abs(rep.moment - fine) / rep.main_term;
    if (rep.richardson_defect > 0.01)
      throw ConvergenceError("mixed_moment: grid too coarse, halving grid_step moved the moment by " +
                             std::to_string(100.0 * rep.richardson_defect) + "% of the main term");
  }
  rep.residual = rep.moment - rep.main_term;
  rep.ratio = rep.moment.real() / rep.main_term;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

MomentReport sharp_cutoff_moment(const FormDescriptor& f, double T, double grid_step, Engine engine) {
  MomentJob job;
  job.form = &f;
  job.T = T;
  job.window = sharp_window();
  job.grid_step = grid_step;
  job.engine = engine;
  return mixed_moment(job);
}

StripEstimate strip_estimate(const FormDescriptor& f, double lo, double hi, double grid_step) {
  if (!(hi > lo) || lo < 50.0) throw PreconditionError("strip_estimate: requires 50 <= lo < hi");
  const double step = grid_step > 0.0 ? grid_step : default_grid_step(hi);
  const auto panels = static_cast<std::size_t>(std::ceil((hi - lo) / (kOrder * step)));
  const Grid g = make_grid(lo, hi - lo, panels);
  const auto values = integrand(f, g, hi, Engine::direct);
  StripEstimate est;
  std::vector<cplx> per_panel(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    double acc = 0.0;
    for (int i = 0; i < kOrder; ++i) {
      const double a = std::abs(values[p * kOrder + i]);
      acc += g.weight[i] * a;
      est.max_abs = std::max(est.max_abs, a);
    }
    per_panel[p] = acc;
  }
  est.integral_abs = tree_sum(std::move(per_panel)).real();
  return est;
}

// ---------------------------------------------------------------------------

double mean_value_integral(const std::vector<cplx>& coeffs, double T) {
  if (coeffs.empty()) throw PreconditionError("mean_value_ratio: N must be >= 1");
  if (!(T > 0.0)) throw PreconditionError("mean_value_ratio: T must be > 0");
  // |Σ a_n n^{it}|² oscillates at frequencies ≤ 2 log N: panels of width
  // ≤ 1/(2 log N + 1) with 6 Gauss points resolve it to ~1e-12.
  const double freq = 2.0 * std::log(static_cast<double>(coeffs.size())) + 1.0;
  const auto panels = static_cast<std::size_t>(std::ceil(T * freq));
  const Grid g = make_grid(0.0, T, panels);
  const lattice::DirichletLattice lat(coeffs, -g.P);
  std::array<double, kOrder> tau0{};
  for (int i = 0; i < kOrder; ++i) tau0[i] = -g.offset[i];
  const auto rows = lattice_rows(lat, tau0, panels);
  std::vector<cplx> per_panel(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    double acc = 0.0;
    for (int i = 0; i < kOrder; ++i) acc += g.weight[i] * std::norm(rows[i][p]);
    per_panel[p] = acc;
  }
  return tree_sum(std::move(per_panel)).real();
}

double mean_value_ratio(const std::vector<cplx>& coeffs, double T) {
  const double integral = mean_value_integral(coeffs, T);
  double norm = 0.0;
  for (const cplx& a : coeffs) norm += std::norm(a);
  if (norm == 0.0) return 0.0;
  return integral / ((T + 3.0 * static_cast<double>(coeffs.size())) * norm);
}

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw PreconditionError("fit_log_slope: need >= 2 matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw PreconditionError("fit_log_slope: values must be positive");
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScalingStudy scaling_study(const FormDescriptor& f, const std::vector<double>& T_list, double window_delta,
                           double grid_step, Engine engine) {
  if (T_list.size() < 4) throw PreconditionError("scaling_study: need at least 4 heights");
  ScalingStudy study;
  const SmoothWindow w = make_window(window_delta);
  const double l_one = forms::l_at_one(f);
  std::vector<double> xs, ys;
  for (double T : T_list) {
    MomentJob job;
    job.form = &f;
    job.T = T;
    job.window = w;
    job.grid_step = grid_step;
    job.engine = engine;
    job.l_one = l_one;
    study.rows.push_back(mixed_moment(job));
    xs.push_back(T);
    ys.push_back(std::abs(study.rows.back().residual));
  }
  study.exponent = fit_log_slope(xs, ys);
  return study;
}

}  // namespace critline::moments
