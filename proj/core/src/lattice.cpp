#include "critline/lattice.hpp"

#include <cmath>

#include "critline/errors.hpp"

namespace critline::lattice {

namespace {
constexpr std::size_t kLanes = 8;
std::size_t padded_size(std::size_t n) { return (n + kLanes - 1) / kLanes * kLanes; }
}  // namespace

DirichletLattice::DirichletLattice(const std::vector<double>& b, double step) : n_(b.size()) {
  br_.assign(padded_size(n_), 0.0);
  bi_.assign(padded_size(n_), 0.0);
  std::copy(b.begin(), b.end(), br_.begin());
  prepare(step);
}

DirichletLattice::DirichletLattice(const std::vector<cplx>& b, double step) : n_(b.size()) {
  br_.assign(padded_size(n_), 0.0);
  bi_.assign(padded_size(n_), 0.0);
  for (std::size_t k = 0; k < n_; ++k) {
    br_[k] = b[k].real();
    bi_[k] = b[k].imag();
  }
  prepare(step);
}

void DirichletLattice::prepare(double step) {
  step_ = step;
  const std::size_t padded = padded_size(n_);
  logn_.assign(padded, 0.0);
  zr_.assign(padded, 1.0);
  zi_.assign(padded, 0.0);
  for (std::size_t k = 0; k < n_; ++k) {
    logn_[k] = std::log(static_cast<double>(k + 1));
    zr_[k] = std::cos(step * logn_[k]);
    zi_[k] = -std::sin(step * logn_[k]);
  }
}

void DirichletLattice::eval(double tau0, std::size_t first, std::size_t count, cplx* out) const {
  if (first % kReseed != 0) throw PreconditionError("lattice: block must start on a reseed boundary");
  const std::size_t padded = padded_size(n_);
  std::vector<double> pr(padded, 0.0), pi(padded, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t m = first + i;
    if (m % kReseed == 0) {
      const double tau = tau0 + static_cast<double>(m) * step_;
      for (std::size_t k = 0; k < n_; ++k) {
        const double a = tau * logn_[k];
        const double c = std::cos(a), s = -std::sin(a);
        pr[k] = br_[k] * c - bi_[k] * s;
        pi[k] = br_[k] * s + bi_[k] * c;
      }
    }
    double ar[kLanes] = {}, ai[kLanes] = {};
    for (std::size_t k = 0; k < padded; k += kLanes) {
      for (std::size_t l = 0; l < kLanes; ++l) {
        const double xr = pr[k + l], xi = pi[k + l];
        ar[l] += xr;
        ai[l] += xi;
        pr[k + l] = xr * zr_[k + l] - xi * zi_[k + l];
        pi[k + l] = xr * zi_[k + l] + xi * zr_[k + l];
      }
    }
    double sr = 0.0, si = 0.0;
    for (std::size_t l = 0; l < kLanes; ++l) {
      sr += ar[l];
      si += ai[l];
    }
    out[i] = {sr, si};
  }
}

void dirichlet_progression(const std::vector<double>& b, double tau0, double step, std::size_t count,
                           cplx* out) {
  DirichletLattice(b, step).eval(tau0, 0, count, out);
}

void dirichlet_progression(const std::vector<cplx>& b, double tau0, double step, std::size_t count,
                           cplx* out) {
  DirichletLattice(b, step).eval(tau0, 0, count, out);
}

}  // namespace critline::lattice
