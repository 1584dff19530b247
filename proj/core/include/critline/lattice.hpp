#pragma once

#include <cstddef>
#include <vector>

#include "critline/numeric.hpp"

namespace critline::lattice {

// Evaluates D(τ) = Σ_{n=1}^{N} b_n e^{−iτ log n} at τ = τ0 + mΔ with one
// complex multiply per term per point. Phasors are re-seeded from exact sines
// and cosines whenever m is a multiple of kReseed, so rounding drift stays at
// the 1e-13 level and every value depends only on (τ0, Δ, m). Blocks that
// start on a multiple of kReseed can be evaluated in any order or on any
// thread with bit-identical results.
inline constexpr std::size_t kReseed = 256;

class DirichletLattice {
 public:
  DirichletLattice(const std::vector<double>& b, double step);
  DirichletLattice(const std::vector<cplx>& b, double step);

  // out[i] = D(τ0 + (first+i)Δ), i < count; first % kReseed == 0.
  void eval(double tau0, std::size_t first, std::size_t count, cplx* out) const;
  std::size_t terms() const { return n_; }

 private:
  void prepare(double step);

  std::size_t n_ = 0;
  double step_ = 0.0;
  std::vector<double> br_, bi_, logn_, zr_, zi_;
};

void dirichlet_progression(const std::vector<double>& b, double tau0, double step, std::size_t count,
                           cplx* out);
void dirichlet_progression(const std::vector<cplx>& b, double tau0, double step, std::size_t count,
                           cplx* out);

}  // namespace critline::lattice
