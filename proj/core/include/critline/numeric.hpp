#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace critline {

using cplx = std::complex<double>;

// Neumaier's variant of compensated summation.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexNeumaierSum {
 public:
  void add(cplx z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  NeumaierSum re_, im_;
};

// e(x) = exp(2πix).
inline cplx e_of(double x) {
  const double a = 2.0 * std::numbers::pi * (x - std::floor(x));
  return {std::cos(a), std::sin(a)};
}

}  // namespace critline
