#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "critline/numeric.hpp"

namespace critline::quad {

struct Rule {
  std::vector<double> nodes;    // on [−1, 1], ascending
  std::vector<double> weights;
};

// Gauss–Legendre rule with n points; n ∈ {2, 4, 6, 8, 10, 16, 20, 30}.
const Rule& gauss_legendre(int n);

// Composite rule over [a, b] split into equal panels.
double integrate(const std::function<double(double)>& f, double a, double b, int panels, int order = 10);
cplx integrate_complex(const std::function<cplx(double)>& f, double a, double b, int panels, int order = 10);

}  // namespace critline::quad
