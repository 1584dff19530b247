#include "critline/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include "critline/errors.hpp"

namespace critline::quad {

namespace {

template <int N>
Rule make_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  Rule r;
  // Boost stores the non-negative half; x[0] is the centre for odd N.
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] == 0.0) continue;
    r.nodes.push_back(-x[i]);
    r.weights.push_back(w[i]);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.nodes.push_back(x[i]);
    r.weights.push_back(w[i]);
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  static const Rule r2 = make_rule<2>(), r4 = make_rule<4>(), r6 = make_rule<6>(), r8 = make_rule<8>(),
                    r10 = make_rule<10>(), r16 = make_rule<16>(), r20 = make_rule<20>(),
                    r30 = make_rule<30>();
  switch (n) {
    case 2: return r2;
    case 4: return r4;
    case 6: return r6;
    case 8: return r8;
    case 10: return r10;
    case 16: return r16;
    case 20: return r20;
    case 30: return r30;
    default: throw PreconditionError("gauss_legendre: unsupported order " + std::to_string(n));
  }
}

double integrate(const std::function<double(double)>& f, double a, double b, int panels, int order) {
  const Rule& r = gauss_legendre(order);
  const double h = (b - a) / panels;
  NeumaierSum acc;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t j = 0; j < r.nodes.size(); ++j) acc.add(r.weights[j] * f(mid + 0.5 * h * r.nodes[j]));
  }
  return 0.5 * h * acc.value();
}

cplx integrate_complex(const std::function<cplx(double)>& f, double a, double b, int panels, int order) {
  const Rule& r = gauss_legendre(order);
  const double h = (b - a) / panels;
  ComplexNeumaierSum acc;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t j = 0; j < r.nodes.size(); ++j) acc.add(r.weights[j] * f(mid + 0.5 * h * r.nodes[j]));
  }
  return 0.5 * h * acc.value();
}

}  // namespace critline::quad
