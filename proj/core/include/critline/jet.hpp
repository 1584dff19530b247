#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace critline {

// Truncated Taylor series about a point: c[k] = f^{(k)}(x0)/k!, k ≤ N.
// Enough arithmetic to differentiate windows and phases to order N without
// hand-written derivative formulas.
template <class T, int N>
struct Jet {
  std::array<T, N + 1> c{};

  Jet() = default;
  Jet(T constant) { c[0] = constant; }  // NOLINT: implicit lift of constants

  static Jet variable(T x0) {
    Jet j(x0);
    if constexpr (N >= 1) j.c[1] = T(1);
    return j;
  }

  // f^{(k)}(x0)
  T derivative(int k) const {
    T f = c[k];
    for (int i = 2; i <= k; ++i) f *= T(i);
    return f;
  }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= N; ++k) c[k] += o.c[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= N; ++k) c[k] -= o.c[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (auto& x : a.c) x = -x;
    return a;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i <= N; ++i)
      for (int j = 0; i + j <= N; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= N; ++k) {
      T acc = a.c[k];
      for (int j = 1; j <= k; ++j) acc -= b.c[j] * r.c[k - j];
      r.c[k] = acc / b.c[0];
    }
    return r;
  }
};

// exp via y' = f'y: k·y_k = Σ_{j=1}^{k} j f_j y_{k−j}.
template <class T, int N>
Jet<T, N> exp(const Jet<T, N>& f) {
  using std::exp;
  Jet<T, N> y;
  y.c[0] = exp(f.c[0]);
  for (int k = 1; k <= N; ++k) {
    T acc{};
    for (int j = 1; j <= k; ++j) acc += T(j) * f.c[j] * y.c[k - j];
    y.c[k] = acc / T(k);
  }
  return y;
}

// log via f·y' = f': k f_0 y_k = k f_k − Σ_{j=1}^{k−1} j y_j f_{k−j}.
template <class T, int N>
Jet<T, N> log(const Jet<T, N>& f) {
  using std::log;
  Jet<T, N> y;
  y.c[0] = log(f.c[0]);
  for (int k = 1; k <= N; ++k) {
    T acc = T(k) * f.c[k];
    for (int j = 1; j < k; ++j) acc -= T(j) * y.c[j] * f.c[k - j];
    y.c[k] = acc / (T(k) * f.c[0]);
  }
  return y;
}

// Simultaneous sin and cos via s' = f'c, c' = −f's.
template <class T, int N>
void sincos(const Jet<T, N>& f, Jet<T, N>& s, Jet<T, N>& co) {
  using std::cos;
  using std::sin;
  s = Jet<T, N>();
  co = Jet<T, N>();
  s.c[0] = sin(f.c[0]);
  co.c[0] = cos(f.c[0]);
  for (int k = 1; k <= N; ++k) {
    T as{}, ac{};
    for (int j = 1; j <= k; ++j) {
      as += T(j) * f.c[j] * co.c[k - j];
      ac -= T(j) * f.c[j] * s.c[k - j];
    }
    s.c[k] = as / T(k);
    co.c[k] = ac / T(k);
  }
}

template <class T, int N>
Jet<T, N> sin(const Jet<T, N>& f) {
  Jet<T, N> s, c;
  sincos(f, s, c);
  return s;
}

template <class T, int N>
Jet<T, N> cos(const Jet<T, N>& f) {
  Jet<T, N> s, c;
  sincos(f, s, c);
  return c;
}

template <class T, int N>
Jet<T, N> sqrt(const Jet<T, N>& f) {
  Jet<T, N> y;
  using std::sqrt;
  y.c[0] = sqrt(f.c[0]);
  for (int k = 1; k <= N; ++k) {
    T acc = f.c[k];
    for (int j = 1; j < k; ++j) acc -= y.c[j] * y.c[k - j];
    y.c[k] = acc / (T(2) * y.c[0]);
  }
  return y;
}

// Real jet lifted to complex coefficients.
template <int N>
Jet<std::complex<double>, N> complexify(const Jet<double, N>& f) {
  Jet<std::complex<double>, N> r;
  for (int k = 0; k <= N; ++k) r.c[k] = f.c[k];
  return r;
}

}  // namespace critline
