"""Reference values for the unit tests, computed independently with mpmath.

Run:  python3 tests/oracles/oracles.py > tests/oracles/oracles.txt
The tests carry these numbers as literals; this script is how they were made.
"""
import math
import os
import pickle
import sys

import mpmath as m

m.mp.dps = 40
CACHE = os.environ.get("TAU_CACHE", "/tmp/critline_tau.pkl")


def tau_table(n):
    # Δ = q ∏(1 − q^k)^24 by 24 sparse multiplications with the pentagonal
    # series, python integers throughout.
    if os.path.exists(CACHE):
        t = pickle.load(open(CACHE, "rb"))
        if len(t) > n:
            return t
    E = [0] * (n + 1)
    for k in range(-200, 201):
        g = k * (3 * k - 1) // 2
        if 0 <= g <= n:
            E[g] += (-1) ** (k & 1)
    nz = [(i, c) for i, c in enumerate(E) if c]
    P = [1] + [0] * n
    for _ in range(24):
        Q = [0] * (n + 1)
        for i, c in nz:
            for j in range(0, n + 1 - i):
                if P[j]:
                    Q[i + j] += c * P[j]
        P = Q
    t = [0] + P[:n]
    pickle.dump(t, open(CACHE, "wb"))
    return t


def out(name, *vals):
    print(name, *[m.nstr(v, 17) if not isinstance(v, (int, str)) else v for v in vals])


def section(title):
    print("#", title)


TAU = tau_table(10000)


def L_delta(s):
    # Λ(s) = (2π)^{−w}Γ(w)L(s,Δ), w = s + 11/2; both halves of the Mellin
    # integral split at y = 1, ε = 1.
    s = m.mpc(s)
    w, w2 = s + m.mpf(11) / 2, m.mpf(13) / 2 - s
    lam = m.mpc(0)
    for n in range(1, 80):
        x = 2 * m.pi * n
        lam += TAU[n] * (x ** (-w) * m.gammainc(w, x) + x ** (-w2) * m.gammainc(w2, x))
    return lam * (2 * m.pi) ** w / m.gamma(w)


def bump(y, lo, hi):
    v = (y - lo) / (hi - lo)
    if v <= 0 or v >= 1:
        return m.mpf(0)
    return m.exp(-1 / (4 * v * (1 - v)))


def F(y):
    v = (y - m.mpf(1) / 2) / 2
    if v <= 0 or v >= 1:
        return m.mpf(0)
    return m.exp(8 - 2 / (v * (1 - v)))


def phi_plus(mu, x):
    g = lambda y: F(y) * (-2 * m.pi * m.im(m.besselj(2j * mu, 4 * m.pi * m.sqrt(x * y))) / m.sinh(m.pi * mu))
    return m.quad(g, m.linspace(0.5, 2.5, 41))


def phi_minus(mu, x):
    g = lambda y: F(y) * 4 * m.cosh(m.pi * mu) * m.re(m.besselk(2j * mu, 4 * m.pi * m.sqrt(x * y)))
    return m.quad(g, m.linspace(0.5, 2.5, 41))


def mellin_plus_closed(mu, s):
    Ft = m.quad(lambda y: F(y) * y ** (-s), m.linspace(0.5, 2.5, 41))
    br = m.gamma(s + 1j * mu) / m.gamma(1 - s + 1j * mu) - m.gamma(s - 1j * mu) / m.gamma(1 - s - 1j * mu)
    return 1j * m.pi / m.sinh(m.pi * mu) * (2 * m.pi) ** (-2 * s) * br * Ft


def mellin_minus_closed(mu, s):
    Ft = m.quad(lambda y: F(y) * y ** (-s), m.linspace(0.5, 2.5, 41))
    return 2 * m.cosh(m.pi * mu) * (2 * m.pi) ** (-2 * s) * m.gamma(s + 1j * mu) * m.gamma(s - 1j * mu) * Ft


def kloosterman(a, b, c):
    return m.fsum(m.cos(2 * m.pi * (a * x + b * pow(x, -1, c)) / c) for x in range(1, c) if math.gcd(x, c) == 1) if c > 1 else m.mpf(1)


def main():
    section("tau(n)")
    for n in [1, 2, 3, 10, 100, 1000, 4096, 9973, 10000]:
        out("tau", n, TAU[n])

    section("zeta(s): sigma t re im")
    for s in [m.mpc(2, 0), m.mpc(0.5, 0), m.mpc(0.5, 100), m.mpc(0.5, 1000), m.mpc(0.3, 20), m.mpc(0.5, 5000),
              m.mpc(0.5, -37.5)]:
        z = m.zeta(s)
        out("zeta", s.real, s.imag, z.real, z.imag)

    section("log Gamma: re im -> re im")
    for z in [m.mpc(0.3, 700), m.mpc(-2.5, 0.1), m.mpc(3, 50)]:
        g = m.loggamma(z)
        out("loggamma", z.real, z.imag, g.real, g.imag)

    section("Bessel: J_{i nu}(x) re im; K_{2i mu}(x)")
    R = m.mpf("13.7797513518907362")
    for nu, x in [(2, 5), (2, 20), (2, 30), (2 * R, 20), (2 * R, 300)]:
        j = m.besselj(1j * nu, x)
        out("besselj", nu, x, j.real, j.imag)
    for mu, x in [(1, 10), (R, 5), (R, 0.01), (R, 30), (R / 2, 3)]:
        out("besselk", mu, x, m.re(m.besselk(2j * mu, x)))

    section("Stirling ratio: same_sign exact re im, t w kappa")
    for t, w, kap in [(100, m.mpc(0.5, 1), -5.5), (1000, m.mpc(0.5, 1), -6.5)]:
        s = m.mpc(0.5, t)
        ex = m.exp(m.loggamma((s + w - kap) / 2) - m.loggamma((s - kap) / 2))
        out("stirling", t, w.real, w.imag, kap, ex.real, ex.imag)

    section("L(s, Delta) normalized: sigma t re im")
    # Λ(½+100i) is e^{−50π} below the terms of its series: extra digits.
    for s in [m.mpc(0.5, 0), m.mpc(1, 0), m.mpc(0.5, 10), m.mpc(0.5, 100), m.mpc(1.5, 0)]:
        with m.workdps(40 + int(abs(s.imag) * 0.7)):
            v = L_delta(s)
        out("ldelta", s.real, s.imag, v.real, v.imag)

    section("Kloosterman S(a,b;c)")
    for a, b, c in [(1, 1, 7), (3, 5, 7), (2, 3, 12), (5, 7, 97), (1, 1, 1000), (0, 4, 30)]:
        out("kloost", a, b, c, kloosterman(a, b, c))

    section("bump on [1,2] Fourier: xi re im")
    for xi in [0, m.mpf(0.5), 3]:
        v = m.quad(lambda x: bump(x, 1, 2) * m.expjpi(-2 * x * xi), m.linspace(1, 2, 21))
        out("what", xi, v.real, v.imag)

    section("mollifier mass")
    out("mollifier_mass", m.quad(lambda v: m.exp(-1 / (4 * v * (1 - v))), [0, 0.5, 1]))

    section("fresnel(1000, 1.5, 1, 2) integral re im")
    v = m.quad(lambda x: bump(x, 1, 2) * m.expj(1000 * (x - 1.5) ** 2), m.linspace(1, 2, 201))
    out("fresnel", v.real, v.imag)

    m.mp.dps = 30
    section("Phi+/Phi- with the default F: mu x plus minus")
    for mu, x in [(1, m.mpf("0.1")), (1, 1), (1, 5), (1, 25), (R, 1), (R, 5)]:
        out("phi", mu, x, phi_plus(mu, x), phi_minus(mu, x))

    section("Mellin closed forms at s: mu sigma t re im")
    for mu, s in [(1, m.mpc(0.05, 10)), (1, m.mpc(0.3, 0))]:
        v = mellin_plus_closed(mu, s)
        out("mellin_plus", mu, s.real, s.imag, v.real, v.imag)
        v = mellin_minus_closed(mu, s)
        out("mellin_minus", mu, s.real, s.imag, v.real, v.imag)


if __name__ == "__main__":
    sys.setrecursionlimit(10000)
    main()
