"""Reference values frozen into the C++ tests.

Computed with mpmath at 40 digits from closed-form curve parametrisations,
independently of the library (numerical differentiation of the Frenet
invariants, tanh-sinh quadrature). Run: python3 derive_constants.py
"""
import mpmath as mp

mp.mp.dps = 40


def invariants(r, t):
    d1 = mp.matrix([mp.diff(lambda u: r(u)[i], t, 1) for i in range(3)])
    d2 = mp.matrix([mp.diff(lambda u: r(u)[i], t, 2) for i in range(3)])
    d3 = mp.matrix([mp.diff(lambda u: r(u)[i], t, 3) for i in range(3)])
    c = mp.matrix([d1[1] * d2[2] - d1[2] * d2[1], d1[2] * d2[0] - d1[0] * d2[2], d1[0] * d2[1] - d1[1] * d2[0]])
    v = mp.norm(d1)
    kappa = mp.norm(c) / v**3
    tau = (c[0] * d3[0] + c[1] * d3[1] + c[2] * d3[2]) / mp.norm(c) ** 2
    return v, kappa, tau


def conformal_speed(r, t):
    # (kappa_s^2 + kappa^2 tau^2)^(1/4) * ds/dt
    v, kappa, tau = invariants(r, t)
    kappa_t = mp.diff(lambda u: invariants(r, u)[1], t)
    return mp.sqrt(mp.sqrt((kappa_t / v) ** 2 + kappa**2 * tau**2)) * v


def conformal_torsion(r, t):
    v, kappa, tau = invariants(r, t)
    ks = mp.diff(lambda u: invariants(r, u)[1], t) / v
    kss = mp.diff(lambda u: mp.diff(lambda w: invariants(r, w)[1], u) / invariants(r, u)[0], t) / v
    ts = mp.diff(lambda u: invariants(r, u)[2], t) / v
    num = 2 * ks**2 * tau + kappa**2 * tau**3 + kappa * ks * ts - kappa * kss * tau
    return num / (ks**2 + kappa**2 * tau**2) ** mp.mpf(1.25)


helix = lambda t: (mp.cos(t), mp.sin(t), t)
cubic = lambda t: (t, t**2, t**3)
ellipse = lambda t: (2 * mp.cos(t), mp.sin(t), 0)


def ellipse_speed(t):
    # planar: |dk/ds|^(1/2) ds/dt
    a, b = 2, 1
    v = lambda u: mp.sqrt(a**2 * mp.sin(u) ** 2 + b**2 * mp.cos(u) ** 2)
    k = lambda u: a * b / v(u) ** 3
    return mp.sqrt(abs(mp.diff(k, t) / v(t))) * v(t)


print("helix rho [0, 2pi]            ", mp.quad(lambda t: conformal_speed(helix, t), [0, mp.pi, 2 * mp.pi]))
print("pi*sqrt(2)                    ", mp.pi * mp.sqrt(2))
print("cubic drho/ds at 0            ", conformal_speed(cubic, 0) / invariants(cubic, 0)[0])
print("cubic rho [-0.5, 0.5]         ", mp.quad(lambda t: conformal_speed(cubic, t), [-0.5, 0, 0.5]))
print("cubic T(0)                    ", conformal_torsion(cubic, 0))
print("cubic T(0.3)                  ", conformal_torsion(cubic, mp.mpf("0.3")))
print("ellipse(2,1) rho [0, pi/2]    ", mp.quad(ellipse_speed, [0, mp.pi / 4, mp.pi / 2]))
I = mp.quad(lambda u: mp.sqrt(mp.sin(u)), [0, mp.pi])
print("int_0^2pi sqrt|sin|           ", 2 * I, 2 * mp.sqrt(mp.pi) * mp.gamma(0.75) / mp.gamma(1.25))
print("averaging constant            ", 2 * I / (2 * mp.pi) / mp.mpf(12) ** 0.25)
