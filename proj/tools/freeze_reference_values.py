#!/usr/bin/env python3
"""High-precision reference values for the C++ test suite.

Computes, with mpmath at 50 significant digits, the frozen constants that
the unit tests assert against: resonance frequencies w_n (roots of
tan(kappa*w) = kappa/w), material functions M(s) at sample points,
complex poles s_n of the characteristic function

    f(s) = s*M(s)*sinh(kappa*s*M(s)) + kappa*cosh(kappa*s*M(s)),

and independent inverse-Laplace values of the displacement and stress
kernels via de Hoog's algorithm (a different method than the C++ oracle
uses, so the cross-check is genuinely independent).

Run from the repository root:  python3 tools/freeze_reference_values.py
The output is meant to be pasted into tests as literal constants.
"""

import mpmath as mp

mp.mp.dps = 50


# ---------------------------------------------------------------- models


def zener_M(s, alpha, a, b):
    return mp.sqrt((1 + a * s**alpha) / (1 + b * s**alpha))


def powerlaw_g(z):
    """(z-1)/log(z) with the removable singularity at z=1 filled in."""
    if abs(z - 1) < mp.mpf("1e-30"):
        return mp.mpf(1)
    return (z - 1) / mp.log(z)


def powerlaw_M(s, a, b):
    return mp.sqrt(powerlaw_g(a * s) / powerlaw_g(b * s))


# ------------------------------------------------------- frequencies w_n


def freq(kappa, n):
    """Root of w*sin(kappa*w) - kappa*cos(kappa*w) in (n*pi/k, (n+1/2)*pi/k)."""
    h = lambda w: w * mp.sin(kappa * w) - kappa * mp.cos(kappa * w)
    lo = n * mp.pi / kappa + mp.mpf("1e-40")
    hi = (n + mp.mpf("0.5")) * mp.pi / kappa - mp.mpf("1e-40")
    return mp.findroot(h, (lo, hi), solver="bisect", tol=mp.mpf("1e-45"))


def show(label, v):
    print(f"{label} = {mp.nstr(v, 25)}")


print("== frequencies ==")
for kappa in (mp.mpf("0.5"), mp.mpf(1), mp.mpf(2)):
    for n in (0, 1, 2, 5, 50):
        w = freq(kappa, n)
        show(f"w[kappa={kappa},n={n}]", w)
        if n == 50:
            show("  w50 - 50*pi/kappa", w - 50 * mp.pi / kappa)

print()
print("== constitutive samples ==")
show("zener M(4), alpha=.5 a=.2 b=.6", zener_M(mp.mpf(4), mp.mpf("0.5"), mp.mpf("0.2"), mp.mpf("0.6")))
cut = zener_M(mp.mpc(-1, 0) * mp.exp(mp.mpc(0, "1e-45")), mp.mpf("0.5"), mp.mpf("0.2"), mp.mpf("0.6"))
# approach the upper side of the cut explicitly: s = exp(i*(pi - eps))
s_up = mp.exp(mp.mpc(0, mp.pi - mp.mpf("1e-40")))
cut = zener_M(s_up, mp.mpf("0.5"), mp.mpf("0.2"), mp.mpf("0.6"))
show("zener M on upper cut q=1 (re)", mp.re(cut))
show("zener M on upper cut q=1 (im)", mp.im(cut))
show("powerlaw M(2) a=.5 b=2 (removable pt)", powerlaw_M(mp.mpf(2), mp.mpf("0.5"), mp.mpf(2)))
show("powerlaw M(2*(1+1e-6))", powerlaw_M(mp.mpf(2) * (1 + mp.mpf("1e-6")), mp.mpf("0.5"), mp.mpf(2)))
show("powerlaw M(2*(1-1e-6))", powerlaw_M(mp.mpf(2) * (1 - mp.mpf("1e-6")), mp.mpf("0.5"), mp.mpf(2)))

# analytic d(sM)/ds for the zener model at s = i
alpha, a, b = mp.mpf("0.5"), mp.mpf("0.2"), mp.mpf("0.6")
s = mp.mpc(0, 1)
M = zener_M(s, alpha, a, b)
dsM = M * (1 + (alpha / 2) * (a * s**alpha / (1 + a * s**alpha) - b * s**alpha / (1 + b * s**alpha)))
show("zener d(sM)/ds at s=i (re)", mp.re(dsM))
show("zener d(sM)/ds at s=i (im)", mp.im(dsM))

print()
print("== zener poles, kappa=1, alpha=.5 a=.2 b=.6 ==")
kappa = mp.mpf(1)
c_inf = mp.sqrt(a / b)


def fchar(s):
    y = s * zener_M(s, alpha, a, b)
    return y * mp.sinh(kappa * y) + kappa * mp.cosh(kappa * y)


def pole(n):
    w = freq(kappa, n)
    g = lambda s: s * zener_M(s, alpha, a, b) - mp.mpc(0, 1) * w
    s0 = mp.mpc(0, 1) * w / c_inf
    return w, mp.findroot(g, s0, tol=mp.mpf("1e-40"))


poles = {}
for n in (0, 1, 2, 3, 5, 6, 10, 11, 12, 13, 14, 15, 20, 32, 64):
    w, sn = pole(n)
    poles[n] = sn
    zeta = abs(sn)
    ratio = zeta * c_inf * kappa / (n * mp.pi) if n > 0 else mp.nan
    print(
        f"n={n:3d} w={mp.nstr(w, 20)} s=({mp.nstr(mp.re(sn), 20)}, {mp.nstr(mp.im(sn), 20)})"
        f" zeta={mp.nstr(zeta, 20)} ratio={mp.nstr(ratio, 10)} |f|={mp.nstr(abs(fchar(sn)), 5)}"
    )

xi0 = mp.re(poles[0])
print(f"xi_0 = {mp.nstr(xi0, 12)}   exp(200*xi_0) = {mp.nstr(mp.exp(200 * xi0), 8)}")
xi_max = max(mp.re(v) for v in poles.values())
print(f"max Re s_n over sampled n = {mp.nstr(xi_max, 12)}")

R = (10 + mp.mpf("0.5")) * mp.pi / (c_inf * kappa)
inside = [n for n, v in poles.items() if abs(v) < R and n <= 15]
print(f"disc radius R(n=10) = {mp.nstr(R, 12)}; sampled poles inside: {inside}")

print()
print("== kernel reference values (de Hoog inversion) ==")


def Ptilde(x, s):
    Ms = zener_M(s, alpha, a, b)
    y = s * Ms
    return Ms * mp.sinh(kappa * x * y) / (s * (y * mp.sinh(kappa * y) + kappa * mp.cosh(kappa * y)))


def Qtilde(x, s):
    Ms = zener_M(s, alpha, a, b)
    y = s * Ms
    return kappa * mp.cosh(kappa * x * y) / (s * (y * mp.sinh(kappa * y) + kappa * mp.cosh(kappa * y)))


for name, F, x, t in (
    ("P(1, 1)", Ptilde, mp.mpf(1), mp.mpf(1)),
    ("P(0.5, 2)", Ptilde, mp.mpf("0.5"), mp.mpf(2)),
    ("P(1, 0.5)", Ptilde, mp.mpf(1), mp.mpf("0.5")),
    ("sigma_H(0.5, 2)", Qtilde, mp.mpf("0.5"), mp.mpf(2)),
    ("sigma_H(1, 1)", Qtilde, mp.mpf(1), mp.mpf(1)),
    ("sigma_H(0.5, 200)", Qtilde, mp.mpf("0.5"), mp.mpf(200)),
):
    vals = []
    for degree in (40, 60):
        v = mp.invertlaplace(lambda s: F(x, s), t, method="dehoog", degree=degree)
        vals.append(v)
    agree = abs(vals[0] - vals[1])
    print(f"{name} = {mp.nstr(vals[1], 20)}   (degree 40 vs 60 agree to {mp.nstr(agree, 3)})")

print()
print("== elastic closed-form sanity (kappa=1, x=1) ==")
kappa = mp.mpf(1)


def elastic_P_series(x, t, N):
    acc = mp.mpf(0)
    for n in range(N):
        w = freq(kappa, n)
        D = (1 + kappa**2) * mp.sin(kappa * w) + kappa * w * mp.cos(kappa * w)
        acc += 2 * mp.sin(kappa * w * x) * mp.sin(w * t) / (w * D)
    return acc


def elastic_sigma_series(x, t, N):
    acc = mp.mpf(0)
    for n in range(N):
        w = freq(kappa, n)
        D = (1 + kappa**2) * mp.sin(kappa * w) + kappa * w * mp.cos(kappa * w)
        acc += -2 * kappa * mp.cos(kappa * w * x) * mp.cos(w * t) / (w * D)
    return acc


mp.mp.dps = 30
print("elastic sigma series at t=0, x=1, N=2000:", mp.nstr(elastic_sigma_series(1, 0, 2000), 12))
print("elastic sigma series at t=0, x=0.3, N=2000:", mp.nstr(elastic_sigma_series(mp.mpf("0.3"), 0, 2000), 12))
print("elastic P series x=1 t=pi N=1000:", mp.nstr(elastic_P_series(1, mp.pi, 1000), 12))
print("elastic P series x=1 t=pi N=2000:", mp.nstr(elastic_P_series(1, mp.pi, 2000), 12))
print("elastic P(1,1) via de Hoog:", mp.nstr(mp.invertlaplace(lambda s: mp.sinh(s) / (s * (s * mp.sinh(s) + mp.cosh(s))), mp.mpf(1), method="dehoog", degree=40), 15))
print("elastic P series x=1 t=1 N=4000:", mp.nstr(elastic_P_series(1, 1, 4000), 15))
