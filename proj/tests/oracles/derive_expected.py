"""Independent oracles for frozen expected values in the C++ tests.

Uses scipy quadrature and closed forms only; shares no code with the library.
"""
import math
import itertools
import numpy as np
from scipy import integrate, special

def show(name, v):
    print(f"{name} = {v!r}")

# integrate(delta) on (0.01, 1], 64 log nodes, exponent 0 (trapezoid exact for linear)
show("integrate_linear_logspaced", (1 - 0.01**2) / 2)

# f(t)=t: L1 norm of shift difference under zero extension
def s_h_l1(h):
    # independent fine Riemann sum on [0,1]
    t = np.linspace(0, 1, 400001)
    fth = np.where((t + h >= 0) & (t + h <= 1), t + h, 0.0)
    y = np.abs(fth - t)
    return integrate.trapezoid(y, t)

show("S_h_l1(+0.1)", s_h_l1(0.1))
show("S_h_l1(-0.1)", s_h_l1(-0.1))
closed_pos = lambda h: 2*h - 1.5*h*h
closed_neg = lambda a: a - a*a/2
show("modulus_continuity(t,0.1,p=1)", max(closed_pos(0.1), closed_neg(0.1)))
dq = integrate.quad(closed_pos, 0, 0.1)[0] + integrate.quad(closed_neg, 0, 0.1)[0]
show("modulus_q(t,0.1,p=1,q=1) closed", dq)
hs = np.linspace(-0.1, 0.1, 2001)
show("modulus_q riemann", integrate.trapezoid([s_h_l1(h) for h in hs[::20]], hs[::20]))

delta1 = lambda d: integrate.quad(closed_pos, 0, d)[0] + integrate.quad(closed_neg, 0, d)[0]
semi = integrate.quad(lambda d: d**-1.5 * delta1(d), 0.01, 1, limit=200)[0]
show("besov_seminorm(t,(1,1,1,.5),dmin=.01)", semi)
show("besov closed", 1.5*(2/3)*(1-0.01**1.5) - (2/3)*(2/5)*(1-0.01**2.5))

# Gaussian absolute moments
kappa = lambda m: (2**(m/2) * special.gamma((m+1)/2) / math.sqrt(math.pi))**(1/m)
show("kappa_4*0.5", kappa(4)*0.5)
ms = np.arange(2, 33)
show("sup_{m=2..32} kappa_m/sqrt(m)", max(kappa(m)/math.sqrt(m) for m in ms))
show("psi2 tail u=10", math.exp(-100/(2*math.e)))

show("rosenthal(4)", 1.77638*4/(math.e*math.log(4)))
show("osekowski(e^2)", 15.7858*math.e**2/2)
show("osekowski(2)", 15.7858*2/math.log(2))
br = sum(2.0**-k * (k+1)**1.0 for k in range(1, 51))
show("nachapetyan(4,2^-k,C=1,50)", 4**4 * br**0.25)

# beta_of_m: V=1, lambda_m wiener, m=4, s=2, alpha=0.1, q=2 -> gamma=-0.2, delta in [1e-3, 1/e]
lam = lambda d, m: math.sqrt(m)*math.sqrt(d*abs(math.log(d)))
g = 2/2 - 0.1*2 - 1
val = integrate.quad(lambda d: lam(d, 4)**2 * d**g, 1e-3, 1/math.e, limit=200)[0]**0.5
show("beta_of_m(V=1,wiener lambda m=4,s=2,gamma=-0.2)", val)

# kappa: wiener analytic d_m with zero extension, (p,q,s,alpha)=(2,2,2,0.1), dmin=1e-3, m=4
def dm_w(t, u, m):
    ext = lambda x: 0.0 <= x <= 1.0
    if ext(t) and ext(u):
        return kappa(m)*math.sqrt(abs(t-u))
    if ext(t):
        return kappa(m)*math.sqrt(t)
    if ext(u):
        return kappa(m)*math.sqrt(u)
    return 0.0
def inner_t(z, d, m=4):
    # int_0^1 d_m(t+z d, t)^2 dt, split at the boundary kink
    h = z*d
    brk = [0.0, 1.0] + [x for x in (1-h, -h) if 0 < x < 1]
    brk = sorted(brk)
    return sum(integrate.quad(lambda t: dm_w(t+h, t, m)**2, a, b)[0] for a, b in zip(brk, brk[1:]))
def inner_z(d):
    return integrate.quad(lambda z: inner_t(z, d), -1, 1, points=[0.0], limit=200)[0]
gam = 2/2 - 0.1*2 - 1
mixed = integrate.quad(lambda d: inner_z(d) * d**gam, 1e-3, 1, limit=200)[0]**0.5
show("kappa_mixed_wiener_m4", mixed)
show("kappa(4)", 1.77638*4/(math.e*math.log(4)) * mixed)

# 2x2 field brute force
f = np.array([[1.0, 0.0], [0.0, 1.0]])
w = 0.5
def mixed2(f, p1, p2):  # axis0 inner
    inner = [(sum(w*abs(f[i, j])**p1 for i in range(2)))**(1/p1) for j in range(2)]
    return (sum(w*x**p2 for x in inner))**(1/p2)
show("2x2 |f|_{1,2}", mixed2(f, 1, 2))
show("2x2 |f|_{2,1}", mixed2(f, 2, 1))

# brute force minimal covering of 201 points on [-1,1], eps 0.25
pts = np.linspace(-1, 1, 201)
def min_cover(eps):
    for k in range(1, 10):
        for cs in itertools.combinations(range(201), k):
            if k > 4: break
            c = pts[list(cs)]
            if np.all(np.min(np.abs(pts[:, None] - c[None, :]), axis=1) <= eps + 1e-12):
                return k
    # greedy interval sweep is exact in 1-D
    n, i = 0, 0
    while i < len(pts):
        n += 1
        right = pts[i] + 2*eps
        while i < len(pts) and pts[i] <= right + 1e-12: i += 1
    return n
def sweep(eps):
    n, i = 0, 0
    while i < len(pts):
        n += 1
        right = pts[i] + 2*eps
        while i < len(pts) and pts[i] <= right + 1e-12: i += 1
    return n
show("min cover 201 pts eps 0.25 (sweep)", sweep(0.25))

# Remark 2.4 envelope at beta=.5 alpha=.25 q=2 s=2
show("envelope", 2**-0.5 * 0.75**-0.5)
