#!/usr/bin/env python3
"""Crossover / max-distance reference values (scipy double precision).

Mirrors the documented procedure: min over the default mu_e grid
{0.5, 1.0, ..., 6.0}, x0 grid step 0.01, bisection to 1e-4 in x0 and
0.1 km in distance. "Attack wins" means ber_presence < ber_absence.
"""
import numpy as np
from scipy.special import erfc
from scipy.optimize import brentq

S2 = np.sqrt(2.0)
MU_E_GRID = np.arange(1, 13) * 0.5


def absence(mu, l, x0, a=0.21, eb=0.6636):
    m = np.sqrt(10 ** (-a * l / 10) * eb * mu)
    return erfc(S2 * (x0 + m)) / (erfc(S2 * (x0 + m)) + erfc(S2 * (x0 - m)))


def spda(mu):
    d1 = 1 - np.exp(-2 * mu)
    dp = 1 - np.exp(-mu)
    return d1 / 2, 0.0, dp * (1 - dp) / 2, dp * (1 - dp) / 2, ((1 - d1) + (1 - dp) ** 2 + dp ** 2) / 2


def presence(mix, mue, x0):
    pp, pm, pi, pmi, pv = mix
    m = np.sqrt(mue)
    o = pi + pmi + pv
    p = (pp + pm) / 2 * (erfc(S2 * (x0 + m)) + erfc(S2 * (x0 - m))) + o * erfc(S2 * x0)
    num = pp * erfc(S2 * (x0 + m)) + pm * erfc(S2 * (x0 - m)) + o * erfc(S2 * x0)
    return num / (2 * p)


def margin(mu, l, x0):
    mix = spda(mu)
    return min(presence(mix, me, x0) for me in MU_E_GRID) - absence(mu, l, x0)


def crossover(mu, l, hi=3.0, step=0.01):
    xs = np.round(np.arange(0, hi + step / 2, step), 10)
    ok = [x for x in xs if margin(mu, l, x) >= 0]
    if not ok:
        return None
    xa = max(ok)
    lo_, hi_ = xa, xa + step
    while hi_ - lo_ > 1e-4:
        mid = 0.5 * (lo_ + hi_)
        if margin(mu, l, mid) >= 0:
            lo_ = mid
        else:
            hi_ = mid
    return 0.5 * (lo_ + hi_)


def detectable(mu, l):
    xs = np.round(np.arange(0, 3.0 + 0.005, 0.01), 10)
    return any(margin(mu, l, x) >= 0 for x in xs)


def max_distance(mu, lo=0.0, hi=100.0):
    while hi - lo > 0.1:
        mid = 0.5 * (lo + hi)
        if detectable(mu, mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


for mu, l in [(1, 30), (1.5, 30), (1, 0)]:
    x = crossover(mu, l)
    print(mu, l, "x0*", x, "ber", absence(mu, l, x))
print("max_distance mu=1", max_distance(1))
print("max_distance mu=1.5", max_distance(1.5))
x = crossover(1, 0, hi=4.0)
print("mu=1 l=0 range [0,4] x0*", x, "ber", absence(1, 0, x))
