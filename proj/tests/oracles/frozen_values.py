"""Independent high-precision oracle for values frozen into the C++ tests.

Run with: python3 tests/oracles/frozen_values.py
Uses mpmath only; shares no code with the library.
"""
from mpmath import mp, mpf, e, exp, sqrt, log, zeta, factorial, nsum, inf, quad

mp.dps = 40


def pois_pmf(lam, k):
    return exp(-lam) * lam**k / factorial(k)


def tail(lam, j):
    return nsum(lambda k: pois_pmf(lam, k), [j + 1, inf])


def abs_central(lam, q):
    return nsum(lambda k: abs(k - lam) ** q * pois_pmf(lam, k), [0, inf])


def raw_abs(lam, q):
    return nsum(lambda k: k ** q * pois_pmf(lam, k), [0, inf])


def show(name, v):
    print(f"{name:45s} {mp.nstr(v, 20)}")


show("normalize(0.125,2)", (2 - mpf("0.125")) / sqrt(mpf("0.125")))
show("normalize(0.4204,0)", -sqrt(mpf("0.4204")))
show("tail(1,0)", tail(mpf(1), 0))
show("tail(0.125,3)", tail(mpf("0.125"), 3))
show("bound(0.125,3)", mpf("0.125") ** 4 / 24)
show("abs_central(1,2.5)", abs_central(mpf(1), mpf(5) / 2))
show("abs_central(0.125,1)", abs_central(mpf("0.125"), 1))
show("raw_abs(1,2.5)", raw_abs(mpf(1), mpf(5) / 2))
show("raw_abs(0.4204,2.5)", raw_abs(mpf("0.4204"), mpf(5) / 2))
show("B partial N=2", 1 + mpf(2) ** (-mpf(17) / 16))
show("A tail 1e6", 4 * mpf(10) ** (-mpf(6) / 4))
show("a = zeta(5/4)", zeta(mpf(5) / 4))
show("b = zeta(17/16)", zeta(mpf(17) / 16))
p5 = mpf(2) ** (-1 / sqrt(log(2)))
show("p_5", p5)
show("event_AA(2)", p5 / 2)
show("J1 two-point n=5 on Y=1", 2 * mpf(5) ** (-1 / sqrt(log(5))))
show("lambda_33", mpf(16) ** (-mpf(5) / 16))
lam32, lam33 = mpf("0.125"), mpf(16) ** (-mpf(5) / 16)
X32 = (2 - lam32) / sqrt(lam32)
X33 = (1 - lam33) / sqrt(lam33)
show("J1 n=16 y=2", lam33 * X32)
show("J2 n=16 (2,1)", sqrt(lam33) * X32 * X33)
show("J1 n=16 y=1 closed", mpf(16) ** (mpf(1) / 16) - mpf(16) ** (-mpf(11) / 16))
show("l52_exact(1)", abs_central(mpf(1), mpf(5) / 2) * raw_abs(mpf(1), mpf(5) / 2))
a, b = zeta(mpf(5) / 4), zeta(mpf(17) / 16)
def tbm(t):
    t = mpf(t)
    return b * t ** (-mpf(1) / 4) + 16 * (t ** (mpf(2) / 3) - 1) ** (-mpf(1) / 16) + a / (sqrt(t) - 1) ** 2
show("tail_bound_M(9)", tbm(9))
show("tail_bound_M(100)", tbm(100))
show("p_H bound n=16", mpf(16) ** (-mpf(17) / 16))
show("p_B n=16", exp(-lam32) * lam32)
show("window [10,20) prob", 1 - mp.fprod([1 - mpf(1) / n for n in range(10, 20)]))
# E(M^delta) bound at delta = 1/48 (integrand min(1, bound(s^48)); 1 below s = 9^(1/48))
d = mpf(1) / 48
f = lambda s: 1 if s ** (1 / d) < 9 else min(1, tbm(s ** (1 / d)))
show("int_0^inf min(1,B(s^48)) ds", quad(f, [0, 9 ** d, 3, 4, 5, 10, 100, 1000, inf]))
# smallest n where two-point closed form exceeds 10
n = 3
while sqrt(mpf(n - 1)) * mpf(n) ** (-1 / sqrt(log(n))) <= 10:
    n += 1
show("two-point J1 first n > 10", n)
