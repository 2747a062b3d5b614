"""Dense univariate polynomials over Q: just enough for squarefree parts.

A polynomial is a list of Fractions, index = degree, no trailing zeros.
"""

from __future__ import annotations

from fractions import Fraction


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def derivative(p):
    return trim([Fraction(i) * c for i, c in enumerate(p)][1:])


def divmod_poly(a, b):
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = [Fraction(c) for c in a]
    lb = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / lb
        q[shift] = c
        for i, bc in enumerate(b):
            r[i + shift] -= c * bc
        r = trim(r)
    return trim(q), r


def monic(p):
    p = trim(p)
    if not p:
        return p
    lc = p[-1]
    return [c / lc for c in p]


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    return monic(a)


def squarefree_part(p):
    """``p / gcd(p, p')``, made monic (characteristic zero)."""
    p = trim(p)
    if len(p) <= 1:
        return monic(p)
    g = gcd(p, derivative(p))
    q, r = divmod_poly(p, g)
    assert not r
    return monic(q)
