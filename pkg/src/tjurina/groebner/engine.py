"""Standard-basis kernel on integer-coefficient term dictionaries.

Terms are keyed by ``(component, exponents)``; ideals use component 0 only.
Coefficients are Python ints with the integer content stripped after each
reduction, so every internal polynomial is a rational multiple of the value
it represents.  Global orders use Buchberger with Gebauer-Moeller pair
pruning.  Local and mixed orders are handled by Lazard's homogenization:
an extra variable makes the input homogeneous, Buchberger runs under a
global order that compares total degree first, and dehomogenizing gives a
standard basis.  Single weak normal forms
against a finished basis use Mora's ecart-driven reduction.
"""

from __future__ import annotations

import heapq
import os
import sys
from fractions import Fraction
from math import gcd

from ..ring import RingContext

TOP = "top"
POT = "pot"


def trace_enabled() -> bool:
    return os.environ.get("TJURINA_TRACE", "") not in ("", "0")


class TermOrder:
    """Module term order on ``(component, exponents)`` built from a ring order.

    Lower component index is larger (``e1 > e2 > ...``).  ``top`` compares
    monomials first, ``pot`` compares components first.
    """

    def __init__(self, ctx: RingContext, strategy: str = TOP):
        if strategy not in (TOP, POT):
            raise ValueError(f"unknown module order strategy {strategy!r}")
        self.ctx = ctx
        self.strategy = strategy
        self.is_global = ctx.is_global
        self._mkey = ctx.key
        self._cache: dict = {}

    @staticmethod
    def degree(e) -> int:
        return sum(e)

    def key(self, t):
        k = self._cache.get(t)
        if k is None:
            mk = self._mkey(t[1])
            k = (-t[0], mk) if self.strategy == POT else (mk, -t[0])
            self._cache[t] = k
        return k


class HomogenizedOrder:
    """Global order on terms with one trailing homogenizing exponent.

    Total degree (homogenizer included) first, ties broken by ``base`` on the
    dehomogenized term.  Any ``base`` order works this way; weighting only
    the local block is also correct but can stall on mixed orders.
    """

    is_global = True

    def __init__(self, base: TermOrder):
        self.base = base
        self.ctx = base.ctx
        self.strategy = base.strategy
        self._cache: dict = {}

    @staticmethod
    def degree(e) -> int:
        """The grading the homogenized ideal is homogeneous for."""
        return sum(e)

    def key(self, t):
        k = self._cache.get(t)
        if k is None:
            e = t[1]
            k = (sum(e), self.base.key((t[0], e[:-1])))
            self._cache[t] = k
        return k

    def homogenize(self, d: dict) -> dict:
        top = max(sum(e) for _, e in d)
        return {(c, e + (top - sum(e),)): v for (c, e), v in d.items()}

    @staticmethod
    def dehomogenize(d: dict) -> dict:
        out: dict = {}
        for (c, e), v in d.items():
            t = (c, e[:-1])
            nv = out.get(t, 0) + v
            if nv:
                out[t] = nv
            else:
                out.pop(t, None)
        return out


class EPoly:
    __slots__ = ("d", "lm", "lc", "deg", "ecart", "sugar", "lmdeg")

    def __init__(self, d: dict, order: TermOrder, sugar: int | None = None):
        self.d = d
        self.lm = max(d, key=order.key)
        self.lc = d[self.lm]
        deg = order.degree
        self.lmdeg = deg(self.lm[1])
        self.deg = max(deg(t[1]) for t in d)
        self.ecart = self.deg - self.lmdeg
        self.sugar = self.deg if sugar is None else max(sugar, self.deg)


def content(d: dict) -> int:
    g = 0
    for v in d.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def normalize(d: dict) -> int:
    """Divide ``d`` in place by its content; returns the divisor used."""
    g = content(d)
    if g > 1:
        for t in d:
            d[t] //= g
    return g


def _divides(a, b) -> bool:
    if a[0] != b[0]:
        return False
    for x, y in zip(a[1], b[1]):
        if x > y:
            return False
    return True


def _reduce_step(h: dict, lm_h, lc_h: int, g: EPoly) -> int:
    """``h <- a*h - b*x^q*g`` in place, cancelling ``lm_h``; returns ``a``."""
    q = tuple(y - x for x, y in zip(g.lm[1], lm_h[1]))
    gg = gcd(lc_h, g.lc)
    a = g.lc // gg
    b = lc_h // gg
    if a < 0:
        a, b = -a, -b
    if a != 1:
        for t in h:
            h[t] *= a
    get = h.get
    for (c, e), v in g.d.items():
        t = (c, tuple(x + y for x, y in zip(e, q)))
        nv = get(t, 0) - b * v
        if nv:
            h[t] = nv
        else:
            del h[t]
    return a


def _find_reducer(t, G):
    for g in G:
        if _divides(g.lm, t):
            return g
    return None


def reduce_top(f: dict, G, order: TermOrder) -> dict:
    """Weak normal form of ``f`` (up to a rational factor and, locally, a unit).

    Global orders: plain top-reduction.  Otherwise Mora's algorithm: reducers
    are chosen with minimal ecart and the running remainder joins the reducer
    set whenever it has smaller ecart than the reducer used.
    """
    h = dict(f)
    key = order.key
    if order.is_global:
        while h:
            lm = max(h, key=key)
            g = _find_reducer(lm, G)
            if g is None:
                break
            _reduce_step(h, lm, h[lm], g)
            normalize(h)
        return h
    T = list(G)
    while h:
        lm = max(h, key=key)
        best = None
        for g in T:
            if _divides(g.lm, lm) and (best is None or g.ecart < best.ecart):
                best = g
                if g.ecart == 0:
                    break
        if best is None:
            break
        ecart_h = max(sum(t[1]) for t in h) - sum(lm[1])
        if best.ecart > ecart_h:
            T.append(EPoly(dict(h), order))
        _reduce_step(h, lm, h[lm], best)
        normalize(h)
    return h


def reduce_full(f: dict, G, order: TermOrder, truncate: int | None = None):
    """Fully reduced remainder ``r`` with ``r = s*f mod <G>``; returns ``(r, s)``.

    ``s`` is a nonzero Fraction.  Needs a well-founded situation: a global
    order, or a local order together with ``truncate`` (terms of total degree
    ``>= truncate`` are dropped, which is exact when every such monomial lies
    in the ideal).
    """
    p = dict(f)
    if truncate is not None:
        p = {t: v for t, v in p.items() if sum(t[1]) < truncate}
    r: dict = {}
    num, den = 1, 1
    key = order.key
    while p:
        lm = max(p, key=key)
        g = _find_reducer(lm, G)
        if g is None:
            r[lm] = p.pop(lm)
            continue
        a = _reduce_step(p, lm, p[lm], g)
        if truncate is not None:
            for t in [t for t in p if sum(t[1]) >= truncate]:
                del p[t]
        if a != 1:
            num *= a
            for t in r:
                r[t] *= a
        c = gcd(content(p), content(r)) if r else content(p)
        if c > 1:
            den *= c
            for t in p:
                p[t] //= c
            for t in r:
                r[t] //= c
    return r, Fraction(num, den)


def spoly(f: EPoly, g: EPoly, degree=sum):
    lf, lg = f.lm[1], g.lm[1]
    lcm = tuple(x if x > y else y for x, y in zip(lf, lg))
    qf = tuple(x - y for x, y in zip(lcm, lf))
    qg = tuple(x - y for x, y in zip(lcm, lg))
    gg = gcd(f.lc, g.lc)
    a = g.lc // gg
    b = f.lc // gg
    d: dict = {}
    for (c, e), v in f.d.items():
        t = (c, tuple(x + y for x, y in zip(e, qf)))
        d[t] = a * v
    get = d.get
    for (c, e), v in g.d.items():
        t = (c, tuple(x + y for x, y in zip(e, qg)))
        nv = get(t, 0) - b * v
        if nv:
            d[t] = nv
        else:
            del d[t]
    sugar = max(f.sugar + degree(qf), g.sugar + degree(qg))
    return d, sugar


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _mdiv(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class StdState:
    """Mutable work state of one standard-basis run."""

    def __init__(self, order: TermOrder, is_ideal: bool, trace: bool = False):
        self.order = order
        self.is_ideal = is_ideal
        self.G: list[EPoly] = []
        self.active: list[int] = []
        self.pairs: dict = {}
        self.heap: list = []
        self.counter = 0
        self.trace = trace

    def log(self, msg):
        if self.trace:
            print(f"[std] {msg}", file=sys.stderr)

    def _push(self, i, j, lcm):
        gi, gj = self.G[i], self.G[j]
        deg = self.order.degree
        qi = deg(lcm) - gi.lmdeg
        qj = deg(lcm) - gj.lmdeg
        sugar = max(gi.sugar + qi, gj.sugar + qj)
        self.counter += 1
        k = (min(i, j), max(i, j))
        self.pairs[k] = lcm
        comp = gi.lm[0]
        heapq.heappush(self.heap, (sugar, deg(lcm), self.order.key((comp, lcm)),
                                   self.counter, k))

    def add(self, h: EPoly):
        """Insert ``h`` and update pairs with the Gebauer-Moeller criteria."""
        G = self.G
        k = len(G)
        G.append(h)
        comp, eh = h.lm
        cand = []
        for j in self.active:
            g = G[j]
            if g.lm[0] != comp:
                continue
            cand.append((j, _lcm(g.lm[1], eh), self.is_ideal and _coprime(g.lm[1], eh)))
        # chain criterion among the new pairs
        D = []
        while cand:
            p = cand.pop(0)
            j, l, cop = p
            if cop or not any(_mdiv(l2, l) for _, l2, _ in cand + D):
                D.append(p)
        # drop old pairs made redundant by h
        for pk, l in list(self.pairs.items()):
            i1, i2 = pk
            if G[i1].lm[0] != comp:
                continue
            if not _mdiv(eh, l):
                continue
            if _lcm(G[i1].lm[1], eh) == l or _lcm(G[i2].lm[1], eh) == l:
                continue
            del self.pairs[pk]
        for j, l, cop in D:
            if not cop:
                self._push(j, k, l)
        self.active = [j for j in self.active
                       if not (G[j].lm[0] == comp and _mdiv(eh, G[j].lm[1]))]
        self.active.append(k)

    def reducers(self):
        return [self.G[j] for j in self.active]

    def reduce(self, f: dict) -> dict:
        # tail reduction keeps integer coefficients from compounding
        if self.order.is_global:
            return reduce_full(f, self.reducers(), self.order)[0]
        return reduce_top(f, self.reducers(), self.order)

    def run(self):
        order = self.order
        while self.heap:
            _, _, _, _, pk = heapq.heappop(self.heap)
            if pk not in self.pairs:
                continue
            del self.pairs[pk]
            i, j = pk
            s, sugar = spoly(self.G[i], self.G[j], order.degree)
            if not s:
                self.log(f"pair {i},{j}: s-vector vanishes")
                continue
            normalize(s)
            h = self.reduce(s)
            if not h:
                self.log(f"pair {i},{j}: reduces to 0")
                continue
            normalize(h)
            e = EPoly(h, order, sugar)
            self.log(f"pair {i},{j}: new element #{len(self.G)} lm={e.lm}")
            self.add(e)


def standard_basis(gens: list[dict], order: TermOrder, is_ideal: bool,
                   trace: bool | None = None) -> list[EPoly]:
    """Minimal standard basis (reduced for global orders) of ``gens``."""
    if trace is None:
        trace = trace_enabled()
    if not isinstance(order, HomogenizedOrder) and (
            not order.is_global or not all(_is_homogeneous(f) for f in gens if f)):
        # local orders need it; inhomogeneous global Buchberger suffers
        # remainder-sequence coefficient growth
        return _lazard(gens, order, is_ideal, trace)
    st = StdState(order, is_ideal, trace)
    for f in gens:
        if not f:
            continue
        f = dict(f)
        normalize(f)
        h = st.reduce(f) if st.active else f
        if not h:
            continue
        normalize(h)
        st.add(EPoly(h, order))
    st.run()
    basis = st.reducers()
    if order.is_global:
        basis = interreduce(basis, order)
    out = []
    for g in basis:
        d = dict(g.d)
        normalize(d)
        if d[g.lm] < 0:
            d = {t: -v for t, v in d.items()}
        out.append(EPoly(d, order))
    out.sort(key=lambda e: order.key(e.lm))
    return out


def _is_homogeneous(d: dict) -> bool:
    return len({sum(e) for _, e in d}) <= 1


def _lazard(gens, order: TermOrder, is_ideal: bool, trace: bool) -> list[EPoly]:
    horder = HomogenizedOrder(order)
    hgens = [horder.homogenize(f) for f in gens if f]
    hbasis = standard_basis(hgens, horder, is_ideal, trace)
    cand = []
    for g in hbasis:
        d = HomogenizedOrder.dehomogenize(g.d)
        if d:
            cand.append(EPoly(d, order))
    # dehomogenized leading terms are the base-order leading terms; keep a minimal set
    cand.sort(key=lambda e: (sum(e.lm[1]), len(e.d)))
    out: list[EPoly] = []
    for e in cand:
        if not any(_divides(g.lm, e.lm) for g in out):
            out.append(e)
    if order.is_global:
        out = interreduce(out, order)
    for g in out:
        if g.lc < 0:
            g.d = {t: -v for t, v in g.d.items()}
            g.lc = -g.lc
    out.sort(key=lambda e: order.key(e.lm))
    return out


def interreduce(basis: list[EPoly], order: TermOrder) -> list[EPoly]:
    """Tail-reduce every element against the others (global orders only)."""
    out = []
    for i, g in enumerate(basis):
        others = [b for k, b in enumerate(basis) if k != i]
        tail = {t: v for t, v in g.d.items() if t != g.lm}
        r, s = reduce_full(tail, others, order)
        # g ~ lc*lm + tail  and  s*tail == r  mod others
        d = {t: v * s.denominator for t, v in r.items()}
        d[g.lm] = g.lc * s.numerator
        normalize(d)
        out.append(EPoly(d, order))
    return out


def is_standard_basis(basis: list[EPoly], order: TermOrder) -> bool:
    """Verification pass: every s-vector has weak normal form zero."""
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if basis[i].lm[0] != basis[j].lm[0]:
                continue
            s, _ = spoly(basis[i], basis[j])
            if not s:
                continue
            if reduce_top(s, basis, order):
                return False
    return True
