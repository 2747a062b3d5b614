"""Standard bases of ideals and submodules, and what can be read off them."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from ..poly import Polynomial
from ..ring import LOCAL, RingContext
from . import engine
from .engine import POT, TOP, TermOrder
from .modules import ModuleElement

INFINITE = math.inf

Generator = Union[Polynomial, ModuleElement]


def encode(f: Generator, offset: int = 0) -> tuple[dict, Fraction]:
    """Integer term dict ``d`` and ``scale`` with ``d == scale * f``."""
    comps = [f] if isinstance(f, Polynomial) else list(f.components)
    den = 1
    for comp in comps:
        for c in comp._d.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
    d = {}
    for i, comp in enumerate(comps):
        for m, c in comp._d.items():
            d[(i + offset, m)] = int(c * den)
    g = engine.content(d)
    if g > 1:
        for t in d:
            d[t] //= g
    return d, Fraction(den, g) if d else Fraction(1)


def decode(d: dict, ctx: RingContext, rank: int | None, scale: Fraction = Fraction(1),
           offset: int = 0) -> Generator:
    if rank is None:
        data = {m: Fraction(v) / scale for (c, m), v in d.items()}
        return Polynomial(ctx, data)
    comps = [dict() for _ in range(rank)]
    for (c, m), v in d.items():
        comps[c - offset][m] = Fraction(v) / scale
    return ModuleElement(tuple(Polynomial(ctx, x) for x in comps))


@dataclass
class StdBasis:
    """A completed standard basis (Groebner basis for global orders).

    ``rank`` is ``None`` for ideals.  ``generators`` are content-free with a
    positive leading coefficient, sorted ascending by leading term.
    """

    ctx: RingContext
    rank: int | None
    strategy: str
    generators: list
    _basis: list = field(repr=False, default_factory=list)
    complete: bool = True

    @property
    def is_ideal(self) -> bool:
        return self.rank is None

    @property
    def order(self) -> TermOrder:
        return TermOrder(self.ctx, self.strategy)

    def lead_terms(self) -> list[tuple[int, tuple]]:
        return [e.lm for e in self._basis]

    def is_unit(self) -> bool:
        one = self.ctx.one()
        return self.is_ideal and any(lm == (0, one) for lm in self.lead_terms())

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def contains(self, f: Generator) -> bool:
        return is_member(f, self)


def _rank_of(gens: Sequence[Generator], rank: int | None) -> int | None:
    if rank is not None:
        return rank
    for g in gens:
        if isinstance(g, ModuleElement):
            return g.rank
    return None


def std_basis(gens: Sequence[Generator], ctx: RingContext | None = None, *,
              rank: int | None = None, strategy: str = TOP,
              trace: bool | None = None) -> StdBasis:
    """Standard basis of the ideal or submodule generated by ``gens``.

    Buchberger for global orders, Mora's weak normal form otherwise; the
    result is minimal, and fully inter-reduced for global orders.
    """
    gens = list(gens)
    if ctx is None:
        if not gens:
            raise ValueError("need a context for an empty generator list")
        ctx = gens[0].ctx
    for g in gens:
        if g.ctx != ctx:
            raise ValueError("generators live in different contexts")
    rank = _rank_of(gens, rank)
    if rank is not None:
        gens = [ModuleElement((g,)) if isinstance(g, Polynomial) else g for g in gens]
        if any(g.rank != rank for g in gens):
            raise ValueError("module generators of different rank")
    order = TermOrder(ctx, strategy)
    encoded = [encode(g)[0] for g in gens]
    basis = engine.standard_basis([d for d in encoded if d], order,
                                  is_ideal=rank is None, trace=trace)
    out = [decode(e.d, ctx, rank) for e in basis]
    B = StdBasis(ctx, rank, strategy, out, basis)
    if _single_local_block(ctx):
        corner = highest_corner_degree(B)
        if corner is not None:
            basis = [_tail_reduce(e, basis, order, corner) for e in basis]
            B = StdBasis(ctx, rank, strategy, [decode(e.d, ctx, rank) for e in basis], basis)
    return B


def _tail_reduce(e: engine.EPoly, basis: list, order: TermOrder, corner: int) -> engine.EPoly:
    """Same leading term, tail reduced below the highest corner.

    Terms of degree ``>= corner`` lie in the ideal, so they may be dropped.
    """
    tail = {t: v for t, v in e.d.items() if t != e.lm}
    if not tail:
        return e
    r, s = engine.reduce_full(tail, basis, order, truncate=corner)
    data = {e.lm: Fraction(e.lc)}
    for t, v in r.items():
        data[t] = Fraction(v) / s
    den = 1
    for v in data.values():
        den = den * v.denominator // math.gcd(den, v.denominator)
    d = {t: int(v * den) for t, v in data.items()}
    engine.normalize(d)
    if d[e.lm] < 0:
        d = {t: -v for t, v in d.items()}
    return engine.EPoly(d, order)


def _single_local_block(ctx: RingContext) -> bool:
    return len(ctx.blocks) == 1 and ctx.blocks[0].kind == LOCAL


def normal_form(f: Generator, B: StdBasis) -> Generator:
    """Remainder of ``f`` modulo ``B``; zero iff ``f`` lies in the ideal/module.

    Global orders give the fully reduced normal form.  A single local block
    with finite ``vdim`` gives the reduced normal form as well (terms above
    the highest corner lie in the ideal and are dropped).  Other orders give
    Mora's weak normal form, determined only up to a unit factor.
    """
    if isinstance(f, Polynomial) and B.rank == 1:
        f = ModuleElement((f,))
    d, scale = encode(f)
    if not d:
        return f
    order = B.order
    if order.is_global:
        r, s = engine.reduce_full(d, B._basis, order)
        return decode(r, B.ctx, B.rank, scale * s)
    if _single_local_block(B.ctx):
        corner = highest_corner_degree(B)
        if corner is not None:
            r, s = engine.reduce_full(d, B._basis, order, truncate=corner)
            return decode(r, B.ctx, B.rank, scale * s)
    h = engine.reduce_top(d, B._basis, order)
    return decode(h, B.ctx, B.rank, scale)


def is_member(f: Generator, B: StdBasis) -> bool:
    if isinstance(f, Polynomial) and B.rank == 1:
        f = ModuleElement((f,))
    d, _ = encode(f)
    if not d:
        return True
    return not engine.reduce_top(d, B._basis, B.order)


def _component_leads(B: StdBasis) -> dict[int, list[tuple]]:
    leads: dict[int, list] = {}
    for c, m in B.lead_terms():
        leads.setdefault(c, []).append(m)
    return leads


def standard_monomials(B: StdBasis, limit: int | None = None):
    """``(component, monomial)`` pairs outside the leading module, or ``None`` if infinite."""
    n = B.ctx.nvars
    rank = 1 if B.rank is None else B.rank
    leads = _component_leads(B)
    out = []
    for c in range(rank):
        L = leads.get(c, [])
        # finiteness: a pure power of every variable must be a leading monomial
        for i in range(n):
            if not any(all(e == 0 for k, e in enumerate(m) if k != i) for m in L):
                return None
        one = (0,) * n
        if any(all(e == 0 for e in m) for m in L):
            continue
        seen = {one}
        frontier = [one]
        while frontier:
            nxt = []
            for m in frontier:
                out.append((c, m))
                if limit is not None and len(out) > limit:
                    raise OverflowError("too many standard monomials")
                for i in range(n):
                    m2 = m[:i] + (m[i] + 1,) + m[i + 1:]
                    if m2 in seen:
                        continue
                    seen.add(m2)
                    if not any(all(a <= b for a, b in zip(l, m2)) for l in L):
                        nxt.append(m2)
            frontier = nxt
    out.sort(key=lambda t: (t[0], sum(t[1]), B.ctx.key(t[1])))
    return out


def vdim(B: StdBasis):
    """Vector-space dimension of the quotient; ``INFINITE`` if unbounded."""
    sm = standard_monomials(B)
    return INFINITE if sm is None else len(sm)


def highest_corner_degree(B: StdBasis) -> int | None:
    """Smallest ``D`` with every monomial of degree ``>= D`` in the leading module."""
    sm = standard_monomials(B)
    if sm is None:
        return None
    return 1 + max((sum(m) for _, m in sm), default=-1)


def krull_dim(B: StdBasis) -> int:
    """Dimension of the quotient ring (``-1`` for the unit ideal).

    Largest set of variables independent modulo the leading ideal.
    """
    if not B.is_ideal:
        raise ValueError("krull_dim is defined here for ideals only")
    L = [m for _, m in B.lead_terms()]
    n = B.ctx.nvars
    if any(not any(m) for m in L):
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in L]
    for size in range(n, -1, -1):
        for U in itertools.combinations(range(n), size):
            Us = set(U)
            if not any(s <= Us for s in supports):
                return size
    return 0


def is_standard_basis(B: StdBasis) -> bool:
    return engine.is_standard_basis(B._basis, B.order)
