"""Ideal and module constructions on top of standard bases."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..poly import Polynomial
from ..ring import GLOBAL, Block, RingContext
from . import univariate
from .basis import (INFINITE, StdBasis, is_member, krull_dim, std_basis, vdim)
from .engine import POT
from .modules import ModuleElement


def _as_vectors(gens, rank=None):
    gens = list(gens)
    if rank is None:
        rank = next((g.rank for g in gens if isinstance(g, ModuleElement)), 1)
    out = []
    for g in gens:
        if isinstance(g, Polynomial):
            if rank != 1:
                raise ValueError("polynomial generator in a module of rank > 1")
            g = ModuleElement((g,))
        out.append(g)
    return out, rank


def _fresh_name(ctx: RingContext, stem: str) -> str:
    name = stem
    k = 0
    while name in ctx:
        k += 1
        name = f"{stem}{k}"
    return name


def radical_membership(f: Polynomial, I: Sequence[Polynomial] | StdBasis) -> bool:
    """True iff ``f`` vanishes on ``V(I)`` (in the ring the context localizes to).

    A quotient of finite length ``d`` has nilradical ``N`` with ``N^d = 0``,
    so then the test is ``f^d in I``.  Otherwise the Rabinowitsch trick:
    ``1 in I + (1 - z*f)`` with ``z`` an auxiliary global variable whose block
    takes precedence, so ``1 - z*f`` is never a unit.
    """
    B = I if isinstance(I, StdBasis) else std_basis(list(I), f.ctx)
    if B.is_unit():
        return True
    d = vdim(B)
    if d != INFINITE:
        return is_member(f ** d, B)
    return rabinowitsch_membership(f, B)


def rabinowitsch_membership(f: Polynomial, I: Sequence[Polynomial] | StdBasis) -> bool:
    gens = list(I.generators) if isinstance(I, StdBasis) else list(I)
    ctx = f.ctx
    z = _fresh_name(ctx, "z_aux")
    ext = ctx.extend([z], GLOBAL, first=True)
    lifted = [g.to_context(ext) for g in gens]
    zf = Polynomial.var(ext, z) * f.to_context(ext)
    B = std_basis(lifted + [1 - zf], ext)
    return B.is_unit()


def syzygies(gens: Sequence[Polynomial | ModuleElement]) -> list[ModuleElement]:
    """Generators of the module of relations ``sum r_i g_i = 0``.

    Tagged-module method: a standard basis of ``(g_i, e_i)`` under a
    position-over-term order that ranks the ``g`` part first; the elements
    whose ``g`` part vanishes carry the relations in their tag part.
    """
    vecs, r = _as_vectors(gens)
    m = len(vecs)
    if m == 0:
        return []
    ctx = vecs[0].ctx
    zero = Polynomial.zero(ctx)
    one = Polynomial.constant(ctx, 1)
    tagged = []
    for i, v in enumerate(vecs):
        tag = tuple(one if k == i else zero for k in range(m))
        tagged.append(ModuleElement(tuple(v.components) + tag))
    B = std_basis(tagged, ctx, rank=r + m, strategy=POT)
    out = []
    for g, (c, _) in zip(B.generators, B.lead_terms()):
        if c >= r:
            out.append(ModuleElement(g.components[r:]))
    return out


def _colon_single(vecs: list[ModuleElement], r: int, j: Polynomial) -> list[ModuleElement]:
    ctx = j.ctx
    zero = Polynomial.zero(ctx)
    one = Polynomial.constant(ctx, 1)
    gens = []
    for k in range(r):
        first = tuple(j if i == k else zero for i in range(r))
        second = tuple(one if i == k else zero for i in range(r))
        gens.append(ModuleElement(first + second))
    for v in vecs:
        gens.append(ModuleElement(tuple(v.components) + (zero,) * r))
    B = std_basis(gens, ctx, rank=2 * r, strategy=POT)
    return [ModuleElement(g.components[r:]) for g, (c, _) in
            zip(B.generators, B.lead_terms()) if c >= r]


def intersect(A: Sequence, B: Sequence) -> list:
    """Generators of the intersection of two submodules (or ideals)."""
    va, r = _as_vectors(A)
    vb, rb = _as_vectors(B, r)
    ideal = all(isinstance(g, Polynomial) for g in list(A) + list(B))
    if not va or not vb:
        return []
    ctx = va[0].ctx
    zero = Polynomial.zero(ctx)
    gens = [ModuleElement(tuple(a.components) * 2) for a in va]
    gens += [ModuleElement(tuple(b.components) + (zero,) * r) for b in vb]
    S = std_basis(gens, ctx, rank=2 * r, strategy=POT)
    out = [ModuleElement(g.components[r:]) for g, (c, _) in
           zip(S.generators, S.lead_terms()) if c >= r]
    return [v.components[0] for v in out] if ideal else out


def module_quotient(N: Sequence, J: Sequence[Polynomial]) -> list:
    """Generators of ``(N : J) = {v : J*v in N}``."""
    ideal = all(isinstance(g, Polynomial) for g in N)
    vecs, r = _as_vectors(N)
    J = [j for j in J if not j.is_zero()]
    if not J:
        raise ValueError("colon by the zero ideal")
    result = None
    for j in J:
        part = _colon_single(vecs, r, j)
        result = part if result is None else intersect(result, part)
    if ideal:
        return [v.components[0] for v in result]
    return result


def torsion_part_vdim(N: Sequence, J: Sequence[Polynomial], ctx: RingContext | None = None,
                      rank: int | None = None, method: str = "colon") -> int:
    """Length of the part of ``F/N`` supported on ``V(J)``.

    ``colon`` iterates ``N <- N : J`` until the colon stabilizes; the answer
    is ``vdim(N) - vdim(N : J^infinity)``.  ``powers`` delegates to
    :func:`torsion_part_vdim_by_powers`, which is much cheaper when ``F/N``
    is already known to have finite length.
    """
    if method == "powers":
        return torsion_part_vdim_by_powers(N, J, ctx, rank)
    if method != "colon":
        raise ValueError(f"unknown torsion method {method!r}")
    if not any(not j.is_zero() for j in J):
        return torsion_part_vdim_by_powers(N, J, ctx, rank)
    N = list(N)
    ctx = ctx or N[0].ctx
    vecs, r = _as_vectors(N, rank)
    if rank is None and all(isinstance(g, Polynomial) for g in N):
        rank_arg = None
    else:
        rank_arg = r
    B = std_basis(N, ctx, rank=rank_arg)
    total = vdim(B)
    if total == INFINITE:
        raise ValueError("torsion_part_vdim needs a finite-length quotient")
    current, cur_dim = list(B.generators), total
    while True:
        nxt = module_quotient(current, J)
        Bn = std_basis(nxt, ctx, rank=rank_arg) if nxt else None
        if Bn is None or Bn.is_unit() or (rank_arg is not None and vdim(Bn) == 0):
            return total
        d = vdim(Bn)
        if d == cur_dim:
            return total - d
        current, cur_dim = list(Bn.generators), d


def torsion_part_vdim_by_powers(N: Sequence, J: Sequence[Polynomial], ctx=None,
                                rank: int | None = None) -> int:
    """Same length via ``vdim(N + J^k F)`` stabilizing in ``k``.

    Equal dimensions at ``k`` and ``k+1`` give ``J^k Q = J^(k+1) Q`` for
    ``Q = F/N``, so Nakayama kills ``J^k Q`` at every point of ``V(J)``.
    """
    N = list(N)
    ctx = ctx or N[0].ctx
    ideal = rank is None and all(isinstance(g, Polynomial) for g in N)
    _, r = _as_vectors(N, rank)
    brank = None if ideal else r
    J = [j for j in J if not j.is_zero()]
    if not J:
        return int(vdim(std_basis(N, ctx, rank=brank)))
    power = [Polynomial.constant(ctx, 1)]
    prev = None
    while True:
        power = _ideal_product(power, J)
        if ideal:
            extra = power
        else:
            extra = [ModuleElement.basis_vector(ctx, r, k, p) for p in power for k in range(r)]
        d = vdim(std_basis(N + extra, ctx, rank=brank))
        if d == prev:
            return int(d)
        prev = d


def _ideal_product(A, B):
    out = []
    seen = set()
    for a in A:
        for b in B:
            p = a * b
            if not p.is_zero() and p not in seen:
                seen.add(p)
                out.append(p)
    return out


def eliminant(I: Sequence[Polynomial] | StdBasis, name: str) -> list[Fraction]:
    """Monic generator of ``I ∩ Q[name]`` (dense, lowest degree first).

    Uses a block order with the other variables in a leading block.
    """
    gens = list(I.generators) if isinstance(I, StdBasis) else list(I)
    ctx = gens[0].ctx
    if not ctx.is_global:
        raise ValueError("eliminants need a global order")
    others = tuple(n for n in ctx.variables if n != name)
    blocks = [Block(others, GLOBAL), Block((name,), GLOBAL)] if others else [Block((name,), GLOBAL)]
    ectx = ctx.with_blocks(blocks)
    B = std_basis([g.to_context(ectx) for g in gens], ectx)
    i = ectx.index(name)
    for g in B.generators:
        if all(all(e == 0 for k, e in enumerate(m) if k != i) for m in g.as_dict()):
            coeffs = [Fraction(0)] * (g.degree() + 1)
            for m, c in g.as_dict().items():
                coeffs[m[i]] = c
            return univariate.monic(coeffs)
    raise ValueError(f"no eliminant in {name}: ideal is not zero-dimensional")


def zero_dim_radical_count(I: Sequence[Polynomial] | StdBasis) -> int:
    """Number of distinct geometric points of a zero-dimensional ideal.

    Adds the squarefree part of the eliminant of every variable; the enlarged
    ideal is radical and its vdim counts points.
    """
    gens = list(I.generators) if isinstance(I, StdBasis) else list(I)
    if not gens:
        raise ValueError("positive-dimensional input (zero ideal)")
    ctx = gens[0].ctx
    if not ctx.is_global:
        raise ValueError("point counting needs a global order")
    B = I if isinstance(I, StdBasis) and I.ctx == ctx else std_basis(gens, ctx)
    if B.is_unit():
        return 0
    if krull_dim(B) > 0:
        raise ValueError("positive-dimensional input")
    extra = []
    for name in ctx.variables:
        coeffs = univariate.squarefree_part(eliminant(B, name))
        i = ctx.index(name)
        data = {}
        for k, c in enumerate(coeffs):
            if c:
                data[tuple(k if j == i else 0 for j in range(ctx.nvars))] = c
        extra.append(Polynomial(ctx, data))
    R = std_basis(list(B.generators) + extra, ctx)
    return int(vdim(R))


def ideal_contains(B: StdBasis, gens: Sequence) -> bool:
    return all(is_member(g, B) for g in gens)


def same_ideal(A: Sequence, B: Sequence, ctx: RingContext | None = None) -> bool:
    """Two-way membership of generators."""
    A, B = list(A), list(B)
    ctx = ctx or (A + B)[0].ctx
    SA = std_basis(A, ctx)
    SB = std_basis(B, ctx)
    return ideal_contains(SA, B) and ideal_contains(SB, A)
