"""Deformations of ICMC2 germs: T^1, the Lambda correspondence, families, flatness."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import TjurinaError
from .groebner import (INFINITE, ModuleElement, is_member, krull_dim,
                       standard_monomials, std_basis, syzygies, vdim,
                       zero_dim_radical_count)
from .poly import Polynomial
from .polymat import (PolyMatrix, canonicalize_presentation, jacobian,
                      maximal_minors_signed, minors)
from .ring import GLOBAL, LOCAL, RingContext
from .transform import (Presentation, chart_equations, chart_variable, make_chart,
                        validate_icmc2)


# --- T^1 downstairs -----------------------------------------------------------

@dataclass
class T1Result:
    """``tau`` and a monomial basis of ``T^1``; basis entries are 0-based
    ``(row, col, exponents)``."""

    tau: int
    basis: list
    t: int
    xvars: tuple

    def matrices(self, ctx: RingContext) -> list[PolyMatrix]:
        out = []
        for r, c, e in self.basis:
            mono = Polynomial.monomial(ctx, _embed(e, self.xvars, ctx))
            out.append(PolyMatrix.unit(ctx, self.t + 1, self.t, r, c, mono))
        return out


def _embed(e: tuple, names: Sequence[str], ctx: RingContext) -> tuple:
    out = [0] * ctx.nvars
    for n, k in zip(names, e):
        out[ctx.index(n)] = k
    return tuple(out)


def _flatten(A: PolyMatrix) -> ModuleElement:
    return ModuleElement(A.entries)


def t1_generators(M: PolyMatrix, xvars: Sequence[str]) -> list[ModuleElement]:
    """``dM/dx_j``, ``E_ij M`` and ``M E_ij`` flattened row-major."""
    ctx = M.ctx
    R, C = M.shape
    gens = []
    for v in xvars:
        gens.append(_flatten(M.derivative(v)))
    for i in range(R):
        for j in range(R):
            gens.append(_flatten(PolyMatrix.unit(ctx, R, R, i, j) @ M))
    for i in range(C):
        for j in range(C):
            gens.append(_flatten(M @ PolyMatrix.unit(ctx, C, C, i, j)))
    return [g for g in gens if not g.is_zero()]


def t1_downstairs(P: Presentation) -> T1Result:
    """``T^1`` of the germ as ``Mat(t+1, t) / (J_M + Im g)`` under the local order."""
    M = P.matrix
    rank = M.rows * M.cols
    gens = t1_generators(M, P.xvars)
    B = std_basis(gens, M.ctx, rank=rank)
    sm = standard_monomials(B)
    if sm is None:
        raise TjurinaError("INFINITE_TAU", "T^1 is infinite-dimensional (non-isolated input)")
    basis = [(c // M.cols, c % M.cols, m) for c, m in sm]
    return T1Result(len(basis), basis, P.t, P.xvars)


def tau_downstairs(P: Presentation) -> int:
    return t1_downstairs(P).tau


# --- families -----------------------------------------------------------------

@dataclass
class DeformedPresentation:
    """``M(x, eps)`` over one local block in the x-variables and parameters."""

    matrix: PolyMatrix
    xvars: tuple
    params: tuple

    @property
    def ctx(self) -> RingContext:
        return self.matrix.ctx

    @property
    def t(self) -> int:
        return self.matrix.cols

    def specialize(self, values: Mapping[str, object]) -> PolyMatrix:
        """Matrix over ``ds(x)`` after substituting parameter values."""
        L = RingContext.local_ring(self.xvars)
        vals = {p: Fraction(values[p]) for p in self.params}
        return self.matrix.map(lambda e: _specialize(e, vals, L))

    def base_matrix(self) -> PolyMatrix:
        return self.specialize({p: 0 for p in self.params})

    def base(self) -> Presentation:
        return validate_icmc2(self.base_matrix(), self.xvars)


def _specialize(f: Polynomial, vals: dict, target: RingContext) -> Polynomial:
    ctx = f.ctx
    pidx = [(ctx.index(p), v) for p, v in vals.items()]
    keep = [ctx.index(n) for n in target.variables]
    data: dict = {}
    for m, c in f.as_dict().items():
        for i, v in pidx:
            if m[i]:
                c = c * v ** m[i]
        if not c:
            continue
        e = tuple(m[i] for i in keep)
        data[e] = data.get(e, 0) + c
    return Polynomial(target, data)


def family(Mraw: PolyMatrix, xvars: Sequence[str], params: Sequence[str]) -> DeformedPresentation:
    """Canonical orientation over ``ds(x, params)``; the base must vanish at 0."""
    xvars, params = tuple(xvars), tuple(params)
    ctx = RingContext.make((xvars + params, LOCAL)) if params else RingContext.local_ring(xvars)
    M = Mraw.to_context(ctx)
    r, c = M.shape
    if c == r + 1:
        M = M.transpose()
    DP = DeformedPresentation(M, xvars, params)
    canonicalize_presentation(DP.base_matrix())
    return DP


def semiuniversal_matrix(P: Presentation, T1: T1Result | None = None) -> DeformedPresentation:
    """``M + sum d_i m_i`` over the ``T^1`` monomial basis."""
    T1 = T1 or t1_downstairs(P)
    params = tuple(f"d{i}" for i in range(1, T1.tau + 1))
    clash = [p for p in params if p in P.ctx]
    if clash:
        raise TjurinaError("PARSE_ERROR", f"parameter names {clash} clash with variables")
    ctx = RingContext.make((P.xvars + params, LOCAL))
    M = P.matrix.to_context(ctx)
    for p, m in zip(params, T1.matrices(ctx)):
        M = M + m.scale(Polynomial.var(ctx, p))
    return DeformedPresentation(M, P.xvars, params)


def family_transform(DP: DeformedPresentation, i: int) -> list[Polynomial]:
    """Chart ``i`` equations of the family, parameters kept symbolic."""
    return chart_equations(DP.matrix, make_chart(DP.ctx, DP.t, i))


# --- Lambda ---------------------------------------------------------------------

def s_context(ctx: RingContext, t: int) -> RingContext:
    names = [chart_variable(j) for j in range(1, t + 1)]
    missing = [n for n in names if n not in ctx]
    if not missing:
        return ctx
    if len(missing) != len(names):
        raise TjurinaError("PARSE_ERROR", "context holds only part of s1..st")
    return ctx.extend(names, GLOBAL)


def lambda_map(A: PolyMatrix, ctx: RingContext | None = None) -> ModuleElement:
    """``sum c_ij E_ij  ->  sum c_ij s_j e_i`` (rank ``rows``)."""
    ctx = ctx or s_context(A.ctx, A.cols)
    A = A.to_context(ctx)
    s = [Polynomial.var(ctx, chart_variable(j)) for j in range(1, A.cols + 1)]
    return ModuleElement(tuple(A @ s))


@dataclass
class LambdaCheck:
    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def lambda_identity_check(P: Presentation) -> LambdaCheck:
    """Check the images of the three generator families of ``J_M + Im g``.

    ``Lambda(dM/dx) = dH/dx``, ``Lambda(E_ij M) = H_j e_i`` and
    ``Lambda(M E_ij) = s_j dH/ds_i`` with ``H = M s``.
    """
    ctx = s_context(P.ctx, P.t)
    M = P.matrix.to_context(ctx)
    R, C = M.shape
    H = lambda_map(M, ctx)
    fails = []
    for v in P.xvars:
        lhs = lambda_map(M.derivative(v), ctx)
        rhs = ModuleElement(tuple(h.derivative(v) for h in H))
        if lhs != rhs:
            fails.append(f"d/d{v}")
    for i in range(R):
        for j in range(R):
            lhs = lambda_map(PolyMatrix.unit(ctx, R, R, i, j) @ M, ctx)
            rhs = ModuleElement.basis_vector(ctx, R, i, H[j])
            if lhs != rhs:
                fails.append(f"E{i + 1}{j + 1}*M")
    for i in range(C):
        si = chart_variable(i + 1)
        for j in range(C):
            lhs = lambda_map(M @ PolyMatrix.unit(ctx, C, C, i, j), ctx)
            sj = Polynomial.var(ctx, chart_variable(j + 1))
            rhs = ModuleElement(tuple(sj * h.derivative(si) for h in H))
            if lhs != rhs:
                fails.append(f"M*E{i + 1}{j + 1}")
    return LambdaCheck(not fails, fails)


# --- fibers ----------------------------------------------------------------------

@dataclass
class FiberVerdict:
    status: str
    singular_ideal: list
    dim: int
    points: int | None = None

    @property
    def smooth(self) -> bool:
        return self.status == "SMOOTH"


def fiber_smoothness(DP: DeformedPresentation, values: Mapping[str, object]) -> FiberVerdict:
    """Singular locus of the fiber ``X_eps0`` in affine x-space (global order)."""
    g = RingContext.global_ring(DP.xvars)
    M = DP.specialize(values).to_context(g)
    I = [f for f in maximal_minors_signed(M) if not f.is_zero()]
    if not I:
        return FiberVerdict("SINGULAR", [], len(DP.xvars))
    S = I + [m for m in minors(jacobian(I, DP.xvars), min(2, len(I))) if not m.is_zero()]
    B = std_basis(S, g)
    if B.is_unit():
        return FiberVerdict("SMOOTH", [Polynomial.constant(g, 1)], -1, 0)
    d = krull_dim(B)
    points = zero_dim_radical_count(B) if d == 0 else None
    return FiberVerdict("SINGULAR", list(B.generators), d, points)


# --- flatness -----------------------------------------------------------------------

@dataclass
class FlatnessVerdict:
    status: str
    witness: ModuleElement | None = None
    notes: list = field(default_factory=list)


def reference_relations(M0: PolyMatrix, h: Sequence[Polynomial]) -> list[ModuleElement]:
    """Koszul relations of ``h`` and the signed maximal-minors relation."""
    ctx = h[0].ctx
    k = len(h)
    rels = []
    for i in range(k):
        for j in range(i + 1, k):
            v = [Polynomial.zero(ctx)] * k
            v[i], v[j] = h[j], -h[i]
            if not (h[i].is_zero() and h[j].is_zero()):
                rels.append(ModuleElement(tuple(v)))
    delta = [d.to_context(ctx) for d in maximal_minors_signed(M0)]
    rels.append(ModuleElement(tuple(delta)))
    return rels


def flatness_check(DP: DeformedPresentation) -> FlatnessVerdict:
    """Flatness of the Tjurina modification in the family.

    Dimension criterion first; then syzygies of ``h = M(x,0) s`` against the
    Koszul and maximal-minors relations; then a direct lifting test.
    """
    P = DP.base()
    n = len(DP.xvars) - 2
    if n > 0 and P.t <= n + 1:
        return FlatnessVerdict("FLAT_BY_DIMENSION",
                               notes=[f"dim X0 = {n} > 0 and t = {P.t} <= n + 1"])
    svars = tuple(chart_variable(j) for j in range(1, P.t + 1))
    ctx0 = RingContext.make((DP.xvars, LOCAL), (svars, GLOBAL))
    M0 = P.matrix.to_context(ctx0)
    s = [Polynomial.var(ctx0, v) for v in svars]
    h = M0 @ s
    S0 = syzygies(h)
    R = std_basis(reference_relations(M0, h), ctx0, rank=len(h))
    outside = [sig for sig in S0 if not is_member(sig, R)]
    if not outside:
        return FlatnessVerdict("FLAT_BY_RELATION_LIFTING",
                               notes=["every relation at eps=0 is Koszul or the minors relation"])
    if DP.params:
        ctxe = RingContext.make((DP.xvars + DP.params, LOCAL), (svars, GLOBAL))
        Me = DP.matrix.to_context(ctxe)
        H = Me @ [Polynomial.var(ctxe, v) for v in svars]
        zero = {p: 0 for p in DP.params}
        lifted = [ModuleElement(tuple(_specialize(c, zero, ctx0) for c in sig))
                  for sig in syzygies(H)]
        lifted = [v for v in lifted if not v.is_zero()]
    else:
        lifted = list(S0)
    L = std_basis(lifted, ctx0, rank=len(h)) if lifted else None
    for sig in outside:
        if L is None or not is_member(sig, L):
            return FlatnessVerdict("NOT_FLAT", sig,
                                   notes=["relation at eps=0 does not lift to the family"])
    return FlatnessVerdict("INCONCLUSIVE",
                           notes=["extra relations exist but all of them lift"])


# --- h^1 ------------------------------------------------------------------------------

def h1_tangent(tau_down: int, tau_up: int) -> int:
    """``tau_down - sum tau_p``; a negative value is reported, never clamped."""
    h1 = tau_down - tau_up
    if h1 < 0:
        raise TjurinaError("NEGATIVE_H1", f"tau_down = {tau_down} < tau_up = {tau_up}")
    return h1
