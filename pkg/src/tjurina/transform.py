"""Tjurina modification of an ICMC2 germ: validation, charts, singular loci, tau budgets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import TjurinaError
from .groebner import (INFINITE, ModuleElement, krull_dim, radical_membership,
                       same_ideal, std_basis, torsion_part_vdim, vdim,
                       zero_dim_radical_count)
from .poly import Polynomial
from .polymat import (PolyMatrix, canonicalize_presentation, jacobian,
                      maximal_minors_signed, minors)
from .ring import GLOBAL, LOCAL, RingContext


def chart_variable(j: int) -> str:
    return f"s{j}"


@dataclass
class Presentation:
    """A validated ICMC2 germ given by a ``(t+1) x t`` matrix over ``ds(x)``."""

    matrix: PolyMatrix
    t: int
    ideal: list
    xvars: tuple
    validation: dict = field(default_factory=dict)

    @property
    def ctx(self) -> RingContext:
        return self.matrix.ctx

    @property
    def n(self) -> int:
        return len(self.xvars)


def validate_icmc2(Mraw: PolyMatrix, names: Sequence[str] | None = None, *,
                   strict: bool = True) -> Presentation:
    """Canonicalize, compute the maximal minors and check isolatedness.

    With ``strict`` a failed check raises; otherwise it is only recorded.
    """
    M, t = canonicalize_presentation(Mraw)
    xvars = tuple(names) if names is not None else M.ctx.variables
    L = RingContext.local_ring(xvars)
    M = M.to_context(L)
    I = maximal_minors_signed(M)
    nonzero = [f for f in I if not f.is_zero()]
    if nonzero:
        # X has codimension 2, so its singular locus adds the 2x2 Jacobian minors
        S = nonzero + [m for m in minors(jacobian(nonzero, xvars), 2) if not m.is_zero()] \
            if len(nonzero) > 1 else nonzero + [f.derivative(v) for f in nonzero for v in xvars]
        sing_dim = krull_dim(std_basis(S, L))
    else:
        sing_dim = len(xvars)
    isolated = sing_dim <= 0
    if t == 1:
        at_origin = True
    else:
        lower = [m for m in minors(M, t - 1) if not m.is_zero()]
        if not lower:
            at_origin = False
        else:
            B = std_basis(lower, L)
            at_origin = B.is_unit() or all(
                radical_membership(Polynomial.var(L, v), B) for v in xvars)
    validation = {"isolated": isolated, "singular_locus_dim": sing_dim,
                  "minors_locus_at_origin": at_origin}
    if strict and not isolated:
        raise TjurinaError("NOT_ISOLATED", f"singular locus has dimension {sing_dim} > 0")
    if strict and not at_origin:
        raise TjurinaError("MINOR_LOCUS_TOO_BIG",
                           f"the {t - 1}-minors do not cut out the origin")
    return Presentation(M, t, I, xvars, validation)


# --- charts -----------------------------------------------------------------

@dataclass(frozen=True)
class Chart:
    """Affine piece ``s_index = 1`` of the exceptional projective space."""

    index: int
    t: int
    ctx: RingContext
    svars: tuple

    def s_vector(self) -> list[Polynomial]:
        one = Polynomial.constant(self.ctx, 1)
        return [one if j == self.index else Polynomial.var(self.ctx, chart_variable(j))
                for j in range(1, self.t + 1)]

    def new_locus(self) -> list[Polynomial]:
        """``s_j`` for ``j < index``: points not already seen in an earlier chart."""
        return [Polynomial.var(self.ctx, chart_variable(j)) for j in range(1, self.index)]


def make_chart(base: RingContext, t: int, i: int) -> Chart:
    if not 1 <= i <= t:
        raise TjurinaError("BAD_CHART", f"chart index {i} outside 1..{t}")
    svars = tuple(chart_variable(j) for j in range(1, t + 1) if j != i)
    clash = [s for s in svars if s in base]
    if clash:
        raise TjurinaError("PARSE_ERROR", f"variable names {clash} are reserved for charts")
    ctx = base.extend(svars, GLOBAL) if svars else base
    return Chart(i, t, ctx, svars)


def chart_equations(M: PolyMatrix, chart: Chart) -> list[Polynomial]:
    """``M . s`` with ``s_index = 1``."""
    return M.to_context(chart.ctx) @ chart.s_vector()


def transform_chart_equations(P: Presentation, i: int) -> list[Polynomial]:
    return chart_equations(P.matrix, make_chart(P.ctx, P.t, i))


def grassmann_chart_matrix(k: int, r: int, alpha: Sequence[int],
                           ctx: RingContext) -> PolyMatrix:
    """``(k-r) x k`` matrix, identity on the columns ``alpha`` (1-based).

    For ``r = 1`` the remaining column carries ``-s_j`` (affine coordinates of
    projective space); otherwise fresh variables ``z{a}_{b}`` fill it.  The new
    variables are appended to ``ctx`` as a global block.
    """
    alpha = sorted(alpha)
    if len(alpha) != k - r or len(set(alpha)) != len(alpha) or \
            any(not 1 <= a <= k for a in alpha):
        raise TjurinaError("BAD_CHART", f"index set {alpha} is not a ({k - r})-subset of 1..{k}")
    rest = [b for b in range(1, k + 1) if b not in alpha]
    if r == 1:
        names = [chart_variable(a) for a in alpha]
    else:
        names = [f"z{a}_{b}" for a in range(1, k - r + 1) for b in rest]
    ext = ctx.extend(names, GLOBAL) if names else ctx
    zero, one = Polynomial.zero(ext), Polynomial.constant(ext, 1)
    rows = []
    for ra, a in enumerate(alpha, start=1):
        row = []
        for b in range(1, k + 1):
            if b == a:
                row.append(one)
            elif b in alpha:
                row.append(zero)
            elif r == 1:
                row.append(-Polynomial.var(ext, chart_variable(a)))
            else:
                row.append(Polynomial.var(ext, f"z{ra}_{b}"))
        rows.append(row)
    if not rows:
        raise TjurinaError("BAD_CHART", "empty chart matrix")
    return PolyMatrix.from_rows(rows)


def generic_transform_equations(G: PolyMatrix, r: int, alpha: Sequence[int]) -> list[Polynomial]:
    """The ``(k-r+1)``-minors of ``B_alpha`` stacked over ``G``."""
    k = G.cols
    B = grassmann_chart_matrix(k, r, alpha, G.ctx)
    stacked = B.vstack(G.to_context(B.ctx))
    return [m for m in minors(stacked, k - r + 1) if not m.is_zero()]


def transform_equivalence_check(P: Presentation, i: int) -> bool:
    """Minors of ``(B_i ; M)`` and ``M . s`` generate the same ideal."""
    g = RingContext.global_ring(P.xvars)
    M = P.matrix.to_context(g)
    alpha = [j for j in range(1, P.t + 1) if j != i]
    gens = generic_transform_equations(M, 1, alpha)
    chart = make_chart(g, P.t, i)
    H = [h for h in chart_equations(M, chart) if not h.is_zero()]
    if not gens or not H:
        return not gens and not H
    ctx = gens[0].ctx
    H = [h.to_context(ctx) for h in H]
    return same_ideal(gens, H, ctx)


# --- singular locus and tau ---------------------------------------------------

@dataclass
class ChartAnalysis:
    index: int
    equations: list
    sigma: list
    dim: int
    isolated: bool
    support_in_exceptional: bool
    points: int | None
    tau_new: int | None = None
    tau_total: int | None = None

    @property
    def smooth(self) -> bool:
        return self.dim < 0


@dataclass
class TransformAnalysis:
    charts: list
    points: int
    tau_upstairs: int


def _mixed_chart(P: Presentation, i: int) -> Chart:
    return make_chart(P.ctx, P.t, i)


def singular_ideal(H: Sequence[Polynomial], names: Sequence[str], codim: int) -> list[Polynomial]:
    """``(H)`` plus the ``codim``-minors of the Jacobian."""
    H = [h for h in H if not h.is_zero()]
    if not H:
        return []
    size = min(codim, len(H), len(names))
    J = jacobian(H, names)
    return H + [m for m in minors(J, size) if not m.is_zero()]


def _count_points(sigma: list, chart: Chart) -> int:
    """Distinct points of ``V(sigma)`` over ``x = 0`` on the chart's new locus."""
    if not chart.svars:
        return 1
    g = RingContext.global_ring(chart.svars)
    at_zero = {v: 0 for v in chart.ctx.variables if v not in chart.svars}
    gens = [_restrict(f, at_zero, g) for f in sigma]
    gens += [Polynomial.var(g, chart_variable(j)) for j in range(1, chart.index)]
    gens = [f for f in gens if not f.is_zero()]
    if not gens:
        raise TjurinaError("NON_ISOLATED_TRANSFORM", "whole exceptional chart is singular")
    return zero_dim_radical_count(gens)


def _restrict(f: Polynomial, at_zero: dict, g: RingContext) -> Polynomial:
    keep = [f.ctx.index(v) for v in g.variables]
    drop = [f.ctx.index(v) for v in at_zero]
    data = {}
    for m, c in f.as_dict().items():
        if any(m[k] for k in drop):
            continue
        e = tuple(m[k] for k in keep)
        data[e] = data.get(e, 0) + c
    return Polynomial(g, data)


def _validated(P: Presentation) -> bool:
    v = P.validation
    return bool(v.get("isolated")) and bool(v.get("minors_locus_at_origin"))


def _misses_exceptional(sigma: list, chart: Chart) -> bool:
    """``V(sigma)`` does not meet ``x = 0`` in this chart.

    For a validated germ the singular points of the transform near the
    exceptional set lie on it, so this certifies smoothness of the chart
    without a standard basis in the mixed ring.
    """
    at_zero = {v: 0 for v in chart.ctx.variables if v not in chart.svars}
    if not chart.svars:
        return any(f.evaluate(at_zero) for f in sigma)
    g = RingContext.global_ring(chart.svars)
    gens = [f for f in (_restrict(f, at_zero, g) for f in sigma) if not f.is_zero()]
    return bool(gens) and std_basis(gens, g).is_unit()


def singular_locus_transform(P: Presentation, i: int) -> ChartAnalysis:
    chart = _mixed_chart(P, i)
    H = chart_equations(P.matrix, chart)
    names = list(P.xvars) + list(chart.svars)
    sigma = singular_ideal(H, names, P.t + 1)
    if not sigma:
        return ChartAnalysis(i, H, [], len(names), False, False, None)
    one = [Polynomial.constant(chart.ctx, 1)]
    if _validated(P) and _misses_exceptional(sigma, chart):
        return ChartAnalysis(i, H, one, -1, True, True, 0)
    B = std_basis(sigma, chart.ctx)
    if B.is_unit():
        return ChartAnalysis(i, H, one, -1, True, True, 0)
    d = krull_dim(B)
    isolated = d <= 0
    support = all(radical_membership(Polynomial.var(chart.ctx, v), B) for v in P.xvars)
    points = _count_points(list(B.generators), chart) if isolated and support else None
    return ChartAnalysis(i, H, list(B.generators), d, isolated, support, points)


def upstairs_module(H: Sequence[Polynomial], names: Sequence[str]) -> list[ModuleElement]:
    """Jacobian columns and ``H_j e_m`` in the free module of rank ``len(H)``."""
    k = len(H)
    ctx = H[0].ctx
    gens = []
    for v in names:
        col = ModuleElement(tuple(h.derivative(v) for h in H))
        if not col.is_zero():
            gens.append(col)
    for h in H:
        if h.is_zero():
            continue
        for m in range(k):
            gens.append(ModuleElement.basis_vector(ctx, k, m, h))
    return gens


def chart_tau(P: Presentation, ca: ChartAnalysis) -> ChartAnalysis:
    if ca.smooth:
        ca.tau_new = ca.tau_total = 0
        return ca
    chart = _mixed_chart(P, ca.index)
    names = list(P.xvars) + list(chart.svars)
    N = upstairs_module(ca.equations, names)
    k = len(ca.equations)
    # sigma lies in the 0th Fitting ideal of F/N, hence annihilates it
    N += [ModuleElement.basis_vector(chart.ctx, k, m, f) for f in ca.sigma for m in range(k)]
    B = std_basis(N, chart.ctx, rank=k)
    total = vdim(B)
    if total == INFINITE:
        raise TjurinaError("NON_ISOLATED_TRANSFORM", f"chart {ca.index}: infinite tau")
    ca.tau_total = int(total)
    if ca.index == 1 or total == 0:
        ca.tau_new = int(total)
    else:
        ca.tau_new = torsion_part_vdim(list(B.generators), chart.new_locus(), chart.ctx,
                                       rank=k, method="powers")
    return ca


def analyze_transform(P: Presentation) -> list[ChartAnalysis]:
    return [singular_locus_transform(P, i) for i in range(1, P.t + 1)]


def tau_upstairs(P: Presentation, charts: list[ChartAnalysis] | None = None) -> TransformAnalysis:
    """Sum over charts of the tau budget on each chart's new locus."""
    charts = charts if charts is not None else analyze_transform(P)
    for ca in charts:
        if not ca.isolated:
            raise TjurinaError("NON_ISOLATED_TRANSFORM",
                               f"chart {ca.index}: singular locus of dimension {ca.dim}")
        if not ca.support_in_exceptional:
            raise TjurinaError("SUPPORT_ESCAPES_EXCEPTIONAL",
                               f"chart {ca.index}: singular points off the exceptional set")
    for ca in charts:
        if ca.tau_new is None:
            chart_tau(P, ca)
    return TransformAnalysis(charts, sum(ca.points for ca in charts),
                             sum(ca.tau_new for ca in charts))


# --- Betti numbers ----------------------------------------------------------

@dataclass
class BettiReport:
    betti: tuple
    tau_sum: int
    flags: list
    note: str = ""


def betti_report(P: Presentation, analysis: TransformAnalysis | None = None) -> BettiReport:
    """Betti numbers of a smoothing read off the transform's tau budget.

    ``t = 2``: ``(1, 0, 1, sum tau_p)``, exact when the transform is smooth or
    has only nodes, otherwise under the flagged assumption ``mu_p = tau_p``.
    ``t = 3``: experimental, with one relation subtracted from ``b3``.
    """
    if P.t not in (2, 3):
        raise TjurinaError("WRONG_TYPE", f"Betti report defined for t = 2 (and t = 3 "
                                         f"experimentally), got t = {P.t}")
    analysis = analysis or tau_upstairs(P)
    tau = analysis.tau_upstairs
    flags = []
    if tau == 0:
        flags.append("SMOOTH_TRANSFORM")
    elif analysis.points == tau:
        flags.append("NODES_ONLY")
    else:
        flags.append("ASSUME_MU_EQUALS_TAU")
    if P.t == 2:
        flags.append("T2_FORMULA")
        return BettiReport((1, 0, 1, tau), tau, flags)
    flags.append("EXPERIMENTAL")
    note = "t=3: b3 = sum tau - 1 (one global relation from the exceptional P^2)"
    return BettiReport((1, 0, 1, tau - 1), tau, flags, note)
