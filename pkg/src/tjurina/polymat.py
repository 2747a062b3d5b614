"""Matrices of polynomials: minors, Jacobians, orientation and 1-jets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import TjurinaError
from .poly import Polynomial, parse_polynomial
from .ring import RingContext


@dataclass(frozen=True)
class PolyMatrix:
    """Row-major matrix of polynomials sharing one context."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(self.entries)
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(entries) != self.rows * self.cols:
            raise ValueError(f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                             f"entries, got {len(entries)}")
        ctx = entries[0].ctx
        if any(e.ctx != ctx for e in entries):
            raise ValueError("matrix entries live in different contexts")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Polynomial]]) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        if len({len(r) for r in rows}) != 1:
            raise ValueError("ragged rows")
        return cls(len(rows), len(rows[0]), tuple(e for r in rows for e in r))

    @classmethod
    def parse(cls, rows: Sequence[Sequence[str]], ctx: RingContext) -> "PolyMatrix":
        return cls.from_rows([[parse_polynomial(e, ctx) for e in r] for r in rows])

    @classmethod
    def zeros(cls, ctx: RingContext, rows: int, cols: int) -> "PolyMatrix":
        z = Polynomial.zero(ctx)
        return cls(rows, cols, (z,) * (rows * cols))

    @classmethod
    def unit(cls, ctx: RingContext, rows: int, cols: int, i: int, j: int,
             coeff: Polynomial | None = None) -> "PolyMatrix":
        """``coeff * E_ij`` (0-based indices)."""
        z = Polynomial.zero(ctx)
        c = Polynomial.constant(ctx, 1) if coeff is None else coeff
        return cls(rows, cols, tuple(c if (r, k) == (i, j) else z
                                     for r in range(rows) for k in range(cols)))

    @property
    def ctx(self) -> RingContext:
        return self.entries[0].ctx

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Polynomial]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list[Polynomial]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list[Polynomial]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix.from_rows([self.col(j) for j in range(self.cols)])

    def map(self, fn: Callable[[Polynomial], Polynomial]) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, tuple(fn(e) for e in self.entries))

    def to_context(self, ctx: RingContext) -> "PolyMatrix":
        return self.map(lambda e: e.to_context(ctx))

    def substitute(self, bindings, target=None) -> "PolyMatrix":
        return self.map(lambda e: e.substitute(bindings, target))

    def derivative(self, name: str) -> "PolyMatrix":
        return self.map(lambda e: e.derivative(name))

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.rows, self.cols,
                          tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.rows, self.cols,
                          tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> "PolyMatrix":
        return self.map(lambda e: e * c)

    def __matmul__(self, other):
        """Matrix product, or matrix times a column given as a list."""
        if isinstance(other, PolyMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            out = []
            for i in range(self.rows):
                for j in range(other.cols):
                    acc = Polynomial.zero(self.ctx)
                    for k in range(self.cols):
                        acc = acc + self[i, k] * other[k, j]
                    out.append(acc)
            return PolyMatrix(self.rows, other.cols, tuple(out))
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            acc = Polynomial.zero(self.ctx)
            for k in range(self.cols):
                acc = acc + self[i, k] * vec[k]
            out.append(acc)
        return out

    def vstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return PolyMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def __str__(self):
        cells = [[str(e) for e in r] for r in self.to_rows()]
        width = [max(len(cells[i][j]) for i in range(self.rows)) for j in range(self.cols)]
        return "\n".join("[ " + "  ".join(c.rjust(w) for c, w in zip(r, width)) + " ]"
                         for r in cells)


def canonicalize_presentation(Mraw: PolyMatrix) -> tuple[PolyMatrix, int]:
    """Return the ``(t+1) x t`` orientation of a Hilbert-Burch matrix and ``t``.

    A ``t x (t+1)`` input is transposed.  Entries must vanish at the origin.
    """
    r, c = Mraw.shape
    if r == c + 1:
        M = Mraw
    elif c == r + 1:
        M = Mraw.transpose()
    else:
        raise TjurinaError("SHAPE_ERROR",
                           f"a {r}x{c} matrix is not of shape (t+1)xt or tx(t+1)")
    for i in range(M.rows):
        for j in range(M.cols):
            if M[i, j].constant_term() != 0:
                raise TjurinaError("NONZERO_CONSTANT",
                                   f"entry ({i + 1},{j + 1}) = {M[i, j]} is a unit at the origin")
    return M, M.cols


def _det(A: PolyMatrix, rows: tuple, cols: tuple, memo: dict) -> Polynomial:
    key = (rows, cols)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if len(rows) == 1:
        val = A[rows[0], cols[0]]
    else:
        # expand along the first selected row
        val = Polynomial.zero(A.ctx)
        r0, rest = rows[0], rows[1:]
        for k, c in enumerate(cols):
            a = A[r0, c]
            if a.is_zero():
                continue
            sub = _det(A, rest, cols[:k] + cols[k + 1:], memo)
            if sub.is_zero():
                continue
            val = val + a * sub if k % 2 == 0 else val - a * sub
    memo[key] = val
    return val


def determinant(A: PolyMatrix) -> Polynomial:
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    idx = tuple(range(A.rows))
    return _det(A, idx, idx, {})


def minors(A: PolyMatrix, k: int) -> list[Polynomial]:
    """All ``k x k`` minors, row subsets outer and column subsets inner,
    each in lexicographic order."""
    if not 1 <= k <= min(A.rows, A.cols):
        raise ValueError(f"minor size {k} out of range for a {A.rows}x{A.cols} matrix")
    memo: dict = {}
    return [_det(A, rs, cs, memo)
            for rs in itertools.combinations(range(A.rows), k)
            for cs in itertools.combinations(range(A.cols), k)]


def maximal_minors_signed(M: PolyMatrix) -> list[Polynomial]:
    """``delta_i = (-1)^(i+1) det(M without row i)``; then ``delta . M = 0``."""
    if M.rows != M.cols + 1:
        raise TjurinaError("SHAPE_ERROR", f"expected a (t+1)xt matrix, got {M.rows}x{M.cols}")
    memo: dict = {}
    cols = tuple(range(M.cols))
    out = []
    for i in range(M.rows):
        rows = tuple(r for r in range(M.rows) if r != i)
        d = _det(M, rows, cols, memo)
        out.append(d if i % 2 == 0 else -d)
    return out


def jacobian(fs: Sequence[Polynomial], names: Iterable[str]) -> PolyMatrix:
    names = list(names)
    return PolyMatrix.from_rows([[f.derivative(v) for v in names] for f in fs])


# --- 1-jets -----------------------------------------------------------------

JET_TAGS = {3: "FULL", 2: "TWO_ROWS", 1: "ONE_ROW", 0: "ZERO"}


@dataclass(frozen=True)
class JetClass:
    tag: str
    generic_rank: int

    @classmethod
    def of_rank(cls, r: int) -> "JetClass":
        return cls(JET_TAGS[r], r)


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix by fraction-exact elimination."""
    A = [[Fraction(v) for v in r] for r in rows]
    if not A:
        return 0
    r = 0
    ncols = len(A[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, len(A)):
            if A[i][c]:
                f = A[i][c] / p
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return r


def _linear_part(f: Polynomial, names: Sequence[str]) -> list[Fraction]:
    ctx = f.ctx
    out = []
    for n in names:
        out.append(f.coefficient(ctx.var_monomial(n)))
    return out


def classify_one_jet(M: PolyMatrix, names: Sequence[str] | None = None) -> JetClass:
    """Generic rank of the pencil ``lambda * j1(col 1) + j1(col 2)`` for ``t = 2``.

    The ``r x r`` minors of the 3-row pencil have degree at most 3 in
    ``lambda``, so the generic rank is the largest rank over four values.
    """
    if M.shape != (3, 2):
        raise TjurinaError("WRONG_TYPE", f"1-jet classification needs t=2, got a "
                                         f"{M.rows}x{M.cols} matrix")
    names = list(names) if names is not None else list(M.ctx.variables)
    A = [_linear_part(M[i, 0], names) for i in range(3)]
    B = [_linear_part(M[i, 1], names) for i in range(3)]
    best = 0
    for lam in range(4):
        L = [[lam * a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]
        best = max(best, rank(L))
    return JetClass.of_rank(best)
