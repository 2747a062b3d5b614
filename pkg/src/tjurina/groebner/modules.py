"""Elements of finite-rank free modules over a polynomial ring context."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..poly import Polynomial, format_monomial, _format_coeff
from ..ring import RingContext


@dataclass(frozen=True)
class ModuleElement:
    """Vector ``sum_i components[i] * e_(i+1)`` of a free module."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("module element of rank 0")
        ctx = comps[0].ctx
        if any(c.ctx != ctx for c in comps):
            raise ValueError("module components live in different contexts")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, comps: Sequence[Polynomial]) -> "ModuleElement":
        return cls(tuple(comps))

    @classmethod
    def zero(cls, ctx: RingContext, rank: int) -> "ModuleElement":
        return cls(tuple(Polynomial.zero(ctx) for _ in range(rank)))

    @classmethod
    def basis_vector(cls, ctx: RingContext, rank: int, i: int,
                     coeff: Polynomial | None = None) -> "ModuleElement":
        """``coeff * e_(i+1)`` (``i`` is 0-based)."""
        one = Polynomial.constant(ctx, 1) if coeff is None else coeff
        return cls(tuple(one if k == i else Polynomial.zero(ctx) for k in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def ctx(self) -> RingContext:
        return self.components[0].ctx

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def _check(self, other):
        if not isinstance(other, ModuleElement) or other.rank != self.rank:
            raise ValueError("rank mismatch")

    def __add__(self, other):
        self._check(other)
        return ModuleElement(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        self._check(other)
        return ModuleElement(tuple(a - b for a, b in zip(self, other)))

    def __neg__(self):
        return ModuleElement(tuple(-a for a in self))

    def __mul__(self, c):
        return ModuleElement(tuple(a * c for a in self))

    __rmul__ = __mul__

    def dot(self, gens: Sequence) -> Polynomial | "ModuleElement":
        """``sum_i self[i] * gens[i]`` for polynomials or module elements."""
        acc = None
        for a, g in zip(self, gens):
            t = g * a
            acc = t if acc is None else acc + t
        return acc

    def substitute(self, bindings, target=None) -> "ModuleElement":
        return ModuleElement(tuple(c.substitute(bindings, target) for c in self))

    def to_context(self, target: RingContext) -> "ModuleElement":
        return ModuleElement(tuple(c.to_context(target) for c in self))

    def leading_coefficient(self) -> Fraction:
        for c in self:
            if not c.is_zero():
                return c.lc()
        return Fraction(0)

    def __str__(self):
        parts = []
        for i, comp in enumerate(self.components, start=1):
            for c, m in comp.terms:
                mono = format_monomial(comp.ctx, m)
                a = -c if c < 0 else c
                body = f"e{i}" if not mono else f"{mono}*e{i}"
                if a != 1:
                    body = f"{_format_coeff(a)}*{body}"
                parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"ModuleElement({self})"
