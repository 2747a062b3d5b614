"""Polynomial ring contexts with block monomial orders.

A :class:`RingContext` fixes an ordered list of variable names and a partition
of them into blocks.  Each block carries its own order kind:

``"dp"``
    degree reverse lexicographic (global: every variable is ``> 1``)
``"ds"``
    negative degree reverse lexicographic (local: every variable is ``< 1``)

Blocks are compared in precedence order, so a context with blocks
``[ds(x, y), dp(s)]`` is local in ``x, y`` and global in ``s``.  Monomials are
plain tuples of non-negative integers, one entry per context variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

Monomial = tuple

GLOBAL = "dp"
LOCAL = "ds"


@dataclass(frozen=True)
class Block:
    names: tuple[str, ...]
    kind: str = GLOBAL

    def __post_init__(self):
        if self.kind not in (GLOBAL, LOCAL):
            raise ValueError(f"unknown block order {self.kind!r}")
        if not self.names:
            raise ValueError("empty ordering block")


@dataclass(frozen=True)
class RingContext:
    """Named variables, ordering blocks and the composite monomial order.

    ``variables`` fixes the exponent layout of monomials; ``blocks`` lists the
    ordering blocks in precedence order (first block decides first).
    """

    variables: tuple[str, ...]
    blocks: tuple[Block, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _key: Callable = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.variables)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        seen = [n for b in self.blocks for n in b.names]
        if sorted(seen) != sorted(names):
            raise ValueError("every variable must lie in exactly one block")
        object.__setattr__(self, "variables", names)
        object.__setattr__(self, "blocks", tuple(self.blocks))
        index = {n: i for i, n in enumerate(names)}
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_key", _build_key(self.blocks, index))

    # construction helpers -------------------------------------------------

    @classmethod
    def make(cls, *blocks: tuple[Sequence[str] | str, str]) -> "RingContext":
        """``RingContext.make(("x,y", "ds"), (["s"], "dp"))``."""
        bl = []
        for names, kind in blocks:
            if isinstance(names, str):
                names = [n.strip() for n in names.split(",") if n.strip()]
            bl.append(Block(tuple(names), kind))
        variables = tuple(n for b in bl for n in b.names)
        return cls(variables, tuple(bl))

    @classmethod
    def global_ring(cls, names: Sequence[str] | str) -> "RingContext":
        return cls.make((names, GLOBAL))

    @classmethod
    def local_ring(cls, names: Sequence[str] | str) -> "RingContext":
        return cls.make((names, LOCAL))

    def extend(self, names: Sequence[str], kind: str = GLOBAL,
               first: bool = False) -> "RingContext":
        """New context with one more block; existing variables keep their slots."""
        names = tuple(names)
        block = Block(names, kind)
        blocks = (block,) + self.blocks if first else self.blocks + (block,)
        return RingContext(self.variables + names, blocks)

    def with_blocks(self, blocks: Iterable[Block]) -> "RingContext":
        """Same variables (same exponent layout), different ordering blocks."""
        return RingContext(self.variables, tuple(blocks))

    # queries ---------------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_global(self) -> bool:
        return all(b.kind == GLOBAL for b in self.blocks)

    @property
    def is_local(self) -> bool:
        return all(b.kind == LOCAL for b in self.blocks)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def names_of(self, kind: str) -> tuple[str, ...]:
        return tuple(n for b in self.blocks if b.kind == kind for n in b.names)

    def key(self, m: Monomial) -> tuple:
        """Sort key: ``key(a) > key(b)`` iff ``a > b`` in the monomial order."""
        return self._key(m)

    def one(self) -> Monomial:
        return (0,) * len(self.variables)

    def var_monomial(self, name: str, power: int = 1) -> Monomial:
        e = [0] * len(self.variables)
        e[self.index(name)] = power
        return tuple(e)

    def __str__(self):
        inner = ", ".join(f"{b.kind}({','.join(b.names)})" for b in self.blocks)
        return f"Q[{','.join(self.variables)}] order [{inner}]"


def _build_key(blocks, index):
    parts = []
    for b in blocks:
        idx = tuple(index[n] for n in b.names)
        parts.append((idx, tuple(reversed(idx)), b.kind == LOCAL))

    def key(m):
        out = []
        for idx, ridx, local in parts:
            d = 0
            for i in idx:
                d += m[i]
            out.append(-d if local else d)
            for i in ridx:
                out.append(-m[i])
        return tuple(out)

    return key


# monomial arithmetic -----------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if ``a`` divides ``b``."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    """``b / a``; raises ``ValueError`` unless ``a`` divides ``b``."""
    q = tuple(y - x for x, y in zip(a, b))
    if any(e < 0 for e in q):
        raise ValueError("monomial does not divide")
    return q


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def mono_degree(a: Monomial) -> int:
    return sum(a)
