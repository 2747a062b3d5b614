"""Sparse multivariate polynomials with exact rational coefficients.

Grammar accepted by :func:`parse_polynomial` (whitespace ignored)::

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' nat)?
    base     := rational | variable | '(' expr ')'
    rational := int ('/' nat)?

Implicit multiplication is rejected, so ``2x`` is a syntax error.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

from .ring import RingContext, mono_mul

Scalar = Union[int, Fraction]


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}")


class ContextMismatch(ValueError):
    pass


class Polynomial:
    """Immutable polynomial over ``Q`` in a :class:`RingContext`.

    ``terms`` lists ``(coefficient, monomial)`` pairs strictly descending in
    the context's monomial order, so ``terms[0]`` is the leading term.
    """

    __slots__ = ("ctx", "_d", "_terms")

    def __init__(self, ctx: RingContext, data: Mapping[tuple, Scalar] | None = None):
        self.ctx = ctx
        d = {}
        if data:
            for m, c in data.items():
                if c:
                    d[m] = Fraction(c)
        self._d = d
        self._terms = None

    @classmethod
    def _raw(cls, ctx, d):
        p = cls.__new__(cls)
        p.ctx = ctx
        p._d = d
        p._terms = None
        return p

    @classmethod
    def constant(cls, ctx: RingContext, c: Scalar) -> "Polynomial":
        return cls(ctx, {ctx.one(): c})

    @classmethod
    def var(cls, ctx: RingContext, name: str) -> "Polynomial":
        return cls._raw(ctx, {ctx.var_monomial(name): Fraction(1)})

    @classmethod
    def monomial(cls, ctx: RingContext, m: tuple, c: Scalar = 1) -> "Polynomial":
        return cls(ctx, {tuple(m): c})

    @classmethod
    def zero(cls, ctx: RingContext) -> "Polynomial":
        return cls._raw(ctx, {})

    # structure ------------------------------------------------------------

    @property
    def terms(self) -> tuple:
        if self._terms is None:
            key = self.ctx.key
            ms = sorted(self._d, key=key, reverse=True)
            self._terms = tuple((self._d[m], m) for m in ms)
        return self._terms

    def as_dict(self) -> dict:
        return dict(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def lm(self):
        return self.terms[0][1]

    def lc(self) -> Fraction:
        return self.terms[0][0]

    def coefficient(self, m) -> Fraction:
        return self._d.get(tuple(m), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._d.get(self.ctx.one(), Fraction(0))

    def is_constant(self) -> bool:
        one = self.ctx.one()
        return all(m == one for m in self._d)

    def degree(self, names: Iterable[str] | None = None) -> int:
        """Total degree (optionally in a subset of variables); -1 for zero."""
        if not self._d:
            return -1
        if names is None:
            return max(sum(m) for m in self._d)
        idx = [self.ctx.index(n) for n in names]
        return max(sum(m[i] for i in idx) for m in self._d)

    def low_degree(self, names: Iterable[str] | None = None) -> int:
        if not self._d:
            return -1
        if names is None:
            return min(sum(m) for m in self._d)
        idx = [self.ctx.index(n) for n in names]
        return min(sum(m[i] for i in idx) for m in self._d)

    def used_variables(self) -> set[str]:
        out = set()
        for m in self._d:
            for name, e in zip(self.ctx.variables, m):
                if e:
                    out.add(name)
        return out

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (int, Rational)):
            return Polynomial.constant(self.ctx, Fraction(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = dict(self._d)
        for m, c in o._d.items():
            v = d.get(m, 0) + c
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return Polynomial._raw(self.ctx, d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ctx, {m: -c for m, c in self._d.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if len(o._d) == 1 and o.is_constant():
            c = next(iter(o._d.values()))
            return Polynomial._raw(self.ctx, {m: v * c for m, v in self._d.items()})
        d = {}
        for m1, c1 in self._d.items():
            for m2, c2 in o._d.items():
                m = mono_mul(m1, m2)
                v = d.get(m, 0) + c1 * c2
                if v:
                    d[m] = v
                else:
                    d.pop(m, None)
        return Polynomial._raw(self.ctx, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            c = Fraction(other)
            return Polynomial._raw(self.ctx, {m: v / c for m, v in self._d.items()})
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self._d == other._d
        if isinstance(other, (int, Rational)):
            return self._d == Polynomial.constant(self.ctx, other)._d
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, frozenset(self._d.items())))

    # calculus and substitution -------------------------------------------

    def derivative(self, name: str) -> "Polynomial":
        i = self.ctx.index(name)
        d = {}
        for m, c in self._d.items():
            e = m[i]
            if e:
                m2 = m[:i] + (e - 1,) + m[i + 1:]
                d[m2] = c * e
        return Polynomial._raw(self.ctx, d)

    def substitute(self, bindings: Mapping[str, "Polynomial | Scalar"],
                   target: RingContext | None = None) -> "Polynomial":
        """Replace variables by polynomials (or rationals) of ``target``.

        Unbound variables are carried over by name and must exist in
        ``target`` (default: the same context).
        """
        target = target or self.ctx
        images = []
        for name in self.ctx.variables:
            if name in bindings:
                b = bindings[name]
                if isinstance(b, Polynomial):
                    if b.ctx != target:
                        raise ContextMismatch(f"binding for {name} lives in {b.ctx}")
                else:
                    b = Polynomial.constant(target, b)
                images.append(b)
            else:
                if name not in target:
                    raise KeyError(f"target context lacks variable {name!r}")
                images.append(Polynomial.var(target, name))
        powers: dict = {}

        def power(i, e):
            k = (i, e)
            if k not in powers:
                powers[k] = images[i] ** e
            return powers[k]

        acc: dict = {}
        for m, c in self._d.items():
            t = Polynomial.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            for m2, c2 in t._d.items():
                v = acc.get(m2, 0) + c2
                if v:
                    acc[m2] = v
                else:
                    acc.pop(m2, None)
        return Polynomial._raw(target, acc)

    def to_context(self, target: RingContext) -> "Polynomial":
        """Re-embed by variable names (variables missing from ``self`` are 0 powers)."""
        idx = [target.index(n) for n in self.ctx.variables]
        n = target.nvars
        d = {}
        for m, c in self._d.items():
            e = [0] * n
            for i, k in zip(idx, m):
                e[i] = k
            d[tuple(e)] = c
        return Polynomial._raw(target, d)

    def jet(self, degree: int | float, names: Iterable[str] | None = None) -> "Polynomial":
        """Terms of degree ``<= degree`` in ``names`` (all variables by default)."""
        if degree == float("inf"):
            return self
        if degree < 0:
            raise ValueError("jet degree must be non-negative")
        if names is None:
            idx = range(self.ctx.nvars)
        else:
            idx = [self.ctx.index(n) for n in names]
        d = {m: c for m, c in self._d.items() if sum(m[i] for i in idx) <= degree}
        return Polynomial._raw(self.ctx, d)

    def homogeneous_part(self, degree: int, names: Iterable[str] | None = None) -> "Polynomial":
        idx = range(self.ctx.nvars) if names is None else [self.ctx.index(n) for n in names]
        d = {m: c for m, c in self._d.items() if sum(m[i] for i in idx) == degree}
        return Polynomial._raw(self.ctx, d)

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        total = Fraction(0)
        vals = [Fraction(values[n]) for n in self.ctx.variables]
        for m, c in self._d.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t *= v ** e
            total += t
        return total

    # printing ---------------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_monomial(ctx: RingContext, m) -> str:
    parts = []
    for name, e in zip(ctx.variables, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for k, (c, m) in enumerate(p.terms):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        mono = format_monomial(p.ctx, m)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if k == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", text, m.start(3))
            toks.append((ch, ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ctx: RingContext):
        self.text = text
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "number" if kind == "num" else repr(kind)
            raise ParseError(f"expected {want}, found {tok[1] or 'end of input'!r}",
                             self.text, tok[2])
        self.i += 1
        return tok

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[0] in "+-" and self.peek()[0] != "end":
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            n = int(self.take("num")[1])
            base = base ** n
        return base

    def base(self) -> Polynomial:
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            c = Fraction(int(val))
            if self.peek()[0] == "/":
                self.take()
                den = int(self.take("num")[1])
                if den == 0:
                    raise ParseError("zero denominator", self.text, pos)
                c /= den
            return Polynomial.constant(self.ctx, c)
        if kind == "id":
            self.take()
            if val not in self.ctx:
                raise ParseError(f"unknown variable {val!r}", self.text, pos)
            return Polynomial.var(self.ctx, val)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", self.text, pos)


def parse_polynomial(text: str, ctx: RingContext) -> Polynomial:
    """Parse ``text`` into a polynomial of ``ctx``.

    >>> ctx = RingContext.global_ring("x,y,w")
    >>> str(parse_polynomial("x*y^2 - 3/2*w", ctx))
    'x*y^2 - 3/2*w'
    """
    p = _Parser(text, ctx)
    result = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r}", text, tok[2])
    return result


def poly(text: str, ctx: RingContext) -> Polynomial:
    """Short alias of :func:`parse_polynomial`."""
    return parse_polynomial(text, ctx)


def arith(op: str, f: Polynomial, g) -> Polynomial:
    """Functional form of ring arithmetic: ``op`` in add, sub, mul, pow."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "pow":
        return f ** g
    raise ValueError(f"unknown operation {op!r}")
