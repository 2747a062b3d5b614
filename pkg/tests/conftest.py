from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from tjurina.poly import Polynomial
from tjurina.ring import RingContext

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def g3():
    return RingContext.global_ring("x,y,z")


@pytest.fixture
def l3():
    return RingContext.local_ring("x,y,z")


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)


def monomials(nvars: int, max_deg: int = 3):
    return st.tuples(*[st.integers(0, max_deg)] * nvars)


def polynomials(ctx: RingContext, max_terms: int = 4, max_deg: int = 3):
    terms = st.dictionaries(monomials(ctx.nvars, max_deg), rationals, max_size=max_terms)
    return terms.map(lambda d: Polynomial(ctx, {m: Fraction(c) for m, c in d.items()}))


def unchecked(rows, names):
    """Presentation without the (possibly slow) isolatedness checks."""
    from tjurina.polymat import PolyMatrix, canonicalize_presentation, maximal_minors_signed
    from tjurina.transform import Presentation
    M, t = canonicalize_presentation(PolyMatrix.parse(rows, RingContext.local_ring(names)))
    return Presentation(M, t, maximal_minors_signed(M), tuple(names))


ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
