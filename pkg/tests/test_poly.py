from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import monomials, polynomials
from tjurina.poly import ParseError, Polynomial, arith, parse_polynomial
from tjurina.ring import RingContext, mono_mul

G = RingContext.global_ring("x,y,z")
L = RingContext.local_ring("x,y,z")
MIXED = RingContext.make(("x,y", "ds"), ("s", "dp"))
X5 = RingContext.global_ring("x,y,z,v,w")


def p(text, ctx=G):
    return parse_polynomial(text, ctx)


class TestParse:
    def test_terms(self):
        ctx = RingContext.global_ring("x,y,w")
        f = p("x*y^2 - 3/2*w", ctx)
        assert dict(f.as_dict()) == {(1, 2, 0): 1, (0, 0, 1): Fraction(-3, 2)}

    def test_zero(self):
        f = p("0")
        assert f.is_zero() and f.terms == ()

    def test_table_entry(self):
        f = p("y+v^3", X5)
        assert f.as_dict() == {(0, 1, 0, 0, 0): 1, (0, 0, 0, 3, 0): 1}

    def test_whitespace_and_parentheses(self):
        assert p(" ( x + y ) ^ 2 ") == p("x^2+2*x*y+y^2")

    def test_leading_sign(self):
        assert p("-x + y") == p("y - x")
        assert p("-2/3*x^2").lc() == Fraction(-2, 3)

    @pytest.mark.parametrize("text", ["2x", "x +", "x^", "(x", "x**2", "x^-1", "1/0"])
    def test_syntax_errors(self, text):
        with pytest.raises(ParseError):
            p(text)

    def test_unknown_variable(self):
        with pytest.raises(ParseError, match="unknown variable 'q'"):
            p("x + q")

    def test_error_position(self):
        with pytest.raises(ParseError) as info:
            p("x + 2x")
        assert info.value.pos == 5

    @given(polynomials(G))
    def test_print_parse_roundtrip(self, f):
        assert parse_polynomial(str(f), G) == f

    @given(polynomials(MIXED))
    def test_roundtrip_mixed(self, f):
        assert parse_polynomial(str(f), MIXED) == f


class TestArithmetic:
    def test_difference_of_squares(self):
        assert p("(x+y)*(x-y)") == p("x^2-y^2")
        assert arith("mul", p("x+y"), p("x-y")) == p("x^2-y^2")

    def test_additive_identity(self):
        f = p("x*y - 3*z")
        assert f + Polynomial.zero(G) == f

    def test_square(self):
        assert arith("pow", p("x+y"), 2) == p("x^2+2*x*y+y^2")

    def test_context_mismatch(self):
        with pytest.raises(ValueError):
            p("x") + p("x", L)

    def test_sorted_descending(self):
        f = p("1 + x + x^2 + y*z")
        keys = [G.key(m) for _, m in f.terms]
        assert keys == sorted(keys, reverse=True)
        assert f.lm() in ((2, 0, 0), (0, 1, 1))

    def test_local_leading_term_is_lowest_degree(self):
        f = p("x - x^2", L)
        assert f.lm() == (1, 0, 0)

    @given(polynomials(G), polynomials(G), polynomials(G))
    def test_ring_axioms(self, f, g, h):
        assert (f + g) * h == f * h + g * h
        assert (f * g) * h == f * (g * h)
        assert f - f == Polynomial.zero(G)

    @given(polynomials(G))
    def test_no_zero_coefficients(self, f):
        assert all(c != 0 for c, _ in (f * f - f).terms)


class TestDerivative:
    def test_examples(self):
        assert p("x^2*y").derivative("x") == p("2*x*y")
        assert p("y+v^3", X5).derivative("v") == p("3*v^2", X5)
        assert p("7").derivative("x").is_zero()

    def test_unknown_variable(self):
        with pytest.raises(KeyError):
            p("x").derivative("q")

    @given(polynomials(G), polynomials(G), st.sampled_from("xyz"))
    def test_linear_and_leibniz(self, f, g, v):
        d = lambda h: h.derivative(v)
        assert d(f + g) == d(f) + d(g)
        assert d(f * g) == d(f) * g + f * d(g)


class TestSubstituteAndJet:
    def test_chart_restriction(self):
        ctx = RingContext.global_ring("a,x1,s1,s2")
        f = p("s1*a + s2*x1", ctx)
        assert f.substitute({"s1": 1}) == p("a + s2*x1", ctx)

    def test_empty_bindings(self):
        f = p("x*y + z")
        assert f.substitute({}) == f

    def test_fiber_selection(self):
        ctx = RingContext.global_ring("y,s1,s2,e")
        assert p("s1*y - s2*e", ctx).substitute({"e": 1}) == p("s1*y - s2", ctx)

    def test_into_other_context(self):
        target = RingContext.global_ring("t")
        f = p("x^2 + y").substitute({"x": p("t", target), "y": 1, "z": 0}, target)
        assert f == p("t^2 + 1", target)

    def test_jets(self):
        assert p("x + x*y").jet(1) == p("x")
        assert p("y+v^3", X5).jet(1) == p("y", X5)
        f = p("x^5 + y")
        assert f.jet(float("inf")) == f

    def test_partial_jet(self):
        assert p("x + x*y^2 + y").jet(1, ["y"]) == p("x + y")


class TestOrders:
    @given(monomials(3), monomials(3), monomials(3))
    def test_order_axioms(self, a, b, c):
        for ctx in (G, L, MIXED):
            ka, kb = ctx.key(a), ctx.key(b)
            assert (ka == kb) == (a == b)
            if ka < kb:
                assert ctx.key(mono_mul(a, c)) < ctx.key(mono_mul(b, c))

    @given(monomials(3), monomials(3), monomials(3))
    def test_transitive(self, a, b, c):
        k = sorted([a, b, c], key=MIXED.key)
        assert MIXED.key(k[0]) <= MIXED.key(k[1]) <= MIXED.key(k[2])

    def test_global_one_is_minimal(self):
        one = G.one()
        assert all(G.key(one) < G.key(G.var_monomial(v)) for v in G.variables)
        assert G.is_global and not L.is_global and not MIXED.is_global

    def test_local_variable_below_one(self):
        assert L.key(L.var_monomial("x")) < L.key(L.one())
        assert MIXED.key(MIXED.var_monomial("x")) < MIXED.key(MIXED.one())
        assert MIXED.key(MIXED.var_monomial("s")) > MIXED.key(MIXED.one())

    def test_context_invariants(self):
        with pytest.raises(ValueError):
            RingContext.global_ring("x,x")
