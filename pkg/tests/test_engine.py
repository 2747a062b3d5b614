from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import local_colength, random_instance
from tjurina.groebner import (INFINITE, ModuleElement, POT, is_member, is_standard_basis,
                              krull_dim, module_quotient, normal_form, radical_membership,
                              std_basis, syzygies, torsion_part_vdim, vdim,
                              zero_dim_radical_count)
from tjurina.groebner.ops import rabinowitsch_membership
from tjurina.poly import Polynomial, parse_polynomial
from tjurina.polymat import jacobian
from tjurina.ring import RingContext

G2 = RingContext.global_ring("x,y")
L2 = RingContext.local_ring("x,y")
G1 = RingContext.global_ring("x")
L1 = RingContext.local_ring("x")


def ps(texts, ctx):
    return [parse_polynomial(t, ctx) for t in texts]


def to_library(gens, ctx, rank):
    vecs = [[Polynomial(ctx, comp) for comp in vec] for vec in gens]
    if rank == 1:
        return [v[0] for v in vecs], None
    return [ModuleElement(tuple(v)) for v in vecs], rank


class TestBasics:
    def test_linear(self):
        B = std_basis(ps(["x", "y"], G2))
        assert sorted(map(str, B.generators)) == ["x", "y"]

    def test_cubic_member_under_degrevlex(self):
        B = std_basis(ps(["y-x^2", "x*y"], G2))
        assert sorted(map(str, B.generators)) == ["x*y", "x^2 - y", "y^2"]
        assert is_member(parse_polynomial("x^3", G2), B)

    def test_cubic_in_basis_when_y_leads(self):
        ctx = RingContext.make(("y", "dp"), ("x", "dp"))
        B = std_basis(ps(["y-x^2", "x*y"], ctx))
        assert "x^3" in map(str, B.generators)

    def test_local_unit(self):
        B = std_basis(ps(["x-x^2"], L1))
        assert [str(g) for g in B.generators] == ["x"]
        assert not normal_form(parse_polynomial("1", L1), B).is_zero()
        assert is_member(parse_polynomial("x", L1), B)

    def test_normal_forms(self):
        B = std_basis(ps(["x"], G2))
        assert normal_form(parse_polynomial("x^3", G2), B).is_zero()
        assert str(normal_form(parse_polynomial("y", G2), B)) == "y"

    def test_unit_ideal_normal_form(self):
        # 1 - x is a unit locally, so (x - x^2) contains x but not 1
        B = std_basis(ps(["x-x^2", "1-x"], L1))
        assert B.is_unit()
        assert normal_form(parse_polynomial("1", L1), B).is_zero()


class TestVdim:
    def test_a2_milnor_algebra(self):
        assert vdim(std_basis(ps(["2*x", "3*y^2"], G2))) == 2

    def test_infinite(self):
        assert vdim(std_basis(ps(["x"], G2))) == INFINITE

    def test_identity_module(self):
        one, zero = Polynomial.constant(G2, 1), Polynomial.zero(G2)
        N = [ModuleElement((one, zero)), ModuleElement((zero, one))]
        assert vdim(std_basis(N, G2, rank=2)) == 0

    def test_local_against_global(self):
        I = ["x-x^2"]
        assert vdim(std_basis(ps(I, L1))) == 1
        assert vdim(std_basis(ps(I, G1))) == 2

    @pytest.mark.parametrize("k", range(1, 6))
    def test_milnor_number_a_k(self, k):
        ctx = RingContext.local_ring("x,y,z")
        f = parse_polynomial(f"x^{k + 1}+y^2+z^2", ctx)
        J = jacobian([f], ctx.variables).row(0)
        assert vdim(std_basis(J, ctx)) == k
        assert local_colength([[j.as_dict()] for j in J], 3) == k

    @pytest.mark.parametrize("seed", range(25))
    def test_ideals_against_oracle(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 3)
        ctx = RingContext.local_ring(["x", "y", "z"][:n])
        raw = random_instance(rng, n, 1, extra=rng.randint(1, 3))
        gens, _ = to_library(raw, ctx, 1)
        assert vdim(std_basis(gens, ctx)) == local_colength(raw, n)

    @pytest.mark.parametrize("seed", range(25))
    def test_modules_against_oracle(self, seed):
        rng = random.Random(1000 + seed)
        n = rng.randint(1, 3)
        ctx = RingContext.local_ring(["x", "y", "z"][:n])
        raw = random_instance(rng, n, 2, extra=rng.randint(1, 2), max_deg=2)
        gens, r = to_library(raw, ctx, 2)
        assert vdim(std_basis(gens, ctx, rank=r)) == local_colength(raw, n)

    def test_homogeneous_global_matches_local(self):
        I = ["x^2+y^2", "x*y"]
        assert vdim(std_basis(ps(I, G2))) == vdim(std_basis(ps(I, L2))) == 4


class TestKrullAndRadical:
    def test_krull(self):
        assert krull_dim(std_basis(ps(["x*y"], G2))) == 1
        assert krull_dim(std_basis(ps(["x", "y"], G2))) == 0
        assert krull_dim(std_basis(ps(["1"], G2))) == -1

    def test_radical(self):
        assert radical_membership(parse_polynomial("x", G2), ps(["x^2"], G2))
        assert not radical_membership(parse_polynomial("y", G2), ps(["x"], G2))
        I = ps(["x^2+y^2", "x*y"], G2)
        assert radical_membership(parse_polynomial("x", G2), I)
        assert radical_membership(parse_polynomial("y", G2), I)

    @pytest.mark.parametrize("f,I,expected", [
        ("x", ["x^2"], True), ("y", ["x"], False), ("x+y", ["x^3", "y^2"], True),
        ("x", ["x^2-x", "y"], False), ("x^2-x", ["x^3-x^2", "y"], True),
    ])
    def test_fast_path_agrees_with_rabinowitsch(self, f, I, expected):
        f, I = parse_polynomial(f, G2), ps(I, G2)
        assert radical_membership(f, I) is expected
        assert rabinowitsch_membership(f, I) is expected

    def test_point_counts(self):
        assert zero_dim_radical_count(ps(["x^2"], G1)) == 1
        assert zero_dim_radical_count(ps(["x^2-1", "y"], G2)) == 2
        G5 = RingContext.global_ring("x,y,z,v,w")
        assert zero_dim_radical_count(ps(["v^5-1", "x", "y", "z", "w"], G5)) == 5

    def test_point_count_with_multiplicity(self):
        # (x^2 - 1)^2 (x - 3): vdim 5, three points... minus multiplicities: 2 points plus 1
        assert zero_dim_radical_count(ps(["(x^2-1)^2*(x-3)"], G1)) == 3


class TestSyzygies:
    def test_koszul(self):
        S = syzygies(ps(["x", "y"], G2))
        assert len(S) == 1
        a, b = S[0].components
        assert a * parse_polynomial("x", G2) + b * parse_polynomial("y", G2) == 0
        assert {str(a), str(b)} in ({"y", "-x"}, {"-y", "x"})

    def test_divisible_pair(self):
        S = syzygies(ps(["x^2", "x"], G2))
        assert len(S) == 1
        a, b = S[0].components
        assert a.is_constant() and (b * 1 + a * parse_polynomial("x", G2)).is_zero()

    def test_fat_point_relation(self):
        ctx = RingContext.global_ring("s1,s2,x,y")
        gens = ps(["s2*x", "s1*x+s2*y", "s1*y"], ctx)
        S = syzygies(gens)
        target = ModuleElement(tuple(ps(["s1^2", "-s1*s2", "s2^2"], ctx)))
        B = std_basis(S, ctx, rank=3)
        assert is_member(target, B)

    @settings(max_examples=20)
    @given(st.lists(st.sampled_from(["x", "y", "x^2", "x*y+y^2", "x^2-y", "y^3", "x+1"]),
                    min_size=2, max_size=3))
    def test_relations_vanish(self, texts):
        gens = ps(texts, G2)
        for s in syzygies(gens):
            assert sum((c * g for c, g in zip(s.components, gens)),
                       Polynomial.zero(G2)).is_zero()


class TestQuotientAndTorsion:
    def test_colon(self):
        assert std_basis(module_quotient(ps(["x"], G2), ps(["x"], G2)), G2).is_unit()
        Q = module_quotient(ps(["x^2"], G1), ps(["x"], G1))
        assert [str(q) for q in std_basis(Q, G1).generators] == ["x"]
        Q = module_quotient(ps(["x^2", "y"], G2), ps(["1"], G2))
        assert vdim(std_basis(Q, G2)) == 2

    def test_torsion(self):
        J = ps(["x"], G1)
        assert torsion_part_vdim(ps(["x^3"], G1), J) == 3
        assert torsion_part_vdim(ps(["x-1"], G1), J) == 0
        assert torsion_part_vdim(ps(["x*(x-1)"], G1), J) == 1

    @pytest.mark.parametrize("I,J,expected", [
        (["x^2*(x-1)^3", "y"], ["x"], 2), (["x^2*(x-1)^3", "y"], ["x-1"], 3),
        (["x^2", "y^2"], ["y"], 4), (["x*(x-2)", "y^2-y"], ["x", "y"], 1),
    ])
    def test_torsion_methods_agree(self, I, J, expected):
        I, J = ps(I, G2), ps(J, G2)
        assert torsion_part_vdim(I, J) == expected
        assert torsion_part_vdim(I, J, method="powers") == expected


class TestStandardBasisProperties:
    @settings(max_examples=25)
    @given(st.integers(0, 10 ** 6))
    def test_buchberger_fixed_point(self, seed):
        rng = random.Random(seed)
        raw = random_instance(rng, 2, 1, extra=2)
        gens, _ = to_library(raw, G2, 1)
        B = std_basis(gens, G2)
        assert is_standard_basis(B)
        for g in gens:
            assert normal_form(g, B).is_zero()
        again = std_basis(list(B.generators), G2)
        assert sorted(map(str, again.generators)) == sorted(map(str, B.generators))

    @settings(max_examples=25)
    @given(st.integers(0, 10 ** 6))
    def test_local_basis_generates(self, seed):
        rng = random.Random(seed)
        raw = random_instance(rng, 2, 1, extra=2)
        gens, _ = to_library(raw, L2, 1)
        B = std_basis(gens, L2)
        assert is_standard_basis(B)
        assert all(is_member(g, B) for g in gens)

    def test_pot_module_order(self):
        one, x, y = ps(["1", "x", "y"], G2)
        zero = Polynomial.zero(G2)
        N = [ModuleElement((x, y)), ModuleElement((zero, x * y))]
        B = std_basis(N, G2, rank=2, strategy=POT)
        assert is_standard_basis(B)
        assert is_member(ModuleElement((x * y, y * y)), B)
        assert not is_member(ModuleElement((one, zero)), B)


def test_scaled_coefficients_stay_exact():
    I = ps(["1/3*x^2 - 2/7*y", "5*y^2"], G2)
    B = std_basis(I, G2)
    assert vdim(B) == 4
    assert all(isinstance(c, Fraction) for g in B.generators for c in g.as_dict().values())
