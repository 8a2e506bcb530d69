"""Groebner engine: bases, normal forms, syzygies, resolutions, elimination."""

import random

import pytest

from fpduality.config import config
from fpduality.errors import DegreeBudgetExceeded
from fpduality.fp import inv_mod
from fpduality.groebner import (
    Ideal,
    ModuleGB,
    QuotientRing,
    VectorPoly,
    buchberger,
    division,
    elimination_kernel,
    groebner_basis,
    ideal_intersection,
    ideal_membership,
    ideal_product,
    ideal_quotient,
    ideal_sum,
    leading_term,
    normal_form,
    presentation_resolution,
    syzygies,
    unit_vector,
    vector_from_poly,
)
from fpduality.polyring import MonomialOrder, PolyRing, RingMap, mono_div, mono_divides, mono_lcm


def ring(p, *names, order=None):
    return PolyRing(p, names, order)


# ---------------------------------------------------------------------------
# an independent oracle: naive exhaustive S-pair closure, no pair pruning

def naive_buchberger(polys):
    ring_ = polys[0].ring
    p = ring_.p
    basis = [f.scale(inv_mod(f.leading()[1], p)) for f in polys if not f.is_zero()]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                f, g = basis[i], basis[j]
                mf, _ = f.leading()
                mg, _ = g.leading()
                lcm = mono_lcm(mf, mg)
                s = f.mul_term(mono_div(lcm, mf), 1) - g.mul_term(mono_div(lcm, mg), 1)
                r = normal_form(s, basis)
                if not r.is_zero():
                    basis.append(r.scale(inv_mod(r.leading()[1], p)))
                    changed = True
        if changed:
            continue
    return basis


def spans_same_ideal(gens_a, gens_b):
    return all(normal_form(g, groebner_basis(gens_b)).is_zero() for g in gens_a) and all(
        normal_form(g, groebner_basis(gens_a)).is_zero() for g in gens_b
    )


def assert_buchberger_criterion(gb):
    """Every S-polynomial of basis pairs reduces to zero."""
    for i in range(len(gb)):
        for j in range(i + 1, len(gb)):
            f, g = gb[i], gb[j]
            mf, cf = f.leading()
            mg, cg = g.leading()
            lcm = mono_lcm(mf, mg)
            p = f.ring.p
            s = f.mul_term(mono_div(lcm, mf), inv_mod(cf, p)) - g.mul_term(
                mono_div(lcm, mg), inv_mod(cg, p)
            )
            assert normal_form(s, gb).is_zero()


class TestBuchberger:
    def test_already_reduced(self):
        R = ring(2, "x", "y")
        x, y = R.gens()
        gb = groebner_basis([x, y])
        assert spans_same_ideal(gb, [x, y])
        assert len(gb) == 2

    def test_lex_example(self):
        # {x^2+y, y^2} under lex x>y has GB {y^2, x^2+y}
        R = ring(2, "x", "y", order=MonomialOrder("lex"))
        x, y = R.gens()
        gb = groebner_basis([x ** 2 + y, y ** 2])
        assert spans_same_ideal(gb, [y ** 2, x ** 2 + y])
        assert len(gb) == 2
        assert_buchberger_criterion(gb)

    def test_against_naive_oracle(self):
        rng = random.Random(424242)
        for trial in range(12):
            p = rng.choice([2, 3, 5])
            R = ring(p, "x", "y")
            polys = []
            for _ in range(rng.randint(2, 3)):
                f = R.zero()
                for _ in range(rng.randint(1, 3)):
                    exps = (rng.randint(0, 2), rng.randint(0, 2))
                    f = f + R.monomial(exps, rng.randint(1, p - 1))
                if not f.is_zero():
                    polys.append(f)
            if not polys:
                continue
            fast = groebner_basis(polys)
            slow = naive_buchberger(polys)
            assert spans_same_ideal(fast, slow)
            assert_buchberger_criterion(fast)

    def test_idempotent_on_gb(self):
        R = ring(2, "x", "y")
        x, y = R.gens()
        gb = groebner_basis([x ** 2 + y * x, y ** 3 + x])
        again = groebner_basis(gb)
        assert [repr(g) for g in gb] == [repr(g) for g in again]

    def test_cyclic3_char7(self):
        R = ring(7, "a", "b", "c")
        a, b, c = R.gens()
        gens = [a + b + c, a * b + b * c + c * a, a * b * c - R.one()]
        gb = groebner_basis(gens)
        assert_buchberger_criterion(gb)
        for g in gens:
            assert normal_form(g, gb).is_zero()

    def test_degree_budget(self):
        R = ring(2, "x", "y")
        x, y = R.gens()
        old = config.degree_budget
        config.degree_budget = 3
        try:
            with pytest.raises(DegreeBudgetExceeded):
                groebner_basis([x ** 3 + y, x * y ** 3 + x + y ** 2])
        finally:
            config.degree_budget = old


class TestNormalForm:
    def test_simple(self):
        R = ring(2, "x")
        x = R.var("x")
        assert normal_form(x ** 2, [x]).is_zero()

    def test_single_step(self):
        R = ring(3, "x", "y")
        x, y = R.gens()
        # NF(x^2+y, {x^2-y}) = 2y
        assert normal_form(x ** 2 + y, [x ** 2 - y]) == y.scale(2)

    def test_empty_basis(self):
        R = ring(5, "x")
        f = R.var("x") ** 4 + R.const(2)
        assert normal_form(f, []) == f

    def test_idempotent_and_linear(self):
        rng = random.Random(5)
        R = ring(3, "x", "y")
        x, y = R.gens()
        gb = groebner_basis([x ** 2 + y, y ** 2 + x * y])
        for _ in range(100):
            f = R.monomial((rng.randint(0, 3), rng.randint(0, 3)), rng.randint(1, 2))
            g = R.monomial((rng.randint(0, 3), rng.randint(0, 3)), rng.randint(1, 2))
            nf = lambda h: normal_form(h, gb)
            assert nf(nf(f)) == nf(f)
            assert nf(f + g) == nf(f) + nf(g)

    def test_division_certificate(self):
        R = ring(5, "x", "y")
        x, y = R.gens()
        divisors = [vector_from_poly(x ** 2 - y), vector_from_poly(y ** 2 - 1)]
        f = vector_from_poly(x ** 4 * y + x * y ** 3 + 3)
        quots, rem = division(f, divisors)
        recomposed = rem
        for q, d in zip(quots, divisors):
            recomposed = recomposed + d.mul_poly(q)
        assert recomposed == f


class TestSyzygies:
    def test_koszul_pair(self):
        R = ring(2, "x", "y")
        x, y = R.gens()
        syz = syzygies([vector_from_poly(x), vector_from_poly(y)])
        assert len(syz) == 1
        assert syz[0].components in (tuple([y, x]), tuple([y, x]))

    def test_unit_generator(self):
        R = ring(2, "x")
        syz = syzygies([vector_from_poly(R.one())])
        assert syz == []

    def test_duplicate_generator(self):
        R = ring(2, "x")
        x = R.var("x")
        syz = syzygies([vector_from_poly(x), vector_from_poly(x)])
        assert len(syz) == 1
        assert syz[0].components == (R.one(), R.one())

    def test_syzygies_compose_to_zero(self):
        rng = random.Random(99)
        R = ring(3, "x", "y")
        for _ in range(6):
            gens = []
            for _ in range(3):
                f = R.zero()
                for _ in range(rng.randint(1, 3)):
                    f = f + R.monomial(
                        (rng.randint(0, 2), rng.randint(0, 2)), rng.randint(1, 2)
                    )
                gens.append(vector_from_poly(f))
            for s in syzygies(gens):
                acc = R.zero()
                for c, g in zip(s.components, gens):
                    acc = acc + c * g.components[0]
                assert acc.is_zero()

    def test_module_syzygy(self):
        R = ring(2, "x", "y")
        x, y = R.gens()
        v1 = VectorPoly(R, [x, y])
        v2 = VectorPoly(R, [y, x])
        for s in syzygies([v1, v2]):
            a, b = s.components
            assert (a * x + b * y).is_zero()
            assert (a * y + b * x).is_zero()


class TestModuleGBLift:
    def test_lift_roundtrip(self):
        R = ring(3, "x", "y")
        x, y = R.gens()
        gens = [vector_from_poly(x ** 2 + y), vector_from_poly(y ** 2)]
        mgb = ModuleGB(R, 1, gens)
        target = vector_from_poly((x ** 2 + y) * y + y ** 2 * x)
        coeffs = mgb.lift(target)
        assert coeffs is not None
        acc = R.zero()
        for c, g in zip(coeffs, gens):
            acc = acc + c * g.components[0]
        assert acc == target.components[0]

    def test_non_member(self):
        R = ring(2, "x", "y")
        x, y = R.gens()
        mgb = ModuleGB(R, 1, [vector_from_poly(x)])
        assert mgb.lift(vector_from_poly(y)) is None


class TestFreeResolution:
    def test_koszul_resolution_ranks(self):
        R = ring(2, "x", "y")
        x, y = R.gens()
        stages = presentation_resolution(R, 1, [vector_from_poly(x), vector_from_poly(y)])
        ranks = [1] + [len(s) for s in stages]
        assert ranks == [1, 2, 1]

    def test_free_module_resolution_empty(self):
        R = ring(2, "x")
        assert presentation_resolution(R, 1, []) == []

    def test_principal_ideal(self):
        R = ring(3, "x")
        x = R.var("x")
        stages = presentation_resolution(R, 1, [vector_from_poly(x ** 2)])
        assert len(stages) == 1
        assert len(stages[0]) == 1

    def test_exactness_interior(self):
        # composite of consecutive stages is zero and kernels are hit
        R = ring(2, "x", "y", "z")
        x, y, z = R.gens()
        cols = [vector_from_poly(f) for f in (x * y, y * z, z * x)]
        stages = presentation_resolution(R, 1, cols)
        for k in range(1, len(stages)):
            prev, cur = stages[k - 1], stages[k]
            for s in cur:
                acc = None
                for c, g in zip(s.components, prev):
                    add = g.mul_poly(c)
                    acc = add if acc is None else acc + add
                assert acc.is_zero()
            # every syzygy of prev is generated by cur
            for s in syzygies(prev):
                assert ModuleGB(R, len(prev), cur).contains(s)


class TestElimination:
    def test_injective(self):
        S = ring(2, "X")
        R = ring(2, "x")
        phi = RingMap(S, R, [R.var("x") ** 2])
        assert elimination_kernel(phi).is_zero()

    def test_cuspidal_cubic(self):
        S = ring(2, "X", "Y")
        R = ring(2, "t")
        t = R.var("t")
        phi = RingMap(S, R, [t ** 2, t ** 3])
        ker = elimination_kernel(phi)
        X, Y = S.gens()
        assert ker.equals(Ideal(S, [X ** 3 + Y ** 2]))

    def test_kernel_onto_quotient(self):
        S = ring(2, "X")
        amb = ring(2, "x")
        A = QuotientRing(amb, [amb.var("x") ** 2])
        phi = RingMap(S, A, [amb.var("x")])
        ker = elimination_kernel(phi)
        assert ker.equals(Ideal(S, [S.var("X") ** 2]))

    def test_kernel_maps_to_zero(self):
        rng = random.Random(3)
        S = ring(3, "X", "Y")
        R = ring(3, "t")
        t = R.var("t")
        phi = RingMap(S, R, [t ** 2 + 1, t ** 3])
        ker = elimination_kernel(phi)
        gb = ker.groebner()
        for g in gb:
            assert phi(g).is_zero()
        # random combinations also map to zero
        for _ in range(20):
            f = S.zero()
            for g in gb:
                exps = (rng.randint(0, 1), rng.randint(0, 1))
                f = f + g * S.monomial(exps, rng.randint(1, 2))
            assert phi(f).is_zero()


class TestIdealOps:
    def test_intersection(self):
        R = ring(2, "x", "y")
        x, y = R.gens()
        meet = ideal_intersection(Ideal(R, [x]), Ideal(R, [y]))
        assert meet.equals(Ideal(R, [x * y]))

    def test_quotient(self):
        R = ring(2, "x", "y")
        x, y = R.gens()
        quo = ideal_quotient(Ideal(R, [x * y]), Ideal(R, [x]))
        assert quo.equals(Ideal(R, [y]))

    def test_membership_char2(self):
        R = ring(2, "x", "y")
        x, y = R.gens()
        assert ideal_membership(x ** 2 + y ** 2, Ideal(R, [x + y]))

    def test_sum_product(self):
        R = ring(3, "x", "y")
        x, y = R.gens()
        I, J = Ideal(R, [x]), Ideal(R, [y])
        assert ideal_sum(I, J).contains(x + y)
        assert ideal_product(I, J).equals(Ideal(R, [x * y]))


class TestQuotientRing:
    def test_reduce_and_equality(self):
        amb = ring(2, "x")
        A = QuotientRing(amb, [amb.var("x") ** 2])
        x = amb.var("x")
        assert A.reduce(x ** 3).is_zero()
        assert A.elements_equal(x ** 2 + x, x)

    def test_standard_monomials(self):
        amb = ring(2, "x", "y")
        A = QuotientRing(amb, [amb.var("x") ** 2, amb.var("y") ** 2])
        assert A.standard_monomials() == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_infinite_dimensional(self):
        amb = ring(2, "x", "y")
        A = QuotientRing(amb, [amb.var("x") * amb.var("y")])
        assert A.standard_monomials() is None
