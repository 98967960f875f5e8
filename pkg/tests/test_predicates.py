"""Complexity, dimension/height, radical equality, probe, maximality."""

from fractions import Fraction

import pytest

from gbtransfer.groebner import IdealPresentation, ideal_member
from gbtransfer.polyarith import GREVLEX, PolyRing, PrimeField, QQ, parse_polynomial
from gbtransfer.predicates import (
    NotContained,
    RADICAL_EQUAL,
    RADICAL_NOT_CONTAINED,
    RADICAL_POWER_NOT_FOUND,
    UnitIdeal,
    complexity,
    dimension,
    height_in_quotient,
    height_poly,
    prime_probe,
    radical_equals,
    rational_maximal,
)

from corpus import R1, R2, R3, P, mk
from oracles import dimension_oracle

RT = PolyRing(QQ, 1, GREVLEX, ("T",))
RT2 = PolyRing(QQ, 2, GREVLEX, ("T1", "T2"))


class TestComplexity:
    def test_degree_dominates(self):
        rep = complexity(mk(R2, "x^3 + y"))
        assert (rep.nvars, rep.max_degree, rep.complexity) == (2, 3, 3)

    def test_single_variable(self):
        rep = complexity(mk(R1, "x"))
        assert rep.complexity == 1

    def test_variable_count_dominates(self):
        rep = complexity(mk(R2, "x - y", "2*y"))
        assert rep.complexity == 2
        assert rep.generator_count == 2

    def test_zero_ideal(self):
        rep = complexity(IdealPresentation(R2, (R2.zero(),)))
        assert rep.complexity == 2
        assert rep.max_degree == 0

    def test_definition_constraints(self):
        for pres in (mk(R2, "x^2 - y"), mk(R3, "x*y*z - 1", "x + y")):
            rep = complexity(pres)
            assert rep.complexity >= rep.nvars
            assert all(
                int(g.degree()) <= rep.complexity
                for g in pres.generators
                if g
            )


class TestDimension:
    def test_full_ring(self):
        assert dimension(IdealPresentation(R2, (R2.zero(),))) == 2

    def test_hypersurface(self):
        assert dimension(mk(R2, "x")) == 1

    def test_union_of_axes(self):
        assert dimension(mk(R2, "x*y")) == 1

    def test_unit_ideal_signaled(self):
        with pytest.raises(UnitIdeal):
            dimension(mk(R2, "x", "x - 1"))

    def test_matches_subset_oracle(self):
        for pres in (mk(R2, "x*y"), mk(R3, "x*y", "x*z"), mk(R3, "x*y*z")):
            assert dimension(pres) == dimension_oracle(pres)


class TestHeight:
    def test_maximal_ideal(self):
        assert height_poly(mk(R2, "x", "y")).height == 2

    def test_principal_prime(self):
        assert height_poly(mk(R2, "x")).height == 1

    def test_non_equidimensional(self):
        res = height_poly(mk(R3, "x*y", "x*z"))
        assert (res.dimension, res.height) == (2, 1)

    def test_height_plus_dimension(self):
        for pres in (mk(R2, "x^2 - y"), mk(R3, "x + y", "z^2"), mk(R2, "x*y - 1")):
            res = height_poly(pres)
            assert res.height + res.dimension == pres.ring.nvars


class TestHeightInQuotient:
    def test_polynomial_line(self):
        m = mk(RT, "T")
        zero = IdealPresentation(RT, (RT.zero(),))
        assert height_in_quotient(m, zero) == 1

    def test_hyperbola_point(self):
        m = mk(RT2, "T1 - 1", "T2 - 1")
        I = mk(RT2, "T1*T2 - 1")
        assert height_in_quotient(m, I) == 1

    def test_plane_in_quotient(self):
        assert height_in_quotient(mk(R2, "x", "y"), mk(R2, "x")) == 1

    def test_not_contained(self):
        with pytest.raises(NotContained):
            height_in_quotient(mk(R2, "y"), mk(R2, "x"))


class TestRadicalEquals:
    def test_fat_point(self):
        res = radical_equals(mk(R2, "x^2", "y"), mk(R2, "x", "y"), 4)
        assert res.equal
        exps = {str(g): e for g, e in res.exponents}
        assert exps == {"x": 2, "y": 1}

    def test_power_not_found(self):
        res = radical_equals(mk(R2, "x"), mk(R2, "x", "y"), 8)
        assert res.status == RADICAL_POWER_NOT_FOUND
        assert str(res.failed_generator) == "y"
        assert res.cap == 8

    def test_scaled_generator(self):
        I = IdealPresentation(RT, (P("T^2", RT).scale(Fraction(1, 6)),))
        res = radical_equals(I, mk(RT, "T"), 4)
        assert res.equal
        assert res.exponents[0][1] == 2

    def test_not_contained_outcome(self):
        res = radical_equals(mk(R2, "x"), mk(R2, "y"), 4)
        assert res.status == RADICAL_NOT_CONTAINED

    def test_exponents_reverify(self):
        I, p_ = mk(R2, "x^2", "y"), mk(R2, "x", "y")
        res = radical_equals(I, p_, 4)
        for g, e in res.exponents:
            assert ideal_member(g ** e, I)

    def test_monotone_in_cap(self):
        I, p_ = mk(R2, "x^2", "y"), mk(R2, "x", "y")
        seen_equal = False
        for cap in (1, 2, 4, 8):
            res = radical_equals(I, p_, cap)
            if seen_equal:
                assert res.equal
            seen_equal = seen_equal or res.equal
        assert seen_equal


class TestPrimeProbe:
    def test_cross_is_not_prime(self):
        res = prime_probe(mk(R2, "x*y"), 2, 200, seed=7)
        assert res.status == "not_prime"
        p_ = mk(R2, "x*y")
        assert not ideal_member(res.witness_f, p_)
        assert not ideal_member(res.witness_g, p_)
        assert ideal_member(res.witness_f * res.witness_g, p_)

    def test_fat_point_is_not_prime(self):
        res = prime_probe(mk(R2, "x^2", "y"), 2, 200, seed=7)
        assert res.status == "not_prime"

    def test_axis_probably_prime(self):
        res = prime_probe(mk(R2, "x"), 2, 200, seed=7)
        assert res.status == "probably_prime"
        assert res.trials == 200

    def test_deterministic_per_seed(self):
        a = prime_probe(mk(R2, "x*y"), 2, 200, seed=3)
        b = prime_probe(mk(R2, "x*y"), 2, 200, seed=3)
        assert (a.witness_f, a.witness_g) == (b.witness_f, b.witness_g)

    def test_unit_ideal_rejected(self):
        with pytest.raises(UnitIdeal):
            prime_probe(mk(R2, "x", "x - 1"), 2, 10, seed=0)


class TestRationalMaximal:
    def test_syntactic_match(self):
        assert rational_maximal(mk(R2, "x - 1", "y - 2"), (1, 2))

    def test_irrational_point_not_certified(self):
        m = mk(R1, "x^2 + 1")
        for b in (0, 1, -1, Fraction(1, 2)):
            assert not rational_maximal(m, (b,))

    def test_mod_five_root(self):
        r5 = PolyRing(PrimeField(5), 1, GREVLEX, ("x",))
        m = IdealPresentation(r5, (parse_polynomial("x - 2", r5),))
        assert ideal_member(parse_polynomial("x^2 + 1", r5), m)
        assert rational_maximal(m, (2,))

    def test_true_implies_vanishing_and_full_height(self):
        m = mk(R2, "x - 1", "y - 2")
        assert rational_maximal(m, (1, 2))
        for g in m.generators:
            assert not g.evaluate((1, 2))
        assert height_poly(m).height == 2
