"""Normal forms, Buchberger, and the ideal comparison procedures."""

import pytest

from gbtransfer.groebner import (
    DegreeCapExceeded,
    IdealPresentation,
    buchberger,
    clear_cache,
    ideal,
    ideal_contains,
    ideal_equal,
    ideal_member,
    normal_form,
    quotient_is_zero,
    s_polynomial,
)
from gbtransfer.polyarith import (
    AmbientMismatch,
    GREVLEX,
    PolyRing,
    QQ,
    mono_divides,
    parse_polynomial,
)

from corpus import R1, R2, R3, P, mk

RT2 = PolyRing(QQ, 2, GREVLEX, ("T1", "T2"))


class TestNormalForm:
    def test_generator_reduces_to_zero(self):
        assert not normal_form(P("x"), [P("x")])

    def test_no_leading_term_divides(self):
        assert normal_form(P("y"), [P("x")]) == P("y")

    def test_single_division_step(self):
        assert normal_form(P("x^2*y"), [P("x^2 - y")]) == P("y^2")

    def test_idempotent(self):
        G = [P("x^2 - y"), P("x*y - 1")]
        f = P("x^3*y^2 + 2*x - y + 5")
        r = normal_form(f, G)
        assert normal_form(r, G) == r

    def test_divisor_sequence_determinism(self):
        f = P("x^2")
        assert normal_form(f, [P("x^2 - y"), P("x")]) == P("y")
        assert not normal_form(f, [P("x"), P("x^2 - y")])

    def test_ambient_mismatch(self):
        with pytest.raises(AmbientMismatch):
            normal_form(P("x"), [R3.variable(0)])


class TestBuchberger:
    def test_parabola_axis(self):
        basis = buchberger(mk(R2, "x^2 - y", "x")).basis
        assert basis == (P("x"), P("y"))

    def test_zero_ideal_empty_basis(self):
        pres = IdealPresentation(R2, (R2.zero(),))
        assert buchberger(pres).basis == ()
        assert pres.is_zero_ideal()

    def test_single_generator_already_reduced(self):
        assert buchberger(mk(R1, "x - 1")).basis == (P("x - 1", R1),)

    def test_basis_is_monic_and_reduced(self):
        basis = buchberger(mk(R3, "x + y + z", "x*y + y*z + z*x", "x*y*z - 1")).basis
        leads = [g.leading_monomial() for g in basis]
        for i, g in enumerate(basis):
            assert g.leading_coeff() == QQ.one
            for m, _ in g.terms:
                assert not any(
                    mono_divides(leads[j], m) for j in range(len(basis)) if j != i
                )

    def test_s_polynomials_reduce_to_zero(self):
        basis = buchberger(mk(R2, "x^2 - y", "y^2 - x")).basis
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                assert not normal_form(s_polynomial(basis[i], basis[j]), basis)

    def test_uniqueness_under_row_operations(self):
        f, g = P("x^2 - y"), P("x*y - 1")
        a = ideal(f, g)
        b = ideal(f + g, g)
        c = ideal(f.scale(3), g - f)
        assert buchberger(a).basis == buchberger(b).basis == buchberger(c).basis

    def test_pair_cap_raises(self):
        clear_cache()
        pres = mk(R3, "x + y + z", "x*y + y*z + z*x", "x*y*z - 1")
        with pytest.raises(DegreeCapExceeded):
            buchberger(pres, pair_cap=1)

    def test_degree_cap_raises(self):
        clear_cache()
        # (x^3 - y, x*y - 1) produces x - y^3 along the way
        pres = mk(R2, "x^3 - y", "x*y - 1")
        with pytest.raises(DegreeCapExceeded):
            buchberger(pres, degree_cap=2)

    def test_coefficient_swell_fails_loudly(self):
        # under lex this basis marches up in degree while coefficients
        # double in size every few pairs; default caps must cut it off
        # promptly instead of grinding
        import time

        from gbtransfer.polyarith import LEX, PolyRing, QQ

        clear_cache()
        r3 = PolyRing(QQ, 3, LEX, ("w", "x", "y"))
        pres = IdealPresentation(
            r3,
            tuple(
                parse_polynomial(t, r3)
                for t in (
                    "2*w^2 - 3*w*x^2*y^2 - x^2*y^2 - x",
                    "3*w^2*y - x^2*y",
                    "2*w^2*x^2*y - w*x*y^2 - x^2",
                )
            ),
        )
        t0 = time.monotonic()
        with pytest.raises(DegreeCapExceeded):
            buchberger(pres)
        assert time.monotonic() - t0 < 30

    def test_memoized_recomputation_identical(self):
        pres = mk(R2, "x^2 - y", "x")
        assert buchberger(pres).basis is buchberger(pres).basis


class TestMembership:
    def test_multiple_of_generator(self):
        assert ideal_member(P("x^2"), mk(R2, "x"))

    def test_other_variable_not_member(self):
        assert not ideal_member(P("y"), mk(R2, "x"))

    def test_hand_combination(self):
        # x + y = (x - y) + 2*y * 1
        assert ideal_member(P("x + y"), mk(R2, "x - y", "2*y"))

    def test_zero_ideal_membership(self):
        zero = IdealPresentation(R2, (R2.zero(),))
        assert ideal_member(R2.zero(), zero)
        assert not ideal_member(P("x"), zero)


class TestContainsEqual:
    def test_power_containment(self):
        assert ideal_contains(mk(R2, "x^2"), mk(R2, "x"))
        assert not ideal_contains(mk(R2, "x"), mk(R2, "x^2"))

    def test_equal_reduced_bases(self):
        assert ideal_equal(mk(R2, "x^2 - y", "x"), mk(R2, "x", "y"))

    def test_reflexivity(self):
        for pres in (mk(R2, "x*y - 1"), mk(R3, "x + y", "z^2")):
            assert ideal_equal(pres, pres)

    def test_mismatched_rings(self):
        with pytest.raises(AmbientMismatch):
            ideal_equal(mk(R2, "x"), mk(R3, "x"))


class TestQuotientIsZero:
    def test_literal_zero(self):
        f = P("T1^2 - T1^2", RT2)
        assert quotient_is_zero(f, mk(RT2, "T1*T2 - 1"))

    def test_generator_is_zero_in_quotient(self):
        assert quotient_is_zero(P("T1*T2 - 1", RT2), mk(RT2, "T1*T2 - 1"))

    def test_nonmember_is_nonzero(self):
        r = PolyRing(QQ, 1, GREVLEX, ("T",))
        assert not quotient_is_zero(
            parse_polynomial("T", r), mk(r, "T^2")
        )
