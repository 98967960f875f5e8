"""Ideal-theoretic decision procedures built on the Groebner kernel.

Covers presentation complexity, Krull dimension and height, radical
equality by bounded power search, a seeded Monte-Carlo primality probe,
and rational-point maximality certification.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .groebner import (
    IdealPresentation,
    buchberger,
    ideal,
    ideal_contains,
    ideal_equal,
    ideal_member,
)
from .polyarith import (
    AmbientMismatch,
    Polynomial,
    RationalField,
    format_polynomial,
    monomials_up_to,
)


class UnitIdeal(ValueError):
    """The presented ideal is the whole ring; the quotient is the zero ring."""


class NotContained(ValueError):
    """A required ideal containment does not hold."""


@dataclass(frozen=True)
class ComplexityReport:
    """Size data of a presentation: variable count, degrees, their max."""

    nvars: int
    max_degree: int
    complexity: int
    generator_count: int

    def as_dict(self) -> dict:
        return {
            "nvars": self.nvars,
            "max_degree": self.max_degree,
            "complexity": self.complexity,
            "generator_count": self.generator_count,
        }


def complexity(I: IdealPresentation) -> ComplexityReport:
    """Complexity of the given presentation: max(nvars, generator degrees).

    Measured on the generators as listed; this is an upper bound for any
    smaller presentation of the same ideal.
    """
    degs = [int(g.degree()) for g in I.generators if g]
    max_degree = max(degs) if degs else 0
    return ComplexityReport(
        nvars=I.ring.nvars,
        max_degree=max_degree,
        complexity=max(I.ring.nvars, max_degree),
        generator_count=len(I.generators),
    )


def _lead_supports(I: IdealPresentation) -> list[frozenset[int]]:
    basis = buchberger(I).basis
    if any(g.degree() == 0 for g in basis):
        raise UnitIdeal("the presented ideal is the whole ring")
    return [
        frozenset(i for i, e in enumerate(g.leading_monomial()) if e)
        for g in basis
    ]


def dimension(I: IdealPresentation) -> int:
    """Krull dimension of ring/I.

    Combinatorial reading of the leading-term ideal: the largest variable
    subset U such that no basis leading monomial is supported inside U.
    """
    supports = _lead_supports(I)
    n = I.ring.nvars
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            u = frozenset(subset)
            if not any(s <= u for s in supports):
                return size
    raise AssertionError("unreachable: the empty subset is always independent")


@dataclass(frozen=True)
class HeightResult:
    """Dimension of the quotient and the complementary codimension."""

    dimension: int
    height: int

    def as_dict(self) -> dict:
        return {"dimension": self.dimension, "codimension": self.height}


def height_poly(I: IdealPresentation) -> HeightResult:
    """Height as codimension: nvars - dim(ring/I)."""
    d = dimension(I)
    return HeightResult(d, I.ring.nvars - d)


def height_in_quotient(m: IdealPresentation, I: IdealPresentation) -> int:
    """Height of m inside ring/I, as ht(m) - ht(I) in the ambient ring."""
    if m.ring != I.ring:
        raise AmbientMismatch("ideals from different rings")
    if not ideal_contains(I, m):
        raise NotContained("the quotient-defining ideal is not inside m")
    return height_poly(m).height - height_poly(I).height


RADICAL_EQUAL = "equal"
RADICAL_NOT_CONTAINED = "not_contained_in_p"
RADICAL_POWER_NOT_FOUND = "generator_power_not_found"


@dataclass(frozen=True)
class RadicalResult:
    """Outcome of the bounded radical-equality check, with certificates.

    generator_power_not_found means "not proven within the cap", never a
    disproof.
    """

    status: str
    exponents: tuple[tuple[Polynomial, int], ...] = ()
    failed_generator: Polynomial | None = None
    cap: int | None = None

    @property
    def equal(self) -> bool:
        return self.status == RADICAL_EQUAL

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "exponents": [
                {"generator": format_polynomial(g), "exponent": e}
                for g, e in self.exponents
            ],
            "failed_generator": (
                format_polynomial(self.failed_generator)
                if self.failed_generator is not None
                else None
            ),
            "cap": self.cap,
        }


def radical_equals(
    I: IdealPresentation, P: IdealPresentation, exponent_cap: int = 16
) -> RadicalResult:
    """Decide Rad(I) = P for a prime candidate P.

    Criterion: I lies inside P and some power of every P-generator falls
    into I, searched incrementally up to the cap.  P's primality is the
    caller's responsibility.
    """
    if exponent_cap < 1:
        raise ValueError("exponent cap must be at least 1")
    if I.ring != P.ring:
        raise AmbientMismatch("ideals from different rings")
    if not ideal_contains(I, P):
        return RadicalResult(RADICAL_NOT_CONTAINED, cap=exponent_cap)
    found = []
    for g in P.generators:
        if not g:
            continue
        power = g
        for e in range(1, exponent_cap + 1):
            if e > 1:
                power = power * g
            if ideal_member(power, I):
                found.append((g, e))
                break
        else:
            return RadicalResult(
                RADICAL_POWER_NOT_FOUND, tuple(found), g, exponent_cap
            )
    return RadicalResult(RADICAL_EQUAL, tuple(found), None, exponent_cap)


PROBE_NOT_PRIME = "not_prime"
PROBE_PROBABLY_PRIME = "probably_prime"


@dataclass(frozen=True)
class ProbeResult:
    status: str
    trials: int
    witness_f: Polynomial | None = None
    witness_g: Polynomial | None = None

    @property
    def probably_prime(self) -> bool:
        return self.status == PROBE_PROBABLY_PRIME

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "trials": self.trials,
            "f": format_polynomial(self.witness_f) if self.witness_f else None,
            "g": format_polynomial(self.witness_g) if self.witness_g else None,
        }


def _sample_coefficients(field) -> tuple:
    if isinstance(field, RationalField):
        return (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2))
    out = []
    for v in (1, -1, 2, -2):
        r = v % field.p
        if r and r not in out:
            out.append(r)
    return tuple(out)


def random_bounded_poly(ring, rng: random.Random, degree_bound: int) -> Polynomial:
    """Sparse random polynomial of total degree <= bound, small coefficients."""
    monos = monomials_up_to(ring.nvars, degree_bound)
    coeffs = _sample_coefficients(ring.field)
    fld = ring.field
    acc: dict = {}
    for _ in range(rng.choice((1, 1, 1, 2, 2, 3))):
        m = rng.choice(monos)
        c = rng.choice(coeffs)
        prev = acc.get(m)
        acc[m] = c if prev is None else fld.add(prev, c)
    return ring.from_dict(acc)


def prime_probe(
    P: IdealPresentation, degree_bound: int, trials: int, seed: int
) -> ProbeResult:
    """Randomized non-primality search.

    Samples pairs outside P and reports the first whose product lands in
    P.  A probably_prime verdict is evidence, not proof; a not_prime
    verdict ships a re-checkable certificate.  Deterministic per seed.
    """
    if degree_bound < 1 or trials < 1:
        raise ValueError("degree bound and trial count must be positive")
    if any(g.degree() == 0 for g in buchberger(P).basis):
        raise UnitIdeal("the probed ideal is the whole ring")
    rng = random.Random(seed)
    for _ in range(trials):
        f = random_bounded_poly(P.ring, rng, degree_bound)
        g = random_bounded_poly(P.ring, rng, degree_bound)
        if ideal_member(f, P) or ideal_member(g, P):
            continue
        if ideal_member(f * g, P):
            return ProbeResult(PROBE_NOT_PRIME, trials, f, g)
    return ProbeResult(PROBE_PROBABLY_PRIME, trials)


def rational_maximal(m: IdealPresentation, point) -> bool:
    """Certify maximality in the rational shape (T_1 - b_1, ..., T_n - b_n).

    True means m equals the vanishing ideal of the point, so the residue
    field is the ground field itself.  False only means "not certified by
    this point", never "not maximal".
    """
    ring = m.ring
    if len(point) != ring.nvars:
        raise AmbientMismatch("point length does not match the ring")
    gens = tuple(
        ring.variable(i) - ring.constant(ring.field.coerce(b))
        for i, b in enumerate(point)
    )
    return ideal_equal(m, ideal(*gens, ring=ring))
