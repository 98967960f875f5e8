"""Buchberger's algorithm, normal forms, and ideal comparison procedures.

The reduced Groebner basis is the canonical identity of an ideal here: it
is unique for a given (ideal, order), which is what makes equality and
containment decidable through normal forms alone.  Bases are memoized per
presentation because the layers above fire many predicates at the same
ideals.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyarith import (
    AmbientMismatch,
    MonomialOrder,
    Polynomial,
    PolyRing,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

DEGREE_CAP = 64
PAIR_CAP = 100_000
STEP_CAP = 100_000
COEFF_BIT_CAP = 8192


class DegreeCapExceeded(RuntimeError):
    """A basis computation blew past its safety cap instead of hanging."""


@dataclass(frozen=True)
class IdealPresentation:
    """An ideal given by explicit generators in a fixed ambient ring.

    Zero generators are dropped at construction; the zero ideal keeps a
    single zero generator so every presentation is non-empty.
    """

    ring: PolyRing
    generators: tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        gens = []
        for g in self.generators:
            if not isinstance(g, Polynomial):
                raise TypeError("generators must be polynomials")
            if g.ring != self.ring:
                raise AmbientMismatch("generator outside the ambient ring")
            if g:
                gens.append(g)
        if not gens:
            gens = [self.ring.zero()]
        object.__setattr__(self, "generators", tuple(gens))

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def is_zero_ideal(self) -> bool:
        return len(self.generators) == 1 and not self.generators[0]


def ideal(*gens: Polynomial, ring: PolyRing | None = None) -> IdealPresentation:
    """Presentation builder; the ring is inferred from the first generator."""
    if ring is None:
        if not gens:
            raise ValueError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    return IdealPresentation(ring, tuple(gens))


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced basis: monic, pairwise lead-irreducible, canonically sorted."""

    basis: tuple[Polynomial, ...]
    order: MonomialOrder
    source: IdealPresentation


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.ring != g.ring:
        raise AmbientMismatch("s-polynomial needs one common ring")
    fld = f.ring.field
    mf, cf = f.leading_term()
    mg, cg = g.leading_term()
    lcm = mono_lcm(mf, mg)
    a = f.mul_term(fld.inv(cf), mono_div(lcm, mf))
    b = g.mul_term(fld.inv(cg), mono_div(lcm, mg))
    return a - b


def normal_form(
    f: Polynomial,
    divisors: Sequence[Polynomial],
    degree_cap: int | None = None,
    step_cap: int | None = None,
    coeff_bit_cap: int | None = None,
) -> Polynomial:
    """Remainder of f under multivariate division by the listed divisors.

    Deterministic: each step reduces the current leading term against the
    first listed divisor whose leading monomial divides it.  No term of the
    result is divisible by any divisor's leading monomial, and f minus the
    result lies in the ideal the divisors generate.

    Division always terminates, but under orders that are not
    degree-compatible (lex) the intermediate total degree and the rational
    coefficient size can explode; the optional caps (intermediate total
    degree, reduction step count, coefficient bit size) turn such grinds
    into DegreeCapExceeded.  All three are exact counts, so capped runs
    stay machine-independent.
    """
    ring = f.ring
    fld = ring.field
    zero = fld.zero
    key = ring.order.sort_key
    table = []
    for g in divisors:
        if g.ring != ring:
            raise AmbientMismatch("divisor outside the ambient ring")
        if g:
            table.append((g.leading_monomial(), g.leading_coeff(), g.terms))
    work = dict(f.terms)
    rem: dict = {}
    steps = 0
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for gm, gc, gterms in table:
            if mono_divides(gm, m):
                steps += 1
                if step_cap is not None and steps > step_cap:
                    raise DegreeCapExceeded(
                        f"division passed {step_cap} reduction steps"
                    )
                factor = fld.div(c, gc)
                if (
                    coeff_bit_cap is not None
                    and isinstance(factor, Fraction)
                    and factor.numerator.bit_length()
                    + factor.denominator.bit_length()
                    > coeff_bit_cap
                ):
                    raise DegreeCapExceeded(
                        f"division coefficient passed {coeff_bit_cap} bits"
                    )
                quot = mono_div(m, gm)
                for tm, tc in gterms[1:]:
                    mm = mono_mul(tm, quot)
                    if degree_cap is not None and mono_degree(mm) > degree_cap:
                        raise DegreeCapExceeded(
                            f"division intermediate degree passed {degree_cap}"
                        )
                    nv = fld.sub(work.get(mm, zero), fld.mul(factor, tc))
                    if nv:
                        work[mm] = nv
                    elif mm in work:
                        del work[mm]
                break
        else:
            rem[m] = c
    return ring.from_dict(rem)


_BASIS_CACHE: dict = {}


def clear_cache() -> None:
    _BASIS_CACHE.clear()


def _chain_skip(i: int, j: int, lcm, lms, pending) -> bool:
    # Skip (i, j) when a third lead divides their lcm and both linking
    # pairs are already settled (classic second Buchberger criterion).
    for k in range(len(lms)):
        if k == i or k == j:
            continue
        if mono_divides(lms[k], lcm):
            a = (i, k) if i < k else (k, i)
            b = (j, k) if j < k else (k, j)
            if a not in pending and b not in pending:
                return True
    return False


def _reduce_basis(
    G: list[Polynomial],
    ring: PolyRing,
    degree_cap: int | None = None,
    step_cap: int | None = None,
    coeff_bit_cap: int | None = None,
) -> tuple[Polynomial, ...]:
    lms = [g.leading_monomial() for g in G]
    removed: set[int] = set()
    for i in range(len(G)):
        for j in range(len(G)):
            if i == j or i in removed or j in removed:
                continue
            if mono_divides(lms[j], lms[i]):
                removed.add(i)
                break
    minimal = [G[i] for i in range(len(G)) if i not in removed]
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = normal_form(
            g,
            others,
            degree_cap=degree_cap,
            step_cap=step_cap,
            coeff_bit_cap=coeff_bit_cap,
        )
        if r:
            out.append(r.monic())
    out.sort(key=lambda h: ring.order.sort_key(h.leading_monomial()), reverse=True)
    return tuple(out)


def buchberger(
    pres: IdealPresentation,
    *,
    degree_cap: int = DEGREE_CAP,
    pair_cap: int = PAIR_CAP,
    step_cap: int = STEP_CAP,
    coeff_bit_cap: int = COEFF_BIT_CAP,
) -> GroebnerBasis:
    """Reduced Groebner basis of the presented ideal.

    Pair selection is normal strategy: smallest (lcm degree, lcm order key)
    first, which makes runs reproducible.  The product and chain criteria
    prune pairs.  The caps convert pathological growth into a
    DegreeCapExceeded error rather than an open-ended run.
    """
    cache_key = (pres.ring, pres.generators)
    cached = _BASIS_CACHE.get(cache_key)
    if cached is not None:
        return GroebnerBasis(cached, pres.order, pres)

    ring = pres.ring
    key = ring.order.sort_key
    G = [g.monic() for g in pres.generators if g]
    if not G:
        _BASIS_CACHE[cache_key] = ()
        return GroebnerBasis((), pres.order, pres)

    lms = [g.leading_monomial() for g in G]
    heap: list = []
    pending: set[tuple[int, int]] = set()

    def push(i: int, j: int) -> None:
        lcm = mono_lcm(lms[i], lms[j])
        heapq.heappush(heap, (mono_degree(lcm), key(lcm), i, j))
        pending.add((i, j))

    for j in range(len(G)):
        for i in range(j):
            push(i, j)

    handled = 0
    while heap:
        _, _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        handled += 1
        if handled > pair_cap:
            raise DegreeCapExceeded(f"more than {pair_cap} S-pairs examined")
        lcm = mono_lcm(lms[i], lms[j])
        if lcm == mono_mul(lms[i], lms[j]):  # coprime leads
            continue
        if _chain_skip(i, j, lcm, lms, pending):
            continue
        r = normal_form(
            s_polynomial(G[i], G[j]),
            G,
            degree_cap=degree_cap,
            step_cap=step_cap,
            coeff_bit_cap=coeff_bit_cap,
        )
        if not r:
            continue
        if r.degree() > degree_cap:
            raise DegreeCapExceeded(
                f"basis element degree passed the cap {degree_cap}"
            )
        r = r.monic()
        G.append(r)
        lms.append(r.leading_monomial())
        t = len(G) - 1
        for i2 in range(t):
            push(i2, t)

    reduced = _reduce_basis(G, ring, degree_cap, step_cap, coeff_bit_cap)
    _BASIS_CACHE[cache_key] = reduced
    return GroebnerBasis(reduced, pres.order, pres)


def ideal_member(f: Polynomial, I: IdealPresentation) -> bool:
    """Membership through the reduced basis: normal form equals zero."""
    if f.ring != I.ring:
        raise AmbientMismatch("polynomial outside the ideal's ring")
    return not normal_form(f, buchberger(I).basis)


def ideal_contains(I: IdealPresentation, J: IdealPresentation) -> bool:
    """Whether I is a subset of J (every generator of I lies in J)."""
    if I.ring != J.ring:
        raise AmbientMismatch("ideals from different rings")
    basis = buchberger(J).basis
    return all(not normal_form(g, basis) for g in I.generators)


def ideal_equal(I: IdealPresentation, J: IdealPresentation) -> bool:
    """Equality as ideals: identical reduced bases."""
    if I.ring != J.ring:
        raise AmbientMismatch("ideals from different rings")
    return buchberger(I).basis == buchberger(J).basis


def quotient_is_zero(f: Polynomial, I: IdealPresentation) -> bool:
    """Whether f's residue in ring/I is zero."""
    return ideal_member(f, I)
