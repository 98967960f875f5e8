"""Witness verification, reduction mod p, and the uniform-complexity sweep.

A witness packages an ideal I (defining the quotient algebra), a prime
candidate m, lifted element tuples x and y, an optional rational point,
and a claimed height.  Verification checks, inside the witness's own
field: Rad((x) + I) = m, vanishing of every system equation at (x, y)
modulo I, the height bookkeeping ht(m) - ht(I), and the residue-field
certification through the rational point.  The sweep reduces a rational
witness at every requested prime outside a finite bad set and re-runs the
same checks, reporting the per-prime outcomes and the maximal complexity
seen, which never exceeds the characteristic-zero complexity.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian
from typing import Sequence

from .groebner import (
    DegreeCapExceeded,
    IdealPresentation,
    buchberger,
    ideal_contains,
    normal_form,
)
from .polyarith import (
    AmbientMismatch,
    BadPrime,
    GREVLEX,
    MonomialOrder,
    Polynomial,
    PolyRing,
    PrimeField,
    QQ,
    RationalField,
    format_polynomial,
    is_prime,
    reduce_coeffs_mod_p,
    substitute,
)
from .predicates import (
    ComplexityReport,
    NotContained,
    ProbeResult,
    RadicalResult,
    UnitIdeal,
    height_in_quotient,
    prime_probe,
    radical_equals,
    rational_maximal,
)

POINT_BUDGET = 10 ** 6


class DegenerateGenerator(ValueError):
    """Reduction mod p collapsed a generator to zero or to a unit."""


class BudgetExceeded(RuntimeError):
    """Point enumeration would exceed the configured evaluation budget."""


class CharZeroFailure(RuntimeError):
    """Sweep refused: the witness already fails in characteristic zero."""

    def __init__(self, result: "VerificationResult") -> None:
        self.result = result
        super().__init__("witness fails in characteristic zero")


def system_ring(n: int, r: int, order: MonomialOrder = GREVLEX) -> PolyRing:
    """Ring for system equations over Z: variables X1..Xn, Y1..Yr."""
    names = tuple(f"X{i + 1}" for i in range(n)) + tuple(
        f"Y{j + 1}" for j in range(r)
    )
    return PolyRing(QQ, n + r, order, names)


@dataclass(frozen=True)
class DiophantineSystem:
    """Equations over Z in the parameter slots X and the free slots Y."""

    n: int
    r: int
    equations: tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        if self.n < 0 or self.r < 0 or self.n + self.r < 1:
            raise ValueError("need n >= 0, r >= 0 and n + r >= 1")
        for F in self.equations:
            if F.ring.nvars != self.n + self.r:
                raise AmbientMismatch(
                    "equation variable count does not match n + r"
                )
            if not isinstance(F.ring.field, RationalField):
                raise AmbientMismatch("system equations live over Z inside Q")
            for _, c in F.terms:
                if c.denominator != 1:
                    raise ValueError("system coefficients must be integers")


@dataclass(frozen=True)
class Witness:
    """Semi-parametric witness data over one ambient ring."""

    ring: PolyRing
    i_gens: tuple[Polynomial, ...]
    m_gens: tuple[Polynomial, ...]
    point_b: tuple | None
    x_images: tuple[Polynomial, ...]
    y_images: tuple[Polynomial, ...]
    claimed_n: int
    domain_claim: bool = False

    def __post_init__(self) -> None:
        for g in (*self.i_gens, *self.m_gens, *self.x_images, *self.y_images):
            if g.ring != self.ring:
                raise AmbientMismatch("witness polynomial outside the ring")
        if self.point_b is not None:
            pt = tuple(self.ring.field.coerce(c) for c in self.point_b)
            if len(pt) != self.ring.nvars:
                raise AmbientMismatch("point length does not match the ring")
            object.__setattr__(self, "point_b", pt)
        object.__setattr__(self, "i_gens", tuple(self.i_gens))
        object.__setattr__(self, "m_gens", tuple(self.m_gens))
        object.__setattr__(self, "x_images", tuple(self.x_images))
        object.__setattr__(self, "y_images", tuple(self.y_images))

    def ideal_i(self) -> IdealPresentation:
        return IdealPresentation(self.ring, self.i_gens)

    def ideal_m(self) -> IdealPresentation:
        return IdealPresentation(self.ring, self.m_gens)


@dataclass(frozen=True)
class Caps:
    """Resource knobs shared by verification and sweeps."""

    exponent_cap: int = 16
    probe_trials: int = 200
    probe_degree: int = 2
    seed: int = 0


def witness_complexity(w: Witness) -> ComplexityReport:
    """Complexity aggregated over I, m and both image tuples."""
    polys = [
        g
        for g in (*w.i_gens, *w.m_gens, *w.x_images, *w.y_images)
        if g
    ]
    degs = [int(g.degree()) for g in polys]
    max_degree = max(degs) if degs else 0
    return ComplexityReport(
        nvars=w.ring.nvars,
        max_degree=max_degree,
        complexity=max(w.ring.nvars, max_degree),
        generator_count=len(polys),
    )


CERT_PASSED = "passed"
CERT_FAILED = "failed"
CERT_NOT_CERTIFIED = "not_certified"


@dataclass(frozen=True)
class VerificationResult:
    condition1: RadicalResult
    condition2: tuple[bool, ...]
    condition2_residues: tuple[str, ...]
    condition3: str
    height_computed: int
    claimed_n: int
    prime_probe: ProbeResult | None
    complexity: ComplexityReport
    passed: bool

    @property
    def height_ok(self) -> bool:
        return self.height_computed == self.claimed_n

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "condition1": self.condition1.as_dict(),
            "condition2": [
                {"alpha": k + 1, "zero": ok, "residue": res}
                for k, (ok, res) in enumerate(
                    zip(self.condition2, self.condition2_residues)
                )
            ],
            "condition3": self.condition3,
            "height": {
                "computed": self.height_computed,
                "claimed": self.claimed_n,
                "ok": self.height_ok,
            },
            "prime_probe": (
                self.prime_probe.as_dict() if self.prime_probe else None
            ),
            "complexity": self.complexity.as_dict(),
        }


def verify_witness(
    sys_: DiophantineSystem, w: Witness, caps: Caps = Caps()
) -> VerificationResult:
    """Run all witness checks in w's own coefficient field.

    Requires I inside m up front.  Overall pass needs the radical equality,
    vanishing of every equation, the height match, and, when a point is
    supplied, the rational-maximality certification.  The primality probe
    on I is attached as evidence when the witness claims a domain.
    """
    if len(w.x_images) != sys_.n or len(w.y_images) != sys_.r:
        raise AmbientMismatch("witness tuple shape does not match the system")
    ring = w.ring
    I = w.ideal_i()
    m = w.ideal_m()
    if not ideal_contains(I, m):
        raise NotContained("I is not contained in m")

    radical_src = IdealPresentation(ring, w.x_images + w.i_gens)
    cond1 = radical_equals(radical_src, m, caps.exponent_cap)

    basis = buchberger(I).basis
    images = list(w.x_images) + list(w.y_images)
    flags, residues = [], []
    for F in sys_.equations:
        residue = normal_form(substitute(F, images), basis)
        flags.append(not residue)
        residues.append(format_polynomial(residue))

    height_n = height_in_quotient(m, I)

    cond3 = CERT_NOT_CERTIFIED
    if w.point_b is not None:
        ok3 = rational_maximal(m, w.point_b)
        if ok3:
            ok3 = all(not g.evaluate(w.point_b) for g in w.i_gens)
        cond3 = CERT_PASSED if ok3 else CERT_FAILED

    probe = (
        prime_probe(I, caps.probe_degree, caps.probe_trials, caps.seed)
        if w.domain_claim
        else None
    )

    passed = (
        cond1.equal
        and all(flags)
        and height_n == w.claimed_n
        and cond3 != CERT_FAILED
    )
    return VerificationResult(
        condition1=cond1,
        condition2=tuple(flags),
        condition2_residues=tuple(residues),
        condition3=cond3,
        height_computed=height_n,
        claimed_n=w.claimed_n,
        prime_probe=probe,
        complexity=witness_complexity(w),
        passed=passed,
    )


def _prime_factors(n: int) -> set[int]:
    n = abs(n)
    out: set[int] = set()
    f = 2
    while f * f <= n:
        while n % f == 0:
            out.add(f)
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.add(n)
    return out


def bad_primes(sys_: DiophantineSystem, w: Witness) -> dict[int, tuple[str, ...]]:
    """Finite exclusion set for the sweep, with reasons.

    Denominator primes anywhere in the witness data, plus numerator primes
    of the leading coefficients of the generators of I, m and (x): those
    vanishing mod p would collapse leading-term structure or drop degrees,
    silently distorting the uniform complexity claim.  A sound
    over-approximation, not a minimal set.
    """
    if not isinstance(w.ring.field, RationalField):
        raise AmbientMismatch("bad primes only make sense for rational witnesses")
    reasons: dict[int, set[str]] = {}

    def note(p: int, why: str) -> None:
        reasons.setdefault(p, set()).add(why)

    for g in (*w.i_gens, *w.m_gens, *w.x_images, *w.y_images):
        for _, c in g.terms:
            for p in _prime_factors(c.denominator):
                note(p, "denominator")
    if w.point_b is not None:
        for c in w.point_b:
            for p in _prime_factors(Fraction(c).denominator):
                note(p, "denominator")
    for g in (*w.i_gens, *w.m_gens, *w.x_images):
        if g:
            for p in _prime_factors(g.leading_coeff().numerator):
                note(p, "leading-coeff")
    return {p: tuple(sorted(reasons[p])) for p in sorted(reasons)}


def reduce_witness_mod_p(w: Witness, p: int) -> Witness:
    """Coefficient-reduce every witness component into F_p.

    Structure (variable counts, order, claimed height, domain claim) is
    preserved.  Raises BadPrime on denominator hits and
    DegenerateGenerator when a generator of I, m or (x) collapses to zero
    or to a nonzero constant.
    """
    if not isinstance(w.ring.field, RationalField):
        raise AmbientMismatch("the witness already has positive characteristic")
    fp = PrimeField(p)
    target = w.ring.with_field(fp)

    def reduce_many(gens, structural: bool) -> tuple[Polynomial, ...]:
        out = []
        for g in gens:
            rg = reduce_coeffs_mod_p(g, p)
            if structural and g:
                if not rg:
                    raise DegenerateGenerator(
                        f"generator {format_polynomial(g)} vanishes mod {p}"
                    )
                if g.degree() > 0 and rg.degree() == 0:
                    raise DegenerateGenerator(
                        f"generator {format_polynomial(g)} becomes a unit mod {p}"
                    )
            out.append(rg)
        return tuple(out)

    i2 = reduce_many(w.i_gens, True)
    m2 = reduce_many(w.m_gens, True)
    x2 = reduce_many(w.x_images, True)
    y2 = reduce_many(w.y_images, False)
    b2 = (
        tuple(fp.from_rational(Fraction(c)) for c in w.point_b)
        if w.point_b is not None
        else None
    )
    return Witness(target, i2, m2, b2, x2, y2, w.claimed_n, w.domain_claim)


@dataclass(frozen=True)
class PrimeOutcome:
    """One sweep entry: verification summary or the recorded error."""

    p: int
    passed: bool | None
    d: int | None
    error: str | None
    unresolved_over_prime_field: bool
    result: VerificationResult | None

    def as_dict(self) -> dict:
        conditions = None
        if self.result is not None:
            conditions = {
                "condition1": self.result.condition1.status,
                "condition2": list(self.result.condition2),
                "condition3": self.result.condition3,
                "height_ok": self.result.height_ok,
            }
        return {
            "p": self.p,
            "passed": self.passed,
            "d": self.d,
            "error": self.error,
            "unresolved_over_prime_field": self.unresolved_over_prime_field,
            "conditions": conditions,
        }


@dataclass(frozen=True)
class SweepReport:
    prime_range: tuple[int, int] | None
    bad_primes: tuple[tuple[int, tuple[str, ...]], ...]
    per_prime: tuple[PrimeOutcome, ...]
    uniform_d: int | None
    char0_d: int
    char0_result: VerificationResult

    def all_passed(self) -> bool:
        return all(o.passed for o in self.per_prime)

    def as_dict(self) -> dict:
        return {
            "prime_range": list(self.prime_range) if self.prime_range else None,
            "char0_d": self.char0_d,
            "uniform_d": self.uniform_d,
            "bad_primes": [
                {"p": p, "reasons": list(reasons)}
                for p, reasons in self.bad_primes
            ],
            "per_prime": [o.as_dict() for o in self.per_prime],
            "char0": self.char0_result.as_dict(),
        }


def _run_prime(
    sys_: DiophantineSystem, w: Witness, p: int, caps: Caps
) -> PrimeOutcome:
    try:
        wp = reduce_witness_mod_p(w, p)
        res = verify_witness(sys_, wp, caps)
    except (
        BadPrime,
        DegenerateGenerator,
        NotContained,
        UnitIdeal,
        DegreeCapExceeded,
    ) as exc:
        return PrimeOutcome(p, None, None, f"{type(exc).__name__}: {exc}", False, None)
    # A failure confined to the rational-point certification may only mean
    # the witness point lives in a proper extension of F_p.
    unresolved = (
        not res.passed
        and res.condition3 == CERT_FAILED
        and res.condition1.equal
        and all(res.condition2)
        and res.height_ok
    )
    return PrimeOutcome(
        p, res.passed, res.complexity.complexity, None, unresolved, res
    )


def sweep(
    sys_: DiophantineSystem,
    w: Witness,
    primes: Sequence[int],
    caps: Caps = Caps(),
    jobs: int = 1,
    prime_range: tuple[int, int] | None = None,
) -> SweepReport:
    """Reduce and re-verify the witness at every requested good prime.

    Refuses to run unless the witness verifies in characteristic zero
    (CharZeroFailure carries the failing result).  Per-prime errors are
    recorded in the report, never raised.  The report is independent of
    the job count: outcomes are merged in prime order.
    """
    candidates = sorted({int(p) for p in primes})
    for p in candidates:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    char0 = verify_witness(sys_, w, caps)
    if not char0.passed:
        raise CharZeroFailure(char0)
    bad = bad_primes(sys_, w)
    bad_in_range = tuple((p, bad[p]) for p in candidates if p in bad)
    work = [p for p in candidates if p not in bad]

    if jobs > 1 and len(work) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(
                pool.map(lambda p: _run_prime(sys_, w, p, caps), work)
            )
    else:
        outcomes = [_run_prime(sys_, w, p, caps) for p in work]
    outcomes.sort(key=lambda o: o.p)

    ds = [o.d for o in outcomes if o.d is not None]
    uniform_d = max(ds) if ds else None
    if prime_range is None and candidates:
        prime_range = (candidates[0], candidates[-1])
    return SweepReport(
        prime_range=prime_range,
        bad_primes=bad_in_range,
        per_prime=tuple(outcomes),
        uniform_d=uniform_d,
        char0_d=char0.complexity.complexity,
        char0_result=char0,
    )


def primes_in_range(lo: int, hi: int) -> list[int]:
    return [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]


def search_witness_points(
    I: IdealPresentation, budget: int = POINT_BUDGET
) -> list[tuple[int, ...]]:
    """All F_p-rational points of V(I), by exhaustive enumeration.

    Points are exponent-ordered tuples of residues; every returned point
    zeroes every generator.
    """
    field = I.ring.field
    if not isinstance(field, PrimeField):
        raise AmbientMismatch("point search runs over a prime field")
    p, n = field.p, I.ring.nvars
    if p ** n > budget:
        raise BudgetExceeded(f"{p}^{n} points exceed the budget {budget}")
    gens = [g for g in I.generators if g]
    out = []
    for point in _cartesian(range(p), repeat=n):
        if all(not g.evaluate(point) for g in gens):
            out.append(point)
    return out
