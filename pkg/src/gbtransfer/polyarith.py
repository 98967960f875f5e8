"""Exact multivariate polynomial arithmetic over Q and prime fields.

Coefficients are exact everywhere: rationals are `fractions.Fraction`
values in lowest terms, prime-field residues are plain ints in 0..p-1
interpreted through their field object.  A polynomial is an immutable term
list kept strictly descending under its ring's monomial order, with no
zero coefficients and no duplicate monomials, so structural equality is
mathematical equality.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as _dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

NEG_INF = float("-inf")  # degree of the zero polynomial


class AmbientMismatch(ValueError):
    """Operands live in different ambient rings."""


class BadPrime(ValueError):
    """Coefficient reduction mod p hit a denominator divisible by p."""

    def __init__(self, p: int, detail: str = "") -> None:
        self.p = p
        super().__init__(f"bad prime {p}" + (f": {detail}" if detail else ""))


_MILLER_RABIN_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact far beyond word-sized moduli."""
    if n < 2:
        return False
    for q in _MILLER_RABIN_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MILLER_RABIN_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_EXACT_LITERAL = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")


@dataclass(frozen=True)
class RationalField:
    """The rational numbers; elements are reduced `Fraction` values."""

    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value) -> Fraction:
        if isinstance(value, bool):
            raise TypeError("bool is not a field element")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot interpret {value!r} as a rational")

    def parse(self, text: str) -> Fraction:
        text = text.strip()
        if not _EXACT_LITERAL.match(text):
            raise ValueError(f"not an exact rational literal: {text!r}")
        return Fraction(text)

    def format(self, a: Fraction) -> str:
        return str(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(a.denominator, a.numerator)

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b

    def pow(self, a, e: int):
        if e < 0:
            return self.inv(a) ** (-e)
        return a ** e

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def __repr__(self) -> str:
        return "QQ"


@dataclass(frozen=True)
class PrimeField:
    """A prime field F_p; elements are canonical residues 0..p-1."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError("modulus must be an int")
        if self.p >= 1 << 63:
            raise ValueError("modulus exceeds the machine-word bound")
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    @property
    def char(self) -> int:
        return self.p

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def coerce(self, value) -> int:
        if isinstance(value, bool):
            raise TypeError("bool is not a field element")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return self.from_rational(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot interpret {value!r} as an F_{self.p} element")

    def from_rational(self, q: Fraction) -> int:
        if q.denominator % self.p == 0:
            raise BadPrime(self.p, f"denominator of {q} vanishes")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def parse(self, text: str) -> int:
        text = text.strip()
        if not _EXACT_LITERAL.match(text):
            raise ValueError(f"not an exact coefficient literal: {text!r}")
        return self.from_rational(Fraction(text))

    def format(self, a: int) -> str:
        return str(a)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e: int):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def from_int(self, n: int) -> int:
        return n % self.p

    def __repr__(self) -> str:
        return f"GF({self.p})"


QQ = RationalField()

Field = RationalField | PrimeField

Mono = tuple[int, ...]


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    """Whether a divides b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Mono, b: Mono) -> Mono:
    """The quotient a/b; exactness is required."""
    q = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in q):
        raise ValueError("monomial division is not exact")
    return q


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(m: Mono) -> int:
    return sum(m)


@lru_cache(maxsize=None)
def monomials_up_to(nvars: int, max_degree: int) -> tuple[Mono, ...]:
    """Every exponent vector with total degree <= max_degree."""
    if nvars < 1:
        raise ValueError("need at least one variable")
    if max_degree < 0:
        raise ValueError("degree bound must be non-negative")
    return tuple(
        m
        for m in itertools.product(range(max_degree + 1), repeat=nvars)
        if sum(m) <= max_degree
    )


@dataclass(frozen=True)
class MonomialOrder:
    """A fixed multiplicative well-order on monomials (lex or grevlex)."""

    kind: str = "grevlex"
    perm: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.perm is not None:
            object.__setattr__(self, "perm", tuple(self.perm))
            if sorted(self.perm) != list(range(len(self.perm))):
                raise ValueError("perm must be a permutation of 0..k-1")

    def sort_key(self, m: Mono):
        e = m if self.perm is None else tuple(m[i] for i in self.perm)
        if self.kind == "lex":
            return e
        return (sum(e), tuple(-x for x in reversed(e)))

    def compare(self, a: Mono, b: Mono) -> int:
        """-1, 0 or 1 for a < b, a = b, a > b; lengths must agree."""
        if len(a) != len(b):
            raise AmbientMismatch("monomial lengths differ")
        ka, kb = self.sort_key(a), self.sort_key(b)
        return (ka > kb) - (ka < kb)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


@dataclass(frozen=True)
class PolyRing:
    """Ambient ring descriptor.

    Identity is (field, nvars, order); variable names are display metadata
    only and never participate in equality or hashing.
    """

    field: Field
    nvars: int
    order: MonomialOrder = GREVLEX
    names: tuple[str, ...] = _dc_field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.nvars < 1:
            raise ValueError("a polynomial ring needs at least one variable")
        if not self.names:
            object.__setattr__(
                self, "names", tuple(f"x{i + 1}" for i in range(self.nvars))
            )
        else:
            object.__setattr__(self, "names", tuple(self.names))
        if len(self.names) != self.nvars:
            raise ValueError("variable name count does not match nvars")
        if self.order.perm is not None and len(self.order.perm) != self.nvars:
            raise ValueError("order permutation length does not match nvars")

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return self.constant(self.field.one)

    def constant(self, value) -> "Polynomial":
        c = self.field.coerce(value)
        if not c:
            return Polynomial(self, ())
        return Polynomial(self, (((0,) * self.nvars, c),))

    def variable(self, i: int) -> "Polynomial":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, ((exps, self.field.one),))

    def from_dict(self, terms: dict) -> "Polynomial":
        items = [(m, c) for m, c in terms.items() if c]
        items.sort(key=lambda mc: self.order.sort_key(mc[0]), reverse=True)
        return Polynomial(self, tuple(items))

    def from_terms(self, pairs: Iterable[tuple]) -> "Polynomial":
        """Build from (coefficient, exponents) pairs; duplicates accumulate."""
        acc: dict = {}
        for coeff, exps in pairs:
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise AmbientMismatch(
                    f"exponent vector length {len(exps)} != {self.nvars}"
                )
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = self.field.coerce(coeff)
            prev = acc.get(exps)
            acc[exps] = c if prev is None else self.field.add(prev, c)
        return self.from_dict(acc)

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(field, self.nvars, self.order, self.names)


class Polynomial:
    """Immutable canonical term list over a fixed ambient ring."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: tuple) -> None:
        # terms must already be canonical; go through PolyRing.from_dict
        # when that is not guaranteed.
        self.ring = ring
        self.terms = terms
        self._hash = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    def degree(self):
        """Total degree; NEG_INF for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(mono_degree(m) for m, _ in self.terms)

    def leading_term(self) -> tuple:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        return self.terms[0]

    def leading_monomial(self) -> Mono:
        return self.leading_term()[0]

    def leading_coeff(self):
        return self.leading_term()[1]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        fld = self.ring.field
        lc = self.terms[0][1]
        if lc == fld.one:
            return self
        inv = fld.inv(lc)
        return Polynomial(
            self.ring, tuple((m, fld.mul(inv, c)) for m, c in self.terms)
        )

    def scale(self, value) -> "Polynomial":
        fld = self.ring.field
        c = fld.coerce(value)
        if not c or not self.terms:
            return self.ring.zero()
        return Polynomial(
            self.ring, tuple((m, fld.mul(c, tc)) for m, tc in self.terms)
        )

    def mul_term(self, coeff, mono: Mono) -> "Polynomial":
        """Multiply by a single term; order multiplicativity keeps canonical form."""
        if len(mono) != self.ring.nvars:
            raise AmbientMismatch("monomial length does not match the ring")
        fld = self.ring.field
        c = fld.coerce(coeff)
        if not c or not self.terms:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            tuple((mono_mul(m, mono), fld.mul(c, tc)) for m, tc in self.terms),
        )

    def _coerce_operand(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise AmbientMismatch("polynomials from different rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce_operand(other)
        fld = self.ring.field
        acc = dict(self.terms)
        for m, c in other.terms:
            prev = acc.get(m)
            nv = c if prev is None else fld.add(prev, c)
            if nv:
                acc[m] = nv
            elif m in acc:
                del acc[m]
        return self.ring.from_dict(acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        fld = self.ring.field
        return Polynomial(
            self.ring, tuple((m, fld.neg(c)) for m, c in self.terms)
        )

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce_operand(other)
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce_operand(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if other.ring != self.ring:
            raise AmbientMismatch("polynomials from different rings")
        fld = self.ring.field
        acc: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                v = fld.mul(c1, c2)
                prev = acc.get(m)
                acc[m] = v if prev is None else fld.add(prev, v)
        return self.ring.from_dict(acc)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers take non-negative int exponents")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def evaluate(self, point: Sequence):
        """Value at a point with coordinates in the coefficient field."""
        if len(point) != self.ring.nvars:
            raise AmbientMismatch("point length does not match the ring")
        fld = self.ring.field
        vals = [fld.coerce(c) for c in point]
        acc = fld.zero
        for mono, c in self.terms:
            v = c
            for i, e in enumerate(mono):
                if e:
                    v = fld.mul(v, fld.pow(vals[i], e))
            acc = fld.add(acc, v)
        return acc

    def __repr__(self) -> str:
        return format_polynomial(self)


def substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Evaluate an integer-coefficient polynomial at polynomial images.

    Acts as the ring homomorphism sending variable i of f's ring to
    images[i]; all images must share one target ring.
    """
    if len(images) != f.ring.nvars:
        raise AmbientMismatch(
            f"expected {f.ring.nvars} images, got {len(images)}"
        )
    if not images:
        raise AmbientMismatch("substitution needs at least one image")
    target = images[0].ring
    for g in images[1:]:
        if g.ring != target:
            raise AmbientMismatch("images live in different rings")
    tf = target.field
    total = target.zero()
    for mono, c in f.terms:
        if not isinstance(c, Fraction) or c.denominator != 1:
            raise ValueError("substitution source must have integer coefficients")
        term = target.constant(tf.from_int(c.numerator))
        for i, e in enumerate(mono):
            if e:
                term = term * images[i] ** e
        total = total + term
    return total


def reduce_coeffs_mod_p(f: Polynomial, p: int) -> Polynomial:
    """Map each coefficient a/b to a * b^-1 mod p.

    Raises BadPrime when p divides some reduced denominator.
    """
    if not isinstance(f.ring.field, RationalField):
        raise AmbientMismatch("only rational-coefficient polynomials reduce mod p")
    fp = PrimeField(p)
    target = f.ring.with_field(fp)
    acc: dict = {}
    for m, c in f.terms:
        v = fp.from_rational(c)
        if v:
            acc[m] = v
    return target.from_dict(acc)


def _term_body(field: Field, names: tuple[str, ...], coeff, mono: Mono) -> str:
    vars_part = "*".join(
        names[i] if e == 1 else f"{names[i]}^{e}"
        for i, e in enumerate(mono)
        if e
    )
    if not vars_part:
        return field.format(coeff)
    if coeff == field.one:
        return vars_part
    return f"{field.format(coeff)}*{vars_part}"


def format_polynomial(f: Polynomial) -> str:
    """Render as "c*x^e*y + ..." with signs folded into the separators."""
    if not f.terms:
        return "0"
    field = f.ring.field
    rational = isinstance(field, RationalField)
    parts = []
    for mono, c in f.terms:
        neg = rational and c < 0
        body = _term_body(field, f.ring.names, -c if neg else c, mono)
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()])|(\s+)|(.)")


def _tokenize(text: str) -> list[tuple]:
    out = []
    for number, name, op, space, junk in _TOKEN.findall(text):
        if junk:
            raise ValueError(f"bad character {junk!r} in polynomial text")
        if space:
            continue
        if number:
            out.append(("num", int(number)))
        elif name:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
    out.append(("end", None))
    return out


class _PolyParser:
    """Recursive-descent parser for "+ - * ^ ( )" polynomial expressions."""

    def __init__(self, text: str, ring: PolyRing) -> None:
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.index = {name: k for k, name in enumerate(ring.names)}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, val = self.peek()
        if kind != "end":
            raise ValueError(f"unexpected {val!r} in polynomial text")
        return p

    def expr(self) -> Polynomial:
        kind, val = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        p = self.term()
        if negate:
            p = -p
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p - q if val == "-" else p + q
            else:
                return p

    def term(self) -> Polynomial:
        p = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.factor()
            else:
                return p

    def factor(self) -> Polynomial:
        p = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, v = self.take()
            if k != "num":
                raise ValueError("exponent must be a non-negative integer")
            p = p ** v
        return p

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            k, v = self.peek()
            if k == "op" and v == "/":
                self.take()
                k2, v2 = self.take()
                if k2 != "num":
                    raise ValueError("denominator must be an integer")
                return self.ring.constant(Fraction(val, v2))
            return self.ring.constant(val)
        if kind == "name":
            if val not in self.index:
                known = ", ".join(self.ring.names)
                raise ValueError(f"unknown variable {val!r}; ring has {known}")
            return self.ring.variable(self.index[val])
        if kind == "op" and val == "(":
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parenthesis")
            return p
        if kind == "op" and val == "-":
            return -self.atom()
        raise ValueError(f"unexpected token {val!r} in polynomial text")


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse "2*x^2*y - 1/3" style expressions against the ring's names."""
    return _PolyParser(text, ring).parse()
