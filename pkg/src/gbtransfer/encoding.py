"""Fixed-size coefficient codes for bounded-complexity ideals.

An ideal with generator degrees at most d in n variables flattens to a
D x D grid over the degree-<= d monomial list in descending order, where
D = C(n+d, n) counts those monomials.  Generators are first made monic
with pairwise distinct leading monomials, which caps their number at D;
zero rows pad the grid square.  Codes serialize to JSON with exact
coefficient strings and round-trip bit-identically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .groebner import IdealPresentation
from .polyarith import (
    Field,
    GREVLEX,
    LEX,
    Mono,
    MonomialOrder,
    PolyRing,
    PrimeField,
    QQ,
    RationalField,
    monomials_up_to,
)


class ComplexityExceeded(ValueError):
    """The presentation does not fit within the requested complexity."""

    def __init__(self, d: int, detail: str = "") -> None:
        self.d = d
        super().__init__(
            f"complexity bound {d} exceeded" + (f": {detail}" if detail else "")
        )


def code_size(n: int, d: int) -> int:
    """Number of monomials of degree <= d in n variables: C(n+d, n)."""
    if n < 1:
        raise ValueError("need at least one variable")
    if d < n:
        raise ValueError(f"complexity bound {d} below the variable count {n}")
    size = math.comb(n + d, n)
    assert size <= math.comb(2 * d, d)  # holds whenever d >= n
    return size


def monomial_basis(nvars: int, d: int, order: MonomialOrder) -> list[Mono]:
    """Monomials of total degree <= d, descending under the order."""
    monos = list(monomials_up_to(nvars, d))
    monos.sort(key=order.sort_key, reverse=True)
    return monos


def _poly_sort_key(g, order: MonomialOrder):
    return (
        order.sort_key(g.leading_monomial()),
        len(g.terms),
        tuple((order.sort_key(m), c) for m, c in g.terms),
    )


def normalize_generators(I: IdealPresentation) -> IdealPresentation:
    """Same ideal, generators monic with pairwise distinct leading monomials.

    Leading-term collisions are resolved by subtracting the kept generator;
    each subtraction strictly lowers the colliding lead, so this terminates.
    Zero differences drop out.  Simpler generators are processed first, so
    {x+y, x} normalizes to {x, y}.
    """
    ring = I.ring
    order = ring.order
    queue = sorted(
        (g.monic() for g in I.generators if g),
        key=lambda g: _poly_sort_key(g, order),
    )
    by_lm: dict = {}
    idx = 0
    while idx < len(queue):
        f = queue[idx]
        idx += 1
        lm = f.leading_monomial()
        kept = by_lm.get(lm)
        if kept is None:
            by_lm[lm] = f
        else:
            diff = f - kept
            if diff:
                queue.append(diff.monic())
    gens = sorted(
        by_lm.values(),
        key=lambda g: order.sort_key(g.leading_monomial()),
        reverse=True,
    )
    return IdealPresentation(ring, tuple(gens))


@dataclass(frozen=True)
class IdealCode:
    """The flattened form: header (n, d, order, field) plus a D x D grid."""

    nvars: int
    complexity: int
    order: MonomialOrder
    field: Field
    rows: tuple[tuple, ...]


def encode_ideal(I: IdealPresentation, d: int) -> IdealCode:
    """Coefficient rows of the normalized generators on the monomial list."""
    ring = I.ring
    n = ring.nvars
    norm = normalize_generators(I)
    if d < n:
        raise ComplexityExceeded(d, f"{n} variables force complexity >= {n}")
    degs = [int(g.degree()) for g in norm.generators if g]
    if degs and max(degs) > d:
        raise ComplexityExceeded(
            d, f"a normalized generator has degree {max(degs)}"
        )
    size = code_size(n, d)
    monos = monomial_basis(n, d, ring.order)
    index = {m: i for i, m in enumerate(monos)}
    zero = ring.field.zero
    rows = []
    for g in norm.generators:
        if not g:
            continue
        row = [zero] * size
        for m, c in g.terms:
            row[index[m]] = c
        rows.append(tuple(row))
    assert len(rows) <= size  # leading-term dedup caps the generator count
    zero_row = (zero,) * size
    while len(rows) < size:
        rows.append(zero_row)
    return IdealCode(n, d, ring.order, ring.field, tuple(rows))


def decode_ideal(code: IdealCode, names: tuple[str, ...] = ()) -> IdealPresentation:
    """Rebuild a presentation from the nonzero rows of a code."""
    size = code_size(code.nvars, code.complexity)
    if len(code.rows) != size or any(len(r) != size for r in code.rows):
        raise ValueError(f"malformed code: expected {size} rows of {size} entries")
    ring = PolyRing(code.field, code.nvars, code.order, tuple(names))
    monos = monomial_basis(code.nvars, code.complexity, code.order)
    gens = []
    for row in code.rows:
        terms = {m: c for m, c in zip(monos, row) if c}
        if terms:
            gens.append(ring.from_dict(terms))
    return IdealPresentation(ring, tuple(gens))


def field_to_json(field: Field):
    if isinstance(field, RationalField):
        return "Q"
    return {"Fp": field.p}


def field_from_json(obj) -> Field:
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"Fp"}:
        return PrimeField(int(obj["Fp"]))
    raise ValueError(f"unknown field descriptor {obj!r}")


def order_to_json(order: MonomialOrder) -> str:
    if order.perm is not None:
        raise ValueError("serialized orders cannot carry a variable permutation")
    return order.kind


def order_from_json(text) -> MonomialOrder:
    if text == "grevlex":
        return GREVLEX
    if text == "lex":
        return LEX
    raise ValueError(f"unknown monomial order {text!r}")


def code_to_json(code: IdealCode) -> str:
    """Serialize with exact coefficient strings; byte-stable output."""
    fld = code.field
    obj = {
        "nvars": code.nvars,
        "complexity": code.complexity,
        "order": order_to_json(code.order),
        "field": field_to_json(fld),
        "rows": [[fld.format(c) for c in row] for row in code.rows],
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def code_from_json(text: str) -> IdealCode:
    obj = json.loads(text)
    if not isinstance(obj, dict) or set(obj) != {
        "nvars",
        "complexity",
        "order",
        "field",
        "rows",
    }:
        raise ValueError("malformed code object")
    fld = field_from_json(obj["field"])
    rows = tuple(
        tuple(fld.parse(entry) for entry in row) for row in obj["rows"]
    )
    return IdealCode(
        int(obj["nvars"]),
        int(obj["complexity"]),
        order_from_json(obj["order"]),
        fld,
        rows,
    )
