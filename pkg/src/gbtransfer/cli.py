"""Command-line surface: case files, verification, sweeps, predicate tools.

Exit codes: 0 for a pass, 1 for a negative verdict, 2 for structural or
parse errors.  Standard output carries machine-readable JSON only;
messages go to standard error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .encoding import (
    ComplexityExceeded,
    code_from_json,
    code_to_json,
    decode_ideal,
    encode_ideal,
    field_from_json,
    order_from_json,
)
from .groebner import (
    DegreeCapExceeded,
    IdealPresentation,
    buchberger,
    normal_form,
)
from .polyarith import (
    AmbientMismatch,
    BadPrime,
    PolyRing,
    PrimeField,
    QQ,
    RationalField,
    format_polynomial,
    parse_polynomial,
)
from .predicates import (
    NotContained,
    UnitIdeal,
    complexity,
    dimension,
    height_poly,
    prime_probe,
    radical_equals,
    rational_maximal,
)
from .transfer import (
    BudgetExceeded,
    Caps,
    CharZeroFailure,
    DegenerateGenerator,
    DiophantineSystem,
    Witness,
    primes_in_range,
    reduce_witness_mod_p,
    sweep,
    system_ring,
    verify_witness,
)


class CaseFormatError(ValueError):
    """A case file does not match the expected schema."""


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _expect_keys(obj, required, optional=(), where="object"):
    if not isinstance(obj, dict):
        raise CaseFormatError(f"{where} must be a JSON object")
    keys = set(obj)
    missing = sorted(set(required) - keys)
    unknown = sorted(keys - set(required) - set(optional))
    if missing:
        raise CaseFormatError(f"{where} is missing keys: {', '.join(missing)}")
    if unknown:
        raise CaseFormatError(f"{where} has unknown keys: {', '.join(unknown)}")


def _coeff_string(value, where):
    if isinstance(value, bool) or isinstance(value, float):
        raise CaseFormatError(f"{where}: coefficients must be exact strings")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return value
    raise CaseFormatError(f"{where}: coefficients must be exact strings")


def _poly_from_json(obj, ring: PolyRing, where: str):
    if not isinstance(obj, list):
        raise CaseFormatError(f"{where} must be a list of terms")
    pairs = []
    for k, term in enumerate(obj):
        _expect_keys(term, ("coeff", "exps"), where=f"{where}[{k}]")
        exps = term["exps"]
        if not isinstance(exps, list) or not all(
            isinstance(e, int) and not isinstance(e, bool) and e >= 0
            for e in exps
        ):
            raise CaseFormatError(
                f"{where}[{k}]: exps must be non-negative integers"
            )
        coeff = _coeff_string(term["coeff"], f"{where}[{k}]")
        try:
            pairs.append((ring.field.parse(coeff), tuple(exps)))
        except (ValueError, BadPrime) as exc:
            raise CaseFormatError(f"{where}[{k}]: {exc}") from exc
    try:
        return ring.from_terms(pairs)
    except (AmbientMismatch, ValueError) as exc:
        raise CaseFormatError(f"{where}: {exc}") from exc


def parse_case(obj) -> tuple[DiophantineSystem, Witness]:
    """Strict CaseFile reader: unknown fields are rejected."""
    _expect_keys(obj, ("ring", "system", "witness"), where="case")

    ring_obj = obj["ring"]
    _expect_keys(ring_obj, ("field", "vars", "order"), where="ring")
    try:
        field = field_from_json(ring_obj["field"])
        order = order_from_json(ring_obj["order"])
    except ValueError as exc:
        raise CaseFormatError(str(exc)) from exc
    names = ring_obj["vars"]
    if (
        not isinstance(names, list)
        or not names
        or not all(isinstance(v, str) and v for v in names)
        or len(set(names)) != len(names)
    ):
        raise CaseFormatError("ring.vars must be distinct non-empty names")
    ring = PolyRing(field, len(names), order, tuple(names))

    sys_obj = obj["system"]
    _expect_keys(sys_obj, ("n", "r", "equations"), where="system")
    n, r = sys_obj["n"], sys_obj["r"]
    if not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in (n, r)):
        raise CaseFormatError("system.n and system.r must be non-negative ints")
    sring = system_ring(n, r, order)
    if not isinstance(sys_obj["equations"], list):
        raise CaseFormatError("system.equations must be a list")
    equations = tuple(
        _poly_from_json(eq, sring, f"system.equations[{k}]")
        for k, eq in enumerate(sys_obj["equations"])
    )
    try:
        system = DiophantineSystem(n, r, equations)
    except (AmbientMismatch, ValueError) as exc:
        raise CaseFormatError(f"system: {exc}") from exc

    w_obj = obj["witness"]
    _expect_keys(
        w_obj,
        ("I", "m", "b", "x", "y", "claimed_n", "domain_claim"),
        where="witness",
    )

    def polys(key: str) -> tuple:
        block = w_obj[key]
        if not isinstance(block, list):
            raise CaseFormatError(f"witness.{key} must be a list of polynomials")
        return tuple(
            _poly_from_json(entry, ring, f"witness.{key}[{k}]")
            for k, entry in enumerate(block)
        )

    i_gens, m_gens = polys("I"), polys("m")
    x_images, y_images = polys("x"), polys("y")

    b_obj = w_obj["b"]
    point_b = None
    if b_obj is not None:
        if not isinstance(b_obj, list):
            raise CaseFormatError("witness.b must be null or a coordinate list")
        try:
            point_b = tuple(
                ring.field.parse(_coeff_string(c, f"witness.b[{k}]"))
                for k, c in enumerate(b_obj)
            )
        except (ValueError, BadPrime) as exc:
            raise CaseFormatError(f"witness.b: {exc}") from exc

    claimed_n = w_obj["claimed_n"]
    if not isinstance(claimed_n, int) or isinstance(claimed_n, bool) or claimed_n < 0:
        raise CaseFormatError("witness.claimed_n must be a non-negative int")
    if not isinstance(w_obj["domain_claim"], bool):
        raise CaseFormatError("witness.domain_claim must be a boolean")

    try:
        witness = Witness(
            ring,
            i_gens,
            m_gens,
            point_b,
            x_images,
            y_images,
            claimed_n,
            w_obj["domain_claim"],
        )
    except AmbientMismatch as exc:
        raise CaseFormatError(f"witness: {exc}") from exc
    return system, witness


def load_case(path: str) -> tuple[DiophantineSystem, Witness]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CaseFormatError(f"cannot read case file: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CaseFormatError(f"case file is not valid JSON: {exc}") from exc
    return parse_case(obj)


def _read_operand(text: str) -> str:
    if text.startswith("@"):
        try:
            return Path(text[1:]).read_text(encoding="utf-8").strip()
        except OSError as exc:
            raise CaseFormatError(f"cannot read operand file: {exc}") from exc
    return text


_FIELD_FLAG = re.compile(r"^F(\d+)$")


def _ring_from_args(args) -> PolyRing:
    names = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    if not names:
        raise CaseFormatError("--vars needs a comma-separated name list")
    if args.field == "Q":
        field = QQ
    else:
        m = _FIELD_FLAG.match(args.field)
        if not m:
            raise CaseFormatError('--field must be "Q" or "F<p>"')
        field = PrimeField(int(m.group(1)))
    return PolyRing(field, len(names), order_from_json(args.order), names)


def _parse_poly_arg(text: str, ring: PolyRing):
    try:
        return parse_polynomial(_read_operand(text), ring)
    except ValueError as exc:
        raise CaseFormatError(str(exc)) from exc


def _parse_ideal_arg(text: str, ring: PolyRing) -> IdealPresentation:
    body = _read_operand(text).strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts, depth, start = [], 0, 0
    for k, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(body[start:k])
            start = k + 1
    parts.append(body[start:])
    gens = tuple(
        _parse_poly_arg(part, ring) for part in parts if part.strip()
    )
    if not gens:
        raise CaseFormatError("empty ideal operand")
    return IdealPresentation(ring, gens)


def _parse_point_arg(text: str, ring: PolyRing) -> tuple:
    coords = [c.strip() for c in text.split(",")]
    try:
        return tuple(ring.field.parse(c) for c in coords)
    except (ValueError, BadPrime) as exc:
        raise CaseFormatError(f"bad point: {exc}") from exc


def _caps_from_args(args) -> Caps:
    return Caps(
        exponent_cap=args.exponent_cap,
        probe_trials=args.probe_trials,
        probe_degree=args.probe_degree,
        seed=args.seed,
    )


def _cmd_verify(args) -> int:
    system, witness = load_case(args.case)
    caps = _caps_from_args(args)
    if args.prime is not None:
        witness = reduce_witness_mod_p(witness, args.prime)
    elif args.char0 and not isinstance(witness.ring.field, RationalField):
        raise CaseFormatError("--char0 requires a rational-field case")
    result = verify_witness(system, witness, caps)
    _emit(result.as_dict())
    return 0 if result.passed else 1


_PRIME_RANGE = re.compile(r"^(\d+)\.\.(\d+)$")


def _parse_primes_flag(text: str) -> tuple[list[int], tuple[int, int] | None]:
    m = _PRIME_RANGE.match(text.strip())
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        return primes_in_range(lo, hi), (lo, hi)
    try:
        explicit = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise CaseFormatError(
            '--primes takes "LO..HI" or a comma-separated list'
        ) from exc
    return explicit, None


def _cmd_sweep(args) -> int:
    system, witness = load_case(args.case)
    caps = _caps_from_args(args)
    primes, prime_range = _parse_primes_flag(args.primes)
    try:
        report = sweep(
            system,
            witness,
            primes,
            caps,
            jobs=args.jobs,
            prime_range=prime_range,
        )
    except CharZeroFailure as exc:
        print("witness fails in characteristic zero", file=sys.stderr)
        _emit(exc.result.as_dict())
        return 1
    text = json.dumps(report.as_dict(), indent=2, sort_keys=True)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    print(text)
    return 0 if report.all_passed() else 1


def _cmd_gb(args) -> int:
    ring = _ring_from_args(args)
    pres = _parse_ideal_arg(args.ideal, ring)
    basis = buchberger(pres).basis
    _emit({"basis": [format_polynomial(g) for g in basis]})
    return 0


def _cmd_member(args) -> int:
    ring = _ring_from_args(args)
    pres = _parse_ideal_arg(args.ideal, ring)
    f = _parse_poly_arg(args.f, ring)
    residue = normal_form(f, buchberger(pres).basis)
    member = not residue
    _emit({"member": member, "normal_form": format_polynomial(residue)})
    return 0 if member else 1


def _cmd_dim(args) -> int:
    ring = _ring_from_args(args)
    pres = _parse_ideal_arg(args.ideal, ring)
    _emit({"dimension": dimension(pres)})
    return 0


def _cmd_height(args) -> int:
    ring = _ring_from_args(args)
    pres = _parse_ideal_arg(args.ideal, ring)
    _emit(height_poly(pres).as_dict())
    return 0


def _cmd_radical_eq(args) -> int:
    ring = _ring_from_args(args)
    I = _parse_ideal_arg(args.ideal, ring)
    P = _parse_ideal_arg(args.radical, ring)
    result = radical_equals(I, P, args.cap)
    _emit(result.as_dict())
    return 0 if result.equal else 1


def _cmd_prime_probe(args) -> int:
    ring = _ring_from_args(args)
    pres = _parse_ideal_arg(args.ideal, ring)
    result = prime_probe(pres, args.degree_bound, args.trials, args.seed)
    _emit(result.as_dict())
    return 0 if result.probably_prime else 1


def _cmd_maximal(args) -> int:
    ring = _ring_from_args(args)
    pres = _parse_ideal_arg(args.ideal, ring)
    point = _parse_point_arg(args.point, ring)
    if len(point) != ring.nvars:
        raise CaseFormatError("point length does not match --vars")
    verdict = rational_maximal(pres, point)
    _emit({
        "rational_maximal": verdict,
        "point": [ring.field.format(c) for c in point],
    })
    return 0 if verdict else 1


def _cmd_encode(args) -> int:
    ring = _ring_from_args(args)
    pres = _parse_ideal_arg(args.ideal, ring)
    code = encode_ideal(pres, args.d)
    print(code_to_json(code))
    return 0


def _cmd_decode(args) -> int:
    code = code_from_json(_read_operand(args.code))
    pres = decode_ideal(code)
    _emit({
        "nvars": code.nvars,
        "complexity": code.complexity,
        "generators": [format_polynomial(g) for g in pres.generators],
    })
    return 0


def _cmd_complexity(args) -> int:
    ring = _ring_from_args(args)
    pres = _parse_ideal_arg(args.ideal, ring)
    _emit(complexity(pres).as_dict())
    return 0


def _add_ring_flags(sub) -> None:
    sub.add_argument("--vars", required=True, help="comma-separated variable names")
    sub.add_argument("--field", default="Q", help='"Q" (default) or "F<p>"')
    sub.add_argument("--order", default="grevlex", choices=("grevlex", "lex"))


def _add_caps_flags(sub) -> None:
    sub.add_argument("--exponent-cap", type=int, default=16)
    sub.add_argument("--probe-trials", type=int, default=200)
    sub.add_argument("--probe-degree", type=int, default=2)
    sub.add_argument("--seed", type=int, default=0)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gbtransfer",
        description="Exact Groebner predicates and mod-p witness sweeps.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("verify", help="verify a witness case file")
    p.add_argument("case")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--prime", type=int, default=None)
    group.add_argument("--char0", action="store_true")
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_verify)

    p = subs.add_parser("sweep", help="re-verify a case at every good prime")
    p.add_argument("case")
    p.add_argument("--primes", required=True, help='"LO..HI" or "p1,p2,..."')
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", default=None)
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_sweep)

    p = subs.add_parser("gb", help="reduced Groebner basis")
    _add_ring_flags(p)
    p.add_argument("--ideal", required=True)
    p.set_defaults(func=_cmd_gb)

    p = subs.add_parser("member", help="ideal membership")
    _add_ring_flags(p)
    p.add_argument("--ideal", required=True)
    p.add_argument("--f", required=True)
    p.set_defaults(func=_cmd_member)

    p = subs.add_parser("dim", help="Krull dimension of ring/I")
    _add_ring_flags(p)
    p.add_argument("--ideal", required=True)
    p.set_defaults(func=_cmd_dim)

    p = subs.add_parser("height", help="codimension of an ideal")
    _add_ring_flags(p)
    p.add_argument("--ideal", required=True)
    p.set_defaults(func=_cmd_height)

    p = subs.add_parser("radical-eq", help="bounded radical equality check")
    _add_ring_flags(p)
    p.add_argument("--ideal", required=True)
    p.add_argument("--radical", required=True, help="the candidate prime P")
    p.add_argument("--cap", type=int, default=16)
    p.set_defaults(func=_cmd_radical_eq)

    p = subs.add_parser("prime-probe", help="randomized non-primality search")
    _add_ring_flags(p)
    p.add_argument("--ideal", required=True)
    p.add_argument("--degree-bound", type=int, default=2)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_prime_probe)

    p = subs.add_parser("maximal", help="rational maximality certification")
    _add_ring_flags(p)
    p.add_argument("--ideal", required=True)
    p.add_argument("--point", required=True, help="comma-separated coordinates")
    p.set_defaults(func=_cmd_maximal)

    p = subs.add_parser("encode", help="flatten an ideal to its code")
    _add_ring_flags(p)
    p.add_argument("--ideal", required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=_cmd_encode)

    p = subs.add_parser("decode", help="rebuild generators from a code")
    p.add_argument("--code", required=True, help="inline JSON or @file")
    p.set_defaults(func=_cmd_decode)

    p = subs.add_parser("complexity", help="presentation complexity report")
    _add_ring_flags(p)
    p.add_argument("--ideal", required=True)
    p.set_defaults(func=_cmd_complexity)

    return parser


_STRUCTURAL_ERRORS = (
    CaseFormatError,
    AmbientMismatch,
    BadPrime,
    NotContained,
    UnitIdeal,
    ComplexityExceeded,
    DegreeCapExceeded,
    DegenerateGenerator,
    BudgetExceeded,
    ValueError,
    OSError,
)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _STRUCTURAL_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
