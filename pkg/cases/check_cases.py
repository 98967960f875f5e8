#!/usr/bin/env python3
"""Standalone sanity oracle for the bundled cases.

Re-derives the checkable facts without the main package: the vanishing
identities are tested by exact evaluation at fixed sample points on each
witness variety, and the denominator bad primes by direct factorization
of the case file's coefficient strings.  Run from anywhere:

    python3 cases/check_cases.py
"""

import json
import sys
from fractions import Fraction
from pathlib import Path

HERE = Path(__file__).resolve().parent

QPOINTS = [
    Fraction(v)
    for v in (-3, -2, -1, 0, 1, 2, 3, Fraction(1, 2), Fraction(-1, 3), Fraction(5, 7))
]


def eval_poly(terms, point):
    """Exact value of a serialized polynomial at a point."""
    total = Fraction(0)
    for term in terms:
        v = Fraction(str(term["coeff"]))
        for coord, e in zip(point, term["exps"]):
            v *= Fraction(coord) ** e
        total += v
    return total


def factor(n):
    n = abs(n)
    out = set()
    f = 2
    while f * f <= n:
        while n % f == 0:
            out.add(f)
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.add(n)
    return out


def denominator_primes(case):
    primes = set()
    w = case["witness"]
    blocks = list(w["I"]) + list(w["m"]) + list(w["x"]) + list(w["y"])
    for poly in blocks:
        for term in poly:
            primes |= factor(Fraction(str(term["coeff"])).denominator)
    if w["b"] is not None:
        for c in w["b"]:
            primes |= factor(Fraction(str(c)).denominator)
    return primes


def check_vanishing_on_line(case):
    """Cases with I = (0) on a one-variable line: F(x(t), y(t)) must vanish
    identically; ten points exceed the composite degree, so this is exact."""
    w = case["witness"]
    bad = []
    for t in QPOINTS:
        images = [eval_poly(p, (t,)) for p in w["x"] + w["y"]]
        for eq in case["system"]["equations"]:
            if eval_poly(eq, images):
                bad.append(t)
    return bad


def check_hyperbola(case):
    w = case["witness"]
    bad = []
    for t in (Fraction(1), Fraction(2), Fraction(3), Fraction(-1), Fraction(1, 2), Fraction(-2, 5)):
        pt = (t, 1 / t)
        for gen in w["I"]:
            if eval_poly(gen, pt):
                return [("point off the variety", t)]
        images = [eval_poly(p, pt) for p in w["x"] + w["y"]]
        for eq in case["system"]["equations"]:
            if eval_poly(eq, images):
                bad.append(t)
    return bad


def check_plane(case):
    w = case["witness"]
    bad = []
    pts = [(Fraction(a), Fraction(b)) for a in (-2, 0, 1, 3) for b in (-1, 0, 2)]
    for pt in pts:
        images = [eval_poly(p, pt) for p in w["x"] + w["y"]]
        for eq in case["system"]["equations"]:
            if eval_poly(eq, images):
                bad.append(pt)
    return bad


def check_fp_nilpotent(case):
    p = case["ring"]["field"]["Fp"]
    w = case["witness"]
    bad = []
    for t in range(p):
        values = [eval_poly(g, (t,)) for g in w["I"]]
        if any(int(v) % p for v in values):
            continue  # not a point of V(I)
        images = [eval_poly(q, (t,)) for q in w["x"] + w["y"]]
        for eq in case["system"]["equations"]:
            if int(eval_poly(eq, images)) % p:
                bad.append(t)
    return bad


LINE_CASES = {
    "square_root.json": True,
    "sixth_scaled.json": True,
    "cusp.json": True,
    "shifted_square.json": True,
    "tenth_scaled.json": True,
    "square_root_bad_lift.json": False,  # expected NOT to vanish everywhere
}


def main():
    expected = json.loads((HERE / "expected.json").read_text())
    failures = []

    for name, should_vanish in LINE_CASES.items():
        case = json.loads((HERE / name).read_text())
        bad = check_vanishing_on_line(case)
        if should_vanish and bad:
            failures.append(f"{name}: lift does not vanish at {bad[0]}")
        if not should_vanish and not bad:
            failures.append(f"{name}: expected a failing lift, found none")

    for name, checker in (
        ("hyperbola.json", check_hyperbola),
        ("plane_origin.json", check_plane),
        ("fp_nilpotent.json", check_fp_nilpotent),
    ):
        case = json.loads((HERE / name).read_text())
        bad = checker(case)
        if bad:
            failures.append(f"{name}: lift does not vanish at {bad[0]}")

    for name, expect in expected.items():
        if not expect.get("rational", True) or "bad_primes" not in expect:
            continue
        case = json.loads((HERE / name).read_text())
        got = sorted(denominator_primes(case))
        want = [p for p in expect["bad_primes"]]
        if got != want:
            failures.append(f"{name}: denominator primes {got} != expected {want}")

    if failures:
        for line in failures:
            print("FAIL", line)
        return 1
    print(f"ok: {len(expected)} cases checked")
    return 0


if __name__ == "__main__":
    sys.exit(main())
