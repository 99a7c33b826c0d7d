"""Random exact instances of the one-port families, built from a G matrix so
that every square root involved is rational."""

from __future__ import annotations

import random
from fractions import Fraction

from ..exactalg import CoefficientVector
from ..paramount3 import PortMatrix3, nonneg_definite_via_coeffs
from .theorem5 import classify_theorem5, cv_from_G


def rand_rat(rng: random.Random, lo: int = 1, hi: int = 9, den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rand_signed(rng: random.Random) -> Fraction:
    return rand_rat(rng) * rng.choice((-1, 1))


def lambdas(G: PortMatrix3) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    G1, G2, G3, G4, G5, G6 = G.G
    base = G1 * G2 * G3 + G4 * G5 * G6
    return (
        base - G1 * G6 * G6 - G2 * G5 * G5,
        base - G1 * G6 * G6 - G3 * G4 * G4,
        base - G3 * G4 * G4 - G2 * G5 * G5,
        G.det(),
    )


def _solve_G3(case: str, G1, G2, G4, G5, G6) -> Fraction | None:
    """Pick G3 so that the case's defining quantity (det or a lambda) vanishes."""
    p = G4 * G5 * G6
    d12 = G1 * G2 - G4 * G4
    if case == "a":
        return (G1 * G6 * G6 + G2 * G5 * G5 - 2 * p) / d12 if d12 else None
    if case == "b":
        return (G1 * G6 * G6 - p) / d12 if d12 else None
    if case == "c":
        return (G1 * G6 * G6 + G2 * G5 * G5 - p) / (G1 * G2)
    if case == "d":
        return (G2 * G5 * G5 - p) / d12 if d12 else None
    raise ValueError(case)


def random_case_G(case: str, rng: random.Random, max_tries: int = 100000) -> PortMatrix3:
    """Non-negative definite G landing on Condition-2 case ``case`` (and not Condition 1)."""
    for _ in range(max_tries):
        G1, G2 = rand_rat(rng), rand_rat(rng)
        G4, G5, G6 = rand_signed(rng), rand_signed(rng), rand_signed(rng)
        if (G4 * G5 * G6 < 0) != (case == "a"):
            continue
        G3 = _solve_G3(case, G1, G2, G4, G5, G6)
        if G3 is None or G3 <= 0:
            continue
        G = PortMatrix3.from_G(G1, G2, G3, G4, G5, G6)
        ok, _ = nonneg_definite_via_coeffs(G)
        if not ok:
            continue
        br = classify_theorem5(cv_from_G(G))
        if br and br.kind == "Cond2" and br.case == case:
            return G
    raise RuntimeError(f"could not sample case {case}")


def random_case_cv(case: str, rng: random.Random) -> CoefficientVector:
    return cv_from_G(random_case_G(case, rng))


def random_nonneg_G(rng: random.Random, zero_prob: float = 0.0) -> PortMatrix3:
    """Random non-negative definite rational G (rejection sampling)."""
    while True:
        vals = [rand_rat(rng, 0, 9) for _ in range(3)] + [rand_signed(rng) for _ in range(3)]
        for i in range(6):
            if rng.random() < zero_prob:
                vals[i] = Fraction(0)
        G = PortMatrix3.from_G(*vals)
        if nonneg_definite_via_coeffs(G)[0]:
            return G
