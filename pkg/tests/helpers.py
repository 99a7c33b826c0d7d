"""Random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from mechsynth.netmodel import Element, MechNetwork, Port, is_connected

KINDS = ("spring", "damper", "inerter")


def rand_value(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 12), rng.randint(1, 6))


def random_augmented(
    rng: random.Random,
    max_vertices: int = 7,
    max_elements: int = 6,
    n_ports: int | None = None,
    kinds: tuple[str, ...] = KINDS,
) -> MechNetwork:
    """Connected augmented graph; ports may or may not form a forest."""
    while True:
        nv = rng.randint(2, max_vertices)
        n_ports = n_ports or rng.randint(1, 3)
        ports = []
        for j in range(n_ports):
            u, v = rng.sample(range(nv), 2)
            ports.append(Port(u, v, j + 1))
        els = []
        for _ in range(rng.randint(0, max_elements)):
            u, v = rng.sample(range(nv), 2)
            els.append(Element(rng.choice(kinds), rand_value(rng), (u, v)))
        net = MechNetwork(tuple(range(nv)), tuple(els), tuple(ports))
        if is_connected(net):
            return net


def random_spanning_tree(net: MechNetwork, rng: random.Random) -> list:
    order = [eid for eid, _, _ in net.augmented_edges()]
    ports = [e for e in order if e[0] == "p"]
    rest = [e for e in order if e[0] != "p"]
    rng.shuffle(ports)
    rng.shuffle(rest)
    return ports + rest


def random_candidate_matrix(rng: random.Random):
    """Random symmetric rational 3x3 matrix biased towards the realizable set."""
    from mechsynth.paramount3 import PortMatrix3

    if rng.random() < 0.3:
        return _interval_matrix(rng)
    pick = [0, 0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2)]
    a, b, c = (rng.choice(pick) for _ in range(3))
    if rng.random() < 0.5:
        extra = [0, 0, 1, Fraction(1, 3)]
        d = (abs(a) + abs(b) + rng.choice(extra), abs(a) + abs(c) + rng.choice(extra), abs(b) + abs(c) + rng.choice(extra))
    else:
        diag = [0, 1, 2, 3, Fraction(1, 2), Fraction(5, 2)]
        d = tuple(rng.choice(diag) for _ in range(3))
    return PortMatrix3(d[0], d[1], d[2], a, b, c)


def _interval_matrix(rng: random.Random):
    """Sum of g * u u^T over up to three contiguous-interval indicator vectors u,
    then a random port permutation and polarity flip (a path-shaped matrix)."""
    from mechsynth.paramount3 import PortMatrix3

    intervals = [(i, j) for i in range(3) for j in range(i + 1, 4)]
    Y = [[Fraction(0)] * 3 for _ in range(3)]
    for i, j in rng.sample(intervals, rng.randint(1, 3)):
        g = rand_value(rng)
        for p in range(i, j):
            for q in range(i, j):
                Y[p][q] += g
    perm = rng.sample(range(3), 3)
    d = [rng.choice((1, -1)) for _ in range(3)]
    rows = [[d[a] * d[b] * Y[perm[a]][perm[b]] for b in range(3)] for a in range(3)]
    return PortMatrix3.from_rows(rows)


def quartic_cv(Y):
    """Coefficients of Y over a monic s^4 + b3 s^3 + b2 s^2 + b1 s denominator.

    A vanishing alpha0 cancels the factor s from the reduced form, so it is
    restored here before reading off the coefficients.
    """
    from mechsynth.exactalg import CoefficientVector, Poly

    num, den = Y.num, Y.den
    if den.degree == 3 and den.coeff(0) != 0:
        num, den = num * Poly.s(), den * Poly.s()
    if den.degree != 4 or den.coeff(0) != 0 or num.degree > 3:
        raise ValueError(f"not of the quartic form: {Y}")
    a = [num.coeff(i) / den.lc for i in range(4)]
    b = [den.coeff(i) / den.lc for i in range(4)]
    return CoefficientVector(a[3], a[2], a[1], a[0], b[3], b[2], b[1], beta4=1)
