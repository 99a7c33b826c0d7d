"""Series-parallel realization by alternately peeling poles and constants off
an admittance and its reciprocal, searched over step orderings under an
element budget (at most three springs, one damper, one inerter)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

import sympy

from ..errors import CensusExceeded, OracleMismatch
from ..exactalg import Poly, RationalFunction, poly_gcd
from ..netmodel import Element, MechNetwork, Port, driving_point

BUDGET = {"spring": 3, "damper": 1, "inerter": 1}
MAX_DEPTH = 6


@dataclass(frozen=True)
class Leaf:
    kind: str
    value: Fraction


@dataclass(frozen=True)
class Combo:
    op: str  # "ser" or "par"
    left: "Tree"
    right: "Tree"


OPEN = "open"
SHORT = "short"
Tree = Union[Leaf, Combo, str]


def tree_admittance(t: Tree) -> RationalFunction:
    if isinstance(t, Leaf):
        v, s = t.value, RationalFunction.s()
        return {"spring": v / s, "damper": RationalFunction.const(v), "inerter": v * s}[t.kind]
    if t == OPEN:
        return RationalFunction.const(0)
    if t == SHORT:
        raise ValueError("a short circuit has no admittance")
    if t.op == "par":
        return tree_admittance(t.left) + tree_admittance(t.right)
    if t.right == SHORT:
        return tree_admittance(t.left)
    return (tree_admittance(t.left).inv() + tree_admittance(t.right).inv()).inv()


def tree_census(t: Tree) -> dict[str, int]:
    out = {"spring": 0, "damper": 0, "inerter": 0}

    def walk(x: Tree) -> None:
        if isinstance(x, Leaf):
            out[x.kind] += 1
        elif isinstance(x, Combo):
            walk(x.left)
            walk(x.right)

    walk(t)
    return out


def tree_to_network(t: Tree) -> MechNetwork:
    """Lay the tree out between node 1 (port plus) and node 0 (port minus)."""
    els: list[Element] = []
    counter = iter(range(2, 10**6))
    labels = {"spring": 0, "damper": 0, "inerter": 0}

    def place(x: Tree, a: int, b: int) -> None:
        if isinstance(x, Leaf):
            labels[x.kind] += 1
            prefix = {"spring": "k", "damper": "c", "inerter": "b"}[x.kind]
            els.append(Element(x.kind, x.value, (a, b), f"{prefix}{labels[x.kind]}"))
        elif isinstance(x, Combo):
            if x.op == "par":
                place(x.left, a, b)
                place(x.right, a, b)
            elif x.right == SHORT:
                place(x.left, a, b)
            else:
                m = next(counter)
                place(x.left, a, m)
                place(x.right, m, b)

    place(t, 1, 0)
    nodes = sorted({0, 1} | {n for e in els for n in e.nodes})
    return MechNetwork(tuple(nodes), tuple(els), (Port(1, 0, 1),))


# ---------------------------------------------------------------------------
# pole and constant extraction


def _pole_at_zero(F: RationalFunction) -> Fraction | None:
    """Residue of a simple pole at s = 0 (coefficient of 1/s)."""
    if F.den.order_at_zero() != 1:
        return None
    return F.num(0) / F.den.shift_down(1)(0)


def _pole_at_infinity(F: RationalFunction) -> Fraction | None:
    """Coefficient of s for a simple pole at infinity."""
    if F.num.degree != F.den.degree + 1:
        return None
    return F.num.lc / F.den.lc


def _even_odd(p: Poly) -> tuple[Poly, Poly]:
    """p(s) = E(s^2) + s*O(s^2)."""
    return Poly(p.coeffs[0::2]), Poly(p.coeffs[1::2])


def _rational_roots(p: Poly) -> list[Fraction]:
    """Distinct rational roots, read off the linear factors over QQ."""
    if p.degree < 1:
        return []
    x = sympy.Symbol("x")
    sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], x, domain="QQ")
    roots = []
    for factor, _ in sp.factor_list()[1]:
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            r = -b / a
            roots.append(Fraction(int(r.p), int(r.q)))
    return sorted(set(roots))


def _imaginary_axis_poles(F: RationalFunction) -> list[Fraction]:
    """Values a > 0 with s^2 + a a factor of the denominator."""
    E, O = _even_odd(F.den)
    g = poly_gcd(E, O) if O else E
    return sorted(-r for r in _rational_roots(g) if r < 0)


def _jw_residue(F: RationalFunction, a: Fraction) -> Fraction | None:
    """K with F - K s/(s^2 + a) free of the pole pair at s^2 = -a."""
    q = Poly((a, 0, 1))
    cof, rem = F.den.divmod(q)
    if rem:
        return None
    rN = F.num % q
    rD = (cof * Poly.s()) % q
    r0, r1, d0, d1 = rN.coeff(0), rN.coeff(1), rD.coeff(0), rD.coeff(1)
    K = r1 / d1 if d1 else (r0 / d0 if d0 else None)
    if K is None or r0 != K * d0 or r1 != K * d1:
        return None
    return K


def _axis_value(F: RationalFunction, u: Fraction) -> Fraction | None:
    """F(jw) for w^2 = u when that value is real, else None."""
    q = Poly((u, 0, 1))
    n, d = F.num % q, F.den % q
    p0, p1, q0, q1 = n.coeff(0), n.coeff(1), d.coeff(0), d.coeff(1)
    mag = q0 * q0 + q1 * q1 * u
    if mag == 0 or p1 * q0 - p0 * q1 != 0:
        return None
    return (p0 * q0 + p1 * q1 * u) / mag


def _even_part_zeros(F: RationalFunction) -> list[Fraction]:
    """Rational u > 0 where Re F(jw) vanishes at w^2 = u."""
    N, D = F.num, F.den
    neg = lambda p: Poly(c if i % 2 == 0 else -c for i, c in enumerate(p.coeffs))
    E, _ = _even_odd(N * neg(D) + neg(N) * D)
    # E is a polynomial in s^2; substitute s^2 = -u
    P = Poly(c if i % 2 == 0 else -c for i, c in enumerate(E.coeffs))
    return sorted(r for r in _rational_roots(P) if r > 0) if P else []


# One move: (description tree of the removed piece, remainder).
Move = tuple[Tree, RationalFunction]


def _moves(F: RationalFunction, admittance: bool) -> Iterator[Move]:
    """Removable pieces of F, read as an admittance (parallel) or impedance (series)."""
    s = RationalFunction.s()
    k0 = _pole_at_zero(F)
    if k0 is not None and k0 > 0:
        piece = Leaf("spring", k0) if admittance else Leaf("inerter", 1 / k0)
        yield piece, F - k0 / s
    kinf = _pole_at_infinity(F)
    if kinf is not None and kinf > 0:
        piece = Leaf("inerter", kinf) if admittance else Leaf("spring", 1 / kinf)
        yield piece, F - kinf * s
    for a in _imaginary_axis_poles(F):
        K = _jw_residue(F, a)
        if K is None or K <= 0:
            continue
        if admittance:  # series spring-inerter branch: k s / (s^2 + k/b)
            piece = Combo("ser", Leaf("spring", K), Leaf("inerter", K / a))
        else:  # parallel spring-inerter tank: (1/b) s / (s^2 + k/b)
            piece = Combo("par", Leaf("spring", a / K), Leaf("inerter", 1 / K))
        yield piece, F - K * s / (s * s + a)
    yield from _zero_shifting_moves(F, admittance, k0, kinf)
    seen = set()
    for c in (F.value_at_zero(), F.value_at_infinity()):
        if c is not None and c > 0 and c not in seen:
            seen.add(c)
            yield Leaf("damper", c if admittance else 1 / c), F - c


def _zero_shifting_moves(F: RationalFunction, admittance: bool, k0, kinf) -> Iterator[Move]:
    """Partial removals that leave a zero on the imaginary axis (its reciprocal then has a pole pair there)."""
    s = RationalFunction.s()
    for u in _even_part_zeros(F):
        if k0 is not None and k0 > 0:
            k = _axis_value(F * s, u)
            if k is not None and 0 < k < k0:
                yield (Leaf("spring", k) if admittance else Leaf("inerter", 1 / k)), F - k / s
        if kinf is not None and kinf > 0:
            b = _axis_value(F / s, u)
            if b is not None and 0 < b < kinf:
                yield (Leaf("inerter", b) if admittance else Leaf("spring", 1 / b)), F - b * s
        for a in _imaginary_axis_poles(F):
            full = _jw_residue(F, a)
            K = _axis_value(F * (s * s + a) / s, u)
            if full is None or K is None or not 0 < K < full:
                continue
            if admittance:
                piece = Combo("ser", Leaf("spring", K), Leaf("inerter", K / a))
            else:
                piece = Combo("par", Leaf("spring", a / K), Leaf("inerter", 1 / K))
            yield piece, F - K * s / (s * s + a)


def _fits(used: dict[str, int], piece: Tree) -> dict[str, int] | None:
    c = tree_census(piece)
    out = {k: used[k] + c[k] for k in used}
    return out if all(out[k] <= BUDGET[k] for k in out) else None


def _search(F: RationalFunction, admittance: bool, used: dict[str, int], depth: int, may_flip: bool) -> Tree | None:
    if F.is_zero():
        return OPEN if admittance else SHORT
    if depth >= MAX_DEPTH:
        return None
    for piece, rest in _moves(F, admittance):
        used2 = _fits(used, piece)
        if used2 is None:
            continue
        sub = _search(rest, admittance, used2, depth + 1, True)
        if sub is not None:
            return Combo("par" if admittance else "ser", piece, sub)
    if may_flip:
        sub = _search(F.inv(), not admittance, used, depth, False)
        if sub is not None:
            return sub
    return None


def foster_tree(Y: RationalFunction) -> Tree:
    if Y.is_zero():
        raise CensusExceeded("zero admittance has no element realization")
    used = {k: 0 for k in BUDGET}
    tree = _search(Y, True, used, 0, True)
    if tree is None:
        raise CensusExceeded(f"no preamble ordering realizes {Y} within the element budget")
    return tree


def foster_synthesize(Y: RationalFunction) -> MechNetwork:
    """Series-parallel network with at most 3 springs, 1 damper, 1 inerter and admittance Y."""
    tree = foster_tree(Y)
    net = tree_to_network(tree)
    census = net.census()
    if any(census.get(k, 0) > BUDGET[k] for k in BUDGET):
        raise CensusExceeded(f"census {census} exceeds the budget")
    if driving_point(net) != Y:
        raise OracleMismatch(f"preamble network does not reproduce {Y}")
    return net


# ---------------------------------------------------------------------------
# forward generator for round trips


def random_sp_tree(rng: random.Random, springs: int = 3, dampers: int = 1, inerters: int = 1) -> Tree:
    """Random series-parallel arrangement of the given elements with positive rational values."""
    def val() -> Fraction:
        return Fraction(rng.randint(1, 9), rng.randint(1, 4))

    items: list[Tree] = (
        [Leaf("spring", val()) for _ in range(springs)]
        + [Leaf("damper", val()) for _ in range(dampers)]
        + [Leaf("inerter", val()) for _ in range(inerters)]
    )
    while len(items) > 1:
        i, j = rng.sample(range(len(items)), 2)
        a, b = items[i], items[j]
        items = [x for k, x in enumerate(items) if k not in (i, j)]
        items.append(Combo(rng.choice(("ser", "par")), a, b))
    return items[0]
