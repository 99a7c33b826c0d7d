"""One damper, one inerter and any number of springs: the coefficient-level
test, the matching test on G, and the G5-G6 region map."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from ..errors import NonnegativityViolation
from ..exactalg import CoefficientVector, format_rat
from ..paramount3 import PortMatrix3
from .theorem5 import Branch, classify_theorem5, cv_from_G, bridge_case_expressions, ratio_gaps, w_quantities
from .theorem6 import Mode, Theorem6Result, classify_theorem6


@dataclass(frozen=True)
class AtMostThree:
    branch: Branch | Theorem6Result

    def label(self) -> str:
        return f"AtMostThree({self.branch.label()})"


@dataclass(frozen=True)
class ArbitraryOnly:
    condition: int

    def label(self) -> str:
        return f"ArbitraryOnly({self.condition})"


@dataclass(frozen=True)
class NotRealizable:
    reason: str
    details: dict = field(default_factory=dict)

    def label(self) -> str:
        return "NotRealizable"

    def __bool__(self) -> bool:
        return False


ArbitraryVerdict = AtMostThree | ArbitraryOnly | NotRealizable


def strict_condition(cv: CoefficientVector) -> int | None:
    """First of the five strict conditions met by an admissible quartic-form cv.

    The second condition's middle inequality is read as ``> 0``.
    """
    w = w_quantities(cv)
    if w.W < 0:
        return 1
    if w.W == 0:
        return None
    gaps = ratio_gaps(cv, w)
    if any(g is None for g in gaps.values()):
        return None  # a zero W_i is a witness of the at-most-three branch
    m3, m2, m2d = gaps["m3"], gaps["m2"], gaps["m2_dagger"]
    ex = bridge_case_expressions(cv)
    if m2d > 0 and m2 > 0 and m3 > 0:
        return 2
    if m3 < 0 and ex["c"] >= 0:
        return 3
    if m2 < 0 and ex["b"] >= 0:
        return 4
    if m2d < 0 and ex["d"] >= 0:
        return 5
    return None


def classify_arbitrary_springs(cv: CoefficientVector) -> ArbitraryVerdict:
    if any(v < 0 for v in cv.values()):
        raise NonnegativityViolation(f"coefficients must be non-negative: {cv}")
    if cv.beta4 == 0:
        res = classify_theorem6(cv, Mode.SCALE_SEARCH)
        return AtMostThree(res) if res else NotRealizable(res.reason)
    w = w_quantities(cv)
    if not w.admissible:
        return NotRealizable("W quantities inadmissible", {"W1": format_rat(w.W1), "W2": format_rat(w.W2),
                                                             "W3": format_rat(w.W3), "W": format_rat(w.W)})
    branch = classify_theorem5(cv)
    if branch:
        return AtMostThree(branch)
    cond = strict_condition(cv)
    if cond is not None:
        return ArbitraryOnly(cond)
    return NotRealizable("no condition holds")


# ---------------------------------------------------------------------------
# the same test on G


@dataclass(frozen=True)
class RegionQuantities:
    m1: Fraction
    m1_dagger: Fraction
    m2: Fraction | None  # None where the divisor vanishes
    m2_dagger: Fraction | None
    m3: Fraction | None
    lambda1: Fraction
    lambda2: Fraction
    lambda3: Fraction
    lambda4: Fraction

    def named(self) -> dict[str, Fraction | None]:
        return dict(self.__dict__)


def region_quantities(G: PortMatrix3) -> RegionQuantities:
    G1, G2, G3, G4, G5, G6 = G.G
    base = G1 * G2 * G3 + G4 * G5 * G6
    return RegionQuantities(
        m1=G6,
        m1_dagger=G5,
        m2=G2 - G4 * G6 / G5 if G5 else None,
        m2_dagger=G1 - G4 * G5 / G6 if G6 else None,
        m3=G3 - G5 * G6 / G4 if G4 else None,
        lambda1=base - G1 * G6 * G6 - G2 * G5 * G5,
        lambda2=base - G1 * G6 * G6 - G3 * G4 * G4,
        lambda3=base - G3 * G4 * G4 - G2 * G5 * G5,
        lambda4=G.det(),
    )


def nonneg_definite(G: PortMatrix3) -> bool:
    G1, G2, G3, G4, G5, G6 = G.G
    return (
        G1 >= 0 and G2 >= 0 and G3 >= 0
        and G1 * G2 >= G4 * G4 and G1 * G3 >= G5 * G5 and G2 * G3 >= G6 * G6
        and G.det() >= 0
    )


# vanishing minors of G, as (name, value, is one of the curves crossing the interior of the
# G5-G6 picture); vanishing entries, including the axes G5 = 0 and G6 = 0, count as boundary
def _minor_witnesses(G: PortMatrix3) -> list[tuple[str, Fraction, bool]]:
    G1, G2, G3, G4, G5, G6 = G.G
    return [
        ("m1", G6, False),
        ("m1_dagger", G5, False),
        ("m2", G2 * G5 - G4 * G6, True),
        ("m2_dagger", G1 * G6 - G4 * G5, True),
        ("m3", G3 * G4 - G5 * G6, True),
        ("G1", G1, False), ("G2", G2, False), ("G3", G3, False), ("G4", G4, False),
        ("G1G2-G4^2", G1 * G2 - G4 * G4, False),
        ("G1G3-G5^2", G1 * G3 - G5 * G5, False),
        ("G2G3-G6^2", G2 * G3 - G6 * G6, False),
    ]


REGION_CLASSES = (
    "not-realizable",
    "arbitrary-springs",
    "at-most-three-boundary",
    "at-most-three-interior-segment",
)


def classify_region(G: PortMatrix3) -> tuple[str, str]:
    """(class, witness) for a point of the G5-G6 picture."""
    if not nonneg_definite(G):
        return "not-realizable", ""
    for name, value, interior in _minor_witnesses(G):
        if value == 0:
            return ("at-most-three-interior-segment" if interior else "at-most-three-boundary"), name
    q = region_quantities(G)
    p = G.G[3] * G.G[4] * G.G[5]
    if p < 0 and q.lambda4 == 0:
        return "at-most-three-boundary", "lambda4"
    if p > 0:
        for name in ("lambda2", "lambda1", "lambda3"):
            if getattr(q, name) == 0:
                return "at-most-three-boundary", name
    cond = equivalent_condition(G)
    if cond is not None:
        return "arbitrary-springs", f"condition{cond}"
    return "not-realizable", ""


def equivalent_condition(G: PortMatrix3) -> int | None:
    """First of the five G-level conditions for arbitrary springs (G4, G5, G6 nonzero)."""
    q = region_quantities(G)
    G1, G2, G3, G4, G5, G6 = G.G
    p = G4 * G5 * G6
    if p < 0:
        return 1
    if p == 0:
        return None
    if q.m2_dagger > 0 and q.m2 > 0 and q.m3 > 0:
        return 2
    if q.m3 < 0 and q.lambda1 >= 0:
        return 3
    if q.m2 < 0 and q.lambda2 >= 0:
        return 4
    if q.m2_dagger < 0 and q.lambda3 >= 0:
        return 5
    return None


def region_verdict_from_coefficients(G: PortMatrix3) -> ArbitraryVerdict:
    """The coefficient-level verdict for the cv that G induces."""
    return classify_arbitrary_springs(cv_from_G(G))


# ---------------------------------------------------------------------------
# the map


@dataclass(frozen=True)
class RegionRow:
    g5: Fraction
    g6: Fraction
    cls: str
    witness: str


def lattice(grid: int, lo: Fraction, hi: Fraction) -> list[Fraction]:
    if grid < 2:
        raise ValueError("grid must be at least 2")
    step = (hi - lo) / (grid - 1)
    return [lo + i * step for i in range(grid)]


def region_rows(
    G1: Fraction, G2: Fraction, G3: Fraction, G4: Fraction,
    grid: int = 201, lo: Fraction = Fraction(-1), hi: Fraction = Fraction(1),
) -> Iterator[RegionRow]:
    pts = lattice(grid, Fraction(lo), Fraction(hi))
    for g5 in pts:
        for g6 in pts:
            cls, wit = classify_region(PortMatrix3.from_G(G1, G2, G3, G4, g5, g6))
            yield RegionRow(g5, g6, cls, wit)


def region_map(
    G1: Fraction = Fraction(1), G2: Fraction = Fraction(1), G3: Fraction = Fraction(1), G4: Fraction = Fraction(1, 2),
    grid: int = 201, lo: Fraction = Fraction(-1), hi: Fraction = Fraction(1),
) -> str:
    """CSV with columns g5,g6,class,witness over a grid x grid lattice of [lo, hi]^2."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("g5", "g6", "class", "witness"))
    for row in region_rows(G1, G2, G3, G4, grid, lo, hi):
        w.writerow((format_rat(row.g5), format_rat(row.g6), row.cls, row.witness))
    return buf.getvalue()
