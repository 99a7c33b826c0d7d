"""Symmetric 3x3 rational matrices: paramountcy, cross-sign changes and the
coefficient test for non-negative definiteness."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import NoPattern, ParseError
from .exactalg import format_rat, parse_rat

_OFF = {(0, 1): "y12", (0, 2): "y13", (1, 2): "y23"}


@dataclass(frozen=True)
class PortMatrix3:
    """Symmetric 3x3 matrix stored by its six distinct entries.

    The same type holds the G matrix of the one-port theory, with
    G1=y11, G2=y22, G3=y33, G4=y12, G5=y13, G6=y23.
    """

    y11: Fraction
    y22: Fraction
    y33: Fraction
    y12: Fraction
    y13: Fraction
    y23: Fraction

    def __post_init__(self):
        for name in ("y11", "y22", "y33", "y12", "y13", "y23"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> PortMatrix3:
        r = [[Fraction(x) for x in row] for row in rows]
        if len(r) != 3 or any(len(row) != 3 for row in r):
            raise ValueError("expected a 3x3 matrix")
        for i, j in _OFF:
            if r[i][j] != r[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i + 1},{j + 1})")
        return cls(r[0][0], r[1][1], r[2][2], r[0][1], r[0][2], r[1][2])

    @classmethod
    def from_G(cls, G1, G2, G3, G4, G5, G6) -> PortMatrix3:
        return cls(G1, G2, G3, G4, G5, G6)

    @classmethod
    def identity(cls) -> PortMatrix3:
        return cls(1, 1, 1, 0, 0, 0)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if i == j:
            return (self.y11, self.y22, self.y33)[i]
        return getattr(self, _OFF[(min(i, j), max(i, j))])

    def rows(self) -> list[list[Fraction]]:
        return [[self[i, j] for j in range(3)] for i in range(3)]

    @property
    def G(self) -> tuple[Fraction, ...]:
        return (self.y11, self.y22, self.y33, self.y12, self.y13, self.y23)

    @property
    def off_diagonal(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.y12, self.y13, self.y23)

    def det(self) -> Fraction:
        a = self.rows()
        return (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )

    def permuted(self, perm: Sequence[int]) -> PortMatrix3:
        """Simultaneous row/column rearrangement: new[i][j] = old[perm[i]][perm[j]]."""
        return PortMatrix3.from_rows([[self[perm[i], perm[j]] for j in range(3)] for i in range(3)])

    def sign_changed(self, d: Sequence[int]) -> PortMatrix3:
        return PortMatrix3(
            self.y11, self.y22, self.y33,
            d[0] * d[1] * self.y12, d[0] * d[2] * self.y13, d[1] * d[2] * self.y23,
        )

    def to_text(self) -> str:
        return "[" + ",".join("[" + ",".join(format_rat(x) for x in row) + "]" for row in self.rows()) + "]"

    def __str__(self) -> str:
        return self.to_text()


def parse_matrix(text: str) -> PortMatrix3:
    """Row-major text form, e.g. ``"[[1,1,0],[1,2,-1],[0,-1,1]]"``."""
    body = re.sub(r"\s+", "", text)
    m = re.fullmatch(r"\[\[(.*)\]\]", body)
    if not m:
        raise ParseError(f"matrix must look like [[a,b,c],[d,e,f],[g,h,i]]: {text!r}")
    rows = [[parse_rat(tok) for tok in row.split(",")] for row in m.group(1).split("],[")]
    try:
        return PortMatrix3.from_rows(rows)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# ---------------------------------------------------------------------------


def _minor2(M: PortMatrix3, rows: tuple[int, int], cols: tuple[int, int]) -> Fraction:
    (a, b), (c, d) = rows, cols
    return M[a, c] * M[b, d] - M[a, d] * M[b, c]


def is_paramount(M: PortMatrix3) -> bool:
    """Every principal minor dominates the absolute value of every minor on the same rows.

    Only orders 1 and 2 carry conditions for a 3x3 matrix.
    """
    for i in range(3):
        for j in range(3):
            if M[i, i] < abs(M[i, j]):
                return False
    pairs = list(itertools.combinations(range(3), 2))
    for rows in pairs:
        principal = _minor2(M, rows, rows)
        for cols in pairs:
            if principal < abs(_minor2(M, rows, cols)):
                return False
    return True


class SignTarget(Enum):
    NONPOSITIVE = "AllOffDiagNonPositive"
    NONNEGATIVE = "AllOffDiagNonNegative"


# d1 is pinned to +1; the remaining two signs walk a Gray code
SIGN_PATTERNS: tuple[tuple[int, int, int], ...] = ((1, 1, 1), (1, 1, -1), (1, -1, -1), (1, -1, 1))


def sign_normalize(M: PortMatrix3, target: SignTarget) -> tuple[tuple[int, int, int], PortMatrix3]:
    """First cross-sign-change pattern that makes every off-diagonal entry ``<= 0``
    (or ``>= 0``). Raises NoPattern when the off-diagonal product has the wrong sign."""
    want_nonpos = target is SignTarget.NONPOSITIVE
    for d in SIGN_PATTERNS:
        Mp = M.sign_changed(d)
        if all((x <= 0) if want_nonpos else (x >= 0) for x in Mp.off_diagonal):
            return d, Mp
    raise NoPattern(f"no cross-sign change gives {target.value} for {M}")


@dataclass(frozen=True)
class AlphaBeta:
    alpha3: Fraction
    alpha2: Fraction
    alpha1: Fraction
    alpha0: Fraction
    beta3: Fraction
    beta2: Fraction
    beta1: Fraction

    def values(self) -> tuple[Fraction, ...]:
        return (self.alpha3, self.alpha2, self.alpha1, self.alpha0, self.beta3, self.beta2, self.beta1)


def alpha_beta(G: PortMatrix3) -> AlphaBeta:
    G1, G2, G3, G4, G5, G6 = G.G
    return AlphaBeta(
        alpha3=G1,
        alpha2=G1 * G2 - G4 * G4,
        alpha1=G1 * G3 - G5 * G5,
        alpha0=G.det(),
        beta3=G2,
        beta2=G3,
        beta1=G2 * G3 - G6 * G6,
    )


def nonneg_definite_via_coeffs(G: PortMatrix3) -> tuple[bool, AlphaBeta]:
    ab = alpha_beta(G)
    return all(v >= 0 for v in ab.values()), ab
